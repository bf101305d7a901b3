#include "trackstat/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>
#include <nlohmann/json.hpp>

#include "trackstat/rng.hpp"
#include "trackstat/sampler.hpp"

namespace trackstat {

namespace {

const char* filter_name(Filter f) {
    switch (f) {
        case Filter::CurvesOnly: return "curves";
        case Filter::PrimitiveOnly: return "primitive";
        default: return "none";
    }
}

}  // namespace

std::pair<double, double> wilson99(long long successes, long long trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 2.5758293035489004;  // 99.5th percentile of the normal
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double chi_squared_pvalue(double stat, int dof) {
    if (dof <= 0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

DistributionReport run_experiment(const TrainTrack& track, const ExperimentConfig& config) {
    if (config.samples < 1) throw TrackError("sample count must be positive");
    TrackSampler sampler(track, config.length_bound);
    if (sampler.total() == 0) throw TrackError("no carried multicurves within the length bound");

    std::vector<BigInt> indices(config.samples);
    for (long long i = 0; i < config.samples; ++i) {
        Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(i));
        indices[i] = rng.uniform_below(sampler.total());
    }
    std::vector<std::vector<long long>> weights = sampler.extract(indices);

    enum class Status { Retained, Filtered, Errored };
    struct Outcome {
        Status status;
        std::string name;
    };
    std::vector<Outcome> outcomes(config.samples);

    ClassifyOptions copts;
    copts.closed = config.closed;
    copts.shorten.move_budget = config.move_budget;

    auto work = [&](long long begin, long long end) {
        for (long long i = begin; i < end; ++i) {
            try {
                Multicurve m = track.to_multicurve(weights[i]);
                Classification c = classify(track.tri(), m, copts);
                bool keep = true;
                if (config.filter == Filter::CurvesOnly) keep = c.components == 1;
                else if (config.filter == Filter::PrimitiveOnly) keep = c.primitive;
                outcomes[i] = {keep ? Status::Retained : Status::Filtered, std::move(c.name)};
            } catch (const std::exception& ex) {
                std::ostringstream os;
                os << "sample " << i << " excluded (" << ex.what() << "); weights:";
                for (long long x : weights[i]) os << ' ' << x;
                std::cerr << os.str() << "\n";
                outcomes[i] = {Status::Errored, ""};
            }
        }
    };
    int workers = std::max(1, config.workers);
    if (workers == 1) {
        work(0, config.samples);
    } else {
        std::vector<std::thread> pool;
        long long chunk = (config.samples + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            long long b = t * chunk, e = std::min<long long>(config.samples, b + chunk);
            if (b >= e) break;
            pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    DistributionReport rep;
    rep.config = config;
    rep.point_count = sampler.total().str();
    std::map<std::string, long long> counts;
    for (const auto& o : outcomes) {
        switch (o.status) {
            case Status::Retained:
                ++rep.retained;
                ++counts[o.name];
                break;
            case Status::Filtered: ++rep.filtered_out; break;
            case Status::Errored: ++rep.errored; break;
        }
    }
    for (const auto& [name, count] : counts) {
        ReportRow row;
        row.name = name;
        row.count = count;
        row.fraction = rep.retained ? static_cast<double>(count) / rep.retained : 0.0;
        auto [lo, hi] = wilson99(count, rep.retained);
        row.wilson_lo = lo;
        row.wilson_hi = hi;
        rep.rows.push_back(std::move(row));
    }
    std::sort(rep.rows.begin(), rep.rows.end(), [](const ReportRow& a, const ReportRow& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.name < b.name;
    });
    return rep;
}

long long DistributionReport::count_of(const std::string& name) const {
    for (const auto& r : rows)
        if (r.name == name) return r.count;
    return 0;
}

std::string DistributionReport::csv() const {
    std::ostringstream os;
    os << "name,count,fraction\n";
    os.setf(std::ios::fixed);
    os.precision(9);
    for (const auto& r : rows) os << '"' << r.name << "\"," << r.count << ',' << r.fraction << '\n';
    return os.str();
}

std::string DistributionReport::json() const {
    nlohmann::json j;
    j["config"] = {{"track", config.track_path},
                   {"length", config.length_bound},
                   {"samples", config.samples},
                   {"seed", config.seed},
                   {"filter", filter_name(config.filter)},
                   {"closed", config.closed},
                   {"workers", config.workers}};
    j["point_count"] = point_count;
    j["retained"] = retained;
    j["filtered_out"] = filtered_out;
    j["errored"] = errored;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"name", r.name},
                             {"count", r.count},
                             {"fraction", r.fraction},
                             {"wilson99", {r.wilson_lo, r.wilson_hi}}});
    }
    return j.dump(2);
}

Comparison compare(const DistributionReport& report,
                   const std::vector<std::pair<std::string, double>>& expected) {
    double sum = 0;
    for (const auto& [name, frac] : expected) sum += frac;
    if (std::fabs(sum - 1.0) > 1e-6)
        throw TrackError("expected fractions must sum to 1 over the filtered support");
    Comparison cmp;
    double n = static_cast<double>(report.retained);
    for (const auto& [name, frac] : expected) {
        CompareRow row;
        row.name = name;
        row.observed = report.count_of(name);
        row.observed_fraction = n > 0 ? row.observed / n : 0;
        row.expected_fraction = frac;
        row.deviation_pp = 100.0 * (row.observed_fraction - frac);
        double e = n * frac;
        if (e > 0) cmp.chi_square += (row.observed - e) * (row.observed - e) / e;
        cmp.rows.push_back(std::move(row));
    }
    for (const auto& r : report.rows) {
        bool known = false;
        for (const auto& [name, frac] : expected)
            if (name == r.name) {
                known = true;
                break;
            }
        if (!known) cmp.unexpected.push_back(r.name);
    }
    cmp.dof = static_cast<int>(expected.size()) - 1;
    cmp.p_value = chi_squared_pvalue(cmp.chi_square, cmp.dof);
    return cmp;
}

std::vector<std::pair<std::string, double>> load_expected(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TrackError("cannot open expected table: " + path);
    std::vector<std::pair<std::string, double>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.rfind(',');
        if (comma == std::string::npos) throw TrackError("expected table: need name,fraction");
        std::string name = line.substr(0, comma);
        if (name.size() >= 2 && name.front() == '"' && name.back() == '"')
            name = name.substr(1, name.size() - 2);
        std::string frac = line.substr(comma + 1);
        double value;
        auto slash = frac.find('/');
        if (slash != std::string::npos) {
            value = std::stod(frac.substr(0, slash)) / std::stod(frac.substr(slash + 1));
        } else {
            value = std::stod(frac);
        }
        out.emplace_back(std::move(name), value);
    }
    return out;
}

}  // namespace trackstat
