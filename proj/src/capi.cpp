#include "trackstat.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "trackstat/experiment.hpp"
#include "trackstat/rng.hpp"
#include "trackstat/sampler.hpp"
#include "trackstat/shorten.hpp"
#include "trackstat/track.hpp"

using namespace trackstat;

struct ts_track {
    TrainTrack track;
};

struct ts_report {
    DistributionReport report;
};

namespace {

thread_local std::string g_last_error = "no error";

ts_status fail(ts_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
ts_status guarded(F&& f) {
    try {
        return f();
    } catch (const BudgetError& e) {
        return fail(TS_EBUDGET, e.what());
    } catch (const TrackError& e) {
        return fail(TS_EVALID, e.what());
    } catch (const SurfaceError& e) {
        return fail(TS_EVALID, e.what());
    } catch (const PolytopeError& e) {
        return fail(TS_EVALID, e.what());
    } catch (const SamplerError& e) {
        return fail(TS_EVALID, e.what());
    } catch (const std::exception& e) {
        return fail(TS_EINTERNAL, e.what());
    }
}

}  // namespace

extern "C" {

const char* ts_last_error(void) { return g_last_error.c_str(); }

void ts_string_free(char* s) { std::free(s); }

ts_status ts_track_load(const char* path, ts_track** out) {
    if (!path || !out) return fail(TS_EINVAL, "null argument");
    return guarded([&]() {
        try {
            auto t = TrainTrack::load(path);
            *out = new ts_track{std::move(t)};
            return TS_OK;
        } catch (const SurfaceError& e) {
            return fail(TS_EPARSE, e.what());
        } catch (const TrackError& e) {
            std::string w = e.what();
            if (w.find("cannot open") != std::string::npos) return fail(TS_EIO, w);
            return fail(TS_EVALID, w);
        }
    });
}

void ts_track_free(ts_track* track) { delete track; }

ts_status ts_track_info(const ts_track* track, int* genus, int* punctures, int* branches,
                        int* carried_dim) {
    if (!track) return fail(TS_EINVAL, "null track");
    return guarded([&]() {
        auto eu = track->track.tri().euler_data();
        if (genus) *genus = eu[0].genus;
        if (punctures) *punctures = eu[0].punctures;
        if (branches) *branches = track->track.num_branches();
        if (carried_dim) *carried_dim = track->track.carried_dimension();
        return TS_OK;
    });
}

ts_status ts_track_dimension_check(const ts_track* track, int closed, int* ok) {
    if (!track || !ok) return fail(TS_EINVAL, "null argument");
    return guarded([&]() {
        *ok = track->track.carried_dimension_check(closed != 0) ? 1 : 0;
        return TS_OK;
    });
}

ts_status ts_track_count(const ts_track* track, long long length_bound, char** count) {
    if (!track || !count) return fail(TS_EINVAL, "null argument");
    return guarded([&]() {
        TrackSampler sampler(track->track, length_bound);
        *count = dup_string(sampler.total().str());
        return TS_OK;
    });
}

ts_status ts_track_sample(const ts_track* track, long long length_bound, uint64_t seed,
                          long long* weights, int weights_len) {
    if (!track || !weights) return fail(TS_EINVAL, "null argument");
    if (weights_len != track->track.num_branches())
        return fail(TS_EINVAL, "weights buffer length must equal the branch count");
    return guarded([&]() {
        TrackSampler sampler(track->track, length_bound);
        if (sampler.total() == 0) return fail(TS_EEMPTY, "no carried multicurves at this length");
        Rng rng = Rng::stream(seed, 0);
        BigInt index = rng.uniform_below(sampler.total());
        auto w = sampler.extract_one(index);
        for (int i = 0; i < weights_len; ++i) weights[i] = w[i];
        return TS_OK;
    });
}

ts_status ts_track_classify(const ts_track* track, const long long* weights, int weights_len,
                            int closed, char** name) {
    if (!track || !weights || !name) return fail(TS_EINVAL, "null argument");
    if (weights_len != track->track.num_branches())
        return fail(TS_EINVAL, "weight count must equal the branch count");
    return guarded([&]() {
        std::vector<long long> w(weights, weights + weights_len);
        Multicurve m = track->track.to_multicurve(w);
        ClassifyOptions opts;
        opts.closed = closed != 0;
        Classification c = classify(track->track.tri(), m, opts);
        *name = dup_string(c.name);
        return TS_OK;
    });
}

ts_status ts_run(const ts_track* track, const ts_run_params* params, ts_report** out) {
    if (!track || !params || !out) return fail(TS_EINVAL, "null argument");
    if (params->samples < 1) return fail(TS_EINVAL, "sample count must be positive");
    if (params->filter < 0 || params->filter > 2) return fail(TS_EINVAL, "unknown filter");
    return guarded([&]() {
        ExperimentConfig cfg;
        cfg.length_bound = params->length_bound;
        cfg.samples = params->samples;
        cfg.seed = params->seed;
        cfg.filter = static_cast<Filter>(params->filter);
        cfg.closed = params->closed != 0;
        cfg.workers = params->workers > 0 ? params->workers : 1;
        auto rep = run_experiment(track->track, cfg);
        *out = new ts_report{std::move(rep)};
        return TS_OK;
    });
}

void ts_report_free(ts_report* report) { delete report; }

ts_status ts_report_counts(const ts_report* report, long long* retained, long long* filtered_out,
                           long long* errored) {
    if (!report) return fail(TS_EINVAL, "null report");
    if (retained) *retained = report->report.retained;
    if (filtered_out) *filtered_out = report->report.filtered_out;
    if (errored) *errored = report->report.errored;
    return TS_OK;
}

ts_status ts_report_num_rows(const ts_report* report, int* rows) {
    if (!report || !rows) return fail(TS_EINVAL, "null argument");
    *rows = static_cast<int>(report->report.rows.size());
    return TS_OK;
}

ts_status ts_report_row(const ts_report* report, int index, const char** name, long long* count,
                        double* fraction) {
    if (!report) return fail(TS_EINVAL, "null report");
    if (index < 0 || index >= static_cast<int>(report->report.rows.size()))
        return fail(TS_EINVAL, "row index out of range");
    const auto& row = report->report.rows[index];
    if (name) *name = row.name.c_str();
    if (count) *count = row.count;
    if (fraction) *fraction = row.fraction;
    return TS_OK;
}

ts_status ts_report_render(const ts_report* report, int format, char** text) {
    if (!report || !text) return fail(TS_EINVAL, "null argument");
    return guarded([&]() {
        *text = dup_string(format == 1 ? report->report.json() : report->report.csv());
        return TS_OK;
    });
}

ts_status ts_report_compare(const ts_report* report, const char* expected_path, char** text) {
    if (!report || !expected_path || !text) return fail(TS_EINVAL, "null argument");
    return guarded([&]() {
        auto expected = load_expected(expected_path);
        Comparison cmp = compare(report->report, expected);
        std::ostringstream os;
        os.setf(std::ios::fixed);
        os.precision(6);
        os << "chi_square " << cmp.chi_square << " dof " << cmp.dof << " p_value " << cmp.p_value
           << "\n";
        for (const auto& r : cmp.rows) {
            os << '"' << r.name << "\" observed " << r.observed << " (" << r.observed_fraction
               << ") expected " << r.expected_fraction << " deviation_pp " << r.deviation_pp
               << "\n";
        }
        for (const auto& name : cmp.unexpected) os << "unexpected \"" << name << "\"\n";
        *text = dup_string(os.str());
        return TS_OK;
    });
}

}  // extern "C"
