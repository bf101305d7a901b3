// trackstat: sample multicurves carried by a train track and tabulate their
// topological types. Links only the public C interface.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trackstat.h"

namespace {

struct TrackDeleter {
    void operator()(ts_track* t) const { ts_track_free(t); }
};
struct ReportDeleter {
    void operator()(ts_report* r) const { ts_report_free(r); }
};

int die(const char* context) {
    std::fprintf(stderr, "trackstat: %s: %s\n", context, ts_last_error());
    return 2;
}

std::unique_ptr<ts_track, TrackDeleter> load_track(const std::string& path, bool quiet) {
    ts_track* raw = nullptr;
    if (ts_track_load(path.c_str(), &raw) != TS_OK) return nullptr;
    std::unique_ptr<ts_track, TrackDeleter> track(raw);
    int g = 0, n = 0, m = 0, dim = 0;
    if (ts_track_info(track.get(), &g, &n, &m, &dim) != TS_OK) return nullptr;
    if (!quiet)
        std::fprintf(stderr, "loaded track: genus %d, %d punctures, %d branches, carried dimension %d\n",
                     g, n, m, dim);
    return track;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniform multicurve sampling and classification on train tracks"};
    app.require_subcommand(1);

    std::string track_path, weights_arg, format = "csv", expected_path, output_path;
    long long length = 0, samples = 0;
    unsigned long long seed = 0;
    std::string filter = "none";
    bool closed = false;
    int workers = 1;

    auto* run = app.add_subcommand("run", "sample, classify and aggregate");
    run->add_option("--track", track_path, "track file")->required();
    run->add_option("--length", length, "length bound L")->required();
    run->add_option("--samples", samples, "number of samples")->required();
    run->add_option("--seed", seed, "master seed")->required();
    run->add_option("--filter", filter, "curves | primitive");
    run->add_flag("--closed", closed, "closed-surface naming via the artificial puncture");
    run->add_option("--format", format, "csv | json");
    run->add_option("--workers", workers, "worker threads");
    run->add_option("--expected", expected_path, "expected table to compare against");
    run->add_option("--output", output_path, "write the report here instead of stdout");

    auto* count = app.add_subcommand("count", "print |s_tau(L)|");
    count->add_option("--track", track_path, "track file")->required();
    count->add_option("--length", length, "length bound L")->required();

    auto* classify = app.add_subcommand("classify", "canonical name of carried weights");
    classify->add_option("--track", track_path, "track file")->required();
    classify->add_option("--weights", weights_arg, "comma-separated branch weights")->required();
    classify->add_flag("--closed", closed, "closed-surface naming via the artificial puncture");

    CLI11_PARSE(app, argc, argv);

    auto track = load_track(track_path, false);
    if (!track) return die("loading track");

    if (count->parsed()) {
        char* text = nullptr;
        if (ts_track_count(track.get(), length, &text) != TS_OK) return die("counting");
        std::printf("%s\n", text);
        ts_string_free(text);
        return 0;
    }

    if (classify->parsed()) {
        std::vector<long long> weights;
        std::stringstream ss(weights_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                weights.push_back(std::stoll(item));
            } catch (...) {
                std::fprintf(stderr, "trackstat: bad weight '%s'\n", item.c_str());
                return 2;
            }
        }
        char* name = nullptr;
        if (ts_track_classify(track.get(), weights.data(), static_cast<int>(weights.size()),
                              closed ? 1 : 0, &name) != TS_OK)
            return die("classifying");
        std::printf("%s\n", name);
        ts_string_free(name);
        return 0;
    }

    // run
    ts_run_params params{};
    params.length_bound = length;
    params.samples = samples;
    params.seed = seed;
    params.closed = closed ? 1 : 0;
    params.workers = workers;
    if (filter == "none") params.filter = 0;
    else if (filter == "curves") params.filter = 1;
    else if (filter == "primitive") params.filter = 2;
    else {
        std::fprintf(stderr, "trackstat: unknown filter '%s'\n", filter.c_str());
        return 2;
    }
    ts_report* raw = nullptr;
    if (ts_run(track.get(), &params, &raw) != TS_OK) return die("running experiment");
    std::unique_ptr<ts_report, ReportDeleter> report(raw);

    char* text = nullptr;
    if (ts_report_render(report.get(), format == "json" ? 1 : 0, &text) != TS_OK)
        return die("rendering report");
    if (output_path.empty()) {
        std::fputs(text, stdout);
    } else {
        std::FILE* f = std::fopen(output_path.c_str(), "w");
        if (!f) {
            std::fprintf(stderr, "trackstat: cannot write %s\n", output_path.c_str());
            ts_string_free(text);
            return 2;
        }
        std::fputs(text, f);
        std::fclose(f);
    }
    ts_string_free(text);

    if (!expected_path.empty()) {
        char* cmp = nullptr;
        if (ts_report_compare(report.get(), expected_path.c_str(), &cmp) != TS_OK)
            return die("comparing");
        std::fputs(cmp, stderr);
        ts_string_free(cmp);
    }
    return 0;
}
