#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trackstat/classify.hpp"
#include "trackstat/track.hpp"

namespace trackstat {

enum class Filter { None, CurvesOnly, PrimitiveOnly };

struct ExperimentConfig {
    std::string track_path;  // echoed into reports
    long long length_bound = 0;
    long long samples = 0;
    std::uint64_t seed = 0;
    Filter filter = Filter::None;
    bool closed = false;
    int workers = 1;
    long long move_budget = 10'000'000;
};

struct ReportRow {
    std::string name;
    long long count = 0;
    double fraction = 0;
    double wilson_lo = 0, wilson_hi = 0;  // 99% interval on the fraction
};

struct DistributionReport {
    ExperimentConfig config;
    std::string point_count;  // |s_tau(L)| in decimal
    long long retained = 0, filtered_out = 0, errored = 0;
    std::vector<ReportRow> rows;

    std::string csv() const;
    std::string json() const;
    long long count_of(const std::string& name) const;
};

// n uniform samples, filtered and classified; deterministic for a fixed
// seed no matter how many workers run
DistributionReport run_experiment(const TrainTrack& track, const ExperimentConfig& config);

struct CompareRow {
    std::string name;
    long long observed = 0;
    double observed_fraction = 0;
    double expected_fraction = 0;
    double deviation_pp = 0;  // percentage points
};

struct Comparison {
    double chi_square = 0;
    int dof = 0;
    double p_value = 1;
    std::vector<CompareRow> rows;
    std::vector<std::string> unexpected;  // observed but absent from the table
};

Comparison compare(const DistributionReport& report,
                   const std::vector<std::pair<std::string, double>>& expected);

// expected-table file: one "name,fraction" per line, fraction a/b or decimal
std::vector<std::pair<std::string, double>> load_expected(const std::string& path);

// 99% Wilson score interval
std::pair<double, double> wilson99(long long successes, long long trials);
// upper tail of the chi-squared distribution
double chi_squared_pvalue(double stat, int dof);

}  // namespace trackstat
