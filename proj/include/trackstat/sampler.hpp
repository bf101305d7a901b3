#pragma once

#include <optional>
#include <vector>

#include "trackstat/bigint.hpp"
#include "trackstat/polytope.hpp"
#include "trackstat/track.hpp"

namespace trackstat {

class SamplerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lexicographic unranking of the integral points of a length polytope.
//
// When the track's switch structure admits a branch order whose partial
// switch sums collapse to a single scalar interface (at most two switches
// half-processed at any prefix), extraction runs as a level-synchronous
// dynamic program over (interface value, budget consumed) tables, which
// keeps desk-scale length bounds tractable. Otherwise extraction falls back
// to bisection with the generic exact counter.
class TrackSampler {
public:
    TrackSampler(const TrainTrack& track, long long length_bound);

    const BigInt& total() const { return total_; }
    bool fast() const { return fast_; }

    // weight vectors of the index-th points, zero-based lexicographic
    std::vector<std::vector<long long>> extract(const std::vector<BigInt>& indices) const;
    std::vector<long long> extract_one(const BigInt& index) const;

private:
    struct Level {
        int alpha = 1;  // r' = alpha*r + beta*v
        int beta = 0;
        enum class Mode { Free, Zero, Forced } mode = Mode::Free;
        int sv = 0;  // Forced: v = sv * r
    };

    void compile(const TrainTrack& track);
    std::vector<std::vector<long long>> extract_fast(const std::vector<BigInt>& indices) const;

    long long length_bound_;
    int num_branches_;
    bool fast_ = false;
    std::vector<Level> levels_;
    std::optional<Polytope> polytope_;  // generic fallback
    BigInt total_;
};

}  // namespace trackstat
