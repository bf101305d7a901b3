#pragma once

#include <string>
#include <vector>

#include "trackstat/polytope.hpp"
#include "trackstat/triangulation.hpp"

namespace trackstat {

class TrackError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A train track presented as a selection of triangle corners: branch i is a
// normal arc through corner `corners[i]`, and every edge side acts as a gate,
// so each edge of the base triangulation meeting the track contributes one
// switch condition.
class TrainTrack {
public:
    TrainTrack(Triangulation tri, std::vector<int> corners);

    const Triangulation& tri() const { return tri_; }
    const std::vector<int>& corners() const { return corners_; }
    int num_branches() const { return static_cast<int>(corners_.size()); }

    // switch rows over the branch variables, one per edge met by the track
    std::vector<std::vector<int>> switch_rows() const;

    Polytope carrying_polytope() const;
    Polytope length_polytope(long long length_bound) const;

    // edge weights induced by branch weights; checks the switch conditions
    Multicurve to_multicurve(const std::vector<long long>& weights) const;
    // corner weights of a multicurve restricted to the selected corners
    std::vector<long long> carried_weights(const Multicurve& m) const;

    int carried_dimension() const;
    // dimension equals 6g-6+2n of the base surface; with `closed` the base
    // models a closed surface via one artificial puncture, so n = 0
    bool carried_dimension_check(bool closed = false) const;

    static TrainTrack load(const std::string& path);
    void save(const std::string& path, const std::string& tri_path) const;

private:
    Triangulation tri_;
    std::vector<int> corners_;
};

}  // namespace trackstat
