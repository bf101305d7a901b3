#pragma once

#include <array>

#include "trackstat/shorten.hpp"
#include "trackstat/triangulation.hpp"

namespace trackstat {

// puncture tags created by crushing; original punctures keep small ids
constexpr long long kScarBase = 1'000'000;

struct CrushPiece {
    int genus = 0;
    std::vector<long long> punctures;  // tags, originals and scars mixed
    int chi() const { return 2 - 2 * genus - static_cast<int>(punctures.size()); }
};

struct CrushResult {
    std::vector<CrushPiece> pieces;
    // scars[j] = the two puncture tags cut open by component class j
    std::vector<std::array<long long, 2>> scars;
    std::vector<long long> multiplicities;
    // triangulated pieces that remain after all surgeries (pieces created as
    // known spheres-with-punctures are recorded only in `pieces`)
    std::vector<Triangulation> triangulated;

    int piece_of(long long tag) const;
};

// Cut the surface along one representative of every component class of the
// short multicurve and cone the resulting boundary circles to punctures.
CrushResult crush(const ShortForm& sf);

}  // namespace trackstat
