#pragma once

#include <optional>

#include "trackstat/triangulation.hpp"

namespace trackstat {

class BudgetError : public SurfaceError {
public:
    using SurfaceError::SurfaceError;
};

class EssentialityError : public SurfaceError {
public:
    using SurfaceError::SurfaceError;
};

// One isotopy class of a short multicurve: a component parallel to `edge`,
// with the number of parallel copies it carries. Components that are
// parallel to a puncture instead carry the vertex id; those only appear
// where peripheral pieces are meaningful (mid-crush, around scars).
struct ShortComponent {
    Multicurve coords;
    long long multiplicity = 1;
    int edge = -1;
    int vertex = -1;
};

struct ShortForm {
    Triangulation tri;
    Multicurve coords;
    std::vector<ShortComponent> components;
    long long moves = 0;
};

long long num_components(const ShortForm& sf);
bool is_primitive(const ShortForm& sf);

// All curves that are parallel to an edge: the components of each edge's
// link, tagged with the edge. Peripheral or otherwise inessential pieces are
// dropped.
std::vector<std::pair<int, Multicurve>> parallel_candidates(const Triangulation& T);

// If every component of m is parallel to some edge, return the
// decomposition. Throws EssentialityError when a component is peripheral,
// unless allow_peripheral is set, in which case such components are matched
// to their puncture.
std::optional<ShortForm> detect_short(const Triangulation& T, const Multicurve& m,
                                      bool allow_peripheral = false);

struct ShortenOptions {
    long long move_budget = 10'000'000;
    int plateau_cap = 50'000;  // distinct states explored per plateau
};

// Flip greedily until every component of the multicurve is parallel to an
// edge. Total weight never increases along the move sequence.
ShortForm shorten(Triangulation T, Multicurve m, const ShortenOptions& opts = {});

}  // namespace trackstat
