#pragma once

// Randomized bounded polytopes for property tests: explicit box rows keep
// them bounded and hand the oracle its enumeration region.

#include <utility>
#include <vector>

#include "trackstat/polytope.hpp"
#include "trackstat/rng.hpp"

namespace testsupport {

struct RandomPolytope {
    trackstat::Polytope P;
    std::vector<std::pair<long long, long long>> box;
};

inline RandomPolytope random_polytope(trackstat::Rng& rng, int max_dim = 4) {
    using trackstat::BigInt;
    using trackstat::LinearConstraint;
    int dim = 1 + static_cast<int>(rng.uniform_u64(max_dim));
    int max_width = dim >= 4 ? 16 : 18;  // keep the box volume within 1e5
    trackstat::Polytope P(dim);
    std::vector<std::pair<long long, long long>> box;
    for (int d = 0; d < dim; ++d) {
        long long lo = -9 + static_cast<long long>(rng.uniform_u64(10));
        long long hi = lo + static_cast<long long>(rng.uniform_u64(max_width + 1));
        hi = std::min<long long>(hi, 9);
        box.emplace_back(lo, hi);
        std::vector<BigInt> a(dim, 0);
        a[d] = 1;
        P.add(LinearConstraint::ge(a, lo));
        std::vector<BigInt> b(dim, 0);
        b[d] = -1;
        P.add(LinearConstraint::ge(b, -hi));
    }
    // an interior point keeps some of the extra rows satisfiable
    std::vector<long long> anchor(dim);
    for (int d = 0; d < dim; ++d)
        anchor[d] = box[d].first +
                    static_cast<long long>(rng.uniform_u64(box[d].second - box[d].first + 1));
    int extra = static_cast<int>(rng.uniform_u64(4));
    for (int r = 0; r < extra; ++r) {
        std::vector<BigInt> a(dim);
        bool nonzero = false;
        long long at_anchor = 0;
        for (int d = 0; d < dim; ++d) {
            long long c = -9 + static_cast<long long>(rng.uniform_u64(19));
            a[d] = c;
            at_anchor += c * anchor[d];
            if (c != 0) nonzero = true;
        }
        if (!nonzero) continue;
        if (rng.uniform_u64(4) == 0) {
            P.add(LinearConstraint::eq(a, at_anchor));
        } else {
            long long slack = static_cast<long long>(rng.uniform_u64(7));
            P.add(LinearConstraint::ge(a, at_anchor - slack));
        }
    }
    return {std::move(P), std::move(box)};
}

}  // namespace testsupport
