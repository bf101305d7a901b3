#pragma once

// Brute-force reference enumeration for small polytopes. Evaluates the
// constraint rows directly so it shares no code with the counting path.

#include <functional>
#include <utility>
#include <vector>

#include "trackstat/polytope.hpp"

namespace testsupport {

using trackstat::BigInt;
using trackstat::Polytope;
using trackstat::Rel;

inline bool oracle_satisfies(const Polytope& P, const std::vector<long long>& p) {
    for (const auto& c : P.constraints()) {
        BigInt v = 0;
        for (int i = 0; i < P.ambient_dim(); ++i) v += c.coeffs[i] * p[i];
        if (c.rel == Rel::Ge ? v < c.bound : v != c.bound) return false;
    }
    return true;
}

// all integral points inside the given closed box that satisfy P, in
// lexicographic order
inline std::vector<std::vector<long long>> oracle_enumerate(
    const Polytope& P, const std::vector<std::pair<long long, long long>>& box) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> p(P.ambient_dim());
    std::function<void(int)> rec = [&](int d) {
        if (d == P.ambient_dim()) {
            if (oracle_satisfies(P, p)) out.push_back(p);
            return;
        }
        for (long long v = box[d].first; v <= box[d].second; ++v) {
            p[d] = v;
            rec(d + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace testsupport
