#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trackstat/bigint.hpp"
#include "trackstat/rng.hpp"

namespace trackstat {

using IntPoint = std::vector<BigInt>;

enum class Rel { Ge, Eq };

// One row a.x >= b or a.x == b over the ambient integer lattice.
// Strict inequalities are normalized at construction (a.x < b over the
// integers is -a.x >= 1-b), so only the two kinds exist internally.
struct LinearConstraint {
    std::vector<BigInt> coeffs;
    BigInt bound;
    Rel rel = Rel::Ge;

    static LinearConstraint ge(std::vector<BigInt> a, BigInt b);
    static LinearConstraint eq(std::vector<BigInt> a, BigInt b);
    static LinearConstraint le(std::vector<BigInt> a, BigInt b);
    static LinearConstraint lt(std::vector<BigInt> a, BigInt b);

    bool trivial() const;  // all coefficients zero
};

struct Interval {
    BigInt lo, hi;  // inclusive
    bool empty() const { return lo > hi; }
    BigInt width() const { return hi - lo + 1; }
};

class PolytopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Polytope {
public:
    explicit Polytope(int ambient_dim) : dim_(ambient_dim) {
        if (ambient_dim <= 0) throw PolytopeError("ambient dimension must be positive");
    }
    Polytope(int ambient_dim, std::vector<LinearConstraint> cons);

    int ambient_dim() const { return dim_; }
    const std::vector<LinearConstraint>& constraints() const { return cons_; }

    void add(LinearConstraint c);
    Polytope intersect(const LinearConstraint& c) const;

    bool contains(const IntPoint& p) const;

    // Tight per-coordinate bounds on the integral points. Throws
    // PolytopeError if the polytope is unbounded in some direction.
    std::vector<Interval> bounding_box() const;

    // Exact number of integral points. Deterministic; memoized internally.
    BigInt count() const;

    // The i-th integral point in lexicographic coordinate order, zero-based.
    IntPoint ith_point(const BigInt& index) const;

    // Uniform over the integral points, exactly 1/|P| each.
    IntPoint sample_uniform(Rng& rng) const;

    // sum of log|entry| over the constraint system, log 0 taken as 0
    double complexity() const;

    // one constraint per line: "a1 a2 ... aD  >=|=  b"
    std::string dump() const;

private:
    int dim_;
    std::vector<LinearConstraint> cons_;
};

}  // namespace trackstat
