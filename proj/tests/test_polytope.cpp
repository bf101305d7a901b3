#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "gen.hpp"
#include "oracle.hpp"
#include "trackstat/experiment.hpp"
#include "trackstat/polytope.hpp"
#include "trackstat/rng.hpp"

using namespace trackstat;
using testsupport::oracle_enumerate;
using testsupport::random_polytope;

namespace {

Polytope pentagon() {
    // x >= 1, y >= 1, x + y <= 5
    Polytope P(2);
    P.add(LinearConstraint::ge({1, 0}, 1));
    P.add(LinearConstraint::ge({0, 1}, 1));
    P.add(LinearConstraint::le({1, 1}, 5));
    return P;
}

Polytope switch_toy() {
    // x1 + x2 = x3, x_i >= 1, x1 + x2 + x3 <= 8
    Polytope P(3);
    P.add(LinearConstraint::eq({1, 1, -1}, 0));
    for (int i = 0; i < 3; ++i) {
        std::vector<BigInt> a(3, 0);
        a[i] = 1;
        P.add(LinearConstraint::ge(a, 1));
    }
    P.add(LinearConstraint::le({1, 1, 1}, 8));
    return P;
}

std::vector<std::pair<long long, long long>> generous_box(int dim, long long lo, long long hi) {
    return std::vector<std::pair<long long, long long>>(dim, {lo, hi});
}

}  // namespace

TEST_CASE("contains") {
    Polytope P = pentagon();
    CHECK(P.contains({1, 1}));
    CHECK_FALSE(P.contains({5, 1}));
    Polytope Q = switch_toy();
    CHECK(Q.contains({1, 1, 2}));
    CHECK_FALSE(Q.contains({1, 1, 3}));
    CHECK_THROWS_AS(P.contains({1, 1, 1}), PolytopeError);
}

TEST_CASE("bounding boxes are tight") {
    auto box = pentagon().bounding_box();
    CHECK(box[0].lo == 1);
    CHECK(box[0].hi == 4);
    CHECK(box[1].lo == 1);
    CHECK(box[1].hi == 4);

    Polytope single(1);
    single.add(LinearConstraint::eq({1}, 3));
    auto sbox = single.bounding_box();
    CHECK(sbox[0].lo == 3);
    CHECK(sbox[0].hi == 3);

    // exact per-coordinate extremes, cross-checked by enumeration
    Polytope Q = switch_toy();
    auto qbox = Q.bounding_box();
    auto pts = oracle_enumerate(Q, generous_box(3, -10, 10));
    for (int d = 0; d < 3; ++d) {
        long long lo = 1000, hi = -1000;
        for (const auto& p : pts) {
            lo = std::min(lo, p[d]);
            hi = std::max(hi, p[d]);
        }
        CHECK(qbox[d].lo == lo);
        CHECK(qbox[d].hi == hi);
    }
    CHECK(qbox[0].hi == 3);
    CHECK(qbox[2].lo == 2);
    CHECK(qbox[2].hi == 4);

    Polytope unbounded(2);
    unbounded.add(LinearConstraint::ge({1, 0}, 0));
    CHECK_THROWS_AS(unbounded.bounding_box(), PolytopeError);

    // bounded but not by interval propagation alone
    Polytope rotated(2);
    rotated.add(LinearConstraint::ge({1, 1}, 0));
    rotated.add(LinearConstraint::le({1, 1}, 4));
    rotated.add(LinearConstraint::ge({1, -1}, 0));
    rotated.add(LinearConstraint::le({1, -1}, 4));
    auto rbox = rotated.bounding_box();
    CHECK(rbox[0].lo == 0);
    CHECK(rbox[0].hi == 4);
    CHECK(rbox[1].lo == -2);
    CHECK(rbox[1].hi == 2);
}

TEST_CASE("count matches the brute-force oracle on the worked examples") {
    CHECK(pentagon().count() == 10);

    Polytope empty(1);
    empty.add(LinearConstraint::ge({1}, 1));
    empty.add(LinearConstraint::le({1}, 0));
    CHECK(empty.count() == 0);

    Polytope Q = switch_toy();
    CHECK(Q.count() == 6);
    CHECK(oracle_enumerate(Q, generous_box(3, -10, 10)).size() == 6);
}

TEST_CASE("intersect") {
    Polytope P = pentagon();
    Polytope cut = P.intersect(LinearConstraint::lt({1, 0}, 2));
    auto pts = oracle_enumerate(cut, generous_box(2, -10, 10));
    CHECK(pts.size() == 4);
    CHECK(cut.count() == 4);
    for (const auto& p : pts) CHECK(p[0] == 1);

    Polytope same = P.intersect(LinearConstraint::ge({0, 0}, 0));
    CHECK(same.count() == P.count());

    Polytope below = P.intersect(LinearConstraint::lt({1, 0}, 1));
    CHECK(below.count() == 0);
}

TEST_CASE("lexicographic extraction") {
    Polytope P = pentagon();
    auto p0 = P.ith_point(0);
    CHECK(p0 == IntPoint{1, 1});
    auto p4 = P.ith_point(4);
    CHECK(p4 == IntPoint{2, 1});

    auto pts = oracle_enumerate(P, generous_box(2, -10, 10));
    std::sort(pts.begin(), pts.end());
    REQUIRE(pts.size() == 10);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto p = P.ith_point(i);
        for (int d = 0; d < 2; ++d) CHECK(p[d] == pts[i][d]);
    }
    CHECK_THROWS_AS(P.ith_point(10), PolytopeError);
    CHECK_THROWS_AS(P.ith_point(-1), PolytopeError);

    Polytope single(1);
    single.add(LinearConstraint::eq({1}, 3));
    CHECK(single.ith_point(0) == IntPoint{3});
}

TEST_CASE("slice additivity and monotonicity") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        auto rp = random_polytope(rng);
        BigInt total = rp.P.count();
        int d = static_cast<int>(rng.uniform_u64(rp.P.ambient_dim()));
        long long g = rp.box[d].first +
                      static_cast<long long>(rng.uniform_u64(rp.box[d].second - rp.box[d].first + 1));
        std::vector<BigInt> a(rp.P.ambient_dim(), 0);
        a[d] = 1;
        BigInt below = rp.P.intersect(LinearConstraint::lt(a, g)).count();
        std::vector<BigInt> b(rp.P.ambient_dim(), 0);
        b[d] = 1;
        BigInt above = rp.P.intersect(LinearConstraint::ge(b, g)).count();
        CHECK(below + above == total);
        CHECK(below <= total);
    }
}

TEST_CASE("oracle equivalence on random bounded polytopes") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto rp = random_polytope(rng);
        auto pts = oracle_enumerate(rp.P, rp.box);
        CHECK(rp.P.count() == BigInt(pts.size()));
    }
}

TEST_CASE("enumeration consistency on random polytopes") {
    Rng rng(6);
    int done = 0;
    while (done < 8) {
        auto rp = random_polytope(rng, 3);
        auto pts = oracle_enumerate(rp.P, rp.box);
        if (pts.empty() || pts.size() > 400) continue;
        std::sort(pts.begin(), pts.end());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto p = rp.P.ith_point(i);
            for (int d = 0; d < rp.P.ambient_dim(); ++d) CHECK(p[d] == pts[i][d]);
        }
        ++done;
    }
}

TEST_CASE("uniform sampling: determinism and chi-square") {
    Polytope P = pentagon();
    Rng rng1(99), rng2(99);
    for (int i = 0; i < 50; ++i) {
        auto a = P.sample_uniform(rng1);
        auto b = P.sample_uniform(rng2);
        CHECK(a == b);
    }

    Polytope single(1);
    single.add(LinearConstraint::eq({1}, 3));
    Rng rng3(1);
    for (int i = 0; i < 5; ++i) CHECK(single.sample_uniform(rng3) == IntPoint{3});

    std::map<IntPoint, long long> freq;
    Rng rng(2024);
    const int draws = 50000;
    for (int i = 0; i < draws; ++i) ++freq[P.sample_uniform(rng)];
    CHECK(freq.size() == 10);
    double expected = draws / 10.0;
    double stat = 0;
    for (const auto& [pt, n] : freq) stat += (n - expected) * (n - expected) / expected;
    double p = chi_squared_pvalue(stat, 9);
    CHECK(p > 0.001);

    Polytope empty(1);
    empty.add(LinearConstraint::ge({1}, 1));
    empty.add(LinearConstraint::le({1}, 0));
    Rng rng4(3);
    CHECK_THROWS_AS(empty.sample_uniform(rng4), PolytopeError);
}

TEST_CASE("complexity") {
    Polytope zero(2);
    zero.add(LinearConstraint::ge({0, 0}, 0));
    CHECK(zero.complexity() == doctest::Approx(0.0));

    Polytope one(1);
    one.add(LinearConstraint::ge({1}, 2));
    CHECK(one.complexity() == doctest::Approx(std::log(2.0)));

    CHECK(pentagon().complexity() == doctest::Approx(std::log(5.0)));
}

TEST_CASE("debug dump") {
    Polytope P(2);
    P.add(LinearConstraint::ge({1, -2}, 3));
    P.add(LinearConstraint::eq({0, 1}, 4));
    std::string d = P.dump();
    CHECK(d.find(">=") != std::string::npos);
    CHECK(d.find("=") != std::string::npos);
    CHECK(d.find("-2") != std::string::npos);
}
