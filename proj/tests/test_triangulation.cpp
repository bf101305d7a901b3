#include <doctest.h>

#include <set>

#include "trackstat/surfaces.hpp"
#include "trackstat/triangulation.hpp"

using namespace trackstat;

TEST_CASE("standard surfaces have the right invariants") {
    auto t11 = once_punctured_torus();
    auto e11 = t11.euler_data();
    REQUIRE(e11.size() == 1);
    CHECK(e11[0].vertices == 1);
    CHECK(e11[0].edges == 3);
    CHECK(e11[0].faces == 2);
    CHECK(e11[0].chi == -1);
    CHECK(e11[0].genus == 1);
    CHECK(e11[0].punctures == 1);

    auto t12 = twice_punctured_torus();
    auto e12 = t12.euler_data();
    CHECK(e12[0].genus == 1);
    CHECK(e12[0].punctures == 2);
    CHECK(e12[0].edges == 6);
    CHECK(e12[0].chi == -2);

    auto t06 = six_punctured_sphere();
    auto e06 = t06.euler_data();
    CHECK(e06[0].genus == 0);
    CHECK(e06[0].punctures == 6);
    CHECK(e06[0].edges == 12);
    CHECK(e06[0].chi == -4);

    auto t21 = genus_two_once_punctured();
    auto e21 = t21.euler_data();
    CHECK(e21[0].genus == 2);
    CHECK(e21[0].punctures == 1);
    CHECK(e21[0].edges == 9);
    CHECK(e21[0].faces == 6);
    CHECK(e21[0].chi == -3);
}

TEST_CASE("parse and serialize round-trip") {
    auto T = twice_punctured_torus();
    std::string text = T.serialize();
    auto U = Triangulation::parse(text);
    CHECK(U.num_triangles() == T.num_triangles());
    CHECK(U.num_vertices() == T.num_vertices());
    CHECK(U.euler_data()[0].genus == 1);

    CHECK_THROWS_AS(Triangulation::parse("surface 1 1\n1 2 3\n1 2 3\n"), SurfaceError);
    CHECK_THROWS_AS(Triangulation::parse("surface 1 1\n1 2 3\n-1 -2 3\n"), SurfaceError);
    CHECK_THROWS_AS(Triangulation::parse("1 2 3\n-1 -2 -3\n"), SurfaceError);
    // header that contradicts the gluing
    CHECK_THROWS_AS(Triangulation::parse("surface 0 3\n1 2 3\n-1 -2 -3\n"), SurfaceError);
}

TEST_CASE("corner weights") {
    auto T = once_punctured_torus();
    // sides (2,1,1): corner opposite the weight-2 side is 0
    Multicurve m{{2, 1, 1}};
    // triangle 0 sides are edges 0,1,2 in slot order
    CHECK(corner_weight(T, m, 0) == 0);
    CHECK(corner_weight(T, m, 1) == 1);
    CHECK(corner_weight(T, m, 2) == 1);

    Multicurve sym{{2, 2, 2}};
    for (int c = 0; c < 6; ++c) CHECK(corner_weight(T, sym, c) == 1);

    // sides (4,3,1): corners 0, 1 and 3 against the formula, and the corner
    // sums reproduce the side weights
    Multicurve odd{{4, 3, 1}};
    CHECK(corner_weight(T, odd, 0) == 0);
    CHECK(corner_weight(T, odd, 1) == 1);
    CHECK(corner_weight(T, odd, 2) == 3);
    for (int s = 0; s < 3; ++s) {
        long long a = corner_weight(T, odd, (s + 1) % 3);
        long long b = corner_weight(T, odd, (s + 2) % 3);
        CHECK(a + b == odd.w[T.edge_of_slot(s)]);
    }

    Multicurve bad{{1, 1, 1}};
    CHECK_THROWS_AS(corner_weight(T, bad, 0), SurfaceError);
    std::string why;
    CHECK_FALSE(valid_multicurve(T, bad, &why));
}

TEST_CASE("flip: coordinates and involution") {
    auto T = once_punctured_torus();
    Multicurve m{{2, 1, 1}};
    REQUIRE(valid_multicurve(T, m));
    REQUIRE(T.flippable(0));
    auto [T2, m2] = flip(T, 0, m);
    // quadrilateral sides (1,1,1,1) with diagonal 2: the new diagonal is 0
    CHECK(m2.w[0] == 0);
    CHECK(m2.w[1] == 1);
    CHECK(m2.w[2] == 1);
    CHECK(valid_multicurve(T2, m2));
    auto e2 = T2.euler_data();
    CHECK(e2[0].genus == 1);
    CHECK(e2[0].punctures == 1);

    auto [T3, m3] = flip(T2, 0, m2);
    CHECK(m3.w == m.w);
    auto [T4, m4] = flip(T3, 0, m3);
    CHECK(m4.w == m2.w);

    // flip of a valid multicurve stays valid, for every flippable edge of a
    // couple of surfaces
    for (const Triangulation& S : {twice_punctured_torus(), genus_two_once_punctured()}) {
        Multicurve link = vertex_link(S, 0);
        if (!valid_multicurve(S, link)) continue;
        for (int e = 0; e < S.num_edges(); ++e) {
            if (!S.flippable(e)) continue;
            auto [S2, l2] = flip(S, e, link);
            CHECK(valid_multicurve(S2, l2));
            CHECK(S2.euler_data()[0].genus == S.euler_data()[0].genus);
            CHECK(S2.euler_data()[0].punctures == S.euler_data()[0].punctures);
        }
    }
}

TEST_CASE("edge links") {
    auto T = once_punctured_torus();
    Multicurve link0 = edge_link(T, 0);
    CHECK(link0.w == std::vector<long long>{0, 2, 2});
    // i(link(e), e) = 0 and links are valid multicurves
    for (int e = 0; e < 3; ++e) {
        Multicurve le = edge_link(T, e);
        CHECK(le.w[e] == 0);
        CHECK(valid_multicurve(T, le));
    }
}

TEST_CASE("tracing components") {
    auto T = once_punctured_torus();
    Multicurve one{{0, 1, 1}};
    auto c1 = trace_components(T, one);
    CHECK(c1.num_components() == 1);
    CHECK(c1.coords.size() == 1);

    Multicurve doubled{{0, 2, 2}};
    auto c2 = trace_components(T, doubled);
    CHECK(c2.num_components() == 2);
    CHECK(c2.coords.size() == 1);
    CHECK(c2.multiplicity[0] == 2);
    CHECK(c2.coords[0].w == one.w);

    // the peripheral curve around the puncture
    Multicurve peri = vertex_link(T, 0);
    CHECK(peri.w == std::vector<long long>{2, 2, 2});
    auto c3 = trace_components(T, peri);
    CHECK(c3.num_components() == 1);
    CHECK(is_peripheral(T, c3.coords[0]));
    CHECK_FALSE(is_peripheral(T, one));

    // a union of distinct slopes
    Multicurve mix{{2, 1, 3}};
    REQUIRE(valid_multicurve(T, mix));
    auto c4 = trace_components(T, mix);
    long long total = 0;
    for (std::size_t k = 0; k < c4.coords.size(); ++k)
        for (int e = 0; e < 3; ++e) total += c4.multiplicity[k] * c4.coords[k].w[e];
    CHECK(total == 6);
}

TEST_CASE("vertex tags survive flips") {
    auto T = twice_punctured_torus();
    std::vector<long long> tags{7, 9};
    T.set_vertex_tags(tags);
    for (int e = 0; e < T.num_edges(); ++e) {
        if (!T.flippable(e)) continue;
        Triangulation U = flip(T, e);
        std::multiset<long long> before(tags.begin(), tags.end());
        std::multiset<long long> after(U.vertex_tags().begin(), U.vertex_tags().end());
        CHECK(before == after);
    }
}
