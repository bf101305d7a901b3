#include "trackstat/surfaces.hpp"

namespace trackstat {

namespace {

Triangulation from_pairs(int slots, std::initializer_list<std::pair<int, int>> pairs, int genus,
                         int punctures) {
    std::vector<int> glued(slots, -1);
    for (auto [a, b] : pairs) {
        glued[a] = b;
        glued[b] = a;
    }
    Triangulation T(std::move(glued));
    auto eu = T.euler_data();
    if (eu.size() != 1 || eu[0].genus != genus || eu[0].punctures != punctures)
        throw SurfaceError("surface builder produced the wrong surface");
    return T;
}

}  // namespace

Triangulation once_punctured_torus() {
    return from_pairs(6, {{0, 3}, {1, 4}, {2, 5}}, 1, 1);
}

Triangulation twice_punctured_torus() {
    // subdivide one triangle of the punctured torus around a new puncture
    return from_pairs(12,
                      {{0, 3}, {1, 6}, {2, 9}, {4, 8}, {7, 11}, {10, 5}},
                      1, 2);
}

Triangulation six_punctured_sphere() {
    // octahedron: triangles 0..3 around the north pole, 4..7 around the south
    std::vector<std::pair<int, int>> pairs;
    for (int t = 0; t < 4; ++t) {
        pairs.emplace_back(3 * t, 3 * (4 + t));                          // equator
        pairs.emplace_back(3 * t + 2, 3 * ((t + 3) % 4) + 1);            // north edges
        pairs.emplace_back(3 * (4 + t) + 2, 3 * (4 + (t + 1) % 4) + 1);  // south edges
    }
    std::vector<int> glued(24, -1);
    for (auto [a, b] : pairs) {
        glued[a] = b;
        glued[b] = a;
    }
    Triangulation T(std::move(glued));
    auto eu = T.euler_data();
    if (eu.size() != 1 || eu[0].genus != 0 || eu[0].punctures != 6)
        throw SurfaceError("surface builder produced the wrong surface");
    return T;
}

Triangulation genus_two_once_punctured() {
    // octagon a b a' b' c d c' d' with a fan of diagonals from vertex 0
    return from_pairs(18,
                      {{0, 6}, {1, 5}, {2, 3}, {4, 8}, {7, 11}, {9, 15}, {10, 14}, {12, 16},
                       {13, 17}},
                      2, 1);
}

}  // namespace trackstat
