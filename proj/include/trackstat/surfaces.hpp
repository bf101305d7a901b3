#pragma once

#include "trackstat/triangulation.hpp"

namespace trackstat {

// explicit ideal triangulations used by the shipped data and the tests
Triangulation once_punctured_torus();        // S_{1,1}: 2 triangles
Triangulation twice_punctured_torus();       // S_{1,2}: 4 triangles
Triangulation six_punctured_sphere();        // S_{0,6}: octahedron
Triangulation genus_two_once_punctured();    // S_{2,1}: octagon fan

}  // namespace trackstat
