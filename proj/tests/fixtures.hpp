#pragma once

#include <array>
#include <map>
#include <vector>

#include "trisurf/surface_map.hpp"

namespace fixtures {

using trisurf::Vertex;
using Triple = std::array<Vertex, 3>;

inline std::vector<Triple> k4_faces() {
    return {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
}

inline std::vector<Triple> octahedron_faces() {
    return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
            {1, 2, 5}, {2, 3, 5}, {3, 4, 5}, {1, 4, 5}};
}

inline std::vector<Triple> icosahedron_faces() {
    return {{0, 1, 2},  {0, 2, 3},  {0, 3, 4},  {0, 4, 5},  {0, 5, 1},
            {11, 6, 7}, {11, 7, 8}, {11, 8, 9}, {11, 9, 10}, {11, 10, 6},
            {1, 2, 7},  {2, 7, 8},  {2, 3, 8},  {3, 8, 9},  {3, 4, 9},
            {4, 9, 10}, {4, 5, 10}, {5, 10, 6}, {5, 1, 6},  {1, 6, 7}};
}

/// K6 embedded in the projective plane (antipodal icosahedron quotient).
inline std::vector<Triple> k6_projective_faces() {
    return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
            {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
}

/// Two triangles glued along all three edges: violates the face-pair
/// condition (theta-sphere on 3 vertices).
inline trisurf::CombinatorialMap theta_sphere() {
    std::vector<std::vector<Vertex>> rot{{1, 2}, {2, 0}, {0, 1}};
    return trisurf::CombinatorialMap::from_rotations(rot);
}

/// K7 on the torus via the classical rotation system
/// (row i: i+1, i+3, i+2, i+6, i+4, i+5 mod 7, all signatures +1).
inline trisurf::CombinatorialMap k7_torus_map() {
    std::vector<std::vector<Vertex>> rot;
    for (Vertex i = 0; i < 7; ++i)
        rot.push_back({static_cast<Vertex>((i + 1) % 7), static_cast<Vertex>((i + 3) % 7),
                       static_cast<Vertex>((i + 2) % 7), static_cast<Vertex>((i + 6) % 7),
                       static_cast<Vertex>((i + 4) % 7), static_cast<Vertex>((i + 5) % 7)});
    return trisurf::CombinatorialMap::from_rotations(rot);
}

inline trisurf::Triangulation make_triangulation(const std::vector<Triple>& faces) {
    auto r = trisurf::triangulation_from_faces(faces);
    return std::get<trisurf::Triangulation>(r);
}

}  // namespace fixtures
