#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "trisurf/surface_map.hpp"

using namespace trisurf;
using fixtures::Triple;

TEST_CASE("K4 tetrahedron is a sphere triangulation") {
    auto t = fixtures::make_triangulation(fixtures::k4_faces());
    CHECK(t.map().trace_faces().size() == 4);
    CHECK(t.euler_genus() == 0);
    CHECK(t.orientable());
    CHECK(t.graph().edge_count() == 6);
}

TEST_CASE("K6 projective-plane embedding") {
    auto t = fixtures::make_triangulation(fixtures::k6_projective_faces());
    CHECK(t.map().trace_faces().size() == 10);
    CHECK(t.euler_genus() == 1);
    CHECK_FALSE(t.orientable());
    CHECK(t.graph().edge_count() == 15);
}

TEST_CASE("K7 toroidal rotation system") {
    auto m = fixtures::k7_torus_map();
    auto faces = m.trace_faces();
    CHECK(faces.size() == 14);
    for (auto& f : faces) CHECK(f.size() == 3);
    CHECK(m.euler_genus() == 2);
    CHECK(m.orientable());
    auto v = validate_triangulation(m);
    REQUIRE(std::holds_alternative<Triangulation>(v));
    CHECK(std::get<Triangulation>(v).euler_genus() == 2);
}

TEST_CASE("theta-sphere fails the face-pair condition") {
    auto v = validate_triangulation(fixtures::theta_sphere());
    REQUIRE(std::holds_alternative<ValidationError>(v));
    CHECK(std::get<ValidationError>(v).violation ==
          Violation::FacePairSharesMultipleEdges);
}

TEST_CASE("from_face_list detects non-manifold edges") {
    std::vector<Triple> bad = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
    auto r = from_face_list(bad);
    REQUIRE(std::holds_alternative<ValidationError>(r));
    CHECK(std::get<ValidationError>(r).violation == Violation::EdgeNotInTwoFaces);
}

TEST_CASE("face trace partitions dart sides") {
    for (auto& faces : {fixtures::k4_faces(), fixtures::octahedron_faces(),
                        fixtures::icosahedron_faces(), fixtures::k6_projective_faces()}) {
        auto t = fixtures::make_triangulation(faces);
        std::size_t total = 0;
        for (auto& f : t.faces()) total += f.size();
        CHECK(total == 2 * t.map().edge_count());
        // Euler relation |E| = 3(|V| + g - 2)
        CHECK(t.map().edge_count() ==
              3 * (t.map().vertex_count() + t.euler_genus() - 2));
    }
}

TEST_CASE("round trip through face lists") {
    for (auto& faces : {fixtures::octahedron_faces(), fixtures::k6_projective_faces(),
                        fixtures::icosahedron_faces()}) {
        auto t = fixtures::make_triangulation(faces);
        auto triples = t.face_triples();
        auto t2 = fixtures::make_triangulation(triples);
        CHECK(t2.face_triples() == triples);
        CHECK(t2.euler_genus() == t.euler_genus());
        CHECK(t2.orientable() == t.orientable());
    }
}

TEST_CASE("genus invariant under rotation flip with signature toggle") {
    auto t = fixtures::make_triangulation(fixtures::k6_projective_faces());
    const auto& m = t.map();
    std::mt19937 rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        Vertex flip = rng() % m.vertex_count();
        std::vector<std::vector<Vertex>> rot;
        std::map<std::pair<Vertex, Vertex>, int> sig;
        for (Vertex v = 0; v < m.vertex_count(); ++v) {
            auto r = m.rotation(v);
            if (v == flip) std::reverse(r.begin(), r.end());
            rot.push_back(r);
        }
        for (std::uint32_t e = 0; e < m.edge_count(); ++e) {
            auto [u, v] = m.edge_ends(e);
            int s = m.signature(e);
            if (u == flip || v == flip) s = -s;
            sig[std::minmax(u, v)] = s;
        }
        auto m2 = CombinatorialMap::from_rotations(rot, sig);
        CHECK(m2.euler_genus() == m.euler_genus());
        CHECK(m2.orientable() == m.orientable());
        CHECK(m2.trace_faces().size() == m.trace_faces().size());
    }
}

TEST_CASE("graph queries on embedded graphs") {
    auto t = fixtures::make_triangulation(fixtures::k6_projective_faces());
    const auto& g = t.graph();
    for (Vertex v = 0; v < 6; ++v) {
        CHECK(g.degree(v) == 5);
        auto gv = g.closed_neighborhood_subgraph(v);
        CHECK(gv.vertex_count() == 6);
        CHECK(gv.edge_count() == 15);
    }
    CHECK(g.edge_count_between({0, 1}, {}) == 0);
    CHECK(g.edge_count_within({0, 1, 2}) == 3);
    CHECK(g.edge_count_between({0, 1}, {2, 3}) == 4);

    auto k7 = validate_triangulation(fixtures::k7_torus_map());
    auto& tg = std::get<Triangulation>(k7).graph();
    for (Vertex v = 0; v < 7; ++v) CHECK(tg.degree(v) == 6);
    CHECK_THROWS_AS(tg.neighbors(99), invalid_input);
}
