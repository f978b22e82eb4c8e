#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "trisurf/ops.hpp"

using namespace trisurf;

TEST_CASE("common neighbours") {
    auto k4 = fixtures::make_triangulation(fixtures::k4_faces());
    CHECK(common_neighbors(k4, 0, 1).size() == 2);
    auto k6 = fixtures::make_triangulation(fixtures::k6_projective_faces());
    CHECK(common_neighbors(k6, 0, 1).size() == 4);
    auto oct = fixtures::make_triangulation(fixtures::octahedron_faces());
    CHECK(common_neighbors(oct, 0, 1).size() == 2);
    CHECK_THROWS_AS(common_neighbors(oct, 0, 5), invalid_input);
}

TEST_CASE("edge contraction outcomes") {
    auto k4 = fixtures::make_triangulation(fixtures::k4_faces());
    auto out = contract_edge(k4, 0, 1);
    CHECK_FALSE(out.valid);
    CHECK(out.failure_reason == ContractionFailure::PostValidation);

    auto oct = fixtures::make_triangulation(fixtures::octahedron_faces());
    auto oc = contract_edge(oct, 0, 1);
    REQUIRE(oc.valid);
    CHECK(oc.result->map().vertex_count() == 5);
    CHECK(oc.result->map().edge_count() == 9);
    CHECK(oc.result->faces().size() == 6);
    CHECK(oc.result->euler_genus() == 0);

    auto k6 = fixtures::make_triangulation(fixtures::k6_projective_faces());
    auto kc = contract_edge(k6, 0, 1);
    CHECK_FALSE(kc.valid);
    CHECK(kc.failure_reason == ContractionFailure::CommonNeighborCount);
}

TEST_CASE("valid contraction shrinks V,E,F by 1,3,2") {
    auto ico = fixtures::make_triangulation(fixtures::icosahedron_faces());
    auto out = contract_edge(ico, 0, 1);
    REQUIRE(out.valid);
    CHECK(out.result->map().vertex_count() == ico.map().vertex_count() - 1);
    CHECK(out.result->map().edge_count() == ico.map().edge_count() - 3);
    CHECK(out.result->faces().size() == ico.faces().size() - 2);
    CHECK(out.result->euler_genus() == 0);
    CHECK(out.result->orientable());
}

TEST_CASE("split then contract is the identity") {
    auto oct = fixtures::make_triangulation(fixtures::octahedron_faces());
    // all splits of all vertices of the octahedron
    for (Vertex v = 0; v < 6; ++v) {
        auto rot = oct.map().rotation(v);
        for (std::size_t i = 0; i < rot.size(); ++i) {
            for (std::size_t j = 0; j < rot.size(); ++j) {
                if (i == j) continue;
                std::size_t keep = (j + rot.size() - i) % rot.size() + 1;
                std::size_t other = rot.size() - keep + 2;
                if (keep < 2 || other < 2) continue;
                auto split = split_vertex(oct, {v, rot[i], rot[j]});
                CHECK(split.map().vertex_count() == 7);
                CHECK(split.euler_genus() == 0);
                Vertex w = 6;
                auto back = contract_edge(split, v, w);
                REQUIRE(back.valid);
                CHECK(back.result->face_triples() == oct.face_triples());
            }
        }
    }
}

TEST_CASE("splitting a degree-6 vertex of the icosahedron is rejected, degree-5 works") {
    auto ico = fixtures::make_triangulation(fixtures::icosahedron_faces());
    auto rot = ico.map().rotation(1);
    REQUIRE(rot.size() == 5);
    // 2/5 arc split
    auto split = split_vertex(ico, {1, rot[0], rot[1]});
    CHECK(split.map().vertex_count() == 13);
    CHECK(split.map().edge_count() == 33);
    CHECK(split.faces().size() == 22);
    CHECK(split.euler_genus() == 0);
    // one-dart arc is malformed
    CHECK_THROWS_AS(split_vertex(ico, {1, rot[0], rot[0]}), invalid_input);
}

TEST_CASE("irreducibility of the small classics") {
    auto k4 = fixtures::make_triangulation(fixtures::k4_faces());
    CHECK(is_irreducible(k4).irreducible);

    auto ico = fixtures::make_triangulation(fixtures::icosahedron_faces());
    auto r = is_irreducible(ico);
    CHECK_FALSE(r.irreducible);
    REQUIRE(r.contractible_edge.has_value());

    auto k6 = fixtures::make_triangulation(fixtures::k6_projective_faces());
    CHECK(is_irreducible(k6).irreducible);

    auto k7 = std::get<Triangulation>(validate_triangulation(fixtures::k7_torus_map()));
    CHECK(is_irreducible(k7).irreducible);
}

TEST_CASE("facial triangles are contractible") {
    auto ico = fixtures::make_triangulation(fixtures::icosahedron_faces());
    for (auto& tri : ico.face_triples())
        CHECK(cycle_is_contractible(ico, tri[0], tri[1], tri[2]));

    auto k6 = fixtures::make_triangulation(fixtures::k6_projective_faces());
    // K6 has 20 triangles but only 10 faces; some non-facial triangle is
    // non-contractible
    std::set<std::array<Vertex, 3>> facial;
    for (auto& f : k6.face_triples()) facial.insert(f);
    int noncontractible = 0;
    for (Vertex a = 0; a < 6; ++a)
        for (Vertex b = a + 1; b < 6; ++b)
            for (Vertex c = b + 1; c < 6; ++c) {
                if (facial.count({a, b, c})) {
                    CHECK(cycle_is_contractible(k6, a, b, c));
                } else if (!cycle_is_contractible(k6, a, b, c)) {
                    ++noncontractible;
                }
            }
    CHECK(noncontractible > 0);
    CHECK_THROWS_AS(cycle_is_contractible(k6, 0, 1, 99), invalid_input);
}

TEST_CASE("crosscheck agrees with is_irreducible") {
    auto k6 = fixtures::make_triangulation(fixtures::k6_projective_faces());
    CHECK(irreducibility_crosscheck(k6));

    auto k7 = std::get<Triangulation>(validate_triangulation(fixtures::k7_torus_map()));
    CHECK(irreducibility_crosscheck(k7));

    // splitting K7 gives a reducible torus triangulation
    auto rot = k7.map().rotation(0);
    auto split = split_vertex(k7, {0, rot[0], rot[2]});
    CHECK_FALSE(is_irreducible(split).irreducible);
    CHECK_FALSE(irreducibility_crosscheck(split));

    auto k4 = fixtures::make_triangulation(fixtures::k4_faces());
    CHECK_THROWS_AS(irreducibility_crosscheck(k4), invalid_input);
}
