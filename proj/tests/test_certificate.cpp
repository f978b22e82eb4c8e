#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "trisurf/certificate.hpp"

using namespace trisurf;

namespace {

Triangulation k7() {
    auto r = validate_triangulation(fixtures::k7_torus_map());
    return std::get<Triangulation>(r);
}

const InequalityEntry& entry(const CertificateResult& r, const std::string& id) {
    for (auto& e : r.entries)
        if (e.id == id) return e;
    FAIL("no entry " << id);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("phi ordering prefers low-degree surplus") {
    CHECK(phi_compare({1, 0, 0, 0, 0, 0}, {0, 9, 9, 9, 9, 9}) == 1);
    CHECK(phi_compare({0, 9, 9, 9, 9, 9}, {1, 0, 0, 0, 0, 0}) == -1);
    CHECK(phi_compare({0, 1, 2, 0, 0, 0}, {0, 1, 2, 0, 0, 0}) == 0);
    CHECK(phi_compare({0, 1, 0, 0, 0, 0}, {0, 0, 7, 7, 7, 7}) == 1);
}

TEST_CASE("positive genus is required") {
    auto ico = fixtures::make_triangulation(fixtures::icosahedron_faces());
    CHECK_THROWS_AS(build_simple_S(ico), invalid_input);
    CHECK_THROWS_AS(build_good_S(ico), invalid_input);
}

TEST_CASE("good set of K6 in the projective plane") {
    auto t = fixtures::make_triangulation(fixtures::k6_projective_faces());
    auto good = build_good_S(t);
    CHECK(good.S == std::set<Vertex>{0});
    CHECK(detail::phi_of(t, good.S) == PhiVector{0, 1, 0, 0, 0, 0});
    CHECK_FALSE(good.simple_mode);
    CHECK(lemma_move_stable(t, good));
    check_goodness(t, good);

    // the single leaf carries G_0 = K6; its genus bound equals g
    long bound = validate_tree_representation(good.tree);
    CHECK(bound == 1);
    CHECK(static_cast<long>(good.S.size()) <= bound);
    CHECK(bound <= t.euler_genus());

    auto rep = full_partition(t, good);
    CHECK(rep.g == 1);
    CHECK(rep.V == 6);
    CHECK(rep.N == std::set<Vertex>{1, 2, 3, 4, 5});
    CHECK(rep.A.empty());
    CHECK(rep.Z.empty());
    CHECK(rep.eSN == 5);
    CHECK(rep.eN == 10);
    CHECK(rep.per[5 - 4].U.size() == 5);
    CHECK(rep.per[5 - 4].c == 1);
    CHECK(rep.per[4 - 4].U.empty());
    CHECK(rep.per[4 - 4].W.size() == 5);

    auto result = verify_full_certificate(rep);
    CHECK(result.ok);
    CHECK_FALSE(result.degenerate);
    CHECK(entry(result, "Sg").gap == Rational(0));
    CHECK(entry(result, "N").gap == Rational(0));
    CHECK(entry(result, "4Vi.4").gap == Rational(0));
    for (auto& b : result.bounds) CHECK(b.holds);
}

TEST_CASE("good set of K7 on the torus") {
    auto t = k7();
    auto good = build_good_S(t);
    CHECK(good.S == std::set<Vertex>{0});
    CHECK(detail::phi_of(t, good.S) == PhiVector{0, 0, 1, 0, 0, 0});
    CHECK(lemma_move_stable(t, good));
    check_goodness(t, good);

    auto rep = full_partition(t, good);
    CHECK(rep.g == 2);
    CHECK(rep.V == 7);
    CHECK(rep.N.size() == 6);
    CHECK(rep.per[6 - 4].U.size() == 6);
    CHECK(rep.per[6 - 4].c == 1);

    auto values = to_values(rep);
    CHECK(values.at("eN") == 15);
    CHECK(values.at("c6") == 1);

    auto result = verify_full_certificate(rep);
    CHECK(result.ok);
    // (Components, i=6): 6 <= 1 + 5*1, equality
    CHECK(entry(result, "Components.6").gap == Rational(0));
    CHECK(entry(result, "Sg").gap == Rational(1));
    // (Bi, i=6) doubled: 2*(g - S + U_6 - 2c_6 - S_6) = 8
    CHECK(entry(result, "Bi.6").gap == Rational(8));
    for (auto& b : result.bounds) CHECK(b.holds);
}

TEST_CASE("simple certificates for K6 and K7") {
    auto t6 = fixtures::make_triangulation(fixtures::k6_projective_faces());
    auto g6 = build_simple_S(t6);
    CHECK(g6.simple_mode);
    CHECK(g6.S == std::set<Vertex>{0});
    auto r6 = verify_simple_certificate(full_partition(t6, g6));
    CHECK(r6.ok);
    REQUIRE(r6.bounds.size() == 1);
    CHECK(r6.bounds[0].lhs == 6);
    CHECK(r6.bounds[0].rhs == 13);

    auto t7 = k7();
    auto g7 = build_simple_S(t7);
    CHECK(g7.S == std::set<Vertex>{0});
    auto rep7 = full_partition(t7, g7);
    CHECK(rep7.simple_mode);
    auto r7 = verify_simple_certificate(rep7);
    CHECK(r7.ok);
    CHECK(entry(r7, "SN").gap == Rational(0));
    CHECK(entry(r7, "NN").gap == Rational(12));
    CHECK(entry(r7, "N6S").gap == Rational(0));
    CHECK(entry(r7, "WholeGraph.ge").gap == Rational(0));
    CHECK(r7.bounds[0].lhs == 7);
    CHECK(r7.bounds[0].rhs == 38);
}

TEST_CASE("mode mismatch is rejected") {
    auto t = fixtures::make_triangulation(fixtures::k6_projective_faces());
    auto rep_full = full_partition(t, build_good_S(t));
    auto rep_simple = full_partition(t, build_simple_S(t));
    CHECK_THROWS_AS(verify_simple_certificate(rep_full), invalid_input);
    CHECK_THROWS_AS(verify_full_certificate(rep_simple), invalid_input);
}
