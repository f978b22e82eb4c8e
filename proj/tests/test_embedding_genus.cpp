#include <catch2/catch_amalgamated.hpp>

#include <climits>
#include <functional>
#include <random>

#include "fixtures.hpp"
#include "trisurf/embedding_genus.hpp"

using namespace trisurf;

namespace {

SimpleGraph complete_graph(Vertex n, Vertex offset = 0) {
    SimpleGraph g;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) g.add_edge(offset + i, offset + j);
    return g;
}

SimpleGraph k33() {
    SimpleGraph g;
    for (Vertex i = 0; i < 3; ++i)
        for (Vertex j = 3; j < 6; ++j) g.add_edge(i, j);
    return g;
}

// Independent oracle: enumerate every signed rotation system outright
// (first rotation entry fixed per vertex, spanning-tree signatures fixed
// to +1) and take the minimum Euler genus.  Only usable on tiny graphs;
// exists to cross-check the branch-and-bound search.
int raw_min_genus(const SimpleGraph& g) {
    std::size_t n = g.vertex_count();
    std::vector<std::vector<Vertex>> rot(n);
    for (Vertex v = 0; v < n; ++v) {
        auto& nb = g.neighbors(v);
        rot[v].assign(nb.begin(), nb.end());
    }
    std::vector<std::pair<Vertex, Vertex>> nontree;
    {
        std::vector<bool> visited(n, false);
        std::vector<Vertex> order{0};
        visited[0] = true;
        std::set<std::pair<Vertex, Vertex>> tree;
        for (std::size_t h = 0; h < order.size(); ++h)
            for (Vertex w : g.neighbors(order[h]))
                if (!visited[w]) {
                    visited[w] = true;
                    order.push_back(w);
                    tree.insert(std::minmax(order[h], w));
                }
        for (Vertex v = 0; v < n; ++v)
            for (Vertex w : g.neighbors(v))
                if (v < w && !tree.count({v, w})) nontree.push_back({v, w});
    }
    int best = INT_MAX;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == n) {
            for (std::uint64_t mask = 0; mask < (1ull << nontree.size()); ++mask) {
                std::map<std::pair<Vertex, Vertex>, int> sig;
                for (std::size_t k = 0; k < nontree.size(); ++k)
                    if (mask >> k & 1) sig[nontree[k]] = -1;
                auto m = CombinatorialMap::from_rotations(rot, sig);
                best = std::min(best, m.euler_genus());
            }
            return;
        }
        // all cyclic orders: permute everything after the first entry
        std::sort(rot[v].begin() + 1, rot[v].end());
        do {
            rec(v + 1);
        } while (std::next_permutation(rot[v].begin() + 1, rot[v].end()));
    };
    rec(0);
    return best;
}

}  // namespace

TEST_CASE("compatibility is a shared-vertex threshold") {
    CHECK(are_compatible(complete_graph(5), complete_graph(5, 10)));
    CHECK(are_compatible(complete_graph(5), complete_graph(5, 3)));
    CHECK_FALSE(are_compatible(complete_graph(5), complete_graph(5, 2)));
    auto k7 = std::get<Triangulation>(validate_triangulation(fixtures::k7_torus_map()));
    auto gu = k7.graph().closed_neighborhood_subgraph(0);
    auto gv = k7.graph().closed_neighborhood_subgraph(1);
    CHECK_FALSE(are_compatible(gu, gv));
}

TEST_CASE("planarity of the classics") {
    CHECK(is_planar(complete_graph(4)));
    CHECK_FALSE(is_planar(complete_graph(5)));
    CHECK_FALSE(is_planar(k33()));
    auto oct = fixtures::make_triangulation(fixtures::octahedron_faces());
    CHECK(is_planar(oct.graph()));
    CHECK(is_planar(SimpleGraph{}));
}

TEST_CASE("genus oracle on known graphs") {
    CHECK(brute_force_euler_genus(complete_graph(4)) == 0);
    CHECK(brute_force_euler_genus(complete_graph(5)) == 1);
    CHECK(brute_force_euler_genus(k33()) == 1);
    CHECK(brute_force_euler_genus(complete_graph(6)) == 1);
    CHECK_THROWS_AS(brute_force_euler_genus(complete_graph(5), 10), budget_exceeded);
}

TEST_CASE("genus oracle agrees with raw enumeration") {
    CHECK(raw_min_genus(complete_graph(4)) == 0);
    CHECK(raw_min_genus(complete_graph(5)) == 1);
    CHECK(raw_min_genus(k33()) == 1);
    std::mt19937 rng(11);
    for (int iter = 0; iter < 12; ++iter) {
        SimpleGraph g;
        Vertex n = 5;
        for (Vertex v = 0; v < n; ++v) g.add_vertex(v);
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j)
                if (rng() % 2) g.add_edge(i, j);
        // raw oracle needs every vertex incident to an edge
        for (Vertex v = 0; v < n; ++v)
            if (g.degree(v) == 0) g.add_edge(v, (v + 1) % n);
        if (!g.is_connected()) continue;
        CHECK(brute_force_euler_genus(g) == raw_min_genus(g));
    }
}

TEST_CASE("genus is superadditive over compatible unions") {
    auto k5a = complete_graph(5);
    SECTION("disjoint") {
        CHECK(brute_force_euler_genus(graph_union(k5a, complete_graph(5, 5))) == 2);
    }
    SECTION("one shared vertex") {
        CHECK(brute_force_euler_genus(graph_union(k5a, complete_graph(5, 4))) >= 2);
    }
    SECTION("two shared vertices") {
        CHECK(brute_force_euler_genus(graph_union(k5a, complete_graph(5, 3))) >= 2);
    }
}

TEST_CASE("tree representation validation") {
    TreeRepresentation empty;
    CHECK(validate_tree_representation(empty) == 0);

    TreeRepresentation single;
    single.nodes.push_back({-1, -1, complete_graph(6)});
    single.root = 0;
    CHECK(validate_tree_representation(single) == 1);

    TreeRepresentation pair;
    pair.nodes.push_back({-1, -1, complete_graph(5)});
    pair.nodes.push_back({-1, -1, complete_graph(5, 3)});
    pair.nodes.push_back({0, 1, std::nullopt});
    pair.root = 2;
    CHECK(validate_tree_representation(pair) == 2);

    TreeRepresentation clash;
    clash.nodes.push_back({-1, -1, complete_graph(5)});
    clash.nodes.push_back({-1, -1, complete_graph(5, 2)});
    clash.nodes.push_back({0, 1, std::nullopt});
    clash.root = 2;
    CHECK_THROWS_WITH(validate_tree_representation(clash),
                      Catch::Matchers::ContainsSubstring("internal node 2"));
}

TEST_CASE("closed neighbourhoods of irreducible triangulations are nonplanar") {
    auto k6 = fixtures::make_triangulation(fixtures::k6_projective_faces());
    CHECK(check_positive_genus_lemma(k6).ok());

    auto k7 = std::get<Triangulation>(validate_triangulation(fixtures::k7_torus_map()));
    CHECK(check_positive_genus_lemma(k7).ok());

    auto ico = fixtures::make_triangulation(fixtures::icosahedron_faces());
    // every G_v of the icosahedron is a wheel: planar and with rim
    // degree 3, so both lemma conclusions fail at every vertex
    auto rep = check_positive_genus_lemma(ico);
    CHECK(rep.violations.size() == 24);
    std::set<Vertex> flagged;
    for (auto& v : rep.violations) flagged.insert(v.vertex);
    CHECK(flagged.size() == 12);
}
