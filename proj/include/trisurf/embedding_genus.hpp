#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "trisurf/graph.hpp"

namespace trisurf {

inline bool are_compatible(const SimpleGraph& g1, const SimpleGraph& g2) {
    return set_intersection(g1.vertex_set(), g2.vertex_set()).size() <= 2;
}

inline bool is_planar(const SimpleGraph& g) {
    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    std::map<Vertex, std::size_t> index;
    for (Vertex v : g.vertices()) index.emplace(v, index.size());
    BoostGraph bg(index.size());
    for (Vertex v : g.vertices())
        for (Vertex w : g.neighbors(v))
            if (v < w) boost::add_edge(index[v], index[w], bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Exact Euler genus of one connected graph by branch and bound over
/// signed rotation systems.  Edges are inserted one at a time (spanning
/// tree first, signatures on the tree fixed to +1); partially embedded
/// maps already have well-defined Euler genus and it never decreases
/// under edge insertion, which gives the pruning rule.
class GenusSearch {
public:
    GenusSearch(const SimpleGraph& g, std::uint64_t budget) : budget_(budget) {
        // Relabel vertices in BFS discovery order and insert edges grouped
        // by their larger endpoint.  Every prefix is then a connected
        // induced subgraph, so dense parts of the graph are finished
        // before new parts open up, which is what makes the genus-based
        // pruning bite.
        n_ = static_cast<int>(g.vertex_count());
        rot_.resize(n_);
        std::map<Vertex, int> index;
        std::vector<Vertex> order{*g.vertices().begin()};
        index.emplace(order[0], 0);
        std::map<Vertex, Vertex> parent;
        for (std::size_t head = 0; head < order.size(); ++head)
            for (Vertex w : g.neighbors(order[head]))
                if (index.emplace(w, static_cast<int>(index.size())).second) {
                    order.push_back(w);
                    parent[w] = order[head];
                }
        std::set<std::pair<int, int>> tree;
        for (auto& [w, p] : parent) tree.insert(std::minmax(index[w], index[p]));
        for (Vertex v : g.vertices())
            for (Vertex w : g.neighbors(v))
                if (v < w) {
                    auto [a, b] = std::minmax(index[v], index[w]);
                    edges_.push_back({a, b});
                }
        std::sort(edges_.begin(), edges_.end(),
                  [](const std::array<int, 2>& x, const std::array<int, 2>& y) {
                      return std::pair(x[1], x[0]) < std::pair(y[1], y[0]);
                  });
        is_tree_.resize(edges_.size());
        for (std::size_t i = 0; i < edges_.size(); ++i)
            is_tree_[i] = tree.count(std::minmax(edges_[i][0], edges_[i][1])) > 0;
        sign_.assign(edges_.size(), 1);
    }

    int run(int upper_bound_hint) {
        best_ = upper_bound_hint;
        dfs(0);
        return best_;
    }

    std::uint64_t nodes_explored() const { return nodes_; }

private:
    struct Choice {
        int genus;
        int pu, pv, sign;
    };

    void dfs(std::size_t ei) {
        if (ei == edges_.size()) {
            best_ = std::min(best_, current_genus());
            return;
        }
        auto [u, v] = edges_[ei];
        int nu = std::max<int>(1, static_cast<int>(rot_[u].size()));
        int nv = std::max<int>(1, static_cast<int>(rot_[v].size()));
        std::vector<Choice> choices;
        for (int pu = 0; pu < nu; ++pu)
            for (int pv = 0; pv < nv; ++pv)
                for (int s : {1, -1}) {
                    if (is_tree_[ei] && s < 0) continue;
                    if (++nodes_ > budget_)
                        throw budget_exceeded(
                            "brute_force_euler_genus: exceeded budget of " +
                            std::to_string(budget_) + " search nodes");
                    insert(ei, u, v, pu, pv, s);
                    int pg = current_genus();
                    if (pg < best_) choices.push_back({pg, pu, pv, s});
                    remove(ei, u, v, pu, pv);
                }
        std::stable_sort(choices.begin(), choices.end(),
                         [](const Choice& a, const Choice& b) { return a.genus < b.genus; });
        for (auto& c : choices) {
            if (c.genus >= best_) continue;
            insert(ei, u, v, c.pu, c.pv, c.sign);
            dfs(ei + 1);
            remove(ei, u, v, c.pu, c.pv);
        }
    }

    void insert(std::size_t ei, int u, int v, int pu, int pv, int s) {
        rot_[u].insert(rot_[u].begin() + pu, static_cast<int>(2 * ei));
        rot_[v].insert(rot_[v].begin() + pv, static_cast<int>(2 * ei + 1));
        sign_[ei] = s;
    }

    void remove(std::size_t ei, int u, int v, int pu, int pv) {
        rot_[u].erase(rot_[u].begin() + pu);
        rot_[v].erase(rot_[v].begin() + pv);
    }

    /// Euler genus of the currently inserted, connected partial map:
    /// 2 - n + e - f with faces traced in the orientation double cover.
    int current_genus() const {
        int e = 0, active = 0;
        std::vector<int> pos_succ, pos_pred;  // sigma over darts, by dart id
        int max_dart = static_cast<int>(2 * edges_.size());
        pos_succ.assign(max_dart, -1);
        pos_pred.assign(max_dart, -1);
        std::vector<int> dart_present(max_dart, 0);
        for (int v = 0; v < n_; ++v) {
            const auto& r = rot_[v];
            for (std::size_t k = 0; k < r.size(); ++k) {
                pos_succ[r[k]] = r[(k + 1) % r.size()];
                pos_pred[r[k]] = r[(k + r.size() - 1) % r.size()];
                dart_present[r[k]] = 1;
            }
            e += static_cast<int>(r.size());
            if (!r.empty()) ++active;
        }
        e /= 2;
        std::vector<std::uint8_t> seen(2 * max_dart, 0);
        int orbits = 0;
        for (int d = 0; d < max_dart; ++d) {
            if (!dart_present[d]) continue;
            for (int s = 0; s < 2; ++s) {
                if (seen[2 * d + s]) continue;
                ++orbits;
                int cd = d, cs = s;
                while (!seen[2 * cd + cs]) {
                    seen[2 * cd + cs] = 1;
                    int d2 = cd ^ 1;
                    int s2 = cs ^ (sign_[d2 / 2] < 0 ? 1 : 0);
                    cd = s2 == 0 ? pos_succ[d2] : pos_pred[d2];
                    cs = s2;
                }
            }
        }
        return 2 - active + e - orbits / 2;
    }

    int n_ = 0;
    std::vector<std::array<int, 2>> edges_;
    std::vector<char> is_tree_;
    std::vector<std::vector<int>> rot_;
    std::vector<int> sign_;
    int best_ = 0;
    std::uint64_t nodes_ = 0, budget_ = 0;
};

}  // namespace detail

/// Exact Euler genus of a simple graph.  The search is exhaustive up to
/// pruning by the partial-embedding lower bound; the budget caps the
/// number of explored search nodes, and exceeding it raises
/// budget_exceeded rather than returning an approximation.
inline int brute_force_euler_genus(const SimpleGraph& g,
                                   std::uint64_t budget = 10'000'000) {
    if (g.vertex_count() == 0) return 0;
    // genus is additive over connected components
    std::set<Vertex> unvisited = g.vertex_set();
    int total = 0;
    while (!unvisited.empty()) {
        std::vector<Vertex> stack{*unvisited.begin()};
        std::set<Vertex> comp;
        comp.insert(stack[0]);
        unvisited.erase(stack[0]);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (unvisited.erase(w)) {
                    comp.insert(w);
                    stack.push_back(w);
                }
        }
        SimpleGraph cg = g.induced(comp);
        if (cg.edge_count() == 0) continue;
        if (is_planar(cg)) continue;
        detail::GenusSearch search(cg, budget);
        // E - 3 V + 6 <= 3 g would also do; any valid upper bound works
        int ub = static_cast<int>(cg.edge_count());
        total += search.run(ub);
    }
    return total;
}

struct TreeRepresentation {
    struct Node {
        int left = -1, right = -1;                // children, internal nodes only
        std::optional<SimpleGraph> leaf_graph;    // set exactly on leaves
    };
    std::vector<Node> nodes;
    int root = -1;  // -1 encodes the empty tree
};

/// Certified lower bound on the Euler genus of the union, after checking
/// the structural invariants.  Leaf bounds: exact oracle value when the
/// (small) budget suffices, otherwise 1 for nonplanar and 0 for planar
/// leaves.
inline long validate_tree_representation(const TreeRepresentation& r,
                                         std::uint64_t leaf_budget = 200'000) {
    if (r.root == -1) return 0;
    long bound = 0;
    // post-order union computation with compatibility checks
    struct Frame {
        int node;
        bool expanded;
    };
    std::map<int, SimpleGraph> unions;
    std::vector<Frame> stack{{r.root, false}};
    while (!stack.empty()) {
        auto [x, expanded] = stack.back();
        stack.pop_back();
        if (x < 0 || x >= static_cast<int>(r.nodes.size()))
            throw invalid_input("tree representation: node index out of range");
        const auto& node = r.nodes[x];
        bool is_leaf = node.leaf_graph.has_value();
        if (is_leaf != (node.left == -1 && node.right == -1))
            throw invalid_input("tree representation: node " + std::to_string(x) +
                                " is neither a leaf nor binary internal");
        if (is_leaf) {
            unions.emplace(x, *node.leaf_graph);
            const auto& g = *node.leaf_graph;
            try {
                bound += brute_force_euler_genus(g, leaf_budget);
            } catch (const budget_exceeded&) {
                bound += is_planar(g) ? 0 : 1;
            }
            continue;
        }
        if (node.left == -1 || node.right == -1)
            throw invalid_input("tree representation: internal node " +
                                std::to_string(x) + " lacks two children");
        if (!expanded) {
            stack.push_back({x, true});
            stack.push_back({node.left, false});
            stack.push_back({node.right, false});
            continue;
        }
        const auto& ga = unions.at(node.left);
        const auto& gb = unions.at(node.right);
        if (!are_compatible(ga, gb))
            throw invalid_input("tree representation: children of internal node " +
                                std::to_string(x) + " share more than two vertices");
        unions.emplace(x, graph_union(ga, gb));
    }
    return bound;
}

struct LemmaViolation {
    Vertex vertex;
    std::string what;
};

struct LemmaReport {
    std::vector<LemmaViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// For an irreducible triangulation of positive genus, every closed
/// neighbourhood subgraph G_v must have minimum degree >= 4 and be
/// nonplanar.  Violations indicate either a reducible input or a bug.
template <class TriangulationT>
LemmaReport check_positive_genus_lemma(const TriangulationT& t) {
    LemmaReport rep;
    const auto& g = t.graph();
    for (Vertex v : g.vertices()) {
        if (g.degree(v) < 4) {
            rep.violations.push_back({v, "degree below 4"});
            continue;
        }
        SimpleGraph gv = g.closed_neighborhood_subgraph(v);
        if (gv.min_degree() < 4)
            rep.violations.push_back({v, "G_v has minimum degree below 4"});
        if (is_planar(gv))
            rep.violations.push_back({v, "G_v is planar"});
    }
    return rep;
}

}  // namespace trisurf
