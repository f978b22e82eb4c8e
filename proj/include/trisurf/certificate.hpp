#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "trisurf/embedding_genus.hpp"
#include "trisurf/farkas.hpp"
#include "trisurf/ops.hpp"
#include "trisurf/surface_map.hpp"

namespace trisurf {

/// (|S_4|, ..., |S_9|); the search order prefers low-degree surplus.
using PhiVector = std::array<long long, 6>;

/// +1 when a comes strictly later in the ordering (a is better), -1 for
/// the reverse, 0 when equal.
inline int phi_compare(const PhiVector& a, const PhiVector& b) {
    for (int k = 0; k < 6; ++k) {
        if (a[k] > b[k]) return 1;
        if (a[k] < b[k]) return -1;
    }
    return 0;
}

/// Independent set with its maintained tree representation.  Leaves of
/// the tree carry the closed neighbourhood subgraphs G_u; leaf_vertex
/// records which member each leaf stands for.
struct GoodSet {
    bool simple_mode = false;
    std::set<Vertex> S;
    TreeRepresentation tree;
    std::map<int, Vertex> leaf_vertex;
};

namespace detail {

inline PhiVector phi_of(const Triangulation& t, const std::set<Vertex>& s) {
    PhiVector phi{};
    for (Vertex v : s) {
        std::size_t d = t.graph().degree(v);
        if (d < 4 || d > 9) throw std::logic_error("phi_of: member degree out of range");
        ++phi[d - 4];
    }
    return phi;
}

inline std::set<Vertex> members_of_degree_at_most(const Triangulation& t,
                                                  const std::set<Vertex>& s,
                                                  std::size_t i) {
    std::set<Vertex> out;
    for (Vertex v : s)
        if (t.graph().degree(v) <= i) out.insert(v);
    return out;
}

inline SimpleGraph neighborhood_union(const Triangulation& t,
                                      const std::set<Vertex>& s) {
    SimpleGraph h;
    for (Vertex v : s) h = graph_union(h, t.graph().closed_neighborhood_subgraph(v));
    return h;
}

/// Components of h as subgraphs, ordered by smallest vertex.
inline std::vector<SimpleGraph> graph_components(const SimpleGraph& h) {
    std::vector<SimpleGraph> comps;
    std::set<Vertex> unvisited = h.vertex_set();
    while (!unvisited.empty()) {
        std::vector<Vertex> stack{*unvisited.begin()};
        std::set<Vertex> comp{stack[0]};
        unvisited.erase(stack[0]);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : h.neighbors(v))
                if (unvisited.erase(w)) {
                    comp.insert(w);
                    stack.push_back(w);
                }
        }
        comps.push_back(h.induced(comp));
    }
    return comps;
}

struct TreeNodeInfo {
    std::set<Vertex> leaves;  // S members below this node
    SimpleGraph graph;        // G<x>
};

inline void collect_node_info(const TreeRepresentation& tree,
                              const std::map<int, Vertex>& leaf_vertex, int node,
                              std::map<int, TreeNodeInfo>& info) {
    const auto& n = tree.nodes.at(node);
    if (n.leaf_graph) {
        info[node] = {{leaf_vertex.at(node)}, *n.leaf_graph};
        return;
    }
    collect_node_info(tree, leaf_vertex, n.left, info);
    collect_node_info(tree, leaf_vertex, n.right, info);
    TreeNodeInfo me;
    me.leaves = info[n.left].leaves;
    me.leaves.insert(info[n.right].leaves.begin(), info[n.right].leaves.end());
    me.graph = graph_union(info[n.left].graph, info[n.right].graph);
    info[node] = std::move(me);
}

inline std::map<int, TreeNodeInfo> node_info(const TreeRepresentation& tree,
                                             const std::map<int, Vertex>& lv) {
    std::map<int, TreeNodeInfo> info;
    if (tree.root != -1) collect_node_info(tree, lv, tree.root, info);
    return info;
}

inline int copy_subtree(const TreeRepresentation& src,
                        const std::map<int, Vertex>& src_lv, int node,
                        TreeRepresentation& dst, std::map<int, Vertex>& dst_lv) {
    const auto& n = src.nodes.at(node);
    TreeRepresentation::Node copy;
    if (n.leaf_graph) {
        copy.leaf_graph = n.leaf_graph;
        dst.nodes.push_back(copy);
        int id = static_cast<int>(dst.nodes.size()) - 1;
        dst_lv[id] = src_lv.at(node);
        return id;
    }
    copy.left = copy_subtree(src, src_lv, n.left, dst, dst_lv);
    copy.right = copy_subtree(src, src_lv, n.right, dst, dst_lv);
    dst.nodes.push_back(copy);
    return static_cast<int>(dst.nodes.size()) - 1;
}

}  // namespace detail

/// Goodness of (S, tree): the tree respects S and for every i and every
/// component X of H_i some node x satisfies L(T[x]) = S-hat_i cap V(X)
/// and G<x> = X.  Throws logic_error on violation (these only arise
/// from implementation bugs).
inline void check_goodness(const Triangulation& t, const GoodSet& good) {
    auto info = detail::node_info(good.tree, good.leaf_vertex);
    std::set<Vertex> leaves;
    for (auto& [node, v] : good.leaf_vertex) {
        leaves.insert(v);
        if (!(info.at(node).graph ==
              t.graph().closed_neighborhood_subgraph(v)))
            throw std::logic_error("check_goodness: leaf graph is not G_u");
    }
    if (leaves != good.S)
        throw std::logic_error("check_goodness: tree leaves differ from S");
    for (std::size_t i = 4; i <= 9; ++i) {
        auto shat = detail::members_of_degree_at_most(t, good.S, i);
        auto h = detail::neighborhood_union(t, shat);
        for (auto& comp : detail::graph_components(h)) {
            auto want = set_intersection(shat, comp.vertex_set());
            bool found = false;
            for (auto& [node, ni] : info)
                if (ni.leaves == want && ni.graph == comp) {
                    found = true;
                    break;
                }
            if (!found)
                throw std::logic_error(
                    "check_goodness: no tree node matches a component of H_" +
                    std::to_string(i));
        }
    }
}

namespace detail {

inline void require_usable(const Triangulation& t, const char* who) {
    if (t.euler_genus() < 1)
        throw invalid_input(std::string(who) + ": requires positive Euler genus");
    if (!is_irreducible(t).irreducible)
        throw invalid_input(std::string(who) + ": requires an irreducible input");
}

}  // namespace detail

/// Maximal ordered independent set of degree-<=6 vertices, greedy in
/// vertex order; the tree is the comb recording the insertion order.
inline GoodSet build_simple_S(const Triangulation& t) {
    detail::require_usable(t, "build_simple_S");
    GoodSet good;
    good.simple_mode = true;
    SimpleGraph h;  // union of G_w over current members
    for (Vertex v : t.graph().vertices()) {
        if (t.graph().degree(v) > 6) continue;
        bool independent = !good.S.count(v);
        for (Vertex w : t.graph().neighbors(v))
            independent = independent && !good.S.count(w);
        if (!independent) continue;
        SimpleGraph gv = t.graph().closed_neighborhood_subgraph(v);
        if (!are_compatible(gv, h)) continue;
        good.S.insert(v);
        h = graph_union(h, gv);
        good.tree.nodes.push_back({-1, -1, gv});
        int leaf = static_cast<int>(good.tree.nodes.size()) - 1;
        good.leaf_vertex[leaf] = v;
        if (good.tree.root == -1) {
            good.tree.root = leaf;
        } else {
            good.tree.nodes.push_back({good.tree.root, leaf, std::nullopt});
            good.tree.root = static_cast<int>(good.tree.nodes.size()) - 1;
        }
    }
    return good;
}

/// Local search to Lemma-Move stability.  While some vertex v with
/// j = deg(v) in [4,9] lies outside V(H_j) and has at most two
/// neighbours in every component of H_j, replace S by S-hat_j + v and
/// rebuild the tree: hang the subtrees of the H_j components along a
/// path ending in the new leaf v, components meeting N(v) first.  Each
/// step strictly increases phi, so the search terminates.
inline GoodSet build_good_S(const Triangulation& t) {
    detail::require_usable(t, "build_good_S");
    const auto& g = t.graph();
    GoodSet good;
    std::vector<Vertex> by_degree = g.vertices();
    std::stable_sort(by_degree.begin(), by_degree.end(), [&](Vertex a, Vertex b) {
        return g.degree(a) < g.degree(b);
    });
    bool moved = true;
    while (moved) {
        moved = false;
        for (Vertex v : by_degree) {
            std::size_t j = g.degree(v);
            if (j < 4 || j > 9) continue;
            auto shat = detail::members_of_degree_at_most(t, good.S, j);
            auto h = detail::neighborhood_union(t, shat);
            if (h.has_vertex(v)) continue;
            auto comps = detail::graph_components(h);
            bool candidate = true;
            for (auto& comp : comps) {
                std::size_t nb = 0;
                for (Vertex w : g.neighbors(v)) nb += comp.has_vertex(w);
                if (nb >= 3) {
                    candidate = false;
                    break;
                }
            }
            if (!candidate) continue;

            // the move: locate the component nodes, then rebuild
            auto info = detail::node_info(good.tree, good.leaf_vertex);
            std::vector<int> comp_nodes;
            std::vector<bool> touches;
            for (auto& comp : comps) {
                auto want = set_intersection(shat, comp.vertex_set());
                int found = -1;
                for (auto& [node, ni] : info)
                    if (ni.leaves == want && ni.graph == comp) {
                        found = node;
                        break;
                    }
                if (found == -1)
                    throw std::logic_error(
                        "build_good_S: goodness invariant broken before a move");
                comp_nodes.push_back(found);
                bool meets = false;
                for (Vertex w : g.neighbors(v)) meets = meets || comp.has_vertex(w);
                touches.push_back(meets);
            }
            // components meeting N(v) go nearest the new leaf so that
            // the merged component of the new H_j is a single subtree
            std::vector<int> order;
            for (std::size_t k = 0; k < comp_nodes.size(); ++k)
                if (touches[k]) order.push_back(comp_nodes[k]);
            for (std::size_t k = 0; k < comp_nodes.size(); ++k)
                if (!touches[k]) order.push_back(comp_nodes[k]);

            PhiVector before = detail::phi_of(t, good.S);
            GoodSet next;
            next.tree.nodes.push_back(
                {-1, -1, g.closed_neighborhood_subgraph(v)});
            next.tree.root = 0;
            next.leaf_vertex[0] = v;
            for (int node : order) {
                int sub = detail::copy_subtree(good.tree, good.leaf_vertex, node,
                                               next.tree, next.leaf_vertex);
                next.tree.nodes.push_back({sub, next.tree.root, std::nullopt});
                next.tree.root = static_cast<int>(next.tree.nodes.size()) - 1;
            }
            next.S = shat;
            next.S.insert(v);
            if (phi_compare(detail::phi_of(t, next.S), before) <= 0)
                throw std::logic_error("build_good_S: phi did not increase");
            good = std::move(next);
            check_goodness(t, good);
            validate_tree_representation(good.tree);
            moved = true;
            break;
        }
    }
    return good;
}

/// Lemma-Move stability, checked directly: every vertex v outside
/// V(H_i) with deg(v) <= i (i in [4,9]) has at least three neighbours
/// in some component of H_i.
inline bool lemma_move_stable(const Triangulation& t, const GoodSet& good) {
    const auto& g = t.graph();
    for (std::size_t i = 4; i <= 9; ++i) {
        auto shat = detail::members_of_degree_at_most(t, good.S, i);
        auto h = detail::neighborhood_union(t, shat);
        auto comps = detail::graph_components(h);
        for (Vertex v : g.vertices()) {
            if (g.degree(v) > i || h.has_vertex(v)) continue;
            bool ok = false;
            for (auto& comp : comps) {
                std::size_t nb = 0;
                for (Vertex w : g.neighbors(v)) nb += comp.has_vertex(w);
                if (nb >= 3) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
    }
    return true;
}

struct PartitionReport {
    bool simple_mode = false;
    long long g = 0, V = 0, E = 0;
    PhiVector phi{};
    std::set<Vertex> S, N, A, Z;
    std::array<long long, 6> S_size{};   // |S_4| .. |S_9|
    std::array<long long, 7> A_size{};   // |A_4| .. |A_10|
    long long eSN = 0, eN = 0, eNA = 0, eNZ = 0, eA = 0, eAZ = 0, eZ = 0;
    struct PerDegree {
        std::set<Vertex> U, Y, V, W;
        long long c = 0;
        long long eU = 0, eUY = 0, eY = 0, eUV = 0, eUA = 0;
        std::vector<std::set<Vertex>> components;  // vertex sets of X_l
        std::vector<std::set<Vertex>> D;           // A-hat_i split over X_l
        std::vector<long long> B_edges;            // |E(B_l)|
    };
    std::array<PerDegree, 6> per;  // index i-4 for i in [4,9]
};

/// Every set, size and edge count the inequalities mention, computed
/// directly from the definitions.
inline PartitionReport full_partition(const Triangulation& t, const GoodSet& good) {
    const auto& g = t.graph();
    PartitionReport rep;
    rep.simple_mode = good.simple_mode;
    rep.g = t.euler_genus();
    rep.V = static_cast<long long>(g.vertex_count());
    rep.E = static_cast<long long>(g.edge_count());
    rep.S = good.S;
    rep.phi = detail::phi_of(t, good.S);
    for (Vertex v : good.S) ++rep.S_size[g.degree(v) - 4];
    for (Vertex v : good.S)
        for (Vertex w : g.neighbors(v))
            if (!good.S.count(w)) rep.N.insert(w);
    for (Vertex v : g.vertices()) {
        if (rep.S.count(v) || rep.N.count(v)) continue;
        std::size_t en = 0;
        for (Vertex w : g.neighbors(v)) en += rep.N.count(w);
        (en >= 3 ? rep.A : rep.Z).insert(v);
    }
    for (Vertex v : rep.A) {
        if (g.degree(v) < 4)
            throw std::logic_error("full_partition: A vertex of degree below 4");
        ++rep.A_size[std::min<std::size_t>(g.degree(v), 10) - 4];
    }
    rep.eSN = static_cast<long long>(g.edge_count_between(rep.S, rep.N));
    rep.eN = static_cast<long long>(g.edge_count_within(rep.N));
    rep.eNA = static_cast<long long>(g.edge_count_between(rep.N, rep.A));
    rep.eNZ = static_cast<long long>(g.edge_count_between(rep.N, rep.Z));
    rep.eA = static_cast<long long>(g.edge_count_within(rep.A));
    rep.eAZ = static_cast<long long>(g.edge_count_between(rep.A, rep.Z));
    rep.eZ = static_cast<long long>(g.edge_count_within(rep.Z));
    if (rep.simple_mode) return rep;

    for (std::size_t i = 4; i <= 9; ++i) {
        auto& per = rep.per[i - 4];
        auto shat = detail::members_of_degree_at_most(t, good.S, i);
        auto h = detail::neighborhood_union(t, shat);
        auto comps = detail::graph_components(h);
        per.c = static_cast<long long>(comps.size());
        for (auto& comp : comps) per.components.push_back(comp.vertex_set());
        for (Vertex v : shat)
            for (Vertex w : g.neighbors(v)) per.U.insert(w);
        for (Vertex v : rep.N)
            if (!per.U.count(v)) per.Y.insert(v);
        for (Vertex v : per.Y)
            (g.degree(v) <= i ? per.V : per.W).insert(v);
        per.eU = static_cast<long long>(g.edge_count_within(per.U));
        per.eUY = static_cast<long long>(g.edge_count_between(per.U, per.Y));
        per.eY = static_cast<long long>(g.edge_count_within(per.Y));
        per.eUV = static_cast<long long>(g.edge_count_between(per.U, per.V));
        per.eUA = static_cast<long long>(g.edge_count_between(per.U, rep.A));
        // D_l: A-hat_i vertices assigned to the lowest component where
        // they have >= 3 neighbours; existence is the Lemma-Move
        // postcondition
        per.D.resize(comps.size());
        per.B_edges.assign(comps.size(), 0);
        for (Vertex v : rep.A) {
            if (g.degree(v) > i) continue;
            bool placed = false;
            for (std::size_t l = 0; l < comps.size() && !placed; ++l) {
                std::size_t nb = 0;
                for (Vertex w : g.neighbors(v)) nb += comps[l].has_vertex(w);
                if (nb >= 3) {
                    per.D[l].insert(v);
                    placed = true;
                }
            }
            if (!placed)
                throw std::logic_error(
                    "full_partition: vertex " + std::to_string(v) +
                    " of A-hat_" + std::to_string(i) +
                    " has no component with three neighbours (Lemma-Move "
                    "postcondition violated)");
        }
        for (std::size_t l = 0; l < comps.size(); ++l) {
            std::set<Vertex> left = set_intersection(shat, comps[l].vertex_set());
            left.insert(per.D[l].begin(), per.D[l].end());
            std::set<Vertex> right = set_intersection(per.U, comps[l].vertex_set());
            per.B_edges[l] =
                static_cast<long long>(g.edge_count_between(left, right));
        }
    }
    return rep;
}

/// Valuation of every symbol the derivation tables use.
inline std::map<std::string, long long> to_values(const PartitionReport& rep) {
    std::map<std::string, long long> m;
    m["V"] = rep.V;
    m["g"] = rep.g;
    m["S"] = static_cast<long long>(rep.S.size());
    m["N"] = static_cast<long long>(rep.N.size());
    m["A"] = static_cast<long long>(rep.A.size());
    m["Z"] = static_cast<long long>(rep.Z.size());
    for (int i = 4; i <= 9; ++i) m["S" + std::to_string(i)] = rep.S_size[i - 4];
    for (int i = 4; i <= 10; ++i) m["A" + std::to_string(i)] = rep.A_size[i - 4];
    m["eSN"] = rep.eSN;
    m["eN"] = rep.eN;
    m["eNA"] = rep.eNA;
    m["eNZ"] = rep.eNZ;
    m["eA"] = rep.eA;
    m["eAZ"] = rep.eAZ;
    m["eZ"] = rep.eZ;
    if (!rep.simple_mode) {
        for (int i = 4; i <= 9; ++i) {
            const auto& per = rep.per[i - 4];
            std::string si = std::to_string(i);
            m["U" + si] = static_cast<long long>(per.U.size());
            m["V" + si] = static_cast<long long>(per.V.size());
            m["W" + si] = static_cast<long long>(per.W.size());
            m["c" + si] = per.c;
            m["eU" + si] = per.eU;
            m["eUY" + si] = per.eUY;
            m["eY" + si] = per.eY;
        }
    }
    return m;
}

struct InequalityEntry {
    std::string id;
    bool holds = false;
    Rational gap;  // slack of the ">= 0" form; (Bi) rows are doubled
};

struct BoundCheck {
    std::string description;
    long long lhs = 0, rhs = 0;
    bool holds = false;
};

struct CertificateResult {
    bool ok = false;
    bool degenerate = false;  // S was empty
    std::vector<InequalityEntry> entries;
    std::vector<BoundCheck> bounds;
};

namespace detail {

inline void check_ineq(CertificateResult& result, const InequalityRegistry& reg,
                       const std::string& id,
                       const std::map<std::string, long long>& values,
                       Rational scale = 1) {
    Inequality ineq = reg.at(id);
    ineq.form = ineq.form * scale;
    auto c = instantiate(ineq, values);
    result.entries.push_back({id, c.holds, c.gap});
    result.ok = result.ok && c.holds;
}

inline void check_bound(CertificateResult& result, const std::string& desc,
                        long long lhs, long long rhs) {
    result.bounds.push_back({desc, lhs, rhs, lhs <= rhs});
    result.ok = result.ok && lhs <= rhs;
}

}  // namespace detail

/// Instantiates the full-proof hypotheses ((Sg) through (Bi), the
/// axioms, and (3A)/(WholeGraph)) and the final bounds.  (Bi) is
/// evaluated with both sides doubled so every gap is an integer.
inline CertificateResult verify_full_certificate(const PartitionReport& rep) {
    if (rep.simple_mode)
        throw invalid_input("verify_full_certificate: report is simple-mode");
    auto reg = builtin_hypotheses();
    auto values = to_values(rep);
    CertificateResult result;
    result.ok = true;
    result.degenerate = rep.S.empty();
    detail::check_ineq(result, reg, "Sg", values);
    detail::check_ineq(result, reg, "N", values);
    for (int i = 5; i <= 9; ++i)
        detail::check_ineq(result, reg, "Ui." + std::to_string(i), values);
    for (const char* family : {"Components", "3Ui", "3Vi", "4Vi"})
        for (int i = 4; i <= 9; ++i)
            detail::check_ineq(result, reg,
                               std::string(family) + "." + std::to_string(i),
                               values);
    for (int i = 4; i <= 9; ++i)
        detail::check_ineq(result, reg, "Bi." + std::to_string(i), values, 2);
    detail::check_ineq(result, reg, "10Z", values);
    detail::check_ineq(result, reg, "iAi", values);
    detail::check_ineq(result, reg, "3A", values);
    for (const char* axiom : {"WholeGraph", "Sdef", "Adef", "Vdef", "eSNdef"})
        for (const char* side : {".ge", ".le"})
            detail::check_ineq(result, reg, std::string(axiom) + side, values);
    for (int i = 4; i <= 9; ++i)
        for (const char* axiom : {"eN.", "Npart."})
            for (const char* side : {".ge", ".le"})
                detail::check_ineq(
                    result, reg, axiom + std::to_string(i) + side, values);
    detail::check_bound(result, "7|V| <= 91g - 24", 7 * rep.V, 91 * rep.g - 24);
    detail::check_bound(result, "|V| <= 13g - 4", rep.V, 13 * rep.g - 4);
    return result;
}

/// Instantiates the simple-proof hypotheses and the 25g - 12 bound.
inline CertificateResult verify_simple_certificate(const PartitionReport& rep) {
    if (!rep.simple_mode)
        throw invalid_input("verify_simple_certificate: report is full-mode");
    auto reg = builtin_hypotheses();
    auto values = to_values(rep);
    CertificateResult result;
    result.ok = true;
    result.degenerate = rep.S.empty();
    for (const char* id : {"ZZZ", "AAA", "3A", "SN", "NN", "N6S", "Sg"})
        detail::check_ineq(result, reg, id, values);
    for (const char* side : {".ge", ".le"}) {
        detail::check_ineq(result, reg, std::string("WholeGraph") + side, values);
        detail::check_ineq(result, reg, std::string("Vdef") + side, values);
        detail::check_ineq(result, reg, std::string("Sdef") + side, values);
    }
    detail::check_bound(result, "|V| <= 25g - 12", rep.V, 25 * rep.g - 12);
    return result;
}

}  // namespace trisurf
