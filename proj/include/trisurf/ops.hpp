#pragma once

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "trisurf/surface_map.hpp"

namespace trisurf {

enum class ContractionFailure {
    CommonNeighborCount,   // |N(u) cap N(v)| != 2 (informational shortcut)
    PostValidation,        // contracted map is not a triangulation
    GenusChange,           // result is a triangulation of a different surface
};

struct ContractionOutcome {
    bool valid = false;
    std::optional<Triangulation> result;
    std::optional<ContractionFailure> failure_reason;
};

inline std::set<Vertex> common_neighbors(const Triangulation& t, Vertex u, Vertex v) {
    const auto& g = t.graph();
    if (!g.has_edge(u, v))
        throw invalid_input("common_neighbors: not an edge");
    return set_intersection(g.neighbors(u), g.neighbors(v));
}

/// Contract edge uv: delete uv, identify v into u, drop the two incident
/// triangles, merge parallel edges, then re-validate.  Valid iff the
/// result is a triangulation of the same surface.
inline ContractionOutcome contract_edge(const Triangulation& t, Vertex u, Vertex v) {
    const auto& g = t.graph();
    if (!g.has_edge(u, v))
        throw invalid_input("contract_edge: not an edge");
    // Contraction acts on the face list: for valid outcomes the face list
    // determines the map, and invalid outcomes surface as validation
    // failures of the rewritten list.
    std::set<std::array<Vertex, 3>> faces;
    for (auto tri : t.face_triples()) {
        bool has_u = false, has_v = false;
        for (Vertex x : tri) {
            has_u |= x == u;
            has_v |= x == v;
        }
        if (has_u && has_v) continue;  // the two triangles on uv vanish
        for (Vertex& x : tri)
            if (x == v) x = u;
        std::sort(tri.begin(), tri.end());
        faces.insert(tri);
    }
    // compact vertex ids (v is gone)
    std::map<Vertex, Vertex> relab;
    for (auto& tri : faces)
        for (Vertex x : tri) relab.emplace(x, 0);
    Vertex next = 0;
    for (auto& [old_v, new_v] : relab) new_v = next++;
    std::vector<std::array<Vertex, 3>> flist;
    for (auto tri : faces) {
        for (Vertex& x : tri) x = relab[x];
        flist.push_back(tri);
    }
    ContractionOutcome out;
    bool link_ok = common_neighbors(t, u, v).size() == 2;
    auto r = triangulation_from_faces(flist);
    if (std::holds_alternative<ValidationError>(r)) {
        out.failure_reason = link_ok ? ContractionFailure::PostValidation
                                     : ContractionFailure::CommonNeighborCount;
        return out;
    }
    auto& res = std::get<Triangulation>(r);
    if (res.euler_genus() != t.euler_genus() || res.orientable() != t.orientable()) {
        out.failure_reason = ContractionFailure::GenusChange;
        return out;
    }
    out.valid = true;
    out.result = std::move(res);
    return out;
}

/// Vertex splitting: split v along two boundary neighbours a and b of its
/// rotation.  The arc of the rotation from a to b (inclusive, in sigma
/// order) stays with v; the complementary arc goes to a new vertex, and
/// triangles (v,new,a) and (v,new,b) fill the slit.
struct SplitSpec {
    Vertex vertex;
    Vertex arc_begin;  // boundary neighbour starting the arc kept at `vertex`
    Vertex arc_end;    // boundary neighbour ending that arc
};

inline Triangulation split_vertex(const Triangulation& t, const SplitSpec& spec) {
    const auto& m = t.map();
    if (spec.vertex >= m.vertex_count())
        throw invalid_input("split_vertex: unknown vertex");
    auto rot = m.rotation(spec.vertex);
    auto find = [&](Vertex w) {
        for (std::size_t k = 0; k < rot.size(); ++k)
            if (rot[k] == w) return k;
        throw invalid_input("split_vertex: boundary vertex not a neighbour");
    };
    std::size_t ia = find(spec.arc_begin), ib = find(spec.arc_end);
    if (ia == ib) throw invalid_input("split_vertex: boundary neighbours must differ");
    std::vector<Vertex> arc_keep, arc_new;
    for (std::size_t k = ia;; k = (k + 1) % rot.size()) {
        arc_keep.push_back(rot[k]);
        if (k == ib) break;
    }
    for (std::size_t k = ib;; k = (k + 1) % rot.size()) {
        arc_new.push_back(rot[k]);
        if (k == ia) break;
    }
    if (arc_keep.size() < 2 || arc_new.size() < 2)
        throw invalid_input("split_vertex: each arc needs at least two darts");
    Vertex v = spec.vertex;
    Vertex w = static_cast<Vertex>(m.vertex_count());
    // star triangles of v correspond to consecutive rotation pairs; the
    // pairs inside the complementary arc move to the new vertex
    std::set<std::pair<Vertex, Vertex>> new_pairs;
    for (std::size_t k = ib; k != ia; k = (k + 1) % rot.size())
        new_pairs.insert(std::minmax(rot[k], rot[(k + 1) % rot.size()]));
    std::vector<std::array<Vertex, 3>> faces;
    for (auto tri : t.face_triples()) {
        bool has_v = tri[0] == v || tri[1] == v || tri[2] == v;
        if (has_v) {
            std::vector<Vertex> others;
            for (Vertex x : tri)
                if (x != v) others.push_back(x);
            if (new_pairs.count(std::minmax(others[0], others[1])))
                for (Vertex& x : tri)
                    if (x == v) x = w;
        }
        faces.push_back(tri);
    }
    faces.push_back({v, w, spec.arc_begin});
    faces.push_back({v, w, spec.arc_end});
    auto r = triangulation_from_faces(faces);
    if (std::holds_alternative<ValidationError>(r))
        throw invalid_input("split_vertex: result is not a triangulation (" +
                            to_string(std::get<ValidationError>(r).violation) + ")");
    auto& res = std::get<Triangulation>(r);
    if (res.euler_genus() != t.euler_genus() || res.orientable() != t.orientable())
        throw std::logic_error("split_vertex: surface changed");
    return res;
}

struct IrreducibilityResult {
    bool irreducible = true;
    std::optional<std::pair<Vertex, Vertex>> contractible_edge;  // witness
};

inline IrreducibilityResult is_irreducible(const Triangulation& t) {
    const auto& m = t.map();
    for (std::uint32_t e = 0; e < m.edge_count(); ++e) {
        auto [u, v] = m.edge_ends(e);
        if (contract_edge(t, u, v).valid)
            return {false, std::minmax(u, v)};
    }
    return {true, std::nullopt};
}

/// Is the 3-cycle on {a,b,c} null-homotopic?  Decided by cutting along
/// the cycle: it is contractible iff it separates the surface and one
/// side is a disk (Euler characteristic 1 with one boundary).
inline bool cycle_is_contractible(const Triangulation& t, Vertex a, Vertex b, Vertex c) {
    const auto& g = t.graph();
    std::set<Vertex> cyc{a, b, c};
    if (cyc.size() != 3 || !g.has_edge(a, b) || !g.has_edge(b, c) || !g.has_edge(a, c))
        throw invalid_input("cycle_is_contractible: not a 3-cycle of the graph");
    auto triples = t.face_triples();
    auto is_cut_edge = [&](Vertex x, Vertex y) {
        return cyc.count(x) && cyc.count(y);
    };
    // dual components with the three cycle edges removed
    std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> edge_faces;
    for (std::size_t i = 0; i < triples.size(); ++i)
        for (int k = 0; k < 3; ++k)
            edge_faces[std::minmax(triples[i][k], triples[i][(k + 1) % 3])].push_back(i);
    std::vector<int> comp(triples.size(), -1);
    int ncomp = 0;
    for (std::size_t seed = 0; seed < triples.size(); ++seed) {
        if (comp[seed] != -1) continue;
        std::vector<std::size_t> stack{seed};
        comp[seed] = ncomp;
        while (!stack.empty()) {
            std::size_t f = stack.back();
            stack.pop_back();
            for (int k = 0; k < 3; ++k) {
                Vertex x = triples[f][k], y = triples[f][(k + 1) % 3];
                if (is_cut_edge(x, y)) continue;
                for (std::size_t nf : edge_faces[std::minmax(x, y)]) {
                    if (comp[nf] == -1) {
                        comp[nf] = ncomp;
                        stack.push_back(nf);
                    }
                }
            }
        }
        ++ncomp;
    }
    if (ncomp == 1) return false;  // non-separating
    // For a separating 3-cycle the dual splits into exactly two sides,
    // each bounded by one copy of the cycle.  Side is a disk iff
    // Vi - Ei + F = 1, counting interior vertices and edges only.
    for (int side = 0; side < ncomp; ++side) {
        std::set<Vertex> verts;
        std::set<std::pair<Vertex, Vertex>> edges;
        std::size_t nfaces = 0;
        for (std::size_t f = 0; f < triples.size(); ++f) {
            if (comp[f] != side) continue;
            ++nfaces;
            for (int k = 0; k < 3; ++k) {
                Vertex x = triples[f][k], y = triples[f][(k + 1) % 3];
                verts.insert(x);
                if (!is_cut_edge(x, y)) edges.insert(std::minmax(x, y));
            }
        }
        long vi = 0;
        for (Vertex x : verts)
            if (!cyc.count(x)) ++vi;
        long chi = vi - static_cast<long>(edges.size()) + static_cast<long>(nfaces);
        if (chi == 1) return true;
    }
    return false;
}

/// The irreducibility characterization for positive genus: every edge
/// lies in a triangle forming a non-contractible cycle.  Used as a
/// consistency oracle against is_irreducible.
inline bool irreducibility_crosscheck(const Triangulation& t) {
    if (t.euler_genus() < 1)
        throw invalid_input("irreducibility_crosscheck: sphere not supported");
    const auto& m = t.map();
    const auto& g = t.graph();
    for (std::uint32_t e = 0; e < m.edge_count(); ++e) {
        auto [u, v] = m.edge_ends(e);
        bool found = false;
        for (Vertex w : set_intersection(g.neighbors(u), g.neighbors(v))) {
            if (!cycle_is_contractible(t, u, v, w)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace trisurf
