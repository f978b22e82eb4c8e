#pragma once

#include <array>
#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "trisurf/graph.hpp"

namespace trisurf {

using Dart = std::uint32_t;

// Darts 2e and 2e+1 are the two ends of edge e; alpha(d) = d^1.
constexpr Dart alpha(Dart d) { return d ^ 1u; }

/// A graph 2-cell embedded in a surface, given as a signed rotation
/// system: a rotation permutation sigma (next dart counterclockwise in
/// the local orientation of its vertex) plus a +-1 signature per edge
/// telling whether the local orientations of the two endpoints agree
/// across the edge.
class CombinatorialMap {
public:
    /// Build from explicit per-vertex rotations (lists of neighbour
    /// vertices in rotation order) and per-edge signatures keyed by the
    /// (min,max) vertex pair.  Missing signatures default to +1.
    static CombinatorialMap from_rotations(
        const std::vector<std::vector<Vertex>>& rotations,
        const std::map<std::pair<Vertex, Vertex>, int>& signatures = {});

    std::size_t vertex_count() const { return rotation_of_.size(); }
    std::size_t edge_count() const { return edge_sign_.size(); }
    std::size_t dart_count() const { return 2 * edge_sign_.size(); }

    Dart sigma(Dart d) const { return sigma_[d]; }
    Dart sigma_inv(Dart d) const { return sigma_inv_[d]; }
    Vertex tail(Dart d) const { return dart_vertex_[d]; }
    Vertex head(Dart d) const { return dart_vertex_[alpha(d)]; }
    int signature(std::uint32_t edge) const { return edge_sign_[edge]; }

    /// Dart with tail v crossing edge {v,w}; requires the edge to exist.
    Dart dart(Vertex v, Vertex w) const;

    std::pair<Vertex, Vertex> edge_ends(std::uint32_t e) const {
        return {dart_vertex_[2 * e], dart_vertex_[2 * e + 1]};
    }

    /// Neighbours of v in rotation order, starting from the first dart.
    std::vector<Vertex> rotation(Vertex v) const;

    std::size_t degree(Vertex v) const { return rotation_of_[v].size(); }

    /// sigma and alpha act transitively on darts.
    bool is_connected() const;

    /// No loops, no parallel edges.
    bool is_simple() const;

    /// Orbits of the face-traversal permutation, deterministically
    /// ordered (lowest dart first within and across faces).  Each face
    /// is the cyclic dart sequence of one traversal direction.
    std::vector<std::vector<Dart>> trace_faces() const;

    std::size_t face_count() const { return trace_faces().size(); }

    /// 2 - (V - E + F).
    int euler_genus() const;

    /// True iff the edge signatures can be made all +1 by flipping
    /// vertex rotations, i.e. every cycle has signature product +1.
    bool orientable() const;

    SimpleGraph underlying_graph() const;

private:
    friend class MapBuilder;
    std::vector<Dart> sigma_, sigma_inv_;
    std::vector<Vertex> dart_vertex_;
    std::vector<std::int8_t> edge_sign_;
    std::vector<std::vector<Dart>> rotation_of_;  // darts at each vertex, rotation order

    void finish_from_rotation_lists();
};

enum class Violation {
    NotConnected,
    LoopEdge,
    ParallelEdges,
    NonTriangleFace,
    FacePairSharesMultipleEdges,
    EdgeNotInTwoFaces,   // from_face_list: non-manifold edge
    PinchedVertex,       // from_face_list: vertex link is not a single cycle
};

std::string to_string(Violation v);

struct ValidationError {
    Violation violation;
    std::string detail;
};

/// A validated triangulation: every face a triangle, any two faces
/// sharing at most one edge, with genus and orientability cached.
class Triangulation {
public:
    const CombinatorialMap& map() const { return map_; }
    const std::vector<std::vector<Dart>>& faces() const { return faces_; }
    int euler_genus() const { return euler_genus_; }
    bool orientable() const { return orientable_; }
    const SimpleGraph& graph() const { return graph_; }

    /// Faces as sorted vertex triples, sorted.
    std::vector<std::array<Vertex, 3>> face_triples() const;

private:
    friend std::variant<Triangulation, ValidationError> validate_triangulation(
        const CombinatorialMap&);
    CombinatorialMap map_;
    std::vector<std::vector<Dart>> faces_;
    SimpleGraph graph_;
    int euler_genus_ = 0;
    bool orientable_ = true;
};

/// Gatekeeper: checks the triangulation conditions and returns either a
/// Triangulation or the first violated condition.
std::variant<Triangulation, ValidationError> validate_triangulation(
    const CombinatorialMap& map);

/// Reconstructs the (unique up to reflection) embedding whose face set
/// is the given list of vertex triples.  Returns a ValidationError for
/// non-manifold edges and pinched vertex links.
std::variant<CombinatorialMap, ValidationError> from_face_list(
    const std::vector<std::array<Vertex, 3>>& triples);

/// Convenience: from_face_list followed by validate_triangulation.
std::variant<Triangulation, ValidationError> triangulation_from_faces(
    const std::vector<std::array<Vertex, 3>>& triples);

}  // namespace trisurf

// ---------------------------------------------------------------------------
// implementation

namespace trisurf {

inline std::string to_string(Violation v) {
    switch (v) {
        case Violation::NotConnected: return "not-connected";
        case Violation::LoopEdge: return "loop-edge";
        case Violation::ParallelEdges: return "parallel-edges";
        case Violation::NonTriangleFace: return "non-triangle-face";
        case Violation::FacePairSharesMultipleEdges: return "face-pair-shares-multiple-edges";
        case Violation::EdgeNotInTwoFaces: return "edge-not-in-two-faces";
        case Violation::PinchedVertex: return "pinched-vertex";
    }
    return "unknown";
}

inline void CombinatorialMap::finish_from_rotation_lists() {
    sigma_.assign(dart_count(), 0);
    sigma_inv_.assign(dart_count(), 0);
    for (auto& rot : rotation_of_) {
        for (std::size_t k = 0; k < rot.size(); ++k) {
            Dart d = rot[k];
            Dart n = rot[(k + 1) % rot.size()];
            sigma_[d] = n;
            sigma_inv_[n] = d;
        }
    }
}

inline CombinatorialMap CombinatorialMap::from_rotations(
    const std::vector<std::vector<Vertex>>& rotations,
    const std::map<std::pair<Vertex, Vertex>, int>& signatures) {
    CombinatorialMap m;
    std::size_t n = rotations.size();
    std::map<std::pair<Vertex, Vertex>, std::uint32_t> edge_id;
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : rotations[v]) {
            if (w >= n) throw invalid_input("rotation refers to unknown vertex");
            if (w == v) throw invalid_input("loop in rotation");
            auto key = std::minmax(v, w);
            if (!edge_id.count(key)) {
                edge_id[key] = static_cast<std::uint32_t>(edge_id.size());
            }
        }
    }
    m.edge_sign_.assign(edge_id.size(), 1);
    for (auto& [key, sgn] : signatures) {
        auto it = edge_id.find(std::minmax(key.first, key.second));
        if (it == edge_id.end()) throw invalid_input("signature for unknown edge");
        m.edge_sign_[it->second] = sgn < 0 ? -1 : 1;
    }
    m.dart_vertex_.assign(2 * edge_id.size(), 0);
    for (auto& [key, e] : edge_id) {
        m.dart_vertex_[2 * e] = key.first;
        m.dart_vertex_[2 * e + 1] = key.second;
    }
    m.rotation_of_.assign(n, {});
    for (Vertex v = 0; v < n; ++v) {
        std::set<Vertex> seen;
        for (Vertex w : rotations[v]) {
            if (!seen.insert(w).second)
                throw invalid_input("parallel darts in rotation");
            std::uint32_t e = edge_id.at(std::minmax(v, w));
            Dart d = 2 * e + (v == m.dart_vertex_[2 * e] ? 0 : 1);
            m.rotation_of_[v].push_back(d);
        }
    }
    // every edge end must occur in its vertex's rotation
    for (Dart d = 0; d < m.dart_count(); ++d) {
        bool found = false;
        for (Dart x : m.rotation_of_[m.dart_vertex_[d]])
            if (x == d) found = true;
        if (!found) throw invalid_input("edge end missing from rotation");
    }
    m.finish_from_rotation_lists();
    return m;
}

inline Dart CombinatorialMap::dart(Vertex v, Vertex w) const {
    for (Dart d : rotation_of_.at(v))
        if (head(d) == w) return d;
    throw invalid_input("dart: no edge " + std::to_string(v) + "-" + std::to_string(w));
}

inline std::vector<Vertex> CombinatorialMap::rotation(Vertex v) const {
    std::vector<Vertex> out;
    for (Dart d : rotation_of_.at(v)) out.push_back(head(d));
    return out;
}

inline bool CombinatorialMap::is_connected() const {
    if (dart_count() == 0) return vertex_count() <= 1;
    std::vector<char> seen(dart_count(), 0);
    std::vector<Dart> stack{0};
    seen[0] = 1;
    std::size_t cnt = 1;
    while (!stack.empty()) {
        Dart d = stack.back();
        stack.pop_back();
        for (Dart n : {sigma_[d], alpha(d)}) {
            if (!seen[n]) {
                seen[n] = 1;
                ++cnt;
                stack.push_back(n);
            }
        }
    }
    if (cnt != dart_count()) return false;
    // isolated vertices also count as disconnection
    for (auto& rot : rotation_of_)
        if (rot.empty() && vertex_count() > 1) return false;
    return true;
}

inline bool CombinatorialMap::is_simple() const {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (std::uint32_t e = 0; e < edge_count(); ++e) {
        auto [u, v] = edge_ends(e);
        if (u == v) return false;
        if (!seen.insert(std::minmax(u, v)).second) return false;
    }
    return true;
}

namespace detail {

// Face tracing runs on states (dart, s): the dart being traversed tail
// to head, together with a bit saying whether the traversal currently
// agrees with the tail vertex's local orientation.  States are faces of
// the orientation double cover; the base faces are the orbit pairs
// under reversal.
struct FaceTracer {
    const CombinatorialMap& m;
    explicit FaceTracer(const CombinatorialMap& map) : m(map) {}

    std::uint64_t encode(Dart d, int s) const { return 2ull * d + s; }

    std::pair<Dart, int> next(Dart d, int s) const {
        Dart d2 = alpha(d);
        int s2 = s ^ (m.signature(d >> 1) < 0 ? 1 : 0);
        Dart nd = s2 == 0 ? m.sigma(d2) : m.sigma_inv(d2);
        return {nd, s2};
    }

    std::pair<Dart, int> reverse(Dart d, int s) const {
        return {alpha(d), s ^ 1 ^ (m.signature(d >> 1) < 0 ? 1 : 0)};
    }
};

}  // namespace detail

inline std::vector<std::vector<Dart>> CombinatorialMap::trace_faces() const {
    detail::FaceTracer tr(*this);
    std::vector<char> visited(2 * dart_count(), 0);
    std::vector<std::vector<Dart>> faces;
    for (Dart d0 = 0; d0 < dart_count(); ++d0) {
        for (int s0 = 0; s0 < 2; ++s0) {
            if (visited[tr.encode(d0, s0)]) continue;
            // trace this orbit and mark its reversal as the same face
            std::vector<Dart> cycle;
            Dart d = d0;
            int s = s0;
            do {
                visited[tr.encode(d, s)] = 1;
                auto [rd, rs] = tr.reverse(d, s);
                visited[tr.encode(rd, rs)] = 1;
                cycle.push_back(d);
                std::tie(d, s) = tr.next(d, s);
            } while (!(d == d0 && s == s0));
            // canonical starting point: lowest dart in the cycle
            std::size_t best = 0;
            for (std::size_t k = 1; k < cycle.size(); ++k)
                if (cycle[k] < cycle[best]) best = k;
            std::rotate(cycle.begin(), cycle.begin() + best, cycle.end());
            faces.push_back(std::move(cycle));
        }
    }
    std::sort(faces.begin(), faces.end(),
              [](auto& a, auto& b) { return a.front() < b.front(); });
    return faces;
}

inline int CombinatorialMap::euler_genus() const {
    long chi = static_cast<long>(vertex_count()) -
               static_cast<long>(edge_count()) +
               static_cast<long>(trace_faces().size());
    return static_cast<int>(2 - chi);
}

inline bool CombinatorialMap::orientable() const {
    // Signatures are trivializable iff lambda(e) = s(u)s(v) for some
    // vertex sign assignment s.
    std::vector<int> sign(vertex_count(), 0);
    for (Vertex root = 0; root < vertex_count(); ++root) {
        if (sign[root] != 0) continue;
        sign[root] = 1;
        std::vector<Vertex> stack{root};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Dart d : rotation_of_[v]) {
                Vertex w = head(d);
                int want = sign[v] * signature(d >> 1);
                if (sign[w] == 0) {
                    sign[w] = want;
                    stack.push_back(w);
                } else if (sign[w] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline SimpleGraph CombinatorialMap::underlying_graph() const {
    SimpleGraph g;
    for (Vertex v = 0; v < vertex_count(); ++v) g.add_vertex(v);
    for (std::uint32_t e = 0; e < edge_count(); ++e) {
        auto [u, v] = edge_ends(e);
        if (u != v) g.add_edge(u, v);
    }
    return g;
}

inline std::vector<std::array<Vertex, 3>> Triangulation::face_triples() const {
    std::vector<std::array<Vertex, 3>> out;
    for (auto& f : faces_) {
        std::array<Vertex, 3> t{map_.tail(f[0]), map_.tail(f[1]), map_.tail(f[2])};
        std::sort(t.begin(), t.end());
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::variant<Triangulation, ValidationError> validate_triangulation(
    const CombinatorialMap& map) {
    if (!map.is_connected())
        return ValidationError{Violation::NotConnected, "map is not connected"};
    for (std::uint32_t e = 0; e < map.edge_count(); ++e) {
        auto [u, v] = map.edge_ends(e);
        if (u == v)
            return ValidationError{Violation::LoopEdge, "edge " + std::to_string(e)};
    }
    if (!map.is_simple())
        return ValidationError{Violation::ParallelEdges, "parallel edges present"};
    auto faces = map.trace_faces();
    for (std::size_t i = 0; i < faces.size(); ++i) {
        if (faces[i].size() != 3)
            return ValidationError{Violation::NonTriangleFace,
                                   "face " + std::to_string(i) + " has length " +
                                       std::to_string(faces[i].size())};
    }
    // each pair of faces shares at most one edge
    std::map<std::uint32_t, std::vector<std::size_t>> faces_on_edge;
    for (std::size_t i = 0; i < faces.size(); ++i)
        for (Dart d : faces[i]) faces_on_edge[d >> 1].push_back(i);
    std::set<std::pair<std::size_t, std::size_t>> seen_pairs;
    for (auto& [e, fs] : faces_on_edge) {
        if (fs.size() != 2)
            return ValidationError{Violation::NonTriangleFace,
                                   "edge " + std::to_string(e) +
                                       " does not bound two face sides"};
        auto pr = std::minmax(fs[0], fs[1]);
        if (pr.first == pr.second)
            return ValidationError{Violation::FacePairSharesMultipleEdges,
                                   "face " + std::to_string(pr.first) +
                                       " meets itself across edge " + std::to_string(e)};
        if (!seen_pairs.insert(pr).second)
            return ValidationError{Violation::FacePairSharesMultipleEdges,
                                   "faces " + std::to_string(pr.first) + " and " +
                                       std::to_string(pr.second) +
                                       " share more than one edge"};
    }
    Triangulation t;
    t.map_ = map;
    t.faces_ = std::move(faces);
    t.graph_ = map.underlying_graph();
    t.euler_genus_ = map.euler_genus();
    t.orientable_ = map.orientable();
    return t;
}

inline std::variant<CombinatorialMap, ValidationError> from_face_list(
    const std::vector<std::array<Vertex, 3>>& triples) {
    // each unordered vertex pair must lie in exactly two triples
    std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> edge_faces;
    Vertex max_v = 0;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        auto t = triples[i];
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            return ValidationError{Violation::LoopEdge,
                                   "degenerate triple at index " + std::to_string(i)};
        for (int k = 0; k < 3; ++k) {
            auto key = std::minmax(t[k], t[(k + 1) % 3]);
            edge_faces[key].push_back(i);
            max_v = std::max(max_v, t[k]);
        }
    }
    if (triples.empty())
        return ValidationError{Violation::NotConnected, "empty face list"};
    for (auto& [key, fs] : edge_faces) {
        if (fs.size() != 2)
            return ValidationError{
                Violation::EdgeNotInTwoFaces,
                "edge {" + std::to_string(key.first) + "," + std::to_string(key.second) +
                    "} lies in " + std::to_string(fs.size()) + " faces"};
    }
    std::size_t n = max_v + 1;
    // vertex links: for v, link edges (a,b) per triple (v,a,b)
    std::vector<std::map<Vertex, std::vector<Vertex>>> link(n);
    for (auto& t : triples) {
        for (int k = 0; k < 3; ++k) {
            Vertex v = t[k], a = t[(k + 1) % 3], b = t[(k + 2) % 3];
            link[v][a].push_back(b);
            link[v][b].push_back(a);
        }
    }
    // each link must be a single cycle; extract a deterministic rotation
    std::vector<std::vector<Vertex>> rotations(n);
    for (Vertex v = 0; v < n; ++v) {
        auto& lk = link[v];
        if (lk.empty())
            return ValidationError{Violation::NotConnected,
                                   "vertex " + std::to_string(v) + " unused"};
        for (auto& [w, nbrs] : lk)
            if (nbrs.size() != 2)
                return ValidationError{Violation::PinchedVertex,
                                       "link of " + std::to_string(v) +
                                           " is not 2-regular at " + std::to_string(w)};
        // walk the cycle from the smallest neighbour, direction with the
        // smaller second element (lexicographically smallest rotation)
        Vertex start = lk.begin()->first;
        Vertex second = std::min(lk[start][0], lk[start][1]);
        std::vector<Vertex> cyc{start, second};
        while (true) {
            Vertex cur = cyc.back(), prev = cyc[cyc.size() - 2];
            auto& nb = lk[cur];
            Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
            if (nxt == start) break;
            cyc.push_back(nxt);
        }
        if (cyc.size() != lk.size())
            return ValidationError{Violation::PinchedVertex,
                                   "link of " + std::to_string(v) +
                                       " is not a single cycle"};
        rotations[v] = std::move(cyc);
    }
    // signatures: for edge {u,v} with u<v take the incident triangle with
    // the smaller third vertex, direct it u -> v -> a -> u, and compare
    // each corner against the rotation direction.
    auto succ = [&](Vertex v, Vertex w) {
        auto& rot = rotations[v];
        for (std::size_t k = 0; k < rot.size(); ++k)
            if (rot[k] == w) return rot[(k + 1) % rot.size()];
        throw invalid_input("internal: neighbour not in rotation");
    };
    std::map<std::pair<Vertex, Vertex>, int> signatures;
    for (auto& [key, fs] : edge_faces) {
        auto [u, v] = key;
        Vertex a3 = 0, b3 = 0;
        {
            std::vector<Vertex> thirds;
            for (std::size_t fi : fs)
                for (Vertex x : triples[fi])
                    if (x != u && x != v) thirds.push_back(x);
            a3 = std::min(thirds[0], thirds[1]);
            b3 = std::max(thirds[0], thirds[1]);
        }
        (void)b3;
        int dis_u = succ(u, a3) == v ? 0 : 1;
        int dis_v = succ(v, u) == a3 ? 0 : 1;
        signatures[key] = (dis_u ^ dis_v) ? -1 : 1;
    }
    CombinatorialMap m = CombinatorialMap::from_rotations(rotations, signatures);
    return m;
}

inline std::variant<Triangulation, ValidationError> triangulation_from_faces(
    const std::vector<std::array<Vertex, 3>>& triples) {
    auto m = from_face_list(triples);
    if (std::holds_alternative<ValidationError>(m))
        return std::get<ValidationError>(m);
    auto t = validate_triangulation(std::get<CombinatorialMap>(m));
    if (std::holds_alternative<Triangulation>(t)) {
        // reconstruction must reproduce the requested face set
        auto got = std::get<Triangulation>(t).face_triples();
        std::vector<std::array<Vertex, 3>> want = triples;
        for (auto& x : want) std::sort(x.begin(), x.end());
        std::sort(want.begin(), want.end());
        if (got != want)
            throw std::logic_error("from_face_list: reconstruction mismatch");
    }
    return t;
}

}  // namespace trisurf
