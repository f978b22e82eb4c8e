#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "trisurf/certificate.hpp"
#include "trisurf/ops.hpp"
#include "trisurf/surface_map.hpp"

namespace trisurf {

using FaceTriple = std::array<Vertex, 3>;

struct CensusEntry {
    bool orientable = true;
    int genus = 0;  // Euler genus
    std::vector<FaceTriple> faces;
};

/// Census file format: `#` comment lines, entries separated by blank
/// lines, each entry a `surface <o|n> eg <g>` header followed by one
/// `a b c` facet per line (0-based vertex labels).
inline std::vector<CensusEntry> parse_census(const std::string& text) {
    std::vector<CensusEntry> entries;
    bool open = false;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto bad = [&](const std::string& why) {
            return invalid_input("census line " + std::to_string(lineno) + ": " +
                                 why);
        };
        // strip trailing CR for tolerance, nothing else
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = line;
        if (t.find_first_not_of(" \t") == std::string::npos) {
            open = false;
            continue;
        }
        if (t[0] == '#') continue;
        std::istringstream ls(t);
        std::string first;
        ls >> first;
        if (first == "surface") {
            std::string kind, eg;
            int g = -1;
            ls >> kind >> eg >> g;
            if ((kind != "o" && kind != "n") || eg != "eg" || g < 0 || !ls ||
                (ls >> first))
                throw bad("malformed header '" + line + "'");
            entries.push_back({kind == "o", g, {}});
            open = true;
        } else {
            if (!open) throw bad("facet before a surface header");
            std::istringstream fs(t);
            long long a = -1, b = -1, c = -1;
            fs >> a >> b >> c;
            std::string extra;
            if (!fs || (fs >> extra) || a < 0 || b < 0 || c < 0)
                throw bad("malformed facet '" + line + "'");
            entries.back().faces.push_back({static_cast<Vertex>(a),
                                            static_cast<Vertex>(b),
                                            static_cast<Vertex>(c)});
        }
    }
    return entries;
}

inline std::string write_census(const std::vector<CensusEntry>& entries) {
    std::ostringstream os;
    bool first = true;
    for (auto& e : entries) {
        if (!first) os << "\n";
        first = false;
        os << "surface " << (e.orientable ? "o" : "n") << " eg " << e.genus
           << "\n";
        for (auto& f : e.faces) os << f[0] << " " << f[1] << " " << f[2] << "\n";
    }
    return os.str();
}

namespace detail {

inline std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>>
edge_face_index(const std::vector<FaceTriple>& faces) {
    std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> ef;
    for (std::size_t i = 0; i < faces.size(); ++i)
        for (int k = 0; k < 3; ++k) {
            Vertex a = faces[i][k], b = faces[i][(k + 1) % 3];
            ef[{std::min(a, b), std::max(a, b)}].push_back(i);
        }
    return ef;
}

inline std::string serialize_faces(std::vector<FaceTriple> faces) {
    for (auto& f : faces) std::sort(f.begin(), f.end());
    std::sort(faces.begin(), faces.end());
    std::ostringstream os;
    for (auto& f : faces) os << f[0] << " " << f[1] << " " << f[2] << "\n";
    return os.str();
}

}  // namespace detail

/// Canonical relabeling of a facet list, invariant under vertex
/// relabeling: a breadth-first traversal over oriented flags assigns
/// labels in discovery order; the minimum over all 6F starting flags
/// wins.  Requires every edge to lie in exactly two facets.
inline std::vector<FaceTriple> canonical_faces(const std::vector<FaceTriple>& faces) {
    if (faces.empty()) throw invalid_input("canonical_faces: empty facet list");
    auto ef = detail::edge_face_index(faces);
    for (auto& [e, fs] : ef)
        if (fs.size() != 2)
            throw invalid_input("canonical_faces: edge " + std::to_string(e.first) +
                                "-" + std::to_string(e.second) +
                                " is not in exactly two facets");

    std::vector<FaceTriple> best;
    std::string best_key;
    for (std::size_t f0 = 0; f0 < faces.size(); ++f0) {
        static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (auto& p : perms) {
            std::map<Vertex, Vertex> label;
            Vertex fresh = 0;
            auto get = [&](Vertex v) {
                auto it = label.find(v);
                if (it == label.end()) it = label.emplace(v, fresh++).first;
                return it->second;
            };
            std::vector<bool> seen(faces.size(), false);
            // flags: (face, orientation as an ordered vertex triple)
            std::vector<std::pair<std::size_t, FaceTriple>> queue{
                {f0,
                 {faces[f0][p[0]], faces[f0][p[1]], faces[f0][p[2]]}}};
            std::vector<FaceTriple> out;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                auto [fi, tri] = queue[head];
                if (seen[fi]) continue;
                seen[fi] = true;
                out.push_back({get(tri[0]), get(tri[1]), get(tri[2])});
                for (int k = 0; k < 3; ++k) {
                    Vertex a = tri[k], b = tri[(k + 1) % 3];
                    for (std::size_t other :
                         ef.at({std::min(a, b), std::max(a, b)})) {
                        if (other == fi) continue;
                        Vertex x = 0;
                        for (Vertex w : faces[other])
                            if (w != a && w != b) x = w;
                        // cross the shared edge with reversed direction
                        queue.push_back({other, {b, a, x}});
                    }
                }
            }
            std::string key = detail::serialize_faces(out);
            if (best_key.empty() || key < best_key) {
                best_key = key;
                for (auto& f : out) std::sort(f.begin(), f.end());
                std::sort(out.begin(), out.end());
                best = out;
            }
        }
    }
    return best;
}

inline std::string canonical_form(const std::vector<FaceTriple>& faces) {
    return detail::serialize_faces(canonical_faces(faces));
}

namespace detail {

/// Backtracking enumeration over facet lists.  State tracks, per edge,
/// how many facets use it, and per vertex its link graph; each step
/// completes the lexicographically first edge still in a single facet.
class Enumerator {
public:
    static constexpr int kMaxVertices = 16;

    Enumerator(int max_n, bool orientable, int genus, bool irreducible_only)
        : max_n_(max_n),
          orientable_(orientable),
          genus_(genus),
          irreducible_only_(irreducible_only) {
        if (max_n > kMaxVertices)
            throw invalid_input("enumerate_triangulations: at most " +
                                std::to_string(kMaxVertices) +
                                " vertices supported");
    }

    std::vector<CensusEntry> run() {
        add_face(0, 1, 2);
        n_ = 3;
        search();
        remove_face(0, 1, 2);
        std::vector<CensusEntry> out;
        for (auto& [key, faces] : found_)
            out.push_back({orientable_, genus_, faces});
        std::sort(out.begin(), out.end(), [](const CensusEntry& a,
                                             const CensusEntry& b) {
            auto nv = [](const CensusEntry& e) {
                Vertex m = 0;
                for (auto& f : e.faces) m = std::max({m, f[0], f[1], f[2]});
                return m;
            };
            return std::make_pair(nv(a), a.faces) < std::make_pair(nv(b), b.faces);
        });
        return out;
    }

private:
    using Mask = std::uint32_t;

    static int face_index(Vertex a, Vertex b, Vertex c) {
        FaceTriple f{a, b, c};
        std::sort(f.begin(), f.end());
        return (f[0] << 8) | (f[1] << 4) | f[2];
    }

    void add_face(Vertex a, Vertex b, Vertex c) {
        face_present_[face_index(a, b, c)] = true;
        face_list_.push_back({a, b, c});
        ++ec_[a][b];
        ++ec_[b][a];
        ++ec_[b][c];
        ++ec_[c][b];
        ++ec_[a][c];
        ++ec_[c][a];
        auto link = [&](Vertex v, Vertex x, Vertex y) {
            ladj_[v][x] |= Mask(1) << y;
            ladj_[v][y] |= Mask(1) << x;
            lvert_[v] |= (Mask(1) << x) | (Mask(1) << y);
        };
        link(a, b, c);
        link(b, a, c);
        link(c, a, b);
    }

    void remove_face(Vertex a, Vertex b, Vertex c) {
        face_present_[face_index(a, b, c)] = false;
        face_list_.pop_back();
        --ec_[a][b];
        --ec_[b][a];
        --ec_[b][c];
        --ec_[c][b];
        --ec_[a][c];
        --ec_[c][a];
        auto unlink = [&](Vertex v, Vertex x, Vertex y) {
            ladj_[v][x] &= ~(Mask(1) << y);
            ladj_[v][y] &= ~(Mask(1) << x);
            if (ladj_[v][x] == 0) lvert_[v] &= ~(Mask(1) << x);
            if (ladj_[v][y] == 0) lvert_[v] &= ~(Mask(1) << y);
        };
        unlink(a, b, c);
        unlink(b, a, c);
        unlink(c, a, b);
    }

    bool link_closed(Vertex v) const {
        Mask m = lvert_[v];
        if (m == 0) return false;
        while (m) {
            int x = std::countr_zero(m);
            m &= m - 1;
            if (std::popcount(ladj_[v][x]) != 2) return false;
        }
        return true;
    }

    /// Bitmask of link(v) vertices reachable from x.
    Mask link_component(Vertex v, Vertex x) const {
        Mask comp = Mask(1) << x, frontier = comp;
        while (frontier) {
            Mask next = 0;
            while (frontier) {
                int y = std::countr_zero(frontier);
                frontier &= frontier - 1;
                next |= ladj_[v][y];
            }
            frontier = next & ~comp;
            comp |= next;
        }
        return comp;
    }

    /// Can facet (v,a,b) be added at v?  The new link edge a-b must
    /// keep link(v) a union of paths, or close the whole link into one
    /// cycle.
    bool feasible_at(Vertex v, Vertex a, Vertex b) const {
        if (link_closed(v)) return false;
        if (std::popcount(ladj_[v][a]) >= 2 || std::popcount(ladj_[v][b]) >= 2)
            return false;
        if (ladj_[v][a] & (Mask(1) << b)) return false;  // link multi-edge
        if ((lvert_[v] >> a & 1) && (lvert_[v] >> b & 1)) {
            Mask comp = link_component(v, a);
            if ((comp >> b & 1) && comp != lvert_[v])
                return false;  // would close a partial cycle
        }
        return true;
    }

    void search() {
        // designated open edge: first edge used by exactly one facet
        Vertex u = 0, v = 0;
        bool open = false;
        for (Vertex a = 0; a < static_cast<Vertex>(n_) && !open; ++a)
            for (Vertex b = a + 1; b < static_cast<Vertex>(n_); ++b)
                if (ec_[a][b] == 1) {
                    u = a;
                    v = b;
                    open = true;
                    break;
                }
        if (!open) {
            finish();
            return;
        }
        Vertex limit = static_cast<Vertex>(n_ < max_n_ ? n_ + 1 : n_);
        for (Vertex x = 0; x < limit; ++x) {
            if (x == u || x == v) continue;
            if (face_present_[face_index(u, v, x)]) continue;
            if (ec_[u][x] >= 2 || ec_[v][x] >= 2) continue;
            if (!feasible_at(u, v, x) || !feasible_at(v, u, x)) continue;
            bool fresh = x == static_cast<Vertex>(n_);
            if (!fresh && !feasible_at(x, u, v)) continue;
            add_face(u, v, x);
            if (fresh) ++n_;
            search();
            if (fresh) --n_;
            remove_face(u, v, x);
        }
    }

    void finish() {
        for (Vertex v = 0; v < static_cast<Vertex>(n_); ++v) {
            if (!link_closed(v)) return;
            int x = std::countr_zero(lvert_[v]);
            if (link_component(v, static_cast<Vertex>(x)) != lvert_[v]) return;
        }
        auto r = triangulation_from_faces(face_list_);
        if (!std::holds_alternative<Triangulation>(r)) return;
        const auto& t = std::get<Triangulation>(r);
        if (t.orientable() != orientable_ || t.euler_genus() != genus_) return;
        if (irreducible_only_ && !is_irreducible(t).irreducible) return;
        auto canon = canonical_faces(face_list_);
        found_.emplace(serialize_faces(canon), canon);
    }

    int max_n_, n_ = 0;
    bool orientable_;
    int genus_;
    bool irreducible_only_;
    std::vector<FaceTriple> face_list_;
    std::array<bool, 1 << 12> face_present_{};
    std::uint8_t ec_[kMaxVertices][kMaxVertices] = {};
    Mask ladj_[kMaxVertices][kMaxVertices] = {};
    Mask lvert_[kMaxVertices] = {};
    std::map<std::string, std::vector<FaceTriple>> found_;
};

}  // namespace detail

/// Default per-surface size limits for exhaustive enumeration; beyond
/// these the search gets slow and must be unlocked explicitly via the
/// TRISURF_ENUM_CAP environment variable.
inline int enumeration_cap(bool orientable, int genus) {
    if (const char* env = std::getenv("TRISURF_ENUM_CAP")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw invalid_input("TRISURF_ENUM_CAP is not an integer");
        }
    }
    if (orientable && genus == 0) return 8;
    if (!orientable && genus == 1) return 7;
    if (orientable && genus == 2) return 8;
    return 7;
}

/// All triangulations of the given surface with at most max_n
/// vertices, one canonical representative per isomorphism class,
/// deterministically ordered (vertex count, then facet list).
inline std::vector<CensusEntry> enumerate_triangulations(bool orientable,
                                                         int genus, int max_n,
                                                         bool irreducible_only) {
    if (max_n < 3)
        throw invalid_input("enumerate_triangulations: max_n below 3");
    int cap = enumeration_cap(orientable, genus);
    if (max_n > cap)
        throw invalid_input(
            "enumerate_triangulations: max_n " + std::to_string(max_n) +
            " exceeds the cap " + std::to_string(cap) +
            " for this surface; set TRISURF_ENUM_CAP to unlock larger runs");
    detail::Enumerator e(max_n, orientable, genus, irreducible_only);
    return e.run();
}

struct CensusReport {
    bool ok = true;
    std::size_t entries = 0;
    long long max_vertices = 0;
    std::vector<std::string> problems;  // one line per failed entry check
};

/// Validate every entry of a census: the facets form a triangulation of
/// the declared surface, and (for positive genus, when requested) the
/// simple and full certificates hold together with the vertex bounds.
inline CensusReport check_census(const std::vector<CensusEntry>& entries,
                                 bool check_bound) {
    CensusReport rep;
    rep.entries = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto flag = [&](const std::string& why) {
            rep.ok = false;
            rep.problems.push_back("entry " + std::to_string(i) + ": " + why);
        };
        auto r = triangulation_from_faces(entries[i].faces);
        if (!std::holds_alternative<Triangulation>(r)) {
            flag("not a valid triangulation");
            continue;
        }
        const auto& t = std::get<Triangulation>(r);
        if (t.orientable() != entries[i].orientable ||
            t.euler_genus() != entries[i].genus) {
            flag("declared surface does not match");
            continue;
        }
        long long v = static_cast<long long>(t.graph().vertex_count());
        rep.max_vertices = std::max(rep.max_vertices, v);
        if (!check_bound || t.euler_genus() < 1) continue;
        long long g = t.euler_genus();
        if (v > 13 * g - 4) flag("vertex bound 13g-4 violated");
        if (v > 25 * g - 12) flag("vertex bound 25g-12 violated");
        if (!is_irreducible(t).irreducible) continue;
        if (!check_positive_genus_lemma(t).ok())
            flag("positive-genus lemma violated at some vertex");
        try {
            auto simple = verify_simple_certificate(
                full_partition(t, build_simple_S(t)));
            if (!simple.ok) flag("simple certificate failed");
            auto full = verify_full_certificate(
                full_partition(t, build_good_S(t)));
            if (!full.ok) flag("full certificate failed");
        } catch (const std::exception& ex) {
            flag(std::string("certificate construction failed: ") + ex.what());
        }
    }
    return rep;
}

}  // namespace trisurf
