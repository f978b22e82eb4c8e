#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trisurf {

using Vertex = std::uint32_t;

struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Undirected simple graph on an arbitrary (sparse) vertex set.
/// Vertices are identified by id; only vertices that were explicitly
/// added (or appear in an edge) are members.
class SimpleGraph {
public:
    SimpleGraph() = default;

    void add_vertex(Vertex v) { adj_.try_emplace(v); }

    void add_edge(Vertex u, Vertex v) {
        if (u == v)
            throw invalid_input("SimpleGraph: loop edge " + std::to_string(u));
        adj_[u].insert(v);
        adj_[v].insert(u);
    }

    bool has_vertex(Vertex v) const { return adj_.count(v) != 0; }

    bool has_edge(Vertex u, Vertex v) const {
        auto it = adj_.find(u);
        return it != adj_.end() && it->second.count(v) != 0;
    }

    std::size_t vertex_count() const { return adj_.size(); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (auto& [v, nb] : adj_) twice += nb.size();
        return twice / 2;
    }

    std::size_t degree(Vertex v) const { return neighbors(v).size(); }

    const std::set<Vertex>& neighbors(Vertex v) const {
        auto it = adj_.find(v);
        if (it == adj_.end())
            throw invalid_input("SimpleGraph: unknown vertex " + std::to_string(v));
        return it->second;
    }

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> vs;
        vs.reserve(adj_.size());
        for (auto& [v, nb] : adj_) vs.push_back(v);
        return vs;
    }

    /// G_v: the subgraph induced by {v} together with the neighbours of v.
    SimpleGraph closed_neighborhood_subgraph(Vertex v) const {
        std::set<Vertex> keep = neighbors(v);
        keep.insert(v);
        return induced(keep);
    }

    SimpleGraph induced(const std::set<Vertex>& keep) const {
        SimpleGraph g;
        for (Vertex v : keep)
            if (has_vertex(v)) g.add_vertex(v);
        for (Vertex v : keep) {
            if (!has_vertex(v)) continue;
            for (Vertex w : neighbors(v))
                if (w > v && keep.count(w)) g.add_edge(v, w);
        }
        return g;
    }

    /// e(A): number of edges with both ends in A.
    std::size_t edge_count_within(const std::set<Vertex>& a) const {
        std::size_t twice = 0;
        for (Vertex v : a) {
            if (!has_vertex(v)) continue;
            for (Vertex w : neighbors(v))
                if (a.count(w)) ++twice;
        }
        return twice / 2;
    }

    /// e(A,B) for disjoint A and B.
    std::size_t edge_count_between(const std::set<Vertex>& a,
                                   const std::set<Vertex>& b) const {
        std::size_t n = 0;
        for (Vertex v : a) {
            if (!has_vertex(v)) continue;
            for (Vertex w : neighbors(v))
                if (b.count(w)) ++n;
        }
        return n;
    }

    std::set<Vertex> vertex_set() const {
        std::set<Vertex> s;
        for (auto& [v, nb] : adj_) s.insert(v);
        return s;
    }

    std::size_t min_degree() const {
        std::size_t d = SIZE_MAX;
        for (auto& [v, nb] : adj_) d = std::min(d, nb.size());
        return adj_.empty() ? 0 : d;
    }

    bool is_connected() const {
        if (adj_.empty()) return true;
        std::set<Vertex> seen;
        std::vector<Vertex> stack{adj_.begin()->first};
        seen.insert(stack.back());
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : neighbors(v))
                if (seen.insert(w).second) stack.push_back(w);
        }
        return seen.size() == adj_.size();
    }

    bool operator==(const SimpleGraph& o) const { return adj_ == o.adj_; }

private:
    std::map<Vertex, std::set<Vertex>> adj_;
};

inline SimpleGraph graph_union(const SimpleGraph& g, const SimpleGraph& h) {
    SimpleGraph u = g;
    for (Vertex v : h.vertices()) u.add_vertex(v);
    for (Vertex v : h.vertices())
        for (Vertex w : h.neighbors(v))
            if (w > v) u.add_edge(v, w);
    return u;
}

inline std::set<Vertex> set_intersection(const std::set<Vertex>& a,
                                         const std::set<Vertex>& b) {
    std::set<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(out, out.begin()));
    return out;
}

}  // namespace trisurf
