#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace indforest {

// Membership vector over {0..n-1}.
using VertexSet = std::vector<std::uint8_t>;

inline std::size_t set_count(const VertexSet& s) {
    std::size_t c = 0;
    for (auto x : s) c += (x != 0);
    return c;
}

// Simple undirected graph with sorted adjacency lists. Immutable after
// construction.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n), adj_(n) {
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("edge endpoint out of range");
            if (u == v) throw std::invalid_argument("self-loop");
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& nb : adj_) {
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw std::invalid_argument("parallel edge");
        }
        m_ = static_cast<int>(edges.size());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool is_regular(int r) const {
        for (int v = 0; v < n_; ++v)
            if (degree(v) != r) return false;
        return true;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(m_);
        for (int u = 0; u < n_; ++u)
            for (int v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> adj_;
};

constexpr int kInfiniteGirth = std::numeric_limits<int>::max();

// 53-bit uniform in [0,1); avoids std::uniform_real_distribution so that
// streams are identical across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random r-regular graph via the pairing model: r point-copies per vertex,
// uniform perfect matching, resample the whole matching on any loop or
// repeated edge.
inline Graph generate_regular(int n, int r, std::uint64_t seed,
                              int retry_budget = 1000) {
    if (r >= n) throw std::invalid_argument("generate_regular: need r < n");
    if (r < 1 || n < 1) throw std::invalid_argument("generate_regular: bad n or r");
    if ((static_cast<long long>(n) * r) % 2 != 0)
        throw std::invalid_argument("generate_regular: n*r must be even");

    std::mt19937_64 rng(seed);
    std::vector<int> points(static_cast<std::size_t>(n) * r);
    for (std::size_t i = 0; i < points.size(); ++i)
        points[i] = static_cast<int>(i) / r;

    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        // Fisher-Yates, then pair consecutive points.
        for (std::size_t i = points.size() - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(uniform01(rng) * (i + 1));
            if (j > i) j = i;
            std::swap(points[i], points[j]);
        }
        bool ok = true;
        std::vector<std::pair<int, int>> edges;
        edges.reserve(points.size() / 2);
        for (std::size_t i = 0; i + 1 < points.size() && ok; i += 2) {
            int u = points[i], v = points[i + 1];
            if (u == v) ok = false;
            else edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        if (!ok) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            continue;
        return Graph(n, std::move(edges));
    }
    throw std::runtime_error("generate_regular: retry budget exhausted");
}

// Exact girth by BFS from every vertex. For a root on a shortest cycle the
// first cross edge closes it, so the minimum over roots is exact.
inline int girth(const Graph& g) {
    int n = g.vertex_count();
    int best = kInfiniteGirth;
    std::vector<int> dist(n), parent(n);
    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> q;
        dist[root] = 0;
        q.push(root);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (best != kInfiniteGirth && 2 * dist[u] >= best) break;
            for (int v : g.neighbors(u)) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    q.push(v);
                } else if (v != parent[u]) {
                    best = std::min(best, dist[u] + dist[v] + 1);
                }
            }
        }
    }
    return best;
}

namespace detail {

// Visits the components of G[s]; calls fn(component_vertices, induced_edges).
template <typename Fn>
void for_each_induced_component(const Graph& g, const VertexSet& s, Fn&& fn) {
    int n = g.vertex_count();
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<int> comp;
    for (int start = 0; start < n; ++start) {
        if (!s[start] || seen[start]) continue;
        comp.clear();
        long long edges2 = 0;  // twice the induced edge count
        std::queue<int> q;
        seen[start] = 1;
        q.push(start);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int v : g.neighbors(u)) {
                if (!s[v]) continue;
                ++edges2;
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
            }
        }
        fn(comp, edges2 / 2);
    }
}

}  // namespace detail

inline bool induced_is_acyclic(const Graph& g, const VertexSet& s) {
    bool acyclic = true;
    detail::for_each_induced_component(g, s, [&](const std::vector<int>& comp, long long e) {
        if (e != static_cast<long long>(comp.size()) - 1) acyclic = false;
    });
    return acyclic;
}

// Union of the tree components of G[s].
inline VertexSet acyclic_components(const Graph& g, const VertexSet& s) {
    VertexSet out(g.vertex_count(), 0);
    detail::for_each_induced_component(g, s, [&](const std::vector<int>& comp, long long e) {
        if (e == static_cast<long long>(comp.size()) - 1)
            for (int v : comp) out[v] = 1;
    });
    return out;
}

// Rooted tree where the root has r children and every other internal vertex
// has r-1 children, truncated at the given depth. Root is vertex 0 and
// vertices are in BFS order.
inline std::pair<Graph, int> truncated_tree(int r, int depth) {
    if (r < 2) throw std::invalid_argument("truncated_tree: need r >= 2");
    if (depth < 0) throw std::invalid_argument("truncated_tree: need depth >= 0");
    std::vector<std::pair<int, int>> edges;
    std::vector<int> level = {0};
    int next = 1;
    for (int d = 0; d < depth; ++d) {
        std::vector<int> nxt;
        for (int v : level) {
            int children = (v == 0) ? r : r - 1;
            for (int c = 0; c < children; ++c) {
                edges.emplace_back(v, next);
                nxt.push_back(next);
                ++next;
            }
        }
        level = std::move(nxt);
    }
    return {Graph(next, std::move(edges)), 0};
}

// Hard-coded high-girth cubic graphs: petersen (girth 5), heawood (girth 6),
// mcgee (girth 7). Heawood and McGee come from their LCF notations
// [5,-5]^7 and [12,7,-7]^8.
inline Graph fixture(const std::string& name) {
    auto cycle_plus = [](int n, std::vector<std::pair<int, int>> chords) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
        edges.insert(edges.end(), chords.begin(), chords.end());
        return Graph(n, std::move(edges));
    };
    if (name == "petersen") {
        return Graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                          {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},
                          {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
    }
    if (name == "heawood") {
        return cycle_plus(14, {{0, 5}, {2, 7}, {4, 9}, {6, 11}, {8, 13}, {10, 1}, {12, 3}});
    }
    if (name == "mcgee") {
        return cycle_plus(24, {{0, 12}, {1, 8}, {2, 19}, {3, 15}, {4, 11}, {5, 22},
                               {6, 18}, {7, 14}, {9, 21}, {10, 17}, {13, 20}, {16, 23}});
    }
    throw std::invalid_argument("fixture: unknown name '" + name + "'");
}

// Text format: first line "n m", then m lines "u v" with u < v, 0-based.
inline void write_graph(std::ostream& os, const Graph& g) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline Graph read_graph(std::istream& is) {
    int n, m;
    if (!(is >> n >> m)) throw std::invalid_argument("read_graph: bad header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(is >> u >> v)) throw std::invalid_argument("read_graph: truncated edge list");
        if (!(u < v)) throw std::invalid_argument("read_graph: edges must have u < v");
        edges.emplace_back(u, v);
    }
    return Graph(n, std::move(edges));
}

}  // namespace indforest
