#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "indforest/graph.hpp"
#include "indforest/labels.hpp"

namespace indforest {

struct AlgorithmParams {
    int steps = 0;  // N
    double p0 = 0.0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

struct ForestResult {
    VertexSet purple;           // P
    VertexSet pruned_purple;    // P after same-step pruning
    VertexSet white;            // W at time N
    VertexSet harvested_white;  // tree components of G[W]
    VertexSet repairs_removed;
    VertexSet forest;

    std::size_t purple_count = 0;
    std::size_t pruned_count = 0;
    std::size_t white_count = 0;
    std::size_t harvested_count = 0;
    std::size_t repairs_count = 0;
    std::size_t forest_count = 0;
};

// Remove every vertex that has a neighbour with the same relevant label
// value (both endpoints go, step 0 included).
inline VertexSet prune_same_step(const Graph& g, const RelevantLabeling& rl) {
    int n = g.vertex_count();
    VertexSet kept(n, 0);
    for (int v = 0; v < n; ++v) {
        if (rl[v] == kNoLabel) continue;
        bool clash = false;
        for (int u : g.neighbors(v))
            if (rl[u] == rl[v]) { clash = true; break; }
        kept[v] = clash ? 0 : 1;
    }
    return kept;
}

// Greedy decycling of the candidate set: while G[kept] has a cycle, drop the
// vertex of maximum degree within the union of cyclic components, lowest
// index on ties.
inline std::pair<VertexSet, VertexSet> repair(const Graph& g, VertexSet candidate) {
    int n = g.vertex_count();
    VertexSet removed(n, 0);
    for (;;) {
        int best = -1, best_deg = -1;
        detail::for_each_induced_component(g, candidate,
            [&](const std::vector<int>& comp, long long e) {
                if (e == static_cast<long long>(comp.size()) - 1) return;
                for (int v : comp) {
                    int d = 0;
                    for (int u : g.neighbors(v)) d += candidate[u];
                    if (d > best_deg || (d == best_deg && v < best)) {
                        best = v;
                        best_deg = d;
                    }
                }
            });
        if (best < 0) break;
        candidate[best] = 0;
        removed[best] = 1;
    }
    return {std::move(candidate), std::move(removed)};
}

// Full pipeline: sample labels, compute relevant labels, take the time-N
// colouring, prune same-step pairs, harvest tree components of the white
// subgraph, and repair until acyclic.
inline ForestResult run(const Graph& g, const AlgorithmParams& params) {
    check_probabilities(params.p0, params.p);
    int n = g.vertex_count();
    auto sched = sample_labels(n, params.steps, params.p0, params.p, params.seed);
    auto rl = relevant_labels(g, sched);
    auto coloring = coloring_at(g, rl, params.steps);

    ForestResult res;
    res.purple.assign(n, 0);
    res.white.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        if (coloring.color[v] == Color::Purple) res.purple[v] = 1;
        else if (coloring.color[v] == Color::White) res.white[v] = 1;
    }
    res.pruned_purple = prune_same_step(g, rl);
    res.harvested_white = acyclic_components(g, res.white);

    VertexSet candidate(n, 0);
    for (int v = 0; v < n; ++v)
        candidate[v] = res.pruned_purple[v] | res.harvested_white[v];
    auto [kept, removed] = repair(g, std::move(candidate));
    res.forest = std::move(kept);
    res.repairs_removed = std::move(removed);

    res.purple_count = set_count(res.purple);
    res.pruned_count = set_count(res.pruned_purple);
    res.white_count = set_count(res.white);
    res.harvested_count = set_count(res.harvested_white);
    res.repairs_count = set_count(res.repairs_removed);
    res.forest_count = set_count(res.forest);
    return res;
}

struct SampleStats {
    double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
};

inline SampleStats summarize(const std::vector<double>& xs) {
    SampleStats st;
    st.min = xs.front();
    st.max = xs.front();
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
        st.min = std::min(st.min, x);
        st.max = std::max(st.max, x);
    }
    st.mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - st.mean) * (x - st.mean);
    st.stddev = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    return st;
}

struct EmpiricalStats {
    SampleStats forest_fraction;
    SampleStats repairs_fraction;
    SampleStats pruned_fraction;
    int runs = 0;
};

// Independent seeded runs on freshly generated graphs; the generator
// callback maps a run index to a graph (it may always return the same one).
inline EmpiricalStats empirical_forest_fraction(
    const std::function<const Graph&(int)>& graph_for_run,
    const AlgorithmParams& params, int runs) {
    if (runs < 1) throw std::invalid_argument("empirical_forest_fraction: runs >= 1");
    std::vector<double> frac, rep, pruned;
    frac.reserve(runs);
    rep.reserve(runs);
    pruned.reserve(runs);
    for (int k = 0; k < runs; ++k) {
        const Graph& g = graph_for_run(k);
        AlgorithmParams p = params;
        p.seed = params.seed + static_cast<std::uint64_t>(k);
        auto res = run(g, p);
        double n = static_cast<double>(g.vertex_count());
        frac.push_back(static_cast<double>(res.forest_count) / n);
        rep.push_back(static_cast<double>(res.repairs_count) / n);
        pruned.push_back(static_cast<double>(res.pruned_count) / n);
    }
    EmpiricalStats st;
    st.forest_fraction = summarize(frac);
    st.repairs_fraction = summarize(rep);
    st.pruned_fraction = summarize(pruned);
    st.runs = runs;
    return st;
}

}  // namespace indforest
