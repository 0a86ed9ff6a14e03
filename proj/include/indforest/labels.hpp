#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "indforest/graph.hpp"

namespace indforest {

// Per-vertex ascending label sets S(v) within {0..N}, plus the parameters
// that generated them.
struct LabelSchedule {
    int horizon = 0;  // N
    double p0 = 0.0;
    double p = 0.0;
    std::vector<std::vector<int>> labels;

    bool has_label(int v, int i) const {
        const auto& s = labels[v];
        return std::binary_search(s.begin(), s.end(), i);
    }
};

// Relevant label per vertex, kNoLabel if none.
constexpr int kNoLabel = -1;
using RelevantLabeling = std::vector<int>;

enum class Color : std::uint8_t { White, Blue, Orange, Purple };

struct ColoringState {
    int time = 0;
    std::vector<Color> color;
};

// p0 = 0 is rejected (the algorithm would be vacuous); p0 = 1 and p = 0 are
// permitted as degenerate cases.
inline void check_probabilities(double p0, double p) {
    if (!(p0 > 0.0 && p0 <= 1.0))
        throw std::invalid_argument("p0 must be in (0,1]");
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("p must be in [0,1)");
}

// Label 0 with probability p0, labels 1..N each with probability p, all
// independent. Sampling order is vertex-index-major, label-value-minor.
inline LabelSchedule sample_labels(int n, int N, double p0, double p,
                                   std::uint64_t seed) {
    check_probabilities(p0, p);
    LabelSchedule sched;
    sched.horizon = N;
    sched.p0 = p0;
    sched.p = p;
    sched.labels.resize(n);
    std::mt19937_64 rng(seed);
    for (int v = 0; v < n; ++v) {
        auto& s = sched.labels[v];
        if (uniform01(rng) < p0) s.push_back(0);
        if (p > 0.0)  // p = 0 consumes no draws, so the run matches N = 0
            for (int i = 1; i <= N; ++i)
                if (uniform01(rng) < p) s.push_back(i);
    }
    return sched;
}

// Inductive relevant-label computation, one pass per label value. Pass i
// reads only relevant labels strictly smaller than i, so the intra-pass
// order is immaterial.
inline RelevantLabeling relevant_labels(const Graph& g, const LabelSchedule& sched) {
    int n = g.vertex_count();
    if (static_cast<int>(sched.labels.size()) != n)
        throw std::invalid_argument("relevant_labels: schedule size mismatch");
    RelevantLabeling rl(n, kNoLabel);
    std::vector<int> gained;
    for (int i = 0; i <= sched.horizon; ++i) {
        gained.clear();
        for (int v = 0; v < n; ++v) {
            if (rl[v] != kNoLabel || !sched.has_label(v, i)) continue;
            if (i == 0) {
                gained.push_back(v);
                continue;
            }
            int earlier = 0;
            for (int u : g.neighbors(v))
                if (rl[u] != kNoLabel && rl[u] < i) ++earlier;
            if (earlier == 1) gained.push_back(v);
        }
        for (int v : gained) rl[v] = i;
    }
    return rl;
}

// Colouring at time l: purple iff relevant label <= l; otherwise white,
// blue or orange by the number of purple neighbours (0, 1, >= 2).
inline ColoringState coloring_at(const Graph& g, const RelevantLabeling& rl, int l) {
    int n = g.vertex_count();
    ColoringState cs;
    cs.time = l;
    cs.color.resize(n);
    for (int v = 0; v < n; ++v) {
        if (rl[v] != kNoLabel && rl[v] <= l) {
            cs.color[v] = Color::Purple;
            continue;
        }
        int purple = 0;
        for (int u : g.neighbors(v))
            if (rl[u] != kNoLabel && rl[u] <= l) ++purple;
        cs.color[v] = purple == 0 ? Color::White
                    : purple == 1 ? Color::Blue
                                  : Color::Orange;
    }
    return cs;
}

}  // namespace indforest
