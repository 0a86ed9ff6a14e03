#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "indforest/graph.hpp"
#include "indforest/kinetics.hpp"
#include "indforest/labels.hpp"

namespace indforest {

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

constexpr double kEnumerationBudget = 1073741824.0;  // 2^30 weighted assignments

struct EnumerationSpec {
    int r = 3;
    int i = 0;        // target time; label horizon equals i
    double p0 = 0.2;
    double p = 0.1;
};

// Kahan-compensated accumulator.
struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

namespace detail {

inline double enumeration_size(int n_vertices, int horizon) {
    return std::pow(std::pow(2.0, horizon + 1), n_vertices);
}

// Enumerates every assignment of label subsets of {0..horizon} to the
// vertices of g, calling fn(relevant_labeling, weight) for each. Weight is
// the product of per-vertex subset probabilities.
template <typename Fn>
void enumerate_schedules(const Graph& g, int horizon, double p0, double p, Fn&& fn) {
    int n = g.vertex_count();
    int states = 1 << (horizon + 1);
    if (enumeration_size(n, horizon) > kEnumerationBudget)
        throw BudgetExceeded("enumeration over " + std::to_string(n) +
                             " vertices, horizon " + std::to_string(horizon));

    std::vector<double> mask_weight(states);
    std::vector<std::vector<int>> mask_labels(states);
    for (int m = 0; m < states; ++m) {
        double w = (m & 1) ? p0 : 1 - p0;
        for (int i = 1; i <= horizon; ++i) {
            bool on = (m >> i) & 1;
            w *= on ? p : 1 - p;
            if (on) mask_labels[m].push_back(i);
        }
        if (m & 1) mask_labels[m].insert(mask_labels[m].begin(), 0);
        mask_weight[m] = w;
    }

    LabelSchedule sched;
    sched.horizon = horizon;
    sched.p0 = p0;
    sched.p = p;
    sched.labels.assign(n, {});

    std::vector<int> odo(n, 0);
    for (;;) {
        double weight = 1.0;
        for (int v = 0; v < n; ++v) {
            weight *= mask_weight[odo[v]];
            sched.labels[v] = mask_labels[odo[v]];
        }
        fn(relevant_labels(g, sched), weight);
        int v = 0;
        while (v < n && ++odo[v] == states) odo[v++] = 0;
        if (v == n) break;
    }
}

// Double ball of radius depth around an edge (u=0, v=1); every vertex
// closer than depth to the nearest root has full degree r.
inline Graph double_ball(int r, int depth) {
    std::vector<std::pair<int, int>> edges = {{0, 1}};
    std::vector<std::pair<int, int>> frontier = {{0, 0}, {1, 0}};  // (vertex, dist)
    int next = 2;
    while (!frontier.empty()) {
        std::vector<std::pair<int, int>> nxt;
        for (auto [v, d] : frontier) {
            if (d >= depth) continue;
            int children = r - 1;  // one slot is taken by the parent / twin root
            for (int c = 0; c < children; ++c) {
                edges.emplace_back(v, next);
                nxt.emplace_back(next, d + 1);
                ++next;
            }
        }
        frontier = std::move(nxt);
    }
    return Graph(next, std::move(edges));
}

inline bool is_white(const Graph& g, const RelevantLabeling& rl, int v, int l) {
    if (rl[v] != kNoLabel && rl[v] <= l) return false;
    for (int u : g.neighbors(v))
        if (rl[u] != kNoLabel && rl[u] <= l) return false;
    return true;
}

inline bool is_blue(const Graph& g, const RelevantLabeling& rl, int v, int l) {
    if (rl[v] != kNoLabel && rl[v] <= l) return false;
    int purple = 0;
    for (int u : g.neighbors(v))
        if (rl[u] != kNoLabel && rl[u] <= l) ++purple;
    return purple == 1;
}

}  // namespace detail

// Exact root colour probabilities (white, blue) at time i on the radius
// (i+1) ball; this ball fully determines the root colour at that time.
struct SinglePoint {
    double w = 0.0, b = 0.0;
};

// Exact (white, blue) probability of an arbitrary vertex at time i in an
// arbitrary graph, by full enumeration.
inline SinglePoint exact_point(const Graph& g, int root, int i, double p0, double p) {
    KahanSum w, b;
    detail::enumerate_schedules(g, i, p0, p,
        [&](const RelevantLabeling& rl, double weight) {
            if (detail::is_white(g, rl, root, i)) w.add(weight);
            else if (detail::is_blue(g, rl, root, i)) b.add(weight);
        });
    return {w.value(), b.value()};
}

inline SinglePoint exact_single(const EnumerationSpec& spec) {
    auto [ball, root] = truncated_tree(spec.r, spec.i + 1);
    return exact_point(ball, root, spec.i, spec.p0, spec.p);
}

struct PairEstimate {
    double q = 0, s = 0, t = 0;
    double q_se = 0, s_se = 0, t_se = 0;
    long long samples = 0;
};

// Monte-Carlo estimates of (q_i, s_i, t_i) on the radius-(i+1) double ball
// around an edge. Deterministic per seed.
inline PairEstimate mc_pair(const EnumerationSpec& spec, long long samples,
                            std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("mc_pair: samples >= 1");
    Graph ball = detail::double_ball(spec.r, spec.i + 1);
    int n = ball.vertex_count();
    std::mt19937_64 rng(seed);
    long long cq = 0, cs = 0, ct = 0;
    for (long long k = 0; k < samples; ++k) {
        LabelSchedule sched;
        sched.horizon = spec.i;
        sched.p0 = spec.p0;
        sched.p = spec.p;
        sched.labels.resize(n);
        for (int v = 0; v < n; ++v) {
            auto& s = sched.labels[v];
            s.clear();
            if (uniform01(rng) < spec.p0) s.push_back(0);
            for (int i = 1; i <= spec.i; ++i)
                if (uniform01(rng) < spec.p) s.push_back(i);
        }
        auto rl = relevant_labels(ball, sched);
        bool uw = detail::is_white(ball, rl, 0, spec.i);
        bool ub = detail::is_blue(ball, rl, 0, spec.i);
        bool vw = detail::is_white(ball, rl, 1, spec.i);
        bool vb = detail::is_blue(ball, rl, 1, spec.i);
        if (uw && vw) ++cq;
        if (ub && vw) ++cs;
        if (ub && vb) ++ct;
    }
    auto est = [&](long long c) { return static_cast<double>(c) / samples; };
    auto se = [&](double p) { return std::sqrt(p * (1 - p) / samples); };
    PairEstimate out;
    out.q = est(cq);
    out.s = est(cs);
    out.t = est(ct);
    out.q_se = se(out.q);
    out.s_se = se(out.s);
    out.t_se = se(out.t);
    out.samples = samples;
    return out;
}

// Branch-independence check: conditional on the root being white at time i,
// the joint distribution of the colourings of two branches must factor into
// the product of marginals. Exact on the deepest tree the budget allows
// (at least radius i+1). Returns the max |joint - product| over all
// realized coloring pairs, or nullopt if the conditioning event has zero
// probability.
inline std::optional<double> independence_check(int r, int i, double p0, double p) {
    int depth = i + 2;
    while (depth > i + 1 &&
           detail::enumeration_size(truncated_tree(r, depth).first.vertex_count(), i) >
               kEnumerationBudget)
        --depth;
    auto [ball, root] = truncated_tree(r, depth);

    // Vertices of branch j: those whose path to the root passes child j.
    // BFS order puts children of the root at 1..r.
    int n = ball.vertex_count();
    std::vector<int> branch_of(n, -1);
    for (int j = 0; j < r; ++j) branch_of[1 + j] = j;
    for (int v = 1 + r; v < n; ++v)
        branch_of[v] = branch_of[ball.neighbors(v).front()];  // parent is first (smaller index)

    std::vector<std::vector<int>> branch(r);
    for (int v = 1; v < n; ++v) branch[branch_of[v]].push_back(v);

    auto encode = [&](const RelevantLabeling& rl, int j) {
        std::uint64_t key = 0;
        for (int v : branch[j]) {
            int c = (rl[v] != kNoLabel && rl[v] <= i) ? 3
                  : detail::is_white(ball, rl, v, i)  ? 0
                  : detail::is_blue(ball, rl, v, i)   ? 1
                                                      : 2;
            key = key * 4 + static_cast<std::uint64_t>(c);
        }
        return key;
    };

    std::map<std::pair<std::uint64_t, std::uint64_t>, KahanSum> joint;
    std::map<std::uint64_t, KahanSum> m1, m2;
    KahanSum cond;
    detail::enumerate_schedules(ball, i, p0, p,
        [&](const RelevantLabeling& rl, double weight) {
            if (!detail::is_white(ball, rl, root, i)) return;
            cond.add(weight);
            auto k1 = encode(rl, 0), k2 = encode(rl, 1);
            joint[{k1, k2}].add(weight);
            m1[k1].add(weight);
            m2[k2].add(weight);
        });
    if (cond.value() <= 0.0) return std::nullopt;

    double c = cond.value(), worst = 0.0;
    for (const auto& [key, sum] : joint) {
        double pj = sum.value() / c;
        double pm = (m1.at(key.first).value() / c) * (m2.at(key.second).value() / c);
        worst = std::max(worst, std::abs(pj - pm));
    }
    return worst;
}

// Factorization of P(v_j not relevant at time i for all j in J | root white
// at i-1) into per-neighbour conditionals, for every nonempty J. Exact.
inline double factorization_check_cor41(int r, int i, double p0, double p) {
    if (i < 1) throw std::invalid_argument("factorization_check_cor41: i >= 1");
    auto [ball, root] = truncated_tree(r, i + 1);
    int subsets = 1 << r;
    std::vector<KahanSum> joint(subsets);  // P(all of J avoid R_i, root white at i-1)
    KahanSum cond;
    detail::enumerate_schedules(ball, i, p0, p,
        [&](const RelevantLabeling& rl, double weight) {
            if (!detail::is_white(ball, rl, root, i - 1)) return;
            cond.add(weight);
            int avoid = 0;
            for (int j = 0; j < r; ++j)
                if (rl[1 + j] != i) avoid |= 1 << j;
            for (int J = 1; J < subsets; ++J)
                if ((J & avoid) == J) joint[J].add(weight);
        });
    if (cond.value() <= 0.0)
        throw std::runtime_error("factorization_check_cor41: zero-probability condition");

    double c = cond.value(), worst = 0.0;
    for (int J = 1; J < subsets; ++J) {
        double pj = joint[J].value() / c;
        double prod = 1.0;
        for (int j = 0; j < r; ++j)
            if (J & (1 << j)) prod *= joint[1 << j].value() / c;
        worst = std::max(worst, std::abs(pj - prod));
    }
    return worst;
}

struct TransitionCheck {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double stderr_ = 0.0;  // zero for exact checks
};

// Single-vertex transition factors at i=1, exact: white->white and
// white->blue against (1 - p s0/w0)^r and r p s0/w0 (1 - p s0/w0)^{r-1}.
inline std::vector<TransitionCheck> check_cor42(int r, double p0, double p) {
    auto [ball, root] = truncated_tree(r, 2);
    KahanSum w0sum, ww, wb;
    detail::enumerate_schedules(ball, 1, p0, p,
        [&](const RelevantLabeling& rl, double weight) {
            if (!detail::is_white(ball, rl, root, 0)) return;
            w0sum.add(weight);
            if (detail::is_white(ball, rl, root, 1)) ww.add(weight);
            else if (detail::is_blue(ball, rl, root, 1)) wb.add(weight);
        });
    KineticState st = initial_state(r, p0);
    double a = p * st.s / st.w;
    return {
        {"white_to_white", ww.value() / w0sum.value(), std::pow(1 - a, r), 0.0},
        {"white_to_blue", wb.value() / w0sum.value(),
         r * a * std::pow(1 - a, r - 1), 0.0},
    };
}

// Blue->blue transition factor at i=1, exact, against
// (1-p)(1 - r p t0/((r-1) b0))^{r-1}.
inline std::vector<TransitionCheck> check_cor43(int r, double p0, double p) {
    auto [ball, root] = truncated_tree(r, 2);
    KahanSum b0sum, bb;
    detail::enumerate_schedules(ball, 1, p0, p,
        [&](const RelevantLabeling& rl, double weight) {
            if (!detail::is_blue(ball, rl, root, 0)) return;
            b0sum.add(weight);
            if (detail::is_blue(ball, rl, root, 1)) bb.add(weight);
        });
    KineticState st = initial_state(r, p0);
    double c = r * p * st.t / ((r - 1) * st.b);
    return {{"blue_to_blue", bb.value() / b0sum.value(),
             (1 - p) * std::pow(1 - c, r - 1), 0.0}};
}

// The six pair transition factors at i=1, Monte-Carlo on the double ball.
inline std::vector<TransitionCheck> check_cor44(int r, double p0, double p,
                                                long long samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("check_cor44: samples >= 1");
    Graph ball = detail::double_ball(r, 2);
    int n = ball.vertex_count();
    std::mt19937_64 rng(seed);

    // conditioning events at time 0: ww, wb, bb; transitions read at time 1
    long long n_ww = 0, n_wb = 0, n_bb = 0;
    long long ww_ww = 0, ww_wb = 0, ww_bb = 0, wb_wb = 0, wb_bb = 0, bb_bb = 0;
    LabelSchedule sched;
    sched.horizon = 1;
    sched.p0 = p0;
    sched.p = p;
    sched.labels.resize(n);
    for (long long k = 0; k < samples; ++k) {
        for (int v = 0; v < n; ++v) {
            auto& s = sched.labels[v];
            s.clear();
            if (uniform01(rng) < p0) s.push_back(0);
            if (uniform01(rng) < p) s.push_back(1);
        }
        auto rl = relevant_labels(ball, sched);
        bool uw0 = detail::is_white(ball, rl, 0, 0), vw0 = detail::is_white(ball, rl, 1, 0);
        bool ub0 = detail::is_blue(ball, rl, 0, 0), vb0 = detail::is_blue(ball, rl, 1, 0);
        bool uw1 = detail::is_white(ball, rl, 0, 1), vw1 = detail::is_white(ball, rl, 1, 1);
        bool ub1 = detail::is_blue(ball, rl, 0, 1), vb1 = detail::is_blue(ball, rl, 1, 1);
        if (uw0 && vw0) {
            ++n_ww;
            if (uw1 && vw1) ++ww_ww;
            if (uw1 && vb1) ++ww_wb;
            if (ub1 && vb1) ++ww_bb;
        }
        if (uw0 && vb0) {
            ++n_wb;
            if (uw1 && vb1) ++wb_wb;
            if (ub1 && vb1) ++wb_bb;
        }
        if (ub0 && vb0) {
            ++n_bb;
            if (ub1 && vb1) ++bb_bb;
        }
    }

    KineticState st = initial_state(r, p0);
    double a = p * st.s / st.w;
    double c = r * p * st.t / ((r - 1) * st.b);
    auto mk = [](const std::string& name, long long num, long long den, double expect) {
        double est = den > 0 ? static_cast<double>(num) / den : 0.0;
        double se = den > 0 ? std::sqrt(est * (1 - est) / den) : 0.0;
        return TransitionCheck{name, est, expect, se};
    };
    return {
        mk("ww_to_ww", ww_ww, n_ww, std::pow(1 - a, 2 * r - 2)),
        mk("ww_to_wb", ww_wb, n_ww, (r - 1) * a * std::pow(1 - a, 2 * r - 3)),
        mk("ww_to_bb", ww_bb, n_ww,
           (r - 1.0) * (r - 1.0) * a * a * std::pow(1 - a, 2 * r - 4)),
        mk("wb_to_wb", wb_wb, n_wb,
           (1 - p) * std::pow(1 - a, r - 1) * std::pow(1 - c, r - 2)),
        mk("wb_to_bb", wb_bb, n_wb,
           (r - 1) * p * (1 - p) * st.s / st.w * std::pow(1 - a, r - 2)
               * std::pow(1 - c, r - 2)),
        mk("bb_to_bb", bb_bb, n_bb, (1 - p) * (1 - p) * std::pow(1 - c, 2 * r - 4)),
    };
}

}  // namespace indforest
