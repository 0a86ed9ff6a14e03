#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace indforest {

// (w, b, q, s, t): probabilities that a vertex is white, is blue, and that
// an edge's endpoints are white-white, blue-white, blue-blue.
struct KineticState {
    double w = 0, b = 0, q = 0, s = 0, t = 0;
};

enum class TrajectoryMode { Exact, Linearized, Ode };

struct Trajectory {
    TrajectoryMode mode = TrajectoryMode::Exact;
    // (step index or x-coordinate, state)
    std::vector<std::pair<double, KineticState>> points;
};

class DegenerateStateError : public std::runtime_error {
public:
    explicit DegenerateStateError(const std::string& what) : std::runtime_error(what) {}
};

inline KineticState initial_state(int r, double p0) {
    if (r < 3) throw std::invalid_argument("initial_state: need r >= 3");
    if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("initial_state: p0 in (0,1)");
    KineticState st;
    st.w = std::pow(1 - p0, r + 1);
    st.b = r * p0 * std::pow(1 - p0, r);
    st.q = std::pow(1 - p0, 2 * r);
    st.s = (r - 1) * p0 * std::pow(1 - p0, 2 * r - 1);
    st.t = (r - 1.0) * (r - 1.0) * p0 * p0 * std::pow(1 - p0, 2 * r - 2);
    return st;
}

inline void require_denominators(const KineticState& st) {
    if (!(st.w > 0.0) || !(st.b > 0.0))
        throw DegenerateStateError("kinetic step: w or b is zero");
}

// One step of the exact recurrences. a = p*s/w is the probability that a
// given neighbour gains relevant label this step; c = r*p*t/((r-1)*b) plays
// the same role conditional on the vertex being blue.
inline KineticState step_exact(const KineticState& st, int r, double p) {
    if (p == 0.0) return st;
    require_denominators(st);
    const double a = p * st.s / st.w;
    const double c = r * p * st.t / ((r - 1) * st.b);
    const double onep = 1 - p;
    KineticState nx;
    nx.w = st.w * std::pow(1 - a, r);
    nx.b = st.b * onep * std::pow(1 - c, r - 1)
         + r * p * st.s * std::pow(1 - a, r - 1);
    nx.q = st.q * std::pow(1 - a, 2 * r - 2);
    nx.s = st.s * onep * std::pow(1 - a, r - 1) * std::pow(1 - c, r - 2)
         + (r - 1) * p * st.q * st.s / st.w * std::pow(1 - a, 2 * r - 3);
    nx.t = st.t * onep * onep * std::pow(1 - c, 2 * r - 4)
         + 2 * st.s * onep * std::pow(1 - c, r - 2)
               * (r - 1) * p * st.s / st.w * std::pow(1 - a, r - 2)
         + st.q * (r - 1.0) * (r - 1.0) * p * p * st.s * st.s / (st.w * st.w)
               * std::pow(1 - a, 2 * r - 4);
    return nx;
}

// One step of the first-order (auxiliary) recurrences.
inline KineticState step_linearized(const KineticState& st, int r, double p) {
    if (p == 0.0) return st;
    require_denominators(st);
    const double w = st.w, b = st.b, q = st.q, s = st.s, t = st.t;
    KineticState nx;
    nx.w = w - p * r * s;
    nx.b = b + p * (-b - r * t + r * s);
    nx.q = q - p * (2 * r - 2) * q * s / w;
    nx.s = s + p * (-s + (r - 1) * q * s / w - (r - 1) * s * s / w
                    - r * (r - 2) * s * t / ((r - 1) * b));
    nx.t = t + p * (-2 * t + 2 * (r - 1) * s * s / w
                    - 2 * r * (r - 2) * t * t / ((r - 1) * b));
    return nx;
}

inline Trajectory iterate(int r, double p0, double p, int N, TrajectoryMode mode) {
    if (mode == TrajectoryMode::Ode)
        throw std::invalid_argument("iterate: ODE trajectories come from the integrator");
    Trajectory traj;
    traj.mode = mode;
    KineticState st = initial_state(r, p0);
    traj.points.emplace_back(0.0, st);
    for (int i = 1; i <= N; ++i) {
        st = mode == TrajectoryMode::Exact ? step_exact(st, r, p)
                                           : step_linearized(st, r, p);
        traj.points.emplace_back(static_cast<double>(i), st);
    }
    return traj;
}

// Lower bound on E|pruned purple|/n: p0(1-p0)^r + sum_{i=1..N} p(1-p)^r b_{i-1}.
inline double expected_pbar_fraction(const Trajectory& traj, int r, double p0, double p) {
    if (traj.mode != TrajectoryMode::Exact)
        throw std::invalid_argument("expected_pbar_fraction: exact-mode trajectory required");
    double acc = p0 * std::pow(1 - p0, r);
    const double factor = p * std::pow(1 - p, r);
    for (std::size_t i = 1; i < traj.points.size(); ++i)
        acc += factor * traj.points[i - 1].second.b;
    return acc;
}

}  // namespace indforest
