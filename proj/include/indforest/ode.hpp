#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "indforest/kinetics.hpp"

namespace indforest {

class IntegrationFailure : public std::runtime_error {
public:
    explicit IntegrationFailure(const std::string& what) : std::runtime_error(what) {}
};

class HorizonExceeded : public std::runtime_error {
public:
    explicit HorizonExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double tail_tol = 1e-8;
    double x_max_cap = 500.0;
    double x_end = 0.0;  // > 0: integrate to exactly this x, ignoring the tail rule
};

struct OdeSolution {
    int r = 0;
    double p0 = 0.0;
    std::vector<std::pair<double, KineticState>> grid;
    std::vector<double> b_running;  // integral of b up to each grid point
    double b_integral = 0.0;
    double w_limit = 0.0;
    double ratio_limit = 0.0;  // (r-1) q / w at x_stop
    double x_stop = 0.0;
    OdeOptions opts;
};

// Right-hand side of the kinetic ODE system.
inline KineticState derivative(const KineticState& st, int r) {
    require_denominators(st);
    const double w = st.w, b = st.b, q = st.q, s = st.s, t = st.t;
    KineticState d;
    d.w = -r * s;
    d.b = -b - r * t + r * s;
    d.q = -(2 * r - 2) * q * s / w;
    d.s = -s + (r - 1) * q * s / w - (r - 1) * s * s / w
          - r * (r - 2) * s * t / ((r - 1) * b);
    d.t = -2 * t + 2 * (r - 1) * s * s / w
          - 2 * r * (r - 2) * t * t / ((r - 1) * b);
    return d;
}

namespace detail {

// Augmented state: (w, b, q, s, t, integral of b).
using Vec6 = std::array<double, 6>;

inline Vec6 rhs6(const Vec6& y, int r) {
    KineticState st{y[0], y[1], y[2], y[3], y[4]};
    KineticState d = derivative(st, r);
    return {d.w, d.b, d.q, d.s, d.t, st.b};
}

// Dormand-Prince 5(4) coefficients.
struct Dopri {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

}  // namespace detail

// Adaptive Dormand-Prince integration of the kinetic system from
// initial_state(r, p0). The sixth coordinate accumulates the integral of b
// under the same error control. Stops once b has dropped below
// tail_tol/(10 r) while decaying; positivity loss is an error, reaching
// x_max_cap without converging is an error.
inline OdeSolution integrate(int r, double p0, const OdeOptions& opts = {}) {
    using detail::Vec6;
    using D = detail::Dopri;

    OdeSolution sol;
    sol.r = r;
    sol.p0 = p0;
    sol.opts = opts;

    KineticState st0 = initial_state(r, p0);
    Vec6 y{st0.w, st0.b, st0.q, st0.s, st0.t, 0.0};
    double x = 0.0;
    double h = 1e-4;
    Vec6 k1 = detail::rhs6(y, r);  // FSAL
    sol.grid.emplace_back(0.0, st0);
    sol.b_running.push_back(0.0);

    const double b_stop = opts.tail_tol / (10.0 * r);
    const bool fixed_end = opts.x_end > 0.0;
    const double x_limit = fixed_end ? opts.x_end : opts.x_max_cap;
    int rejects_in_a_row = 0;

    while (x < x_limit) {
        h = std::min(h, x_limit - x);
        Vec6 k2, k3, k4, k5, k6, k7, yt, y5;
        auto stage = [&](const Vec6& base) { return detail::rhs6(base, r); };
        bool finite = true;
        double err = 0.0;
        // A stage can sample outside the domain (w or b <= 0) when h is too
        // large; treat that exactly like a failed error estimate and retry
        // with a smaller step.
        try {
            for (int i = 0; i < 6; ++i) yt[i] = y[i] + h * D::a21 * k1[i];
            k2 = stage(yt);
            for (int i = 0; i < 6; ++i) yt[i] = y[i] + h * (D::a31 * k1[i] + D::a32 * k2[i]);
            k3 = stage(yt);
            for (int i = 0; i < 6; ++i)
                yt[i] = y[i] + h * (D::a41 * k1[i] + D::a42 * k2[i] + D::a43 * k3[i]);
            k4 = stage(yt);
            for (int i = 0; i < 6; ++i)
                yt[i] = y[i] + h * (D::a51 * k1[i] + D::a52 * k2[i] + D::a53 * k3[i] + D::a54 * k4[i]);
            k5 = stage(yt);
            for (int i = 0; i < 6; ++i)
                yt[i] = y[i] + h * (D::a61 * k1[i] + D::a62 * k2[i] + D::a63 * k3[i]
                                    + D::a64 * k4[i] + D::a65 * k5[i]);
            k6 = stage(yt);
            for (int i = 0; i < 6; ++i)
                y5[i] = y[i] + h * (D::b1 * k1[i] + D::b3 * k3[i] + D::b4 * k4[i]
                                    + D::b5 * k5[i] + D::b6 * k6[i]);
            for (double v : y5) finite = finite && std::isfinite(v);
            if (finite) k7 = stage(y5);
        } catch (const DegenerateStateError&) {
            finite = false;
        }
        if (finite) {
            for (int i = 0; i < 6; ++i) {
                double e = h * (D::e1 * k1[i] + D::e3 * k3[i] + D::e4 * k4[i]
                                + D::e5 * k5[i] + D::e6 * k6[i] + D::e7 * k7[i]);
                double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err = std::max(err, std::abs(e) / sc);
            }
        } else {
            err = 1e6;
        }

        if (err <= 1.0) {
            x += h;
            y = y5;
            k1 = k7;
            rejects_in_a_row = 0;
            for (int i = 0; i < 5; ++i)
                if (!(y[i] > 0.0))
                    throw IntegrationFailure(
                        "positivity lost at x=" + std::to_string(x) +
                        " coordinate " + std::to_string(i));
            sol.grid.emplace_back(x, KineticState{y[0], y[1], y[2], y[3], y[4]});
            sol.b_running.push_back(y[5]);
            if (fixed_end) {
                if (x >= x_limit - 1e-12) break;
            } else if (y[1] < b_stop && k1[1] < 0.0) {
                break;
            }
        } else if (++rejects_in_a_row > 60) {
            throw IntegrationFailure("step size control failed at x=" + std::to_string(x));
        }
        double fac = 0.9 * std::pow(err > 0 ? 1.0 / err : 1e10, 0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (h < 1e-14)
            throw IntegrationFailure("step underflow at x=" + std::to_string(x));
    }
    if (!fixed_end && x >= opts.x_max_cap)
        throw HorizonExceeded("tail condition not met by x=" + std::to_string(opts.x_max_cap));

    sol.x_stop = x;
    sol.b_integral = y[5];
    sol.w_limit = y[0];
    sol.ratio_limit = (r - 1) * y[2] / y[0];
    return sol;
}

// Cubic Hermite evaluation of a stored solution at arbitrary x <= x_stop.
inline KineticState ode_eval(const OdeSolution& sol, double x) {
    const auto& g = sol.grid;
    if (x <= g.front().first) return g.front().second;
    if (x >= g.back().first) return g.back().second;
    auto it = std::upper_bound(g.begin(), g.end(), x,
        [](double v, const auto& pt) { return v < pt.first; });
    const auto& [x1, s1] = *(it - 1);
    const auto& [x2, s2] = *it;
    double hh = x2 - x1, u = (x - x1) / hh;
    KineticState d1 = derivative(s1, sol.r), d2 = derivative(s2, sol.r);
    auto hermite = [&](double a, double b, double da, double db) {
        double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * a + (u3 - 2 * u2 + u) * hh * da
             + (-2 * u3 + 3 * u2) * b + (u3 - u2) * hh * db;
    };
    KineticState out;
    out.w = hermite(s1.w, s2.w, d1.w, d2.w);
    out.b = hermite(s1.b, s2.b, d1.b, d2.b);
    out.q = hermite(s1.q, s2.q, d1.q, d2.q);
    out.s = hermite(s1.s, s2.s, d1.s, d2.s);
    out.t = hermite(s1.t, s2.t, d1.t, d2.t);
    return out;
}

// Sup deviation per coordinate between the recurrence with step eps and the
// ODE trajectory over [0, k0].
inline std::array<double, 5> ode_vs_recurrence(int r, double p0, double eps, double k0,
                                               TrajectoryMode mode = TrajectoryMode::Linearized,
                                               const OdeOptions& opts = {}) {
    if (!(eps > 0.0) || !(k0 > 0.0))
        throw std::invalid_argument("ode_vs_recurrence: eps > 0 and k0 > 0 required");
    int N = static_cast<int>(std::ceil(k0 / eps));
    Trajectory traj = iterate(r, p0, eps, N, mode);
    OdeOptions o = opts;
    o.x_max_cap = std::max(o.x_max_cap, k0 + 1.0);
    OdeSolution sol = integrate(r, p0, o);
    std::array<double, 5> dev{};
    for (int i = 0; i <= N; ++i) {
        double x = std::min(eps * i, sol.x_stop);
        KineticState ref = ode_eval(sol, x);
        const KineticState& st = traj.points[i].second;
        dev[0] = std::max(dev[0], std::abs(st.w - ref.w));
        dev[1] = std::max(dev[1], std::abs(st.b - ref.b));
        dev[2] = std::max(dev[2], std::abs(st.q - ref.q));
        dev[3] = std::max(dev[3], std::abs(st.s - ref.s));
        dev[4] = std::max(dev[4], std::abs(st.t - ref.t));
    }
    return dev;
}

}  // namespace indforest
