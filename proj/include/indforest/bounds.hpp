#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "indforest/ode.hpp"

namespace indforest {

constexpr double kSubcriticalMargin = 1e-6;

struct BoundReport {
    int r = 0;
    double p0 = 0.0;
    double root_term = 0.0;      // p0 (1-p0)^r
    double integral_term = 0.0;  // integral of b-hat
    double white_term = 0.0;     // limit of w-hat, or 0 if not subcritical
    bool subcritical = false;
    double ratio_limit = 0.0;
    double xi = 0.0;
    double Xi = 0.0;
};

inline bool subcritical(const OdeSolution& sol) {
    return sol.ratio_limit < 1.0 - kSubcriticalMargin;
}

inline BoundReport xi_of_p0(int r, double p0, const OdeOptions& opts = {}) {
    OdeSolution sol = integrate(r, p0, opts);
    BoundReport rep;
    rep.r = r;
    rep.p0 = p0;
    rep.root_term = p0 * std::pow(1 - p0, r);
    rep.integral_term = sol.b_integral;
    rep.subcritical = subcritical(sol);
    rep.ratio_limit = sol.ratio_limit;
    rep.white_term = rep.subcritical ? sol.w_limit : 0.0;
    rep.xi = rep.root_term + rep.integral_term + rep.white_term;
    rep.Xi = 1.0 - rep.xi;
    return rep;
}

class OptimizationFailure : public std::runtime_error {
public:
    explicit OptimizationFailure(const std::string& what) : std::runtime_error(what) {}
};

struct OptimizeResult {
    double p0_star = 0.0;
    BoundReport report;
    std::vector<std::pair<double, double>> trace;  // (p0, xi) evaluations
};

// Coarse grid over p0 then golden-section refinement around the best grid
// point. xi(p0) keeps increasing as p0 -> 0+, so the refinement bracket is
// floored at 1e-3; the limit value stays within Table-1 resolution of the
// values there.
inline OptimizeResult optimize_p0(int r, const OdeOptions& opts = {}) {
    if (r < 3) throw std::invalid_argument("optimize_p0: need r >= 3");
    constexpr double kGridStep = 0.005;
    constexpr double kGridMax = 0.600;
    constexpr double kFloor = 1e-3;

    OptimizeResult out;
    auto eval = [&](double p0) {
        BoundReport rep = xi_of_p0(r, p0, opts);
        out.trace.emplace_back(p0, rep.xi);
        return rep;
    };

    double best_p0 = -1.0, best_xi = -1.0;
    int failures = 0, total = 0;
    for (double p0 = kGridStep; p0 <= kGridMax + 1e-12; p0 += kGridStep) {
        ++total;
        try {
            BoundReport rep = eval(p0);
            if (rep.xi > best_xi) {
                best_xi = rep.xi;
                best_p0 = p0;
            }
        } catch (const IntegrationFailure&) {
            ++failures;
        } catch (const HorizonExceeded&) {
            ++failures;
        }
    }
    if (failures == total) throw OptimizationFailure("all grid points failed to integrate");

    double lo = std::max(best_p0 - kGridStep, kFloor);
    double hi = std::min(best_p0 + kGridStep, kGridMax);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = eval(c).xi, fd = eval(d).xi;
    while (hi - lo > 1e-5) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = eval(c).xi;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = eval(d).xi;
        }
    }
    double p0_star = 0.5 * (lo + hi);
    BoundReport rep = eval(p0_star);
    if (rep.xi < best_xi) {  // refinement never worsens the answer
        p0_star = best_p0;
        rep = eval(best_p0);
    }
    out.p0_star = p0_star;
    out.report = rep;
    return out;
}

inline std::vector<BoundReport> table(int r_min, int r_max, const OdeOptions& opts = {}) {
    if (r_min < 3 || r_max < r_min)
        throw std::invalid_argument("table: need 3 <= r_min <= r_max");
    std::vector<BoundReport> rows;
    for (int r = r_min; r <= r_max; ++r)
        rows.push_back(optimize_p0(r, opts).report);
    return rows;
}

}  // namespace indforest
