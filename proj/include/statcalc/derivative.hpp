#pragma once

// Graphic means (secant slopes) and derivatives as their limit.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "statcalc/errors.hpp"
#include "statcalc/format.hpp"
#include "statcalc/function.hpp"
#include "statcalc/interval.hpp"
#include "statcalc/mean_integral.hpp"
#include "statcalc/sampling.hpp"

namespace statcalc {

/// Average rate of change (s(t2) - s(t1)) / (t2 - t1). The endpoints are
/// ordered before evaluating, so swapping them gives the identical double.
inline double graphic_mean(const FunctionHandle& s, double t1, double t2) {
    if (t1 == t2) throw std::invalid_argument("graphic mean needs t1 != t2");
    double lo = t1 < t2 ? t1 : t2;
    double hi = t1 < t2 ? t2 : t1;
    return (s(hi) - s(lo)) / (hi - lo);
}

enum class SecantMode { Forward, Central };

struct DerivativeOptions {
    double h0 = 0.1;
    double ratio = 0.5;
    double tol = 1e-8;
    std::size_t max_iter = 40;
    SecantMode mode = SecantMode::Forward;
};

struct SecantIterate {
    double h = 0.0;
    double slope = 0.0;
};

struct DerivativeEstimate {
    double point = 0.0;
    double value = 0.0;
    std::vector<SecantIterate> iterates;
    bool converged = false;
    double achieved_delta = std::numeric_limits<double>::infinity();
};

/// Smallest step tried at t: 2^-30 * max(1, |t|).
inline double step_floor(double t) { return std::ldexp(std::max(1.0, std::fabs(t)), -30); }

/// Graphic means over [t1, t1 + h_k] with h_k = h0 * ratio^k until two
/// successive slopes agree within tol. Stops unconverged at max_iter or when
/// h_k would drop below step_floor(t1).
inline DerivativeEstimate derivative_at(const FunctionHandle& s, double t1, const DerivativeOptions& opt = {}) {
    if (!std::isfinite(t1)) throw std::invalid_argument("derivative point must be finite");
    if (!(opt.h0 > 0.0) || !std::isfinite(opt.h0)) throw std::invalid_argument("h0 must be positive");
    if (!(opt.ratio > 0.0 && opt.ratio < 1.0)) throw std::invalid_argument("ratio must lie in (0, 1)");
    if (!(opt.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (opt.max_iter == 0) throw std::invalid_argument("max_iter must be at least 1");

    DerivativeEstimate est;
    est.point = t1;
    const double floor = step_floor(t1);
    double h = opt.h0;
    for (std::size_t k = 0; k < opt.max_iter; ++k, h *= opt.ratio) {
        if (k > 0 && h < floor) break;
        double slope;
        try {
            slope = opt.mode == SecantMode::Forward ? graphic_mean(s, t1, t1 + h)
                                                    : graphic_mean(s, t1 - h, t1 + h);
        } catch (const EvalError& e) {
            throw e.in_context("secant step h=" + format_real(h));
        }
        est.iterates.push_back({h, slope});
        est.value = slope;
        if (k > 0) {
            est.achieved_delta = std::fabs(slope - est.iterates[k - 1].slope);
            if (est.achieved_delta <= opt.tol) {
                est.converged = true;
                break;
            }
        }
    }
    return est;
}

struct DAPairReport {
    std::string f;
    std::string F;
    Interval interval{0.0, 1.0};
    std::size_t grid_count = 0;
    std::size_t n = 0;  // samples per integral node
    double deriv_tol = 0.0;
    double int_tol = 0.0;
    double max_derivative_error = 0.0;  // max |F'(x) - f(x)|
    double worst_derivative_x = 0.0;
    double max_integral_error = 0.0;    // max |I[f, a, x] - (F(x) - F(a))|
    double worst_integral_x = 0.0;
    bool derivative_ok = false;
    bool integral_ok = false;

    bool ok() const { return derivative_ok && integral_ok; }
};

/// Checks F' = f by forward secants and I[f, a, x] = F(x) - F(a) by mean-based
/// integrals at grid_count evenly spaced points of iv (both ends included).
inline DAPairReport verify_da_pair(const FunctionHandle& f, const FunctionHandle& F, const Interval& iv,
                                   std::size_t grid_count, double deriv_tol, double int_tol,
                                   const PlanTemplate& plan, const DerivativeOptions& dopt = {}) {
    if (grid_count < 2) throw std::invalid_argument("DA pair verification needs at least 2 grid points");
    DAPairReport r;
    r.f = f.label();
    r.F = F.label();
    r.interval = iv;
    r.grid_count = grid_count;
    r.n = plan.n;
    r.deriv_tol = deriv_tol;
    r.int_tol = int_tol;

    const double a = iv.a();
    const double step = iv.width() / static_cast<double>(grid_count - 1);
    double Fa = 0.0;
    try {
        Fa = F(a);
    } catch (const EvalError& e) {
        throw e.in_context("grid point x=" + format_real(a));
    }
    for (std::size_t j = 0; j < grid_count; ++j) {
        double x = j + 1 == grid_count ? iv.b() : a + static_cast<double>(j) * step;
        try {
            double d_err = std::fabs(derivative_at(F, x, dopt).value - f(x));
            if (d_err > r.max_derivative_error || j == 0) {
                r.max_derivative_error = d_err;
                r.worst_derivative_x = x;
            }
            if (j > 0) {
                double area = integral(f, plan.instantiate(Interval(a, x), j)).value;
                double i_err = std::fabs(area - (F(x) - Fa));
                if (i_err > r.max_integral_error || j == 1) {
                    r.max_integral_error = i_err;
                    r.worst_integral_x = x;
                }
            }
        } catch (const EvalError& e) {
            throw e.in_context("grid point x=" + format_real(x));
        }
    }
    r.derivative_ok = r.max_derivative_error <= deriv_tol;
    r.integral_ok = r.max_integral_error <= int_tol;
    return r;
}

}  // namespace statcalc
