#pragma once

// Arithmetic means of samples, function averages and the integrals built
// from them: I[f, a, b] = (b - a) * mean of f over samples of [a, b].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "statcalc/errors.hpp"
#include "statcalc/format.hpp"
#include "statcalc/function.hpp"
#include "statcalc/interval.hpp"
#include "statcalc/sampling.hpp"
#include "statcalc/summation.hpp"

namespace statcalc {

struct MeanEstimate {
    double mean = 0.0;
    std::size_t n = 0;
    double sample_stddev = 0.0;  // (n - 1) divisor; 0 when n == 1
    double std_error = 0.0;      // sample_stddev / sqrt(n)
};

namespace detail {

inline void check_values(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean of an empty sample is undefined");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("sample value " + std::to_string(i) + " is not finite");
}

inline MeanEstimate finish(std::span<const double> values, double mean) {
    MeanEstimate m;
    m.mean = mean;
    m.n = values.size();
    if (m.n > 1) {
        CompensatedSum sq;
        for (double v : values) {
            double d = v - mean;
            sq += d * d;
        }
        m.sample_stddev = std::sqrt(sq.value() / static_cast<double>(m.n - 1));
    }
    m.std_error = m.sample_stddev / std::sqrt(static_cast<double>(m.n));
    return m;
}

}  // namespace detail

/// Sum of values divided by their count. Compensated sums in fixed order,
/// then a correction pass over the residuals, so a constant sample returns
/// that constant bit for bit.
inline MeanEstimate arithmetic_mean(std::span<const double> values) {
    detail::check_values(values);
    const double n = static_cast<double>(values.size());
    CompensatedSum sum;
    for (double v : values) sum += v;
    // one residual pass; makes constant input come back bit-exact
    const double m0 = sum.value() / n;
    CompensatedSum residual;
    for (double v : values) residual += v - m0;
    return detail::finish(values, m0 + residual.value() / n);
}

/// Mean weighted by the spacing of sorted abscissae:
/// w_i = (x_{i+1} - x_{i-1}) / 2, one-sided half gaps at the ends.
/// Falls back to the plain mean when every weight is zero.
inline MeanEstimate spacing_weighted_mean(std::span<const double> abscissae, std::span<const double> values) {
    detail::check_values(values);
    if (abscissae.size() != values.size())
        throw std::invalid_argument("abscissae and values differ in length");
    const std::size_t n = values.size();
    if (n == 1) return arithmetic_mean(values);
    const double shift = values.front();
    CompensatedSum wsum, total;
    for (std::size_t i = 0; i < n; ++i) {
        double lo = abscissae[i == 0 ? 0 : i - 1];
        double hi = abscissae[i + 1 == n ? n - 1 : i + 1];
        double w = (hi - lo) / 2.0;
        wsum += w;
        total += w * (values[i] - shift);
    }
    if (wsum.value() <= 0.0) return arithmetic_mean(values);
    return detail::finish(values, shift + total.value() / wsum.value());
}

struct MeanOptions {
    /// Only affects convenience plans; uniform and random samples are
    /// already evenly weighted.
    bool spacing_weighted = false;
};

inline std::vector<double> sample_values(const FunctionHandle& f, std::span<const double> xs) {
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        try {
            ys[i] = f(xs[i]);
        } catch (const EvalError& e) {
            throw e.in_context("sample " + std::to_string(i + 1));
        }
    }
    return ys;
}

inline MeanEstimate function_mean(const FunctionHandle& f, const SamplePlan& plan, MeanOptions opts = {}) {
    std::vector<double> xs = plan.sample();
    std::vector<double> ys = sample_values(f, xs);
    if (opts.spacing_weighted && plan.strategy == Strategy::Convenience) return spacing_weighted_mean(xs, ys);
    return arithmetic_mean(ys);
}

struct IntegralResult {
    double value = 0.0;
    MeanEstimate mean;
    Interval interval{0.0, 1.0};
    double error_bar = 0.0;  // (b - a) * std_error
};

inline IntegralResult make_integral(const Interval& iv, const MeanEstimate& m) {
    return {iv.width() * m.mean, m, iv, iv.width() * m.std_error};
}

inline IntegralResult integral(const FunctionHandle& f, const SamplePlan& plan, MeanOptions opts = {}) {
    return make_integral(plan.interval, function_mean(f, plan, opts));
}

/// F(x_j) = I[f, a, x_j] on a uniform grid over [a, x_max].
struct AntiderivativeGrid {
    double base = 0.0;
    std::vector<double> abscissae;
    std::vector<double> values;
    std::size_t n = 0;
    Strategy strategy = Strategy::Uniform;

    double front() const { return abscissae.front(); }
    double back() const { return abscissae.back(); }

    /// Piecewise-linear in between nodes, exact at nodes.
    double at(double x) const {
        if (!(front() <= x && x <= back()))
            throw std::out_of_range("x=" + format_real(x) + " outside antiderivative grid [" +
                                    format_real(front()) + ", " + format_real(back()) + "]");
        auto it = std::lower_bound(abscissae.begin(), abscissae.end(), x);
        std::size_t j = static_cast<std::size_t>(it - abscissae.begin());
        if (abscissae[j] == x) return values[j];
        double x0 = abscissae[j - 1], x1 = abscissae[j];
        double t = (x - x0) / (x1 - x0);
        return values[j - 1] + t * (values[j] - values[j - 1]);
    }
};

inline AntiderivativeGrid antiderivative_grid(const FunctionHandle& f, double a, double x_max,
                                              std::size_t grid_count, const PlanTemplate& plan) {
    Interval span(a, x_max);
    if (grid_count < 2) throw std::invalid_argument("antiderivative grid needs at least 2 nodes");
    if (plan.n == 0) throw std::invalid_argument("per-node sample count must be positive");
    AntiderivativeGrid grid;
    grid.base = a;
    grid.n = plan.n;
    grid.strategy = plan.strategy;
    grid.abscissae.resize(grid_count);
    grid.values.resize(grid_count);
    const double step = span.width() / static_cast<double>(grid_count - 1);
    grid.abscissae[0] = a;
    grid.values[0] = 0.0;
    for (std::size_t j = 1; j < grid_count; ++j) {
        double xj = j + 1 == grid_count ? x_max : a + static_cast<double>(j) * step;
        grid.abscissae[j] = xj;
        try {
            grid.values[j] = integral(f, plan.instantiate(Interval(a, xj), j)).value;
        } catch (const EvalError& e) {
            throw e.in_context("antiderivative node " + std::to_string(j));
        }
    }
    return grid;
}

/// I[f, c, d] = F(d) - F(c).
inline double ftc_evaluate(const FunctionHandle& F, double c, double d) {
    if (c == d) return 0.0;
    return F(d) - F(c);
}

inline double ftc_evaluate(const Expr& F, double c, double d) { return ftc_evaluate(FunctionHandle(F), c, d); }

inline double ftc_evaluate(const AntiderivativeGrid& F, double c, double d) {
    double fd = F.at(d);
    double fc = F.at(c);
    return fd - fc;
}

// ---------------------------------------------------------------------------
// Convergence study

struct ConvergenceRow {
    std::string label;  // "uniform", "trial 1", ..., "average"
    Strategy strategy = Strategy::Uniform;
    std::size_t trial = 0;  // 1-based for trial rows, 0 otherwise
    std::vector<double> means;
    std::vector<double> std_errors;
    std::vector<std::uint64_t> seeds;  // random trial rows only
    std::vector<double> display;       // means rounded to 4 decimals
};

struct ConvergenceReport {
    std::string function;
    Interval interval{0.0, 1.0};
    std::vector<std::size_t> sizes;
    std::size_t trials = 0;
    std::uint64_t base_seed = 0;
    std::optional<double> reference;
    std::vector<ConvergenceRow> rows;

    const ConvergenceRow* find(const std::string& label) const {
        for (const auto& r : rows)
            if (r.label == label) return &r;
        return nullptr;
    }
};

inline constexpr int kDisplayDecimals = 4;

namespace detail {

inline void fill_display(ConvergenceRow& row) {
    row.display.clear();
    for (double m : row.means) row.display.push_back(round_half_away(m, kDisplayDecimals));
}

}  // namespace detail

/// Sample means of f over iv for each size. The uniform row is computed once
/// per size; each random trial t (1-based) at size index k uses seed
/// derive_seed(base_seed, t, k). When random rows are requested an
/// "average" row holds the per-size mean of the trial means, with standard
/// error sqrt(sum se^2) / trials.
inline ConvergenceReport convergence_study(const FunctionHandle& f, const Interval& iv,
                                           const std::vector<std::size_t>& sizes,
                                           const std::vector<Strategy>& strategies, std::size_t trials,
                                           std::uint64_t base_seed, std::optional<double> reference = {}) {
    if (sizes.empty()) throw std::invalid_argument("convergence study needs at least one size");
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (sizes[k] == 0) throw std::invalid_argument("sample sizes must be positive");
        if (k > 0 && sizes[k] <= sizes[k - 1]) throw std::invalid_argument("sample sizes must be ascending");
    }
    if (strategies.empty()) throw std::invalid_argument("convergence study needs at least one strategy");
    if (trials == 0) throw std::invalid_argument("convergence study needs at least one trial");

    ConvergenceReport report;
    report.function = f.label();
    report.interval = iv;
    report.sizes = sizes;
    report.trials = trials;
    report.base_seed = base_seed;
    report.reference = reference;

    auto cell = [&](const SamplePlan& plan, const std::string& where) {
        try {
            return function_mean(f, plan);
        } catch (const EvalError& e) {
            throw e.in_context(where);
        }
    };

    bool want_uniform = false, want_random = false;
    for (Strategy s : strategies) {
        if (s == Strategy::Uniform) want_uniform = true;
        else if (s == Strategy::Random) want_random = true;
        else throw std::invalid_argument("convergence study supports uniform and random strategies only");
    }

    if (want_uniform) {
        ConvergenceRow row;
        row.label = "uniform";
        row.strategy = Strategy::Uniform;
        for (std::size_t n : sizes) {
            MeanEstimate m = cell(SamplePlan::uniform(iv, n), "uniform n=" + std::to_string(n));
            row.means.push_back(m.mean);
            row.std_errors.push_back(m.std_error);
        }
        detail::fill_display(row);
        report.rows.push_back(std::move(row));
    }

    if (want_random) {
        std::vector<CompensatedSum> sum(sizes.size()), var(sizes.size());
        for (std::size_t t = 1; t <= trials; ++t) {
            ConvergenceRow row;
            row.label = "trial " + std::to_string(t);
            row.strategy = Strategy::Random;
            row.trial = t;
            for (std::size_t k = 0; k < sizes.size(); ++k) {
                std::uint64_t seed = derive_seed(base_seed, t, k);
                MeanEstimate m = cell(SamplePlan::random(iv, sizes[k], seed),
                                      row.label + " n=" + std::to_string(sizes[k]));
                row.means.push_back(m.mean);
                row.std_errors.push_back(m.std_error);
                row.seeds.push_back(seed);
                sum[k] += m.mean;
                var[k] += m.std_error * m.std_error;
            }
            detail::fill_display(row);
            report.rows.push_back(std::move(row));
        }
        ConvergenceRow avg;
        avg.label = "average";
        avg.strategy = Strategy::Random;
        const double tr = static_cast<double>(trials);
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            avg.means.push_back(sum[k].value() / tr);
            avg.std_errors.push_back(std::sqrt(var[k].value()) / tr);
        }
        detail::fill_display(avg);
        report.rows.push_back(std::move(avg));
    }
    return report;
}

}  // namespace statcalc
