#pragma once

// JSON and CSV renderings of results. JSON numbers carry full double
// precision; 4-decimal display values are strings such as "0.3850".
// Every to_json has a matching from_json.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "statcalc/derivative.hpp"
#include "statcalc/format.hpp"
#include "statcalc/mean_integral.hpp"
#include "statcalc/sampling.hpp"

namespace statcalc {

using json = nlohmann::json;

inline Strategy strategy_from_json(const json& j) {
    auto s = strategy_from_name(j.get<std::string>());
    if (!s) throw std::invalid_argument("unknown strategy '" + j.get<std::string>() + "'");
    return *s;
}

inline void to_json(json& j, const MeanEstimate& m) {
    j = json{{"mean", m.mean}, {"n", m.n}, {"sample_stddev", m.sample_stddev}, {"std_error", m.std_error}};
}

inline void from_json(const json& j, MeanEstimate& m) {
    j.at("mean").get_to(m.mean);
    j.at("n").get_to(m.n);
    j.at("sample_stddev").get_to(m.sample_stddev);
    j.at("std_error").get_to(m.std_error);
}

inline void to_json(json& j, const IntegralResult& r) {
    j = json{{"value", r.value},
             {"a", r.interval.a()},
             {"b", r.interval.b()},
             {"error_bar", r.error_bar},
             {"mean", r.mean}};
}

inline void from_json(const json& j, IntegralResult& r) {
    j.at("value").get_to(r.value);
    r.interval = Interval(j.at("a").get<double>(), j.at("b").get<double>());
    j.at("error_bar").get_to(r.error_bar);
    j.at("mean").get_to(r.mean);
}

inline void to_json(json& j, const AntiderivativeGrid& g) {
    j = json{{"base", g.base},
             {"n", g.n},
             {"strategy", to_string(g.strategy)},
             {"x", g.abscissae},
             {"F", g.values}};
}

inline void from_json(const json& j, AntiderivativeGrid& g) {
    j.at("base").get_to(g.base);
    j.at("n").get_to(g.n);
    g.strategy = strategy_from_json(j.at("strategy"));
    j.at("x").get_to(g.abscissae);
    j.at("F").get_to(g.values);
}

inline void to_json(json& j, const DerivativeEstimate& d) {
    json iters = json::array();
    for (const auto& it : d.iterates) iters.push_back({{"h", it.h}, {"slope", it.slope}});
    j = json{{"point", d.point},
             {"value", d.value},
             {"converged", d.converged},
             {"achieved_delta", std::isfinite(d.achieved_delta) ? json(d.achieved_delta) : json(nullptr)},
             {"iterates", iters}};
}

inline void from_json(const json& j, DerivativeEstimate& d) {
    j.at("point").get_to(d.point);
    j.at("value").get_to(d.value);
    j.at("converged").get_to(d.converged);
    const json& delta = j.at("achieved_delta");
    d.achieved_delta = delta.is_null() ? std::numeric_limits<double>::infinity() : delta.get<double>();
    d.iterates.clear();
    for (const auto& it : j.at("iterates")) d.iterates.push_back({it.at("h").get<double>(), it.at("slope").get<double>()});
}

inline void to_json(json& j, const DAPairReport& r) {
    j = json{{"f", r.f},
             {"F", r.F},
             {"a", r.interval.a()},
             {"b", r.interval.b()},
             {"grid_count", r.grid_count},
             {"n", r.n},
             {"deriv_tol", r.deriv_tol},
             {"int_tol", r.int_tol},
             {"max_derivative_error", r.max_derivative_error},
             {"worst_derivative_x", r.worst_derivative_x},
             {"max_integral_error", r.max_integral_error},
             {"worst_integral_x", r.worst_integral_x},
             {"derivative_ok", r.derivative_ok},
             {"integral_ok", r.integral_ok}};
}

inline void from_json(const json& j, DAPairReport& r) {
    j.at("f").get_to(r.f);
    j.at("F").get_to(r.F);
    r.interval = Interval(j.at("a").get<double>(), j.at("b").get<double>());
    j.at("grid_count").get_to(r.grid_count);
    j.at("n").get_to(r.n);
    j.at("deriv_tol").get_to(r.deriv_tol);
    j.at("int_tol").get_to(r.int_tol);
    j.at("max_derivative_error").get_to(r.max_derivative_error);
    j.at("worst_derivative_x").get_to(r.worst_derivative_x);
    j.at("max_integral_error").get_to(r.max_integral_error);
    j.at("worst_integral_x").get_to(r.worst_integral_x);
    j.at("derivative_ok").get_to(r.derivative_ok);
    j.at("integral_ok").get_to(r.integral_ok);
}

inline void to_json(json& j, const ConvergenceRow& r) {
    std::vector<std::string> display;
    for (double d : r.display) display.push_back(format_fixed(d, kDisplayDecimals));
    j = json{{"label", r.label},       {"strategy", to_string(r.strategy)}, {"trial", r.trial},
             {"means", r.means},       {"std_errors", r.std_errors},       {"seeds", r.seeds},
             {"display", display}};
}

inline void from_json(const json& j, ConvergenceRow& r) {
    j.at("label").get_to(r.label);
    r.strategy = strategy_from_json(j.at("strategy"));
    j.at("trial").get_to(r.trial);
    j.at("means").get_to(r.means);
    j.at("std_errors").get_to(r.std_errors);
    j.at("seeds").get_to(r.seeds);
    r.display.clear();
    for (const auto& d : j.at("display")) r.display.push_back(std::stod(d.get<std::string>()));
}

inline void to_json(json& j, const ConvergenceReport& r) {
    j = json{{"function", r.function},
             {"a", r.interval.a()},
             {"b", r.interval.b()},
             {"sizes", r.sizes},
             {"trials", r.trials},
             {"base_seed", r.base_seed},
             {"reference", r.reference ? json(*r.reference) : json(nullptr)},
             {"rows", r.rows}};
}

inline void from_json(const json& j, ConvergenceReport& r) {
    j.at("function").get_to(r.function);
    r.interval = Interval(j.at("a").get<double>(), j.at("b").get<double>());
    j.at("sizes").get_to(r.sizes);
    j.at("trials").get_to(r.trials);
    j.at("base_seed").get_to(r.base_seed);
    const json& ref = j.at("reference");
    r.reference = ref.is_null() ? std::nullopt : std::optional<double>(ref.get<double>());
    j.at("rows").get_to(r.rows);
}

/// Table layout: one "display" line and one full-precision "mean" line per
/// row, one column per sample size.
inline void write_convergence_csv(const ConvergenceReport& r, std::ostream& out) {
    out << "row,quantity";
    for (std::size_t n : r.sizes) out << ',' << n;
    out << '\n';
    for (const auto& row : r.rows) {
        out << row.label << ",display";
        for (double d : row.display) out << ',' << format_fixed(d, kDisplayDecimals);
        out << '\n' << row.label << ",mean";
        for (double m : row.means) out << ',' << format_real(m);
        out << '\n';
    }
}

/// Two-column plot data: "x,F".
inline void write_grid_csv(const AntiderivativeGrid& g, std::ostream& out) {
    out << "x,F\n";
    for (std::size_t j = 0; j < g.abscissae.size(); ++j)
        out << format_real(g.abscissae[j]) << ',' << format_real(g.values[j]) << '\n';
}

}  // namespace statcalc
