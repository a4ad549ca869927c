#pragma once

// Functions given as data tables: two numeric CSV columns (x, f(x)).

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "statcalc/errors.hpp"
#include "statcalc/format.hpp"
#include "statcalc/function.hpp"
#include "statcalc/interval.hpp"
#include "statcalc/mean_integral.hpp"

namespace statcalc {

class TabularFunction {
public:
    /// Rows may come in any order; they are sorted by abscissa. Duplicate
    /// abscissae and non-finite values are rejected.
    TabularFunction(std::vector<std::pair<double, double>> rows, std::string label = {},
                    std::string x_name = "x", std::string y_name = "y")
        : label_(std::move(label)), x_name_(std::move(x_name)), y_name_(std::move(y_name)) {
        if (rows.empty()) throw DataError(0, "table has no data rows");
        for (const auto& [x, y] : rows)
            if (!std::isfinite(x) || !std::isfinite(y)) throw DataError(0, "table values must be finite");
        std::stable_sort(rows.begin(), rows.end(),
                         [](const auto& l, const auto& r) { return l.first < r.first; });
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].first == rows[i - 1].first)
                throw DataError(0, "duplicate abscissa " + format_real(rows[i].first));
        xs_.reserve(rows.size());
        ys_.reserve(rows.size());
        for (const auto& [x, y] : rows) {
            xs_.push_back(x);
            ys_.push_back(y);
        }
    }

    std::size_t size() const noexcept { return xs_.size(); }
    const std::vector<double>& abscissae() const noexcept { return xs_; }
    const std::vector<double>& ordinates() const noexcept { return ys_; }
    const std::string& label() const noexcept { return label_; }
    const std::string& x_name() const noexcept { return x_name_; }
    const std::string& y_name() const noexcept { return y_name_; }
    double min_x() const { return xs_.front(); }
    double max_x() const { return xs_.back(); }

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::string label_;
    std::string x_name_;
    std::string y_name_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline bool parse_number(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(out);
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace detail

/// Reads "x,y" rows. A first row that is not numeric is taken as the header
/// and supplies the column names; blank lines are skipped.
inline TabularFunction load_csv(std::istream& in, std::string label = {}) {
    std::vector<std::pair<double, double>> rows;
    std::map<double, std::size_t> seen;
    std::string x_name = "x", y_name = "y";
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = detail::trim(line);
        if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
        if (view.empty()) continue;
        auto fields = detail::split_commas(view);
        if (fields.size() != 2)
            throw DataError(line_no, "expected 2 comma-separated columns, found " + std::to_string(fields.size()));
        double x = 0.0, y = 0.0;
        bool numeric = detail::parse_number(fields[0], x) && detail::parse_number(fields[1], y);
        if (!numeric) {
            if (first) {
                x_name = std::string(fields[0]);
                y_name = std::string(fields[1]);
                first = false;
                continue;
            }
            throw DataError(line_no, "non-numeric value in row '" + std::string(view) + "'");
        }
        first = false;
        if (auto it = seen.find(x); it != seen.end())
            throw DataError(line_no, "duplicate abscissa " + format_real(x) + " (first seen at line " +
                                         std::to_string(it->second) + ")");
        seen.emplace(x, line_no);
        rows.emplace_back(x, y);
    }
    if (rows.empty()) throw DataError(0, "no data rows");
    return TabularFunction(std::move(rows), std::move(label), std::move(x_name), std::move(y_name));
}

/// Writes the header and rows with 17 significant digits.
inline void write_csv(const TabularFunction& tf, std::ostream& out) {
    out << tf.x_name() << ',' << tf.y_name() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < tf.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,", tf.abscissae()[i]);
        out << buf;
        std::snprintf(buf, sizeof buf, "%.17g\n", tf.ordinates()[i]);
        out << buf;
    }
}

/// Plain arithmetic mean of the ordinates; rows count as convenience samples.
inline MeanEstimate tabular_mean(const TabularFunction& tf, MeanOptions opts = {}) {
    if (opts.spacing_weighted) return spacing_weighted_mean(tf.abscissae(), tf.ordinates());
    return arithmetic_mean(tf.ordinates());
}

inline double interpolate(const TabularFunction& tf, double x) {
    if (tf.size() < 2) throw std::invalid_argument("interpolation needs at least 2 rows");
    const auto& xs = tf.abscissae();
    const auto& ys = tf.ordinates();
    if (!(xs.front() <= x && x <= xs.back()))
        throw EvalError(EvalErrorKind::Domain, x,
                        "table" + (tf.label().empty() ? std::string() : " '" + tf.label() + "'") + " on [" +
                            format_real(xs.front()) + ", " + format_real(xs.back()) + "]");
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    std::size_t j = static_cast<std::size_t>(it - xs.begin());
    if (xs[j] == x) return ys[j];
    double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return ys[j - 1] + t * (ys[j] - ys[j - 1]);
}

/// (max x - min x) * tabular_mean.
inline IntegralResult tabular_integral(const TabularFunction& tf, MeanOptions opts = {}) {
    if (tf.size() < 2) throw std::invalid_argument("tabular integral needs at least 2 rows");
    return make_integral(Interval(tf.min_x(), tf.max_x()), tabular_mean(tf, opts));
}

/// FunctionHandle backed by piecewise-linear interpolation of the table.
inline FunctionHandle as_function(TabularFunction tf) {
    auto shared = std::make_shared<const TabularFunction>(std::move(tf));
    std::string label = shared->label().empty() ? "table" : shared->label();
    return FunctionHandle(std::move(label), [shared](double x) { return interpolate(*shared, x); });
}

}  // namespace statcalc
