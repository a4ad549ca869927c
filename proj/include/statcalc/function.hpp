#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "statcalc/expr.hpp"

namespace statcalc {

/// Type-erased real function of one variable: an expression, a data table
/// (see tabular.hpp) or any callable. Evaluation failures surface as
/// EvalError.
class FunctionHandle {
public:
    FunctionHandle(Expr e) : label_(e.str()), fn_([e = std::move(e)](double x) { return e.evaluate(x); }) {}

    FunctionHandle(std::string label, std::function<double(double)> fn)
        : label_(std::move(label)), fn_(std::move(fn)) {}

    double operator()(double x) const {
        double y = fn_(x);
        if (!std::isfinite(y)) throw EvalError(EvalErrorKind::NonFinite, x, label_);
        return y;
    }
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
    std::function<double(double)> fn_;
};

}  // namespace statcalc
