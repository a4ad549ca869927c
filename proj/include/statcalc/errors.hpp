#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "statcalc/format.hpp"

namespace statcalc {

/// Raised by the expression parser. `position` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, std::string expected, std::string detail)
        : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + detail +
                             (expected.empty() ? "" : " (expected " + expected + ")")),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

enum class EvalErrorKind { Domain, NonFinite };

inline const char* to_string(EvalErrorKind kind) {
    return kind == EvalErrorKind::Domain ? "domain" : "non-finite";
}

/// A function could not be evaluated at `input`. Thrown by expression
/// evaluation and by tabular lookups outside the data span; callers higher up
/// add context (sample index, grid node, secant step) through in_context().
class EvalError : public std::runtime_error {
public:
    EvalError(EvalErrorKind kind, double input, std::string node, std::string context = {})
        : std::runtime_error(compose(kind, input, node, context)),
          kind_(kind),
          input_(input),
          node_(std::move(node)),
          context_(std::move(context)) {}

    EvalErrorKind kind() const noexcept { return kind_; }
    double input() const noexcept { return input_; }
    const std::string& node() const noexcept { return node_; }
    const std::string& context() const noexcept { return context_; }

    EvalError in_context(const std::string& where) const {
        return EvalError(kind_, input_, node_, context_.empty() ? where : where + ": " + context_);
    }

private:
    static std::string compose(EvalErrorKind kind, double input, const std::string& node,
                               const std::string& context) {
        std::string msg = std::string(to_string(kind)) + " error evaluating " + node + " at x=" +
                          format_real(input);
        return context.empty() ? msg : context + ": " + msg;
    }

    EvalErrorKind kind_;
    double input_;
    std::string node_;
    std::string context_;
};

/// Malformed tabular input. `line` is 1-based, 0 when not tied to a line.
class DataError : public std::runtime_error {
public:
    DataError(std::size_t line, const std::string& detail)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + detail : detail),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace statcalc
