#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "statcalc/format.hpp"

namespace statcalc {

/// Closed interval [a, b] with finite a < b. Reversed or degenerate intervals
/// are rejected rather than given a sign convention.
class Interval {
public:
    Interval(double a, double b) : a_(a), b_(b) {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw std::invalid_argument("interval bounds must be finite");
        if (!(a < b))
            throw std::invalid_argument("interval requires a < b, got [" + format_real(a) + ", " +
                                        format_real(b) + "]");
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double width() const noexcept { return b_ - a_; }
    bool contains(double x) const noexcept { return a_ <= x && x <= b_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double a_;
    double b_;
};

}  // namespace statcalc
