#pragma once

#include <cmath>

namespace statcalc {

/// Neumaier (improved Kahan-Babuska) running sum. Order-dependent like any
/// floating point sum; callers feed values in a fixed order.
class CompensatedSum {
public:
    void add(double v) noexcept {
        double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double v) noexcept {
        add(v);
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace statcalc
