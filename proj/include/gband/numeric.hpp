#pragma once

#include <cmath>

namespace gband {

/// Neumaier-compensated accumulator for long block sums (up to the 1e8-term
/// enumeration budget) so accumulated error stays far below the 1e-9/1e-12
/// comparison tolerances.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double clamp01(double x) {
    if (x < 0.0) return 0.0;
    if (x > 1.0) return 1.0;
    return x;
}

} // namespace gband
