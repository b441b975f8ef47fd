#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gband/errors.hpp"

namespace gband {

/// Breakpoints 0 = x0 < x1 < ... < xk = 1 of an axis partition of [0,1].
/// Both axes of every 2-D step function share one Partition, so a function is
/// a k x k block matrix. Immutable after construction.
class Partition {
public:
    explicit Partition(std::vector<double> breakpoints)
        : breakpoints_(std::move(breakpoints)) {
        validate();
    }

    static Partition uniform(std::size_t k) {
        if (k == 0) throw InvalidInput("partition needs at least one block");
        std::vector<double> b(k + 1);
        for (std::size_t i = 0; i <= k; ++i) {
            b[i] = static_cast<double>(i) / static_cast<double>(k);
        }
        b[0] = 0.0;
        b[k] = 1.0;
        return Partition(std::move(b));
    }

    std::size_t block_count() const { return breakpoints_.size() - 1; }

    double width(std::size_t i) const {
        return breakpoints_[i + 1] - breakpoints_[i];
    }

    const std::vector<double>& breakpoints() const { return breakpoints_; }

    /// Block containing x: half-open [x_{i-1}, x_i), last block closed at 1.
    std::size_t block_of(double x) const {
        if (x <= breakpoints_.front()) return 0;
        if (x >= breakpoints_.back()) return block_count() - 1;
        const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    }

    bool operator==(const Partition& other) const {
        return breakpoints_ == other.breakpoints_;
    }
    bool operator!=(const Partition& other) const { return !(*this == other); }

private:
    void validate() const {
        if (breakpoints_.size() < 2) {
            throw InvalidInput("partition needs at least one block");
        }
        if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
            throw InvalidInput("partition must start at 0 and end at 1");
        }
        double width_sum = 0.0;
        for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
            if (!std::isfinite(breakpoints_[i + 1])) {
                throw InvalidInput("non-finite breakpoint");
            }
            if (!(breakpoints_[i] < breakpoints_[i + 1])) {
                throw InvalidInput("breakpoints must be strictly increasing (zero-width block at index " +
                                   std::to_string(i) + ")");
            }
            width_sum += breakpoints_[i + 1] - breakpoints_[i];
        }
        if (std::abs(width_sum - 1.0) > 1e-12) {
            throw InvalidInput("block widths do not sum to 1");
        }
    }

    std::vector<double> breakpoints_;
};

/// Sorted union of two breakpoint sets; points closer than coalesce_tol are
/// merged so no zero-width block can appear. Endpoints stay exactly 0 and 1.
inline Partition merge_partitions(const Partition& a, const Partition& b,
                                  double coalesce_tol = 1e-12) {
    if (a == b) return a;
    std::vector<double> merged;
    merged.reserve(a.breakpoints().size() + b.breakpoints().size());
    std::merge(a.breakpoints().begin(), a.breakpoints().end(),
               b.breakpoints().begin(), b.breakpoints().end(),
               std::back_inserter(merged));
    std::vector<double> kept;
    kept.reserve(merged.size());
    kept.push_back(0.0);
    for (double x : merged) {
        if (x <= kept.back() + coalesce_tol) continue;
        if (x >= 1.0 - coalesce_tol) break;
        kept.push_back(x);
    }
    kept.push_back(1.0);
    return Partition(std::move(kept));
}

} // namespace gband
