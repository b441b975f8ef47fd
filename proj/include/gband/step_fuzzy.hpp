#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gband/errors.hpp"
#include "gband/numeric.hpp"
#include "gband/partition.hpp"
#include "gband/rng.hpp"

namespace gband {

/// Block-constant real function on [0,1]^2: one shared axis partition and a
/// k x k row-major value matrix. Immutable; every operation below is pure.
class StepField2D {
public:
    StepField2D(Partition partition, std::vector<double> row_major_values)
        : partition_(std::move(partition)), values_(std::move(row_major_values)) {
        const std::size_t k = partition_.block_count();
        if (values_.size() != k * k) {
            throw InvalidInput("value matrix is " + std::to_string(values_.size()) +
                               " entries, expected " + std::to_string(k * k));
        }
        for (double v : values_) {
            if (!std::isfinite(v)) throw InvalidInput("non-finite block value");
        }
    }

    const Partition& partition() const { return partition_; }
    std::size_t block_count() const { return partition_.block_count(); }
    const std::vector<double>& values() const { return values_; }

    double value(std::size_t i, std::size_t j) const {
        return values_[i * block_count() + j];
    }

    /// Point evaluation; blocks are half-open on the right, last block closed.
    double value_at(double x, double y) const {
        return value(partition_.block_of(x), partition_.block_of(y));
    }

    bool operator==(const StepField2D& other) const {
        return partition_ == other.partition_ && values_ == other.values_;
    }
    bool operator!=(const StepField2D& other) const { return !(*this == other); }

private:
    Partition partition_;
    std::vector<double> values_;
};

/// Step function with values in [0,1] (a fuzzy set of [0,1]^2).
class StepFuzzy2D : public StepField2D {
public:
    StepFuzzy2D(Partition partition, std::vector<double> row_major_values)
        : StepField2D(std::move(partition), std::move(row_major_values)) {
        check_range();
    }

    explicit StepFuzzy2D(StepField2D field) : StepField2D(std::move(field)) {
        check_range();
    }

    static StepFuzzy2D constant(double level) {
        return StepFuzzy2D(Partition::uniform(1), std::vector<double>{level});
    }

private:
    void check_range() const {
        for (double v : values()) {
            if (v < 0.0 || v > 1.0) {
                throw InvalidInput("fuzzy block value " + std::to_string(v) +
                                   " outside [0,1]");
            }
        }
    }
};

/// Set of blocks of a partition (a union-of-blocks subset of [0,1]^2).
class BlockMask {
public:
    BlockMask(Partition partition, std::vector<std::uint8_t> flags)
        : partition_(std::move(partition)), flags_(std::move(flags)) {
        const std::size_t k = partition_.block_count();
        if (flags_.size() != k * k) throw InvalidInput("mask dimensions mismatch");
    }

    static BlockMask none(const Partition& p) {
        const std::size_t k = p.block_count();
        return BlockMask(p, std::vector<std::uint8_t>(k * k, 0));
    }
    static BlockMask all(const Partition& p) {
        const std::size_t k = p.block_count();
        return BlockMask(p, std::vector<std::uint8_t>(k * k, 1));
    }

    const Partition& partition() const { return partition_; }
    std::size_t block_count() const { return partition_.block_count(); }
    bool flagged(std::size_t i, std::size_t j) const {
        return flags_[i * block_count() + j] != 0;
    }
    const std::vector<std::uint8_t>& flags() const { return flags_; }

    bool operator==(const BlockMask& other) const {
        return partition_ == other.partition_ && flags_ == other.flags_;
    }
    bool operator!=(const BlockMask& other) const { return !(*this == other); }

private:
    Partition partition_;
    std::vector<std::uint8_t> flags_;
};

/// sup over [0,1]^2; attained on a positive-area block, so it is the max entry.
inline double sup_value(const StepField2D& f) {
    double m = f.values().front();
    for (double v : f.values()) m = std::max(m, v);
    return m;
}

/// g truncated at level s: block value b becomes s where b > s, else stays b.
/// Pure case split, no arithmetic, so results are bit-exact.
inline StepFuzzy2D cap(double s, const StepFuzzy2D& g) {
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidInput("cap level outside [0,1]");
    std::vector<double> out(g.values());
    for (double& v : out) {
        if (v > s) v = s;
    }
    return StepFuzzy2D(g.partition(), std::move(out));
}

/// The part of g above level s: b - s where b > s, else 0. Nonnegative.
inline StepField2D excess(double s, const StepFuzzy2D& g) {
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidInput("excess level outside [0,1]");
    std::vector<double> out(g.values());
    for (double& v : out) {
        v = (v > s) ? v - s : 0.0;
    }
    return StepField2D(g.partition(), std::move(out));
}

inline StepField2D pointwise_add(const StepField2D& a, const StepField2D& b) {
    if (a.partition() != b.partition()) {
        throw InvalidInput("pointwise_add: partition mismatch (refine first)");
    }
    std::vector<double> out(a.values());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.values()[i];
    return StepField2D(a.partition(), std::move(out));
}

inline StepField2D pointwise_sub(const StepField2D& a, const StepField2D& b) {
    if (a.partition() != b.partition()) {
        throw InvalidInput("pointwise_sub: partition mismatch (refine first)");
    }
    std::vector<double> out(a.values());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.values()[i];
    return StepField2D(a.partition(), std::move(out));
}

/// Superlevel set {h > A}, strict comparison on stored values.
inline BlockMask superlevel_mask(const StepField2D& h, double level) {
    const std::size_t k = h.block_count();
    std::vector<std::uint8_t> flags(k * k, 0);
    for (std::size_t i = 0; i < flags.size(); ++i) {
        flags[i] = h.values()[i] > level ? 1 : 0;
    }
    return BlockMask(h.partition(), std::move(flags));
}

/// Lebesgue area of a block set: sum of p_i * p_j over flagged blocks.
inline double mask_area(const BlockMask& m) {
    const std::size_t k = m.block_count();
    CompensatedSum area;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (m.flagged(i, j)) {
                area.add(m.partition().width(i) * m.partition().width(j));
            }
        }
    }
    return area.value();
}

/// Same function re-expressed on a finer partition; values are copied from the
/// source block containing each target block's midpoint (no arithmetic on the
/// values themselves). target should refine f's partition (merge first).
inline StepField2D resample_onto(const StepField2D& f, const Partition& target) {
    if (f.partition() == target) return f;
    const std::size_t k = target.block_count();
    std::vector<std::size_t> src(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double mid = 0.5 * (target.breakpoints()[i] + target.breakpoints()[i + 1]);
        src[i] = f.partition().block_of(mid);
    }
    std::vector<double> out(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            out[i * k + j] = f.value(src[i], src[j]);
        }
    }
    return StepField2D(target, std::move(out));
}

inline StepFuzzy2D resample_onto(const StepFuzzy2D& f, const Partition& target) {
    return StepFuzzy2D(resample_onto(static_cast<const StepField2D&>(f), target));
}

/// Both functions re-expressed on the merged partition.
inline std::pair<StepField2D, StepField2D> refine(const StepField2D& a,
                                                  const StepField2D& b) {
    const Partition merged = merge_partitions(a.partition(), b.partition());
    return {resample_onto(a, merged), resample_onto(b, merged)};
}

inline std::pair<StepFuzzy2D, StepFuzzy2D> refine(const StepFuzzy2D& a,
                                                  const StepFuzzy2D& b) {
    const Partition merged = merge_partitions(a.partition(), b.partition());
    return {resample_onto(a, merged), resample_onto(b, merged)};
}

/// Equality almost everywhere. Blocks have positive area, so after refinement
/// a.e. equality is exact blockwise equality.
inline bool ae_equal(const StepField2D& a, const StepField2D& b) {
    if (a.partition() == b.partition()) return a.values() == b.values();
    const auto [ra, rb] = refine(a, b);
    return ra.values() == rb.values();
}

namespace detail {

// Sorted uniform draws with every gap >= 1e-6; the whole set is resampled on
// violation so the positive-width invariant never relies on clamping.
inline Partition random_partition(std::size_t k, Rng& rng) {
    if (k == 1) return Partition::uniform(1);
    for (;;) {
        std::vector<double> b(k + 1);
        b[0] = 0.0;
        b[k] = 1.0;
        for (std::size_t i = 1; i < k; ++i) b[i] = rng.uniform01();
        std::sort(b.begin() + 1, b.begin() + static_cast<std::ptrdiff_t>(k));
        bool ok = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (b[i + 1] - b[i] < 1e-6) { ok = false; break; }
        }
        if (ok) return Partition(std::move(b));
    }
}

} // namespace detail

/// Seeded random step fuzzy set. Draw order is fixed: partition first (when
/// not uniform), then values row-major; symmetric instances draw only i <= j
/// and mirror. Identical seeds give identical instances.
inline StepFuzzy2D random_step(std::size_t k, Rng& rng, bool symmetric,
                               bool uniform_partition) {
    if (k == 0) throw InvalidInput("random_step: k must be >= 1");
    Partition p = uniform_partition ? Partition::uniform(k)
                                    : detail::random_partition(k, rng);
    std::vector<double> v(k * k, 0.0);
    if (symmetric) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i; j < k; ++j) {
                const double x = rng.uniform01();
                v[i * k + j] = x;
                v[j * k + i] = x;
            }
        }
    } else {
        for (double& x : v) x = rng.uniform01();
    }
    return StepFuzzy2D(std::move(p), std::move(v));
}

inline StepFuzzy2D random_step(std::size_t k, std::uint64_t seed, bool symmetric,
                               bool uniform_partition) {
    Rng rng(seed);
    return random_step(k, rng, symmetric, uniform_partition);
}

} // namespace gband
