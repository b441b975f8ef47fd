#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gband/errors.hpp"
#include "gband/graphon.hpp"
#include "gband/hom_density.hpp"
#include "gband/numeric.hpp"
#include "gband/step_fuzzy.hpp"

namespace gband {

/// Tolerance for comparisons whose operands went through block-sum arithmetic.
inline constexpr double kBoundTol = 1e-9;

/// Hard cap on the 2^k subset enumeration in cut0_norm.
inline constexpr std::size_t kCutNormMaxBlocks = 20;

/// L1 norm: sum of |U_ij| p_i p_j.
inline double l1_norm(const StepField2D& u) {
    const std::size_t k = u.block_count();
    CompensatedSum sum;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            sum.add(std::abs(u.value(i, j)) * u.partition().width(i) *
                    u.partition().width(j));
        }
    }
    return sum.value();
}

/// sup over measurable A, B of |int_A int_B U|. The integral is bilinear in
/// fractional indicators over [0,1]^k x [0,1]^k, so the optimum sits at a 0/1
/// vertex: enumerate every row subset A, and for each pick columns greedily by
/// the sign of the column aggregate (both for the form and its negation).
/// Exact, O(2^k k^2). Zero column aggregates are left out (value-neutral,
/// fixed for determinism).
inline double cut0_norm(const StepField2D& u) {
    const std::size_t k = u.block_count();
    if (k > kCutNormMaxBlocks) {
        throw GuardExceeded("cut0_norm: " + std::to_string(k) +
                            " blocks exceeds the 2^k enumeration guard (max " +
                            std::to_string(kCutNormMaxBlocks) + ")");
    }
    std::vector<double> weighted(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            weighted[i * k + j] =
                u.value(i, j) * u.partition().width(i) * u.partition().width(j);
        }
    }
    double best = 0.0;
    std::vector<double> col(k);
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
        for (std::size_t j = 0; j < k; ++j) {
            CompensatedSum c;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (1ull << i)) c.add(weighted[i * k + j]);
            }
            col[j] = c.value();
        }
        CompensatedSum pos, neg;
        for (std::size_t j = 0; j < k; ++j) {
            if (col[j] > 0.0) pos.add(col[j]);
            if (col[j] < 0.0) neg.add(col[j]);
        }
        best = std::max({best, pos.value(), -neg.value()});
    }
    return best;
}

/// |E(F)| * (sup W - f_sup)_+ * area({W > f_sup}). The clamp at 0 makes the
/// formula total; when f_sup >= sup W the superlevel set is empty anyway and
/// the lhs it bounds is 0.
inline double main_bound_rhs(const Graphon& w, double f_sup, const SimpleGraph& f) {
    if (!(f_sup >= 0.0 && f_sup <= 1.0)) {
        throw InvalidInput("main_bound_rhs: f_sup outside [0,1]");
    }
    const double gap = std::max(0.0, w.sup() - f_sup);
    const double area = mask_area(superlevel_mask(w.carrier(), f_sup));
    return static_cast<double>(f.edge_count()) * gap * area;
}

/// One verified instance of the density-perturbation bound, with the full
/// intermediate chain lhs <= |E|*cut0 <= |E|*l1 <= rhs.
struct BoundReport {
    double lhs = 0.0;        // |t(F,W) - t(F, f o W)|
    double rhs = 0.0;        // |E(F)| * (sup W - sup f)_+ * delta_area
    double cut0 = 0.0;       // cut-style norm of the excess part
    double l1 = 0.0;         // L1 norm of the excess part
    long edge_count = 0;
    double sup_w = 0.0;
    double sup_f = 0.0;
    double delta_area = 0.0; // area of {W > sup f}
    bool holds = false;      // lhs <= rhs + 1e-9
    bool chain_holds = false;
    double slack = 0.0;      // rhs - lhs
};

inline BoundReport verify_main_bound(const Graphon& w, const StepFuzzy2D& f,
                                     const SimpleGraph& pattern) {
    BoundReport r;
    r.edge_count = static_cast<long>(pattern.edge_count());
    r.sup_w = w.sup();
    r.sup_f = sup_value(f);
    r.delta_area = mask_area(superlevel_mask(w.carrier(), r.sup_f));

    const Graphon capped = left_act(f, w);
    const double t_w = t_step_exact(pattern, w).value;
    const double t_capped = t_step_exact(pattern, capped).value;
    r.lhs = std::abs(t_w - t_capped);

    const StepField2D exc = excess(r.sup_f, w.carrier());
    r.cut0 = cut0_norm(exc);
    r.l1 = l1_norm(exc);
    r.rhs = static_cast<double>(r.edge_count) * std::max(0.0, r.sup_w - r.sup_f) *
            r.delta_area;

    const double e = static_cast<double>(r.edge_count);
    r.holds = r.lhs <= r.rhs + kBoundTol;
    r.chain_holds = r.lhs <= e * r.cut0 + kBoundTol &&
                    e * r.cut0 <= e * r.l1 + kBoundTol &&
                    e * r.l1 <= r.rhs + kBoundTol;
    r.slack = r.rhs - r.lhs;
    return r;
}

/// The counting inequality for an arbitrary pair of graphons:
/// |t(F,W) - t(F,U)| <= |E(F)| * cut0(W - U).
struct CountingLemmaReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

inline CountingLemmaReport counting_lemma_check(const SimpleGraph& f,
                                                const Graphon& w,
                                                const Graphon& u) {
    CountingLemmaReport r;
    r.lhs = std::abs(t_step_exact(f, w).value - t_step_exact(f, u).value);
    const auto [wr, ur] = refine(w.carrier(), u.carrier());
    r.rhs = static_cast<double>(f.edge_count()) * cut0_norm(pointwise_sub(wr, ur));
    r.holds = r.lhs <= r.rhs + kBoundTol;
    return r;
}

} // namespace gband
