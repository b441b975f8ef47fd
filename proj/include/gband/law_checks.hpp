#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gband/band.hpp"
#include "gband/graphon.hpp"
#include "gband/io.hpp"
#include "gband/rng.hpp"
#include "gband/step_fuzzy.hpp"

namespace gband {

/// The primitive case-split operations the law sweeps exercise. Templating the
/// sweeps on this policy keeps one code path for the real ops and lets the
/// test suite feed in broken variants to confirm the sweeps actually detect
/// violations and emit replayable counterexamples.
struct DefaultStepOps {
    static StepFuzzy2D cap(double s, const StepFuzzy2D& g) { return gband::cap(s, g); }
    static StepField2D excess(double s, const StepFuzzy2D& g) {
        return gband::excess(s, g);
    }
    static BlockMask superlevel(const StepField2D& h, double level) {
        return superlevel_mask(h, level);
    }
};

struct LawResult {
    std::string law;
    long trials = 0;
    long failures = 0;
    json counterexample; // null unless a failure was recorded

    bool passed() const { return failures == 0; }
};

struct LawReport {
    std::vector<LawResult> laws;

    bool all_passed() const {
        for (const auto& l : laws) {
            if (!l.passed()) return false;
        }
        return true;
    }

    long total_failures() const {
        long n = 0;
        for (const auto& l : laws) n += l.failures;
        return n;
    }

    void append(LawReport other) {
        for (auto& l : other.laws) laws.push_back(std::move(l));
    }
};

inline json law_report_to_json(const LawReport& report) {
    json j = json::object();
    for (const auto& l : report.laws) {
        json entry{{"trials", l.trials}, {"failures", l.failures}};
        if (!l.counterexample.is_null()) entry["counterexample"] = l.counterexample;
        j[l.law] = std::move(entry);
    }
    return j;
}

namespace detail {

inline StepFuzzy2D random_fuzzy(Rng& rng, std::size_t k_max = 5) {
    const std::size_t k = 1 + rng.below(k_max);
    const bool uniform = rng.coin();
    return random_step(k, rng, /*symmetric=*/false, uniform);
}

inline Graphon random_graphon(Rng& rng, std::size_t k_max = 5) {
    const std::size_t k = 1 + rng.below(k_max);
    const bool uniform = rng.coin();
    return validate_graphon(random_step(k, rng, /*symmetric=*/true, uniform));
}

/// Copy of f with one block overwritten to exactly v.
inline StepFuzzy2D with_block(const StepFuzzy2D& f, std::size_t i, std::size_t j,
                              double v) {
    std::vector<double> vals = f.values();
    vals[i * f.block_count() + j] = v;
    return StepFuzzy2D(f.partition(), std::move(vals));
}

/// Random fuzzy set whose sup equals target exactly: values are clamped to
/// target by comparison only, then one block is set to the target itself.
inline StepFuzzy2D random_with_sup(Rng& rng, double target) {
    const StepFuzzy2D raw = random_fuzzy(rng);
    const StepFuzzy2D clamped = cap(target, raw);
    const std::size_t k = clamped.block_count();
    const std::size_t i = rng.below(k);
    const std::size_t j = rng.below(k);
    return with_block(clamped, i, j, target);
}

inline void record_failure(LawResult& law, json ce) {
    ++law.failures;
    if (law.counterexample.is_null()) law.counterexample = std::move(ce);
}

inline bool approx_equal_blockwise(const StepField2D& a, const StepField2D& b,
                                   double tol) {
    if (a.partition() != b.partition()) return false;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        if (std::abs(a.values()[i] - b.values()[i]) > tol) return false;
    }
    return true;
}

inline bool symmetric_field(const StepField2D& f) {
    const std::size_t k = f.block_count();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (f.value(i, j) != f.value(j, i)) return false;
        }
    }
    return true;
}

/// Uniform draw from the dyadic grid {0, 1/N, ..., 1} with N = 2^20; sums and
/// differences of grid points are exact doubles, which keeps the shifted-level
/// superlevel identity checkable by exact mask equality.
inline double dyadic01(Rng& rng) {
    constexpr std::uint64_t N = 1u << 20;
    return static_cast<double>(rng.below(N + 1)) * 0x1.0p-20;
}

inline StepFuzzy2D random_dyadic_fuzzy(Rng& rng, std::size_t k_max = 4) {
    const std::size_t k = 1 + rng.below(k_max);
    std::vector<double> v(k * k);
    for (double& x : v) x = dyadic01(rng);
    const bool uniform = rng.coin();
    Partition p = uniform ? Partition::uniform(k) : random_partition(k, rng);
    return StepFuzzy2D(std::move(p), std::move(v));
}

} // namespace detail

/// Band laws of the composition: idempotence, associativity, right regularity
/// (g o f o g = f o g), and the semilattice reading sup(f o g) = min sups.
/// All four are pure case splits, so equality is exact.
template <class Ops = DefaultStepOps>
LawReport check_band_laws(long trials, std::uint64_t seed) {
    if (trials < 1) throw InvalidInput("check_band_laws: trials must be >= 1");
    LawResult idem{"idempotence", trials, 0, nullptr};
    LawResult assoc{"associativity", trials, 0, nullptr};
    LawResult rreg{"right_regularity", trials, 0, nullptr};
    LawResult suplaw{"sup_semilattice", trials, 0, nullptr};

    const auto comp = [](const StepFuzzy2D& a, const StepFuzzy2D& b) {
        return Ops::cap(sup_value(a), b);
    };

    for (long t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const StepFuzzy2D f = detail::random_fuzzy(rng);
        const StepFuzzy2D g = detail::random_fuzzy(rng);
        const StepFuzzy2D h = detail::random_fuzzy(rng);
        const json ops{{"f", step_to_json(f)}, {"g", step_to_json(g)},
                       {"h", step_to_json(h)}};

        if (!(comp(f, f) == f)) {
            detail::record_failure(idem, json{{"law", idem.law}, {"operands", ops}});
        }
        if (!(comp(comp(f, g), h) == comp(f, comp(g, h)))) {
            detail::record_failure(assoc, json{{"law", assoc.law}, {"operands", ops}});
        }
        if (!(comp(comp(g, f), g) == comp(f, g))) {
            detail::record_failure(rreg, json{{"law", rreg.law}, {"operands", ops}});
        }
        if (sup_value(comp(f, g)) != std::min(sup_value(f), sup_value(g))) {
            detail::record_failure(suplaw, json{{"law", suplaw.law}, {"operands", ops}});
        }
    }
    return LawReport{{idem, assoc, rreg, suplaw}};
}

/// Property sweeps for the cap/excess identities: reconstruction, the
/// equal-sup biconditional, the sup formulas, the superlevel case tables, the
/// symmetry closure, and the two routes to the eta relation.
template <class Ops = DefaultStepOps>
LawReport check_identity_laws(long trials, std::uint64_t seed) {
    if (trials < 1) throw InvalidInput("check_identity_laws: trials must be >= 1");
    LawResult rec{"cap_excess_reconstruction", trials, 0, nullptr};
    LawResult bic{"mutual_fixedness_equal_sups", trials, 0, nullptr};
    LawResult sups{"cap_excess_sup_formulas", trials, 0, nullptr};
    LawResult cap_table{"cap_superlevel_table", trials, 0, nullptr};
    LawResult exc_table{"excess_superlevel_table", trials, 0, nullptr};
    LawResult sym{"symmetry_closure", trials, 0, nullptr};
    LawResult eta{"eta_axioms_equivalence", trials, 0, nullptr};

    for (long t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, 0x11110000ull + static_cast<std::uint64_t>(t)));

        // Reconstruction: cap(s,g) + excess(s,g) = g blockwise.
        {
            const StepFuzzy2D g = detail::random_fuzzy(rng);
            const double s = rng.uniform01();
            const StepField2D sum = pointwise_add(Ops::cap(s, g), Ops::excess(s, g));
            if (!detail::approx_equal_blockwise(sum, g, 1e-12)) {
                detail::record_failure(rec, json{{"law", rec.law}, {"s", s},
                                                 {"g", step_to_json(g)}});
            }
        }

        // Biconditional: mutual fixedness under cap <=> equal sups.
        {
            const StepFuzzy2D f = detail::random_fuzzy(rng);
            const StepFuzzy2D g = (t % 2 == 0)
                                      ? detail::random_with_sup(rng, sup_value(f))
                                      : detail::random_fuzzy(rng);
            const bool fixed = Ops::cap(sup_value(g), f) == f &&
                               Ops::cap(sup_value(f), g) == g;
            const bool equal_sups = sup_value(f) == sup_value(g);
            if (fixed != equal_sups) {
                detail::record_failure(bic, json{{"law", bic.law},
                                                 {"f", step_to_json(f)},
                                                 {"g", step_to_json(g)}});
            }
        }

        // Sup formulas, both orderings of sup f vs sup g.
        {
            const StepFuzzy2D f = detail::random_fuzzy(rng);
            const StepFuzzy2D g = detail::random_fuzzy(rng);
            const double sf = sup_value(f);
            const double sg = sup_value(g);
            bool ok = true;
            if (sf <= sg) {
                ok = sup_value(Ops::cap(sf, g)) == sf &&
                     sup_value(Ops::excess(sf, g)) == sg - sf;
            } else {
                ok = Ops::cap(sf, g) == g &&
                     sup_value(Ops::excess(sf, g)) == 0.0;
            }
            if (!ok) {
                detail::record_failure(sups, json{{"law", sups.law},
                                                  {"f", step_to_json(f)},
                                                  {"g", step_to_json(g)}});
            }
        }

        // Superlevels of the capped function: empty at or above the cap level,
        // identical to g's superlevels below it.
        {
            const StepFuzzy2D g = detail::random_fuzzy(rng);
            const double s = rng.uniform01();
            const StepFuzzy2D capped = Ops::cap(s, g);
            const double below_level = s * rng.uniform01();
            const double above_level = s + (1.0 - s) * rng.uniform01();
            const bool ok =
                Ops::superlevel(capped, s) == BlockMask::none(g.partition()) &&
                Ops::superlevel(capped, above_level) == BlockMask::none(g.partition()) &&
                (!(below_level < s) ||
                 Ops::superlevel(capped, below_level) == Ops::superlevel(g, below_level));
            if (!ok) {
                detail::record_failure(cap_table, json{{"law", cap_table.law}, {"s", s},
                                                       {"g", step_to_json(g)}});
            }
        }

        // Superlevels of the excess part. Values, s, and A live on a dyadic
        // grid so the shifted-level comparison b - s > A <=> b > A + s is
        // exact; the empty and full rows hold for arbitrary doubles and use a
        // continuous A as well.
        {
            const StepFuzzy2D g = detail::random_dyadic_fuzzy(rng);
            const double s = detail::dyadic01(rng);
            const StepField2D exc = Ops::excess(s, g);
            const double top = sup_value(exc);
            const double shifted_a = detail::dyadic01(rng);
            bool ok = Ops::superlevel(exc, top) == BlockMask::none(g.partition()) &&
                      Ops::superlevel(exc, top + rng.uniform01()) ==
                          BlockMask::none(g.partition()) &&
                      Ops::superlevel(exc, -rng.uniform01() - 1e-3) ==
                          BlockMask::all(g.partition());
            if (shifted_a < top) {
                ok = ok && Ops::superlevel(exc, shifted_a) ==
                               Ops::superlevel(g, shifted_a + s);
            }
            if (!ok) {
                detail::record_failure(exc_table, json{{"law", exc_table.law}, {"s", s},
                                                       {"g", step_to_json(g)}});
            }
        }

        // Capping or taking the excess of a symmetric function stays symmetric.
        {
            const Graphon w = detail::random_graphon(rng);
            const double s = rng.uniform01();
            const bool ok = detail::symmetric_field(Ops::cap(s, w.carrier())) &&
                            detail::symmetric_field(Ops::excess(s, w.carrier()));
            if (!ok) {
                detail::record_failure(sym, json{{"law", sym.law}, {"s", s},
                                                 {"W", step_to_json(w.carrier())}});
            }
        }

        // eta via equal sups must coincide with eta via the band axioms.
        {
            const StepFuzzy2D f = detail::random_fuzzy(rng);
            const StepFuzzy2D g = (t % 2 == 0)
                                      ? detail::random_with_sup(rng, sup_value(f))
                                      : detail::random_fuzzy(rng);
            if (eta_related(f, g) != check_eta_axioms(f, g)) {
                detail::record_failure(eta, json{{"law", eta.law},
                                                 {"f", step_to_json(f)},
                                                 {"g", step_to_json(g)}});
            }
        }
    }

    return LawReport{{rec, bic, sups, cap_table, exc_table, sym, eta}};
}

} // namespace gband
