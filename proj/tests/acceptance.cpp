// Acceptance suite: one pass/fail line per criterion, exit 0 only if all pass.
// Run directly or through ctest. An optional argv[1] substring filters
// criteria by name.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gband/band.hpp"
#include "gband/experiments.hpp"
#include "gband/graphon.hpp"
#include "gband/hom_density.hpp"
#include "gband/law_checks.hpp"
#include "gband/norms.hpp"
#include "oracles.hpp"

using namespace gband;

namespace {

Graphon tight_fixture_w() {
    return validate_graphon(StepFuzzy2D(Partition::uniform(2), {0.9, 0.3, 0.3, 0.9}));
}

// C1: band laws on 1000 seeded random triples, exact equality, 0 failures.
bool c1_band_laws(std::string& detail) {
    const LawReport report = check_band_laws(1000, 0xBAD5EEDull);
    detail = std::to_string(report.total_failures()) + " failures in " +
             std::to_string(report.laws.size()) + " laws x 1000 trials";
    return report.all_passed();
}

// C2: brute-force convolution equals the cap formula on right-zero semigroups.
bool c2_convolution_oracle(std::string& detail) {
    Rng rng(0x7E0ull);
    long mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(50);
        const FiniteSemigroup sg = right_zero(n);
        const FuzzyVec f = oracles::random_fuzzy_vec(n, rng);
        const FuzzyVec g = oracles::random_fuzzy_vec(n, rng);
        const FuzzyVec conv = convolve(sg, f, g);
        double sup_f = 0.0;
        for (double v : f.values()) sup_f = std::max(sup_f, v);
        for (std::size_t s = 0; s < n; ++s) {
            if (conv[s] != std::min(sup_f, g[s])) ++mismatches;
        }
    }
    detail = "200 semigroups (n <= 50), " + std::to_string(mismatches) + " mismatches";
    return mismatches == 0;
}

// C3: the cap/excess identity suite (reconstruction, mutual fixedness, sup
// formulas, superlevel tables, symmetry closure), 0 failures.
bool c3_identity_suite(std::string& detail) {
    const LawReport report = check_identity_laws(500, 0x1E3ull);
    long failures = 0;
    for (const auto& l : report.laws) {
        if (l.law != "eta_axioms_equivalence") failures += l.failures;
    }
    detail = std::to_string(failures) + " failures across " +
             std::to_string(report.laws.size() - 1) + " identity sweeps x 500 trials";
    return failures == 0;
}

// C4: equal-sup classification agrees with the band-axiom route on 500
// constructed pairs.
bool c4_eta_classification(std::string& detail) {
    Rng rng(0xE7Aull);
    long disagreements = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const StepFuzzy2D f = random_step(1 + rng.below(5), rng, false, rng.coin());
        StepFuzzy2D g = random_step(1 + rng.below(5), rng, false, rng.coin());
        if (trial % 2 == 0) {
            std::vector<double> vals = cap(sup_value(f), g).values();
            vals[rng.below(vals.size())] = sup_value(f);
            g = StepFuzzy2D(g.partition(), std::move(vals));
        }
        if (eta_related(f, g) != check_eta_axioms(f, g)) ++disagreements;
    }
    detail = "500 pairs, " + std::to_string(disagreements) + " disagreements";
    return disagreements == 0;
}

// C5: f o W is always a graphon and sup(f o W) = min(sup f, sup W) exactly.
bool c5_left_ideal(std::string& detail) {
    Rng rng(0x1DEA1ull);
    long failures = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const StepFuzzy2D f = random_step(1 + rng.below(5), rng, false, rng.coin());
        const Graphon w = validate_graphon(
            random_step(1 + rng.below(5), rng, true, rng.coin()));
        try {
            const Graphon out = left_act(f, w);
            if (out.sup() != std::min(sup_value(f), w.sup())) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    detail = "500 pairs, " + std::to_string(failures) + " failures";
    return failures == 0;
}

// C6: sigma-eta congruence on 500 constructed triples, both sides.
bool c6_congruence(std::string& detail) {
    Rng rng(0xC0C0ull);
    long failures = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Graphon w1 = validate_graphon(
            random_step(1 + rng.below(4), rng, true, rng.coin()));
        const Graphon w2 = validate_graphon(resample_onto(
            w1.carrier(),
            merge_partitions(w1.partition(),
                             random_step(1 + rng.below(4), rng, true, false).partition())));
        const Graphon w = validate_graphon(
            random_step(1 + rng.below(4), rng, true, rng.coin()));
        if (!congruence_check(w1, w2, w).both()) ++failures;
    }
    detail = "500 triples, " + std::to_string(failures) + " failures";
    return failures == 0;
}

// C7: the main inequality with its full chain on 1000 random (W, f, F),
// plus the tight 2-block fixture with slack 0 within 1e-12.
bool c7_main_bound(std::string& detail) {
    const std::vector<SimpleGraph> pool = {
        make_graph(GraphKind::complete, 2), make_graph(GraphKind::complete, 3),
        make_graph(GraphKind::complete, 4), make_graph(GraphKind::complete, 5),
        make_graph(GraphKind::cycle, 4),    make_graph(GraphKind::cycle, 5),
        make_graph(GraphKind::path, 3),     make_graph(GraphKind::path, 5),
        make_graph(GraphKind::star, 5)};
    Rng rng(0xB0B0ull);
    long failures = 0;
    double min_slack = 1.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Graphon w = validate_graphon(
            random_step(1 + rng.below(6), rng, true, rng.coin()));
        const StepFuzzy2D f = random_step(1 + rng.below(6), rng, false, rng.coin());
        const SimpleGraph& pattern = pool[rng.below(pool.size())];
        const BoundReport r = verify_main_bound(w, f, pattern);
        if (!(r.holds && r.chain_holds)) ++failures;
        min_slack = std::min(min_slack, r.slack);
    }
    const BoundReport tight = verify_main_bound(
        tight_fixture_w(), StepFuzzy2D::constant(0.5), make_graph(GraphKind::complete, 2));
    const bool tight_ok = tight.holds && tight.chain_holds &&
                          std::abs(tight.slack) <= 1e-12;
    detail = "1000 trials, " + std::to_string(failures) + " failures, min slack " +
             fmt_real(min_slack) + "; fixture slack " + fmt_real(tight.slack);
    return failures == 0 && tight_ok;
}

// C8: greedy-vertex cut norm equals the full 4^k double enumeration, k <= 8.
bool c8_cut_norm_oracle(std::string& detail) {
    Rng rng(0xC07ull);
    long failures = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + rng.below(8);
        Partition p = rng.coin() ? Partition::uniform(k)
                                 : random_step(k, rng, false, false).partition();
        std::vector<double> v(k * k);
        for (double& x : v) x = 2.0 * rng.uniform01() - 1.0;
        const StepField2D u(std::move(p), std::move(v));
        const double got = cut0_norm(u);
        const double want = oracles::cut0_full_enumeration(u);
        worst = std::max(worst, std::abs(got - want));
        if (std::abs(got - want) > 1e-12) ++failures;
    }
    detail = "100 fields (k <= 8), max |greedy - full| = " + fmt_real(worst);
    return failures == 0;
}

// C9: hom/density cross-checks: pinned values, the graph/graphon embedding
// over the generated families, and constant-graphon densities.
bool c9_hom_density(std::string& detail) {
    const SimpleGraph k2 = make_graph(GraphKind::complete, 2);
    const SimpleGraph k3 = make_graph(GraphKind::complete, 3);
    if (hom_count(k2, k3) != 6) {
        detail = "hom(K2,K3) != 6";
        return false;
    }
    if (t_graph(k2, k3).value != 2.0 / 3.0) {
        detail = "t(K2,K3) != 2/3";
        return false;
    }

    std::vector<SimpleGraph> patterns, hosts;
    for (std::size_t n = 1; n <= 4; ++n) patterns.push_back(make_graph(GraphKind::complete, n));
    for (std::size_t n = 2; n <= 4; ++n) patterns.push_back(make_graph(GraphKind::path, n));
    for (std::size_t n = 3; n <= 4; ++n) patterns.push_back(make_graph(GraphKind::cycle, n));
    for (std::size_t n = 3; n <= 4; ++n) patterns.push_back(make_graph(GraphKind::star, n));
    for (std::size_t n = 1; n <= 6; ++n) hosts.push_back(make_graph(GraphKind::complete, n));
    for (std::size_t n = 2; n <= 6; ++n) hosts.push_back(make_graph(GraphKind::path, n));
    for (std::size_t n = 3; n <= 6; ++n) hosts.push_back(make_graph(GraphKind::cycle, n));
    for (std::size_t n = 3; n <= 6; ++n) hosts.push_back(make_graph(GraphKind::star, n));

    long checked = 0;
    for (const auto& f : patterns) {
        for (const auto& g : hosts) {
            const double via_hom = t_graph(f, g).value;
            const double via_blocks = t_step_exact(f, graph_to_graphon(g)).value;
            if (std::abs(via_hom - via_blocks) > 1e-12) {
                detail = "embedding mismatch at |V(F)|=" + std::to_string(f.vertex_count()) +
                         ", |V(G)|=" + std::to_string(g.vertex_count());
                return false;
            }
            ++checked;
        }
    }

    const Graphon half = validate_graphon(StepFuzzy2D::constant(0.5));
    for (const auto& f : patterns) {
        const double want = std::pow(0.5, static_cast<double>(f.edge_count()));
        if (std::abs(t_step_exact(f, half).value - want) > 1e-12) {
            detail = "constant-graphon density mismatch";
            return false;
        }
    }
    detail = std::to_string(checked) + " embedding pairs + " +
             std::to_string(patterns.size()) + " constant-graphon densities";
    return true;
}

// C10: Monte-Carlo calibration on the 2-block fixture: the exact value lies
// inside +-4 standard errors in at least 99 of 100 seeded runs.
bool c10_monte_carlo_calibration(std::string& detail) {
    const Graphon w = tight_fixture_w();
    const SimpleGraph k2 = make_graph(GraphKind::complete, 2);
    const double exact = t_step_exact(k2, w).value;
    int inside = 0;
    for (int run = 0; run < 100; ++run) {
        const DensityEstimate e =
            t_monte_carlo(k2, w, 100000, derive_seed(0xCA11ull, run));
        if (std::abs(e.value - exact) <= 4.0 * e.std_error) ++inside;
    }
    detail = std::to_string(inside) + "/100 runs inside +-4 std errors";
    return inside >= 99;
}

// C11: empirical convergence of t(K3, G_n) for W = 1/2 at n = 400.
bool c11_convergence(std::string& detail) {
    const Graphon half = validate_graphon(StepFuzzy2D::constant(0.5));
    const SimpleGraph k3 = make_graph(GraphKind::complete, 3);
    double total_dev = 0.0;
    for (int run = 0; run < 10; ++run) {
        const SimpleGraph g = sample_w_random_graph(half, 400, derive_seed(0xC11ull, run));
        total_dev += std::abs(t_graph(k3, g).value - 0.125);
    }
    const double mean_dev = total_dev / 10.0;
    detail = "mean |t(K3,G_400) - 0.125| = " + fmt_real(mean_dev) + " over 10 seeds";
    return mean_dev <= 0.02;
}

} // namespace

int main(int argc, char** argv) {
    const std::string filter = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<bool(std::string&)>>> criteria = {
        {"C1 band laws", c1_band_laws},
        {"C2 convolution oracle", c2_convolution_oracle},
        {"C3 cap/excess identities", c3_identity_suite},
        {"C4 eta classification", c4_eta_classification},
        {"C5 left ideal", c5_left_ideal},
        {"C6 sigma-eta congruence", c6_congruence},
        {"C7 main bound chain", c7_main_bound},
        {"C8 cut norm oracle", c8_cut_norm_oracle},
        {"C9 hom/density cross-checks", c9_hom_density},
        {"C10 monte-carlo calibration", c10_monte_carlo_calibration},
        {"C11 convergence demonstration", c11_convergence},
    };

    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        if (!filter.empty() && name.find(filter) == std::string::npos) continue;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s: %s (%.2fs)\n", ok ? "PASS" : "FAIL", name.c_str(),
                    detail.c_str(), secs);
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    if (failed > 0) {
        std::printf("%d criterion(s) FAILED\n", failed);
        return 1;
    }
    return 0;
}
