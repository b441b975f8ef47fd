#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gband/errors.hpp"
#include "gband/graphon.hpp"
#include "gband/hom_density.hpp"
#include "gband/io.hpp"
#include "gband/law_checks.hpp"
#include "gband/norms.hpp"
#include "gband/rng.hpp"

namespace gband {

/// Worker-count hint from GRAPHON_BAND_THREADS. Outputs are fully determined
/// by (config, seed), so the hint may size a pool but can never change results;
/// the current runners execute trials sequentially.
inline int worker_hint() {
    const char* env = std::getenv("GRAPHON_BAND_THREADS");
    if (env == nullptr) return 1;
    const long v = std::strtol(env, nullptr, 10);
    return v >= 1 ? static_cast<int>(v) : 1;
}

struct ExperimentConfig {
    std::uint64_t seed = 42;
    long trials = 1000;
    std::size_t k_min = 1;
    std::size_t k_max = 6;
    std::vector<std::string> pattern_specs;
    std::vector<long> n_sequence = {25, 50, 100, 200, 400};
    long samples = 100000;
    std::string output_dir = ".";
    std::string graphon_path; // empty = generate / not supplied
    double f_sup = -1.0;      // < 0 = not supplied (bound fixture level)

    void validate() const {
        if (trials < 1) throw InvalidInput("config: trials must be >= 1");
        if (k_min < 1 || k_min > k_max || k_max > kCutNormMaxBlocks) {
            throw InvalidInput("config: k_range must satisfy 1 <= min <= max <= " +
                               std::to_string(kCutNormMaxBlocks));
        }
        if (samples < 2) throw InvalidInput("config: samples must be >= 2");
        for (std::size_t i = 0; i + 1 < n_sequence.size(); ++i) {
            if (!(n_sequence[i] < n_sequence[i + 1])) {
                throw InvalidInput("config: n_sequence must be strictly increasing");
            }
        }
        for (long n : n_sequence) {
            if (n < 1) throw InvalidInput("config: n_sequence entries must be >= 1");
        }
        if (f_sup > 1.0) throw InvalidInput("config: f_sup must be in [0,1]");
    }

    /// Overlay fields present in a config JSON object; unknown keys rejected.
    void apply_json(const json& j) {
        if (!j.is_object()) throw InvalidInput("config must be a JSON object");
        for (const auto& [key, value] : j.items()) {
            if (key == "seed") seed = value.get<std::uint64_t>();
            else if (key == "trials") trials = value.get<long>();
            else if (key == "k_range") {
                if (!value.is_array() || value.size() != 2) {
                    throw InvalidInput("config: k_range must be [min,max]");
                }
                k_min = value[0].get<std::size_t>();
                k_max = value[1].get<std::size_t>();
            } else if (key == "pattern_specs") {
                pattern_specs = value.get<std::vector<std::string>>();
            } else if (key == "n_sequence") {
                n_sequence = value.get<std::vector<long>>();
            } else if (key == "samples") samples = value.get<long>();
            else if (key == "output_dir") output_dir = value.get<std::string>();
            else if (key == "graphon_path") graphon_path = value.get<std::string>();
            else if (key == "f_sup") f_sup = value.get<double>();
            else throw InvalidInput("config: unknown key '" + key + "'");
        }
    }
};

namespace detail {

inline void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InvalidInput("cannot create output dir '" + dir + "': " + ec.message());
}

inline std::vector<SimpleGraph> parse_patterns(const std::vector<std::string>& specs) {
    if (specs.empty()) throw InvalidInput("pattern list is empty");
    std::vector<SimpleGraph> out;
    out.reserve(specs.size());
    for (const auto& s : specs) out.push_back(parse_pattern(s));
    return out;
}

} // namespace detail

/// laws: band-law and identity sweeps; writes laws_report.json into output_dir.
/// Returns 0 when every law passed, 1 otherwise.
template <class Ops = DefaultStepOps>
int run_laws(const ExperimentConfig& cfg, std::ostream& log) {
    cfg.validate();
    detail::ensure_output_dir(cfg.output_dir);
    [[maybe_unused]] const int workers = worker_hint();

    LawReport report = check_band_laws<Ops>(cfg.trials, cfg.seed);
    report.append(check_identity_laws<Ops>(cfg.trials, derive_seed(cfg.seed, 0xA11ull)));

    write_text_file(cfg.output_dir + "/laws_report.json",
                    law_report_to_json(report).dump(2) + "\n");
    for (const auto& l : report.laws) {
        log << l.law << ": " << (l.trials - l.failures) << "/" << l.trials
            << " passed\n";
    }
    if (!report.all_passed()) {
        log << "FAILURES: " << report.total_failures()
            << " (counterexamples in laws_report.json)\n";
        return 1;
    }
    return 0;
}

namespace detail {

inline std::string bound_csv_row(std::uint64_t row_seed, std::size_t k,
                                 const SimpleGraph& pattern, const BoundReport& r) {
    std::string line = std::to_string(row_seed);
    line += ',' + std::to_string(k);
    line += ',' + std::to_string(pattern.vertex_count());
    line += ',' + std::to_string(pattern.edge_count());
    line += ',' + fmt_real(r.sup_f);
    line += ',' + fmt_real(r.sup_w);
    line += ',' + fmt_real(r.delta_area);
    line += ',' + fmt_real(r.lhs);
    line += ',' + fmt_real(static_cast<double>(r.edge_count) * r.cut0);
    line += ',' + fmt_real(static_cast<double>(r.edge_count) * r.l1);
    line += ',' + fmt_real(r.rhs);
    line += ',' + fmt_real(r.slack);
    line += ',';
    line += (r.holds ? "1" : "0");
    line += '\n';
    return line;
}

} // namespace detail

/// bound: seeded sweep of the main-inequality verifier; writes
/// bound_sweep.csv (and a replayable counterexample fixture on failure).
/// Returns 0 when every report holds with its full chain, 1 otherwise.
inline int run_bound(const ExperimentConfig& cfg, std::ostream& log) {
    cfg.validate();
    const std::vector<SimpleGraph> patterns = detail::parse_patterns(cfg.pattern_specs);
    detail::ensure_output_dir(cfg.output_dir);
    [[maybe_unused]] const int workers = worker_hint();

    std::string csv = "seed,k,v_F,e_F,sup_f,sup_W,delta_area,lhs,cut0_x_edges,"
                      "l1_x_edges,rhs,slack,holds\n";
    bool all_hold = true;
    double min_slack = 0.0;
    bool have_slack = false;
    json counterexample;

    const auto consume = [&](std::uint64_t row_seed, const Graphon& w,
                             const StepFuzzy2D& f, const SimpleGraph& pattern) {
        const BoundReport r = verify_main_bound(w, f, pattern);
        csv += detail::bound_csv_row(row_seed, w.partition().block_count(), pattern, r);
        if (!have_slack || r.slack < min_slack) {
            min_slack = r.slack;
            have_slack = true;
        }
        if (!(r.holds && r.chain_holds)) {
            all_hold = false;
            if (counterexample.is_null()) {
                counterexample = json{{"seed", row_seed},
                                      {"W", step_to_json(w.carrier())},
                                      {"f", step_to_json(f)},
                                      {"F", graph_to_json(pattern)},
                                      {"report", bound_report_to_json(r)}};
            }
        }
    };

    // Optional fixture rows: a fixed graphon acted on by the constant fuzzy
    // set at level f_sup, one row per pattern, ahead of the random trials.
    if (!cfg.graphon_path.empty() && cfg.f_sup >= 0.0) {
        const Graphon w = graphon_from_json(load_json_file(cfg.graphon_path));
        const StepFuzzy2D f = StepFuzzy2D::constant(cfg.f_sup);
        for (const auto& pattern : patterns) consume(0, w, f, pattern);
    }

    for (long t = 0; t < cfg.trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
        Rng rng(trial_seed);
        const std::size_t k = cfg.k_min + rng.below(cfg.k_max - cfg.k_min + 1);
        const Graphon w = validate_graphon(random_step(k, rng, true, rng.coin()));
        const std::size_t kf = cfg.k_min + rng.below(cfg.k_max - cfg.k_min + 1);
        const StepFuzzy2D f = random_step(kf, rng, false, rng.coin());
        const SimpleGraph& pattern = patterns[rng.below(patterns.size())];
        consume(trial_seed, w, f, pattern);
    }

    write_text_file(cfg.output_dir + "/bound_sweep.csv", csv);
    log << "min slack = " << fmt_real(min_slack) << "\n";
    if (!all_hold) {
        write_text_file(cfg.output_dir + "/bound_counterexample.json",
                        counterexample.dump(2) + "\n");
        log << "BOUND VIOLATION: counterexample written to "
            << cfg.output_dir + "/bound_counterexample.json" << "\n";
        return 1;
    }
    return 0;
}

/// converge: samples G_n from a fixed graphon for each n in n_sequence and
/// estimates t(F, G_n) per pattern; the exact t(F, W) is appended as a
/// reference row with n = 0. Writes converge.csv.
inline int run_converge(const ExperimentConfig& cfg, std::ostream& log) {
    cfg.validate();
    const std::vector<SimpleGraph> patterns = detail::parse_patterns(cfg.pattern_specs);
    detail::ensure_output_dir(cfg.output_dir);
    [[maybe_unused]] const int workers = worker_hint();

    const Graphon w = cfg.graphon_path.empty()
                          ? validate_graphon(random_step(
                                cfg.k_min, derive_seed(cfg.seed, 0xC09ull), true, false))
                          : graphon_from_json(load_json_file(cfg.graphon_path));

    std::string csv = "pattern,n,value,std_error,method\n";
    for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
        const SimpleGraph& pattern = patterns[pi];
        for (std::size_t ni = 0; ni < cfg.n_sequence.size(); ++ni) {
            const auto n = static_cast<std::size_t>(cfg.n_sequence[ni]);
            const std::uint64_t stream = pi * 100003ull + ni;
            const SimpleGraph g =
                sample_w_random_graph(w, n, derive_seed(cfg.seed, stream));
            DensityEstimate est;
            if (checked_pow(n, pattern.vertex_count()) <= kEnumerationBudget) {
                est = t_graph(pattern, g);
            } else {
                est = t_monte_carlo_graph(pattern, g, cfg.samples,
                                          derive_seed(cfg.seed, stream + 0x500000ull));
            }
            csv += cfg.pattern_specs[pi] + ',' + std::to_string(n) + ',' +
                   fmt_real(est.value) + ',' + fmt_real(est.std_error) + ',' +
                   method_name(est.method) + '\n';
        }
        const DensityEstimate limit = t_step_exact(pattern, w);
        csv += cfg.pattern_specs[pi] + ",0," + fmt_real(limit.value) + ",0," +
               method_name(limit.method) + '\n';
        log << cfg.pattern_specs[pi] << ": t(F,W) = " << fmt_real(limit.value) << "\n";
    }
    write_text_file(cfg.output_dir + "/converge.csv", csv);
    return 0;
}

/// cutnorm: norms of one step field, or of the difference of two (refined to
/// the merged partition first). Prints both and checks cut0 <= l1.
inline int run_cutnorm(const std::string& path_a,
                       const std::optional<std::string>& path_b, std::ostream& log) {
    StepField2D u = field_from_json(load_json_file(path_a));
    if (path_b) {
        const StepField2D v = field_from_json(load_json_file(*path_b));
        const auto [ur, vr] = refine(u, v);
        u = pointwise_sub(ur, vr);
    }
    const double l1 = l1_norm(u);
    const double cut0 = cut0_norm(u);
    log << "l1   = " << fmt_real(l1) << "\n";
    log << "cut0 = " << fmt_real(cut0) << "\n";
    if (cut0 > l1 + kBoundTol) {
        log << "NORM CHAIN VIOLATION: cut0 > l1\n";
        return 1;
    }
    return 0;
}

} // namespace gband
