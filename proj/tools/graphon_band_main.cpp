#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gband/experiments.hpp"

namespace {

struct CommonFlags {
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<std::string> out;
    std::vector<std::string> patterns;
    std::optional<std::string> graphon;
    std::optional<long> samples;
    std::optional<double> fsup;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "JSON config file (flags override its fields)");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--trials", f.trials, "number of trials");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--pattern", f.patterns, "pattern graph spec, repeatable (k3, c5, p4, star6, or 1-2,2-3,1-3)");
    cmd->add_option("--graphon", f.graphon, "graphon JSON file");
    cmd->add_option("--samples", f.samples, "Monte-Carlo sample budget");
    cmd->add_option("--fsup", f.fsup, "fixture level: sup of the acting fuzzy set (bound)");
}

gband::ExperimentConfig build_config(const CommonFlags& f) {
    gband::ExperimentConfig cfg;
    if (f.config) cfg.apply_json(gband::load_json_file(*f.config));
    if (f.seed) cfg.seed = *f.seed;
    if (f.trials) cfg.trials = *f.trials;
    if (f.out) cfg.output_dir = *f.out;
    if (!f.patterns.empty()) cfg.pattern_specs = f.patterns;
    if (f.graphon) cfg.graphon_path = *f.graphon;
    if (f.samples) cfg.samples = *f.samples;
    if (f.fsup) cfg.f_sup = *f.fsup;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"step-graphon band algebra: law checks, bound sweeps, "
                 "convergence runs, cut-norm queries"};
    app.require_subcommand(1);

    CommonFlags laws_flags, bound_flags, conv_flags;
    CLI::App* laws = app.add_subcommand("laws", "verify band laws and the cap/excess identities");
    add_common(laws, laws_flags);
    CLI::App* bound = app.add_subcommand("bound", "sweep the density-perturbation inequality");
    add_common(bound, bound_flags);
    CLI::App* converge = app.add_subcommand("converge", "t(F, G_n) along W-random graph sequences");
    add_common(converge, conv_flags);

    CLI::App* cutnorm = app.add_subcommand("cutnorm", "l1 and cut norms of a step field (or a difference)");
    std::string cut_input;
    std::optional<std::string> cut_second;
    cutnorm->add_option("input", cut_input, "step function JSON file")->required();
    cutnorm->add_option("second", cut_second, "optional second file; norms of the difference");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (laws->parsed()) return gband::run_laws(build_config(laws_flags), std::cout);
        if (bound->parsed()) return gband::run_bound(build_config(bound_flags), std::cout);
        if (converge->parsed()) return gband::run_converge(build_config(conv_flags), std::cout);
        if (cutnorm->parsed()) return gband::run_cutnorm(cut_input, cut_second, std::cout);
    } catch (const gband::GuardExceeded& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const gband::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const gband::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
