#include <catch2/catch_amalgamated.hpp>

#include "gband/law_checks.hpp"

using namespace gband;

namespace {

// Broken cap: keeps the part above the level instead of clamping it. Every
// value-level law that touches cap must notice.
struct CapSwappedOps : DefaultStepOps {
    static StepFuzzy2D cap(double s, const StepFuzzy2D& g) {
        std::vector<double> out(g.values());
        for (double& v : out) {
            if (!(v > s)) v = s;
        }
        return StepFuzzy2D(g.partition(), std::move(out));
    }
};

// Broken superlevel: non-strict comparison. The boundary rows of the
// superlevel case tables must notice.
struct GeqSuperlevelOps : DefaultStepOps {
    static BlockMask superlevel(const StepField2D& h, double level) {
        const std::size_t k = h.block_count();
        std::vector<std::uint8_t> flags(k * k, 0);
        for (std::size_t i = 0; i < flags.size(); ++i) {
            flags[i] = h.values()[i] >= level ? 1 : 0;
        }
        return BlockMask(h.partition(), std::move(flags));
    }
};

} // namespace

TEST_CASE("all laws pass with the real operations") {
    const LawReport band = check_band_laws(300, 1234);
    REQUIRE(band.all_passed());
    const LawReport identities = check_identity_laws(300, 1234);
    REQUIRE(identities.all_passed());
    for (const auto& l : identities.laws) {
        REQUIRE(l.trials == 300);
        REQUIRE(l.counterexample.is_null());
    }
}

TEST_CASE("trial counts are validated") {
    REQUIRE_THROWS_AS(check_band_laws(0, 1), InvalidInput);
    REQUIRE_THROWS_AS(check_identity_laws(0, 1), InvalidInput);
}

TEST_CASE("a swapped cap is detected with a replayable counterexample") {
    const LawReport band = check_band_laws<CapSwappedOps>(100, 77);
    REQUIRE_FALSE(band.all_passed());

    const LawReport identities = check_identity_laws<CapSwappedOps>(100, 77);
    REQUIRE_FALSE(identities.all_passed());

    long failures = 0;
    bool replayed = false;
    for (const auto& l : identities.laws) {
        failures += l.failures;
        if (l.law == "cap_excess_reconstruction" && !l.counterexample.is_null()) {
            // replay the stored instance against the mutant and the real op
            const StepFuzzy2D g = fuzzy_from_json(l.counterexample.at("g"));
            const double s = l.counterexample.at("s").get<double>();
            const StepField2D broken =
                pointwise_add(CapSwappedOps::cap(s, g), CapSwappedOps::excess(s, g));
            const StepField2D good = pointwise_add(cap(s, g), excess(s, g));
            bool broken_matches = true, good_matches = true;
            for (std::size_t i = 0; i < g.values().size(); ++i) {
                if (std::abs(broken.values()[i] - g.values()[i]) > 1e-12) broken_matches = false;
                if (std::abs(good.values()[i] - g.values()[i]) > 1e-12) good_matches = false;
            }
            REQUIRE_FALSE(broken_matches);
            REQUIRE(good_matches);
            replayed = true;
        }
    }
    REQUIRE(failures > 0);
    REQUIRE(replayed);
}

TEST_CASE("a non-strict superlevel comparison is detected") {
    const LawReport identities = check_identity_laws<GeqSuperlevelOps>(200, 55);
    REQUIRE_FALSE(identities.all_passed());
    bool boundary_caught = false;
    for (const auto& l : identities.laws) {
        if ((l.law == "cap_superlevel_table" || l.law == "excess_superlevel_table") &&
            l.failures > 0) {
            boundary_caught = true;
            REQUIRE_FALSE(l.counterexample.is_null());
        }
    }
    REQUIRE(boundary_caught);
}

TEST_CASE("law report JSON keeps per-law trials, failures, counterexamples") {
    const LawReport report = check_band_laws<CapSwappedOps>(50, 9);
    const json j = law_report_to_json(report);
    REQUIRE(j.contains("idempotence"));
    REQUIRE(j.at("idempotence").at("trials").get<long>() == 50);
    bool some_ce = false;
    for (const auto& l : report.laws) {
        REQUIRE(j.at(l.law).at("failures").get<long>() == l.failures);
        if (j.at(l.law).contains("counterexample")) some_ce = true;
    }
    REQUIRE(some_ce);
}
