#include "gkms/report.hpp"
#include "gkms/rng.hpp"
#include "gkms/scenario.hpp"

#include <doctest.h>

using namespace gkms;

TEST_CASE("splitmix64 matches the published reference sequence") {
    std::uint64_t state = 0;
    CHECK(splitmix64(state) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64(state) == 0x6E789E6AA1B965F4ULL);
    CHECK(splitmix64(state) == 0x06C45D188009454FULL);
}

TEST_CASE("box-muller stream is reproducible") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
    Rng c(124);
    bool all_equal = true;
    Rng a2(123);
    for (int i = 0; i < 16; ++i) all_equal = all_equal && (a2.normal() == c.normal());
    CHECK(!all_equal);
}

TEST_CASE("scenario generation is deterministic") {
    ScenarioConfig config;
    config.seed = 9;
    config.n_plus = 2;
    config.n_minus = 2;
    config.rho.beta = 1.0;
    config.rho.spectral_bound = 2.0;

    const ScenarioBundle one = generate_scenario(config);
    const ScenarioBundle two = generate_scenario(config);
    CHECK((one.rho - two.rho).norm() == 0.0);
    CHECK(one.samples.size() == 200);
    for (std::size_t k = 0; k < one.samples.size(); ++k)
        CHECK((one.samples[k] - two.samples[k]).norm() == 0.0);

    CHECK(scenario_to_json(one) == scenario_to_json(two));
}

TEST_CASE("scenario json round trip") {
    ScenarioConfig config;
    config.seed = 5;
    config.n_plus = 1;
    config.n_minus = 2;
    config.rho.beta = 0.7;
    config.rho.spectral_bound = 1.5;
    config.checks = {"flow", "jordan"};
    const ScenarioBundle bundle = generate_scenario(config);
    const ScenarioBundle back = scenario_from_json(scenario_to_json(bundle));
    CHECK(back.config.seed == 5);
    CHECK(back.config.n_plus == 1);
    CHECK(back.config.checks == config.checks);
    CHECK((back.rho - bundle.rho).norm() == 0.0);
    CHECK((back.g - bundle.g).norm() == 0.0);
    CHECK((back.flow_rho - bundle.flow_rho).norm() == 0.0);
    REQUIRE(back.samples.size() == bundle.samples.size());
    for (std::size_t k = 0; k < back.samples.size(); ++k)
        CHECK((back.samples[k] - bundle.samples[k]).norm() == 0.0);
}

TEST_CASE("zero spectral bound gives the tracial scenario") {
    ScenarioConfig config;
    config.seed = 2;
    config.n_plus = 2;
    config.n_minus = 1;
    config.rho.spectral_bound = 0.0;
    const ScenarioBundle bundle = generate_scenario(config);
    CHECK((bundle.rho - Matrix::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("explicit eigenvalues build the worked example") {
    ScenarioConfig config;
    config.seed = 1;
    config.n_plus = 1;
    config.n_minus = 1;
    config.rho.kind = RhoSpec::Kind::explicit_eigenvalues;
    config.rho.eigenvalues = {0.75, 0.25};
    const ScenarioBundle bundle = generate_scenario(config);
    CHECK(bundle.rho(0, 0) == Complex(0.75));
    CHECK(bundle.rho(1, 1) == Complex(0.25));
    CHECK(bundle.g(1, 1) == Complex(-1.0));

    config.rho.eigenvalues = {0.75};
    CHECK_THROWS_AS(generate_scenario(config), ConfigError);
    config.rho.eigenvalues = {0.75, -0.25};
    CHECK_THROWS_AS(generate_scenario(config), ConfigError);
}

TEST_CASE("config guards") {
    ScenarioConfig config;
    config.n_plus = -1;
    config.n_minus = 0;
    CHECK_THROWS_AS(generate_scenario(config), ConfigError);

    ScenarioConfig wild;
    wild.n_plus = 2;
    wild.n_minus = 2;
    wild.rho.spectral_bound = 12.0;  // cond up to e^24, beyond the guard
    CHECK_THROWS_AS(generate_scenario(wild), ConfigError);
    wild.allow_ill_conditioned = true;
    CHECK_NOTHROW(generate_scenario(wild));
}

TEST_CASE("report emission round trip") {
    Report report;
    report.tolerance = 1e-9;
    report.scenario_echo = "{\"seed\": 4}";
    report.checks.push_back(CheckRecord{"flow", 21336, 5.9207891234567891e-15, 12.25, true, 2.39});
    report.checks.push_back(CheckRecord{"gns", 744, 7.54e-15, 1.0, true, 2.48});
    report.skipped.push_back("net (no net_spec in scenario)");
    report.notes.push_back("note with \"quotes\" and \\ backslash");
    report.modulus_discrepancy.push_back(ModulusDiscrepancy{1, 2, 0.778, 0.222, 3.504});

    const std::string text = emit_report(report);
    const Report back = parse_report(text);
    CHECK(back.tolerance == report.tolerance);
    REQUIRE(back.checks.size() == 2);
    CHECK(back.checks[0].name == "flow");
    CHECK(back.checks[0].samples == 21336);
    CHECK(back.checks[0].max_residual == report.checks[0].max_residual);
    CHECK(back.checks[0].scale == report.checks[0].scale);
    CHECK(back.checks[0].seconds == report.checks[0].seconds);
    CHECK(back.checks[0].pass);
    CHECK(back.skipped == report.skipped);
    CHECK(back.notes == report.notes);
    REQUIRE(back.modulus_discrepancy.size() == 1);
    CHECK(back.modulus_discrepancy[0].raw == 0.778);
    CHECK(back.all_pass());

    // residuals are printed in scientific notation with 17 significant digits
    CHECK(text.find("5.9207891234567891e-15") != std::string::npos);
}

TEST_CASE("report exit code follows the pass flags") {
    Report report;
    report.checks.push_back(CheckRecord{"flow", 1, 1e-3, 1.0, false, 0.0});
    CHECK(report.exit_code() == 1);
    report.checks[0].pass = true;
    CHECK(report.exit_code() == 0);
}

TEST_CASE("negative control knobs reach the bundle") {
    ScenarioConfig config;
    config.seed = 3;
    config.n_plus = 2;
    config.n_minus = 1;
    config.rho.spectral_bound = 1.0;
    config.flow_mismatch = true;
    const ScenarioBundle bundle = generate_scenario(config);
    CHECK((bundle.flow_rho - bundle.rho).norm() > 1e-3);

    ScenarioConfig odd = config;
    odd.flow_mismatch = false;
    odd.odd_perturbation = 0.1;
    const ScenarioBundle odd_bundle = generate_scenario(odd);
    const GradedAlgebra alg = odd_bundle.algebra();
    CHECK((alg.g() * odd_bundle.rho * alg.g() - odd_bundle.rho).norm() > 1e-3);
    CHECK_THROWS_AS(supertrace_functional(alg, odd_bundle.rho), OddDensity);
}
