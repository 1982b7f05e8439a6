#include "gkms/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 all checks pass, 1 any check fails, 2 config or I/O error.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<gkms::SiteSpec> parse_sites(const std::string& spec) {
    // "1+1,2+0,1+1": per site even+odd sector dimensions.
    std::vector<gkms::SiteSpec> sites;
    for (const std::string& tok : split_list(spec)) {
        const auto plus_pos = tok.find('+');
        if (plus_pos == std::string::npos)
            throw gkms::ConfigError("sites: expected P+M entries, got '" + tok + "'");
        gkms::SiteSpec site;
        site.plus = std::stoi(tok.substr(0, plus_pos));
        site.minus = std::stoi(tok.substr(plus_pos + 1));
        sites.push_back(site);
    }
    return sites;
}

std::string config_echo(const gkms::ScenarioBundle& bundle) {
    // Reuse the scenario serializer and keep only the config object.
    const auto j = nlohmann::ordered_json::parse(gkms::scenario_to_json(bundle));
    return j.at("config").dump();
}

void print_summary(const gkms::Report& report) {
    for (const auto& c : report.checks)
        std::printf("%-8s %s  max_residual=%.3e  samples=%ld  (%.2fs)\n", c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.max_residual, c.samples, c.seconds);
    for (const auto& s : report.skipped) std::printf("%-8s SKIP  %s\n", "-", s.c_str());
    for (const auto& d : report.modulus_discrepancy)
        std::printf("modulus table: O_%d vs O_%d  raw=%.3e  normalized=%.3e\n", d.k, d.k_prime,
                    d.raw, d.normalized);
    for (const auto& n : report.notes) std::printf("note: %s\n", n.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded-KMS verification laboratory"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "build a seeded scenario file");
    std::uint64_t seed = 1;
    int n_plus = 1, n_minus = 1;
    double beta = 1.0, bound = 5.0, tolerance = 1e-9, odd_perturb = 0.0;
    std::string out_path, eigenvalues_csv;
    bool flow_mismatch = false, allow_ill = false;
    gen->add_option("--seed", seed, "scenario seed");
    gen->add_option("--n-plus", n_plus, "even sector dimension")->required();
    gen->add_option("--n-minus", n_minus, "odd sector dimension")->required();
    gen->add_option("--beta", beta, "inverse temperature for the Gibbs density");
    gen->add_option("--spectral-bound", bound, "cap on |ln lambda| of the density");
    gen->add_option("--eigenvalues", eigenvalues_csv,
                    "explicit density eigenvalues (comma separated, overrides Gibbs)");
    gen->add_option("--tol", tolerance, "default residual tolerance");
    gen->add_flag("--flow-mismatch", flow_mismatch,
                  "negative control: flow density drawn from seed+1");
    gen->add_option("--odd-perturb", odd_perturb,
                    "negative control: odd perturbation strength added to rho");
    gen->add_flag("--allow-ill-conditioned", allow_ill, "skip the cond(rho) guard");
    gen->add_option("--out", out_path, "output scenario path")->required();

    // verify
    auto* ver = app.add_subcommand("verify", "run certification checks on a scenario");
    std::string scenario_path, checks_csv = "all", report_path;
    double ver_tol = -1.0;
    bool serial = false;
    ver->add_option("scenario", scenario_path, "scenario JSON path")->required();
    ver->add_option("--checks", checks_csv, "comma separated subset of checks, or 'all'");
    ver->add_option("--tol", ver_tol, "residual tolerance (default: scenario tolerance)");
    ver->add_option("--report", report_path, "report JSON output path");
    ver->add_flag("--serial", serial, "run sweeps on the serial reference path");

    // net
    auto* net_cmd = app.add_subcommand("net", "build and certify a chain scenario");
    std::string sites_spec;
    std::uint64_t net_seed = 1;
    double net_beta = 1.0, net_bound = 2.0, net_tol = 1e-9;
    bool entangled = false;
    std::string net_report_path, net_checks_csv = "all";
    net_cmd->add_option("--sites", sites_spec, "chain sites as P+M entries, e.g. 1+1,1+1")
        ->required();
    net_cmd->add_option("--seed", net_seed, "chain seed");
    net_cmd->add_option("--beta", net_beta, "inverse temperature per site");
    net_cmd->add_option("--spectral-bound", net_bound, "cap on |ln lambda| per site");
    net_cmd->add_flag("--entangled", entangled, "draw one even global density instead of a product");
    net_cmd->add_option("--tol", net_tol, "residual tolerance");
    net_cmd->add_option("--checks", net_checks_csv, "subset of {net, prop4} or 'all'");
    net_cmd->add_option("--report", net_report_path, "report JSON output path");
    net_cmd->add_flag("--serial", serial, "run sweeps on the serial reference path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const gkms::Exec mode = serial ? gkms::Exec::serial : gkms::Exec::parallel;

        if (gen->parsed()) {
            gkms::ScenarioConfig config;
            config.seed = seed;
            config.n_plus = n_plus;
            config.n_minus = n_minus;
            config.tolerance = tolerance;
            config.flow_mismatch = flow_mismatch;
            config.odd_perturbation = odd_perturb;
            config.allow_ill_conditioned = allow_ill;
            if (!eigenvalues_csv.empty()) {
                config.rho.kind = gkms::RhoSpec::Kind::explicit_eigenvalues;
                for (const std::string& tok : split_list(eigenvalues_csv))
                    config.rho.eigenvalues.push_back(std::stod(tok));
            } else {
                config.rho.beta = beta;
                config.rho.spectral_bound = bound;
            }
            const gkms::ScenarioBundle bundle = gkms::generate_scenario(config);
            gkms::save_scenario(bundle, out_path);
            std::printf("wrote %s (n=%d, seed=%llu)\n", out_path.c_str(),
                        n_plus + n_minus, static_cast<unsigned long long>(seed));
            return kExitPass;
        }

        if (ver->parsed()) {
            const gkms::ScenarioBundle bundle = gkms::load_scenario(scenario_path);
            const double tol = ver_tol > 0.0 ? ver_tol : bundle.config.tolerance;
            const std::vector<std::string> checks = split_list(checks_csv);
            gkms::Report report = gkms::run_suite(bundle, checks, tol, mode);
            report.scenario_echo = config_echo(bundle);
            if (!report_path.empty()) gkms::save_report(report, report_path);
            print_summary(report);
            return report.checks.empty() ? kExitPass : report.exit_code();
        }

        if (net_cmd->parsed()) {
            gkms::ScenarioConfig config;
            config.seed = net_seed;
            config.tolerance = net_tol;
            config.rho.beta = net_beta;
            config.rho.spectral_bound = net_bound;
            gkms::NetSpec spec;
            spec.sites = parse_sites(sites_spec);
            spec.product = !entangled;
            config.net = spec;
            config.n_plus = 1;
            config.n_minus = 0;
            const gkms::NetBundle bundle = gkms::generate_net_scenario(config);
            gkms::Report report =
                gkms::run_net_suite(bundle, split_list(net_checks_csv), net_tol, mode);
            if (!net_report_path.empty()) gkms::save_report(report, net_report_path);
            print_summary(report);
            return report.checks.empty() ? kExitPass : report.exit_code();
        }
    } catch (const gkms::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const gkms::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitConfig;
    } catch (const gkms::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitConfig;
}
