#include "gkms/scenario.hpp"

#include "gkms/kernel.hpp"
#include "gkms/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace gkms {

namespace {

using ordered_json = nlohmann::ordered_json;

// rho = exp(-clip(beta H)) with the spectrum of beta H clamped to
// [-L, L], so |ln lambda| <= L and cond(rho) <= e^{2L}.
Matrix gibbs_density(const GradedAlgebra& alg, Rng& rng, double beta, double bound) {
    const int n = alg.dim();
    const Matrix h_raw = rng.gaussian_hermitian(n);
    const Matrix h_even = (h_raw + alg.gamma(h_raw)) * 0.5;
    const EigenSystem es = hermitian_eigendecompose(beta * h_even);
    Vector clipped(n);
    for (int j = 0; j < n; ++j)
        clipped(j) = std::exp(-std::clamp(es.values(j), -bound, bound));
    return es.vectors * clipped.asDiagonal() * es.vectors.adjoint();
}

Matrix explicit_density(const ScenarioConfig& config) {
    const int n = config.n_plus + config.n_minus;
    if (static_cast<int>(config.rho.eigenvalues.size()) != n)
        throw ConfigError("scenario: explicit eigenvalue list must match the dimension");
    Matrix rho = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        if (config.rho.eigenvalues[static_cast<std::size_t>(j)] <= 0.0)
            throw ConfigError("scenario: explicit eigenvalues must be positive");
        rho(j, j) = config.rho.eigenvalues[static_cast<std::size_t>(j)];
    }
    return rho;
}

Matrix build_density(const ScenarioConfig& config, const GradedAlgebra& alg, std::uint64_t seed) {
    if (config.rho.kind == RhoSpec::Kind::explicit_eigenvalues) return explicit_density(config);
    Rng rng(seed);
    return gibbs_density(alg, rng, config.rho.beta, config.rho.spectral_bound);
}

ordered_json matrix_to_json(const Matrix& m) {
    ordered_json data = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return ordered_json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const ordered_json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw ConfigError("scenario: matrix payload has wrong length");
    Matrix m(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index jj = 0; jj < cols; ++jj, ++idx)
            m(i, jj) = Complex(data[idx][0].get<double>(), data[idx][1].get<double>());
    return m;
}

ordered_json config_to_json(const ScenarioConfig& c) {
    ordered_json rho{{"kind", c.rho.kind == RhoSpec::Kind::gibbs ? "gibbs" : "explicit"},
                     {"beta", c.rho.beta},
                     {"spectral_bound", c.rho.spectral_bound},
                     {"eigenvalues", c.rho.eigenvalues}};
    ordered_json j{{"seed", c.seed},
                   {"n_plus", c.n_plus},
                   {"n_minus", c.n_minus},
                   {"rho_spec", std::move(rho)},
                   {"tolerance", c.tolerance},
                   {"checks", c.checks},
                   {"flow_mismatch", c.flow_mismatch},
                   {"odd_perturbation", c.odd_perturbation},
                   {"allow_ill_conditioned", c.allow_ill_conditioned}};
    if (c.net) {
        ordered_json sites = ordered_json::array();
        for (const SiteSpec& s : c.net->sites) sites.push_back({{"plus", s.plus}, {"minus", s.minus}});
        j["net_spec"] = ordered_json{{"sites", std::move(sites)}, {"product", c.net->product}};
    } else {
        j["net_spec"] = nullptr;
    }
    return j;
}

ScenarioConfig config_from_json(const ordered_json& j) {
    ScenarioConfig c;
    c.seed = j.at("seed").get<std::uint64_t>();
    c.n_plus = j.at("n_plus").get<int>();
    c.n_minus = j.at("n_minus").get<int>();
    const auto& rho = j.at("rho_spec");
    c.rho.kind = rho.at("kind").get<std::string>() == "explicit"
                     ? RhoSpec::Kind::explicit_eigenvalues
                     : RhoSpec::Kind::gibbs;
    c.rho.beta = rho.at("beta").get<double>();
    c.rho.spectral_bound = rho.at("spectral_bound").get<double>();
    c.rho.eigenvalues = rho.at("eigenvalues").get<std::vector<double>>();
    c.tolerance = j.at("tolerance").get<double>();
    c.checks = j.at("checks").get<std::vector<std::string>>();
    c.flow_mismatch = j.at("flow_mismatch").get<bool>();
    c.odd_perturbation = j.at("odd_perturbation").get<double>();
    c.allow_ill_conditioned = j.at("allow_ill_conditioned").get<bool>();
    if (!j.at("net_spec").is_null()) {
        NetSpec net;
        for (const auto& s : j.at("net_spec").at("sites"))
            net.sites.push_back(SiteSpec{s.at("plus").get<int>(), s.at("minus").get<int>()});
        net.product = j.at("net_spec").at("product").get<bool>();
        c.net = std::move(net);
    }
    return c;
}

}  // namespace

ScenarioBundle generate_scenario(const ScenarioConfig& config) {
    if (config.n_plus < 0 || config.n_minus < 0 || config.n_plus + config.n_minus < 1)
        throw ConfigError("scenario: sector dimensions must be nonnegative with total >= 1");
    if (config.rho.spectral_bound < 0.0) throw ConfigError("scenario: negative spectral bound");
    const GradedAlgebra alg(config.n_plus, config.n_minus);
    const int n = alg.dim();

    ScenarioBundle bundle;
    bundle.config = config;
    bundle.g = alg.g();
    bundle.rho = build_density(config, alg, config.seed);

    if (config.odd_perturbation != 0.0) {
        Rng rng(config.seed ^ 0x0DDULL);
        const Matrix h = rng.gaussian_hermitian(n);
        const Matrix odd = (h - alg.gamma(h)) * 0.5;
        bundle.rho += config.odd_perturbation * odd;
    }

    bundle.flow_rho =
        config.flow_mismatch ? build_density(config, alg, config.seed + 1) : bundle.rho;

    Rng sample_rng(config.seed ^ 0x5A5A5A5A5A5A5A5AULL);
    bundle.samples.reserve(200);
    for (int s = 0; s < 200; ++s) bundle.samples.push_back(sample_rng.gaussian_matrix(n, n));

    if (!config.allow_ill_conditioned && config.odd_perturbation == 0.0) {
        const EigenSystem es = hermitian_eigendecompose(bundle.rho);
        if (es.positive_definite() && es.cond() > tol::cond_guard)
            throw ConfigError("scenario: cond(rho) exceeds the guard; pass the override to keep it");
    }
    return bundle;
}

NetBundle generate_net_scenario(const ScenarioConfig& config) {
    if (!config.net) throw ConfigError("scenario: net_spec missing");
    if (config.net->sites.size() < 2) throw ConfigError("scenario: chains need at least 2 sites");

    Matrix rho;
    if (config.net->product) {
        rho = Matrix::Identity(1, 1);
        std::uint64_t sub = config.seed;
        for (const SiteSpec& s : config.net->sites) {
            const GradedAlgebra site_alg(s.plus, s.minus);
            Rng rng(splitmix64(sub));
            Matrix site_rho =
                config.rho.kind == RhoSpec::Kind::gibbs
                    ? gibbs_density(site_alg, rng, config.rho.beta, config.rho.spectral_bound)
                    : throw ConfigError("scenario: explicit eigenvalues unsupported for chains");
            site_rho /= site_rho.trace().real();  // unit trace per site
            rho = kron(rho, site_rho);
        }
    } else {
        // Entangled chain: one even Gibbs density for the product grading.
        std::vector<int> pattern{1};
        for (const SiteSpec& s : config.net->sites) {
            std::vector<int> site_signs(static_cast<std::size_t>(s.plus), 1);
            site_signs.insert(site_signs.end(), static_cast<std::size_t>(s.minus), -1);
            std::vector<int> next;
            for (int a : pattern)
                for (int b : site_signs) next.push_back(a * b);
            pattern.swap(next);
        }
        const GradedAlgebra chain_alg(pattern);
        Rng rng(config.seed);
        rho = gibbs_density(chain_alg, rng, config.rho.beta, config.rho.spectral_bound);
        rho /= rho.trace().real();
    }

    NetBundle bundle;
    bundle.config = config;
    bundle.net = build_chain(config.net->sites, rho);
    return bundle;
}

std::string scenario_to_json(const ScenarioBundle& bundle) {
    ordered_json j{{"artifact_version", kArtifactVersion},
                   {"config", config_to_json(bundle.config)},
                   {"g", matrix_to_json(bundle.g)},
                   {"rho", matrix_to_json(bundle.rho)},
                   {"flow_rho", matrix_to_json(bundle.flow_rho)}};
    ordered_json samples = ordered_json::array();
    for (const Matrix& s : bundle.samples) samples.push_back(matrix_to_json(s));
    j["samples"] = std::move(samples);
    return j.dump(1);
}

ScenarioBundle scenario_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
    }
    ScenarioBundle bundle;
    bundle.config = config_from_json(j.at("config"));
    bundle.g = matrix_from_json(j.at("g"));
    bundle.rho = matrix_from_json(j.at("rho"));
    bundle.flow_rho = matrix_from_json(j.at("flow_rho"));
    for (const auto& s : j.at("samples")) bundle.samples.push_back(matrix_from_json(s));
    return bundle;
}

void save_scenario(const ScenarioBundle& bundle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("scenario: cannot open " + path + " for writing");
    out << scenario_to_json(bundle) << '\n';
    if (!out) throw IoError("scenario: write to " + path + " failed");
}

ScenarioBundle load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("scenario: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return scenario_from_json(text);
}

}  // namespace gkms
