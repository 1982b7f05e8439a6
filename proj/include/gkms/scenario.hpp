#pragma once

#include "gkms/algebra.hpp"
#include "gkms/net.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gkms {

inline constexpr const char* kArtifactVersion = "gkmslab 0.1.0";

struct RhoSpec {
    enum class Kind { gibbs, explicit_eigenvalues };
    Kind kind = Kind::gibbs;
    double beta = 1.0;
    double spectral_bound = 5.0;          // caps |ln lambda| of the density
    std::vector<double> eigenvalues;      // explicit kind only
};

struct NetSpec {
    std::vector<SiteSpec> sites;
    bool product = true;
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    int n_plus = 1;
    int n_minus = 1;
    RhoSpec rho;
    std::optional<NetSpec> net;
    double tolerance = 1e-9;
    std::vector<std::string> checks{"all"};
    bool flow_mismatch = false;     // negative control: flow density from seed+1
    double odd_perturbation = 0.0;  // negative control: breaks evenness of rho
    bool allow_ill_conditioned = false;
};

/// Concrete scenario: grading, density, flow density (differs from rho only
/// for the mismatch control) and the seeded Gaussian sample pool.
struct ScenarioBundle {
    ScenarioConfig config;
    Matrix g;
    Matrix rho;
    Matrix flow_rho;
    std::vector<Matrix> samples;

    GradedAlgebra algebra() const { return GradedAlgebra(config.n_plus, config.n_minus); }
};

ScenarioBundle generate_scenario(const ScenarioConfig& config);

/// Chain bundle for net scenarios: global density over the listed sites.
struct NetBundle {
    ScenarioConfig config;
    LocalNet net;
};
NetBundle generate_net_scenario(const ScenarioConfig& config);

std::string scenario_to_json(const ScenarioBundle& bundle);
ScenarioBundle scenario_from_json(const std::string& text);
void save_scenario(const ScenarioBundle& bundle, const std::string& path);
ScenarioBundle load_scenario(const std::string& path);

}  // namespace gkms
