#pragma once

#include "gkms/gns.hpp"

#include <optional>
#include <vector>

namespace gkms {

/// One chain site: a matrix factor of dimension plus + minus carrying its own
/// grading sign pattern (minus = 0 means the site is ungraded).
struct SiteSpec {
    int plus = 0;
    int minus = 0;
    int dim() const { return plus + minus; }
};

/// Finite chain of matrix factors with prefix regions O_k = sites 1..k.
/// A(O_k) consists of matrices a (x) 1 on the remaining sites; the global
/// functional is the supertrace kernel g rho for the tensor-product grading.
struct LocalNet {
    std::vector<SiteSpec> sites;
    std::vector<int> site_dims;
    Matrix global_g;
    Matrix rho;       // global even positive definite density
    Matrix global_t;  // kernel of omega, = global_g * rho
    bool product_rho = false;

    int num_sites() const { return static_cast<int>(sites.size()); }
    int dim() const { return static_cast<int>(global_g.rows()); }
    int region_dim(int k) const;

    /// a (x) identity on sites > k.
    Matrix embed(const Matrix& a, int k) const;
    /// Orthogonal (Frobenius) projection of x onto A(O_k).
    Matrix compress(const Matrix& x, int k) const;
};

LocalNet build_chain(const std::vector<SiteSpec>& sites, const Matrix& rho);

/// Diagonal sign pattern of the tensor-product grading over the first k
/// sites (all sites when k is omitted).
std::vector<int> chain_grading_signs(const std::vector<SiteSpec>& sites, int k = -1);

/// Kernel of the restriction of the global functional to A(O_k):
/// the partial trace of global_t over the sites past k.
Functional restrict_functional(const LocalNet& net, int k);

/// Trace-norm gap between "modulus of the restriction" and "restriction of
/// the modulus" per region pair; reported, never asserted to vanish.
struct ModulusDiscrepancy {
    int k;
    int k_prime;
    double raw;         // trace norm of the kernel difference
    double scale;       // trace norm of the restriction kernel
    double normalized;  // raw / scale
};
std::vector<ModulusDiscrepancy> local_modulus_probe(const LocalNet& net);

/// Per-region GNS data inside the global GNS space of the modulus: the
/// region subspace H(O_k), the compressed Radon-Nikodym operators relating
/// the restricted positive/negative parts to the restricted modulus, and the
/// containment / agreement / monotonicity residuals.
struct RegionGnsReport {
    struct Region {
        int k;
        int subspace_dim;
        double containment_residual;    // || (1 - P_{k'}) P_k || for next region
        double agreement_residual;      // || P_k p_{O_k'} P_k - p_{O_k} ||
        double reproduction_residual;   // functional reproduction on units
        double commutation_residual;    // against pi(A(O_k)) generators
        double spectrum_lo;             // min eigenvalue of p_{O_k +} on H(O_k)
        double spectrum_hi;             // max eigenvalue
        double projection_defect;       // || p^2 - p || on H(O_k)
        double monotonicity_min_eig;    // min eig of p_{O_k'} - p_{O_k} on H(O_k')
    };
    std::vector<Region> regions;
};
RegionGnsReport local_gns_structure(const LocalNet& net);

/// Residual classes of the net KMS suite evaluated with smoothed local
/// elements: (a) modulus-KMS via strip boundaries, (b) the four support
/// identities, (c) kernel swaps on constructed elements, (d) positivity of
/// omega_pm on smoothed products.
struct NetSuiteReport {
    double kms_boundary = 0.0;
    double identities = 0.0;
    double kernel_swap = 0.0;
    double positivity_min = 0.0;  // most negative sampled value / scale
    long samples = 0;
};
NetSuiteReport net_kms_suite(const LocalNet& net, int sample_budget, std::uint64_t seed);

}  // namespace gkms
