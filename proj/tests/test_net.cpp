#include "gkms/net.hpp"
#include "gkms/rng.hpp"

#include <doctest.h>

using namespace gkms;

namespace {

Matrix site_density(int dim, std::uint64_t seed, const std::vector<int>& signs, double spread) {
    Rng rng(seed);
    const GradedAlgebra alg(signs);
    const Matrix h = rng.gaussian_hermitian(dim);
    const Matrix h_even = (h + alg.gamma(h)) * 0.5;
    Matrix rho = matrix_power(h_even * spread + Matrix::Identity(dim, dim) * 2.0, Complex(1, 0));
    rho /= rho.trace().real();
    return rho;
}

struct ProductChain {
    std::vector<SiteSpec> sites{{1, 1}, {1, 1}};
    Matrix rho1 = site_density(2, 3, {1, -1}, 0.5);
    Matrix rho2 = site_density(2, 4, {1, -1}, 0.5);
    LocalNet net = build_chain(sites, kron(rho1, rho2));
};

}  // namespace

TEST_CASE("chain construction bookkeeping") {
    ProductChain c;
    CHECK(c.net.dim() == 4);
    CHECK(c.net.num_sites() == 2);
    CHECK(c.net.region_dim(1) == 2);
    CHECK(c.net.region_dim(2) == 4);
    CHECK(c.net.product_rho);

    // grading is the tensor product pattern (+,-,-,+)
    CHECK(c.net.global_g(0, 0) == Complex(1.0));
    CHECK(c.net.global_g(1, 1) == Complex(-1.0));
    CHECK(c.net.global_g(2, 2) == Complex(-1.0));
    CHECK(c.net.global_g(3, 3) == Complex(1.0));

    CHECK_THROWS_AS(build_chain({{1, 1}}, Matrix::Identity(2, 2)), DimensionMismatch);
    CHECK_THROWS_AS(build_chain({{1, 0}, {1, 1}}, Matrix::Identity(2, 2)), DimensionMismatch);

    Matrix odd_rho = kron(c.rho1, c.rho2);
    odd_rho(0, 1) += 0.05;
    odd_rho(1, 0) += 0.05;
    CHECK_THROWS_AS(build_chain(c.sites, odd_rho), OddDensity);
}

TEST_CASE("entangled even densities are accepted and flagged") {
    std::vector<SiteSpec> sites{{1, 1}, {1, 1}};
    const std::vector<int> signs = chain_grading_signs(sites);
    const Matrix rho = site_density(4, 9, signs, 0.5);
    const LocalNet net = build_chain(sites, rho);
    CHECK(!net.product_rho);
}

TEST_CASE("isotony of the region embeddings") {
    ProductChain c;
    Rng rng(5);
    const Matrix a = rng.gaussian_matrix(2, 2);
    const Matrix direct = c.net.embed(a, 1);
    const Matrix via = c.net.embed(kron(a, Matrix::Identity(2, 2)), 2);
    CHECK((direct - via).norm() == 0.0);
    CHECK((c.net.compress(direct, 1) - a).norm() < 1e-13 * a.norm());
}

TEST_CASE("restriction kernels") {
    ProductChain c;
    const Functional full = restrict_functional(c.net, 2);
    CHECK((full.kernel - c.net.global_t).norm() == 0.0);

    // product factorisation: T_1 = g1 rho1 str(rho2)
    const Functional f1 = restrict_functional(c.net, 1);
    Matrix g1 = Matrix::Identity(2, 2);
    g1(1, 1) = -1.0;
    Matrix g2 = g1;
    const Complex c_rest = (g2 * c.rho2).trace();
    CHECK((f1.kernel - c_rest * g1 * c.rho1).norm() < 1e-13 * f1.kernel.norm());

    // evaluation agrees with the global functional on embedded elements
    const Functional global{c.net.global_t};
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = rng.gaussian_matrix(2, 2);
        CHECK(std::abs(f1(a) - global(c.net.embed(a, 1))) <
              1e-12 * a.norm() * trace_norm(c.net.global_t));
    }

    CHECK_THROWS_AS(restrict_functional(c.net, 0), RegionOutOfRange);
    CHECK_THROWS_AS(restrict_functional(c.net, 3), RegionOutOfRange);
}

TEST_CASE("modulus discrepancy closed form") {
    // Site 2 ungraded with unit trace: |str(rho2)| = tr(rho2) = 1, so the two
    // modulus routes coincide.
    std::vector<SiteSpec> trivial_sites{{1, 1}, {2, 0}};
    const Matrix rho1 = site_density(2, 11, {1, -1}, 0.5);
    const Matrix rho2 = site_density(2, 12, {1, 1}, 0.5);
    const LocalNet unambiguous = build_chain(trivial_sites, kron(rho1, rho2));
    const auto table0 = local_modulus_probe(unambiguous);
    REQUIRE(table0.size() == 1);
    CHECK(table0[0].normalized < 1e-12);

    // Graded second site: the discrepancy equals 1 - |c| after normalizing by
    // the trace norm of rho1.
    ProductChain c;
    const auto table = local_modulus_probe(c.net);
    REQUIRE(table.size() == 1);
    Matrix g2 = Matrix::Identity(2, 2);
    g2(1, 1) = -1.0;
    const double abs_c = std::abs((g2 * c.rho2).trace());
    CHECK(std::abs(table[0].raw / trace_norm(c.rho1) - (1.0 - abs_c)) < 1e-11);
    CHECK(table[0].k == 1);
    CHECK(table[0].k_prime == 2);
}

TEST_CASE("region gns structure") {
    ProductChain c;
    const RegionGnsReport report = local_gns_structure(c.net);
    REQUIRE(report.regions.size() == 2);

    // dim H(O_1) = (dim site 1)^2, full region spans everything
    CHECK(report.regions[0].subspace_dim == 4);
    CHECK(report.regions[1].subspace_dim == 16);

    for (const auto& reg : report.regions) {
        CHECK(reg.containment_residual < 1e-10);
        CHECK(reg.agreement_residual < 1e-10);
        CHECK(reg.reproduction_residual < 1e-10);
        CHECK(reg.commutation_residual < 1e-10);
        CHECK(reg.spectrum_lo > -1e-11);
        CHECK(reg.spectrum_hi < 1.0 + 1e-11);
    }

    // the full region carries genuine projections; the proper region only a
    // Radon-Nikodym element unless the rest site is unambiguous
    CHECK(report.regions[1].projection_defect < 1e-10);
}

TEST_CASE("net kms suite residual classes") {
    ProductChain c;
    const NetSuiteReport rep = net_kms_suite(c.net, 50, 77);
    CHECK(rep.samples == 50);
    CHECK(rep.kms_boundary < 1e-9);
    CHECK(rep.identities < 1e-9);
    CHECK(rep.kernel_swap < 1e-9);
    CHECK(rep.positivity_min > -1e-9);

    CHECK_THROWS_AS(net_kms_suite(c.net, 0, 1), BudgetZero);
}

TEST_CASE("ungraded chain reduces to plain KMS checks") {
    std::vector<SiteSpec> sites{{2, 0}, {2, 0}};
    const Matrix rho = kron(site_density(2, 15, {1, 1}, 0.5), site_density(2, 16, {1, 1}, 0.5));
    const LocalNet net = build_chain(sites, rho);
    const NetSuiteReport rep = net_kms_suite(net, 30, 5);
    CHECK(rep.kms_boundary < 1e-9);
    CHECK(rep.identities < 1e-12);  // vacuous: chi_minus = 0
    CHECK(rep.positivity_min > -1e-12);
}

TEST_CASE("smoothing scale consistency on the chain") {
    // sigma -> 0: smoothed identity residuals approach the unsmoothed ones.
    ProductChain c;
    const Functional omega{c.net.global_t};
    const JordanData jd = jordan_decompose(omega);
    const Functional wp = positive_part(jd);
    const ModularFlow flow = ModularFlow::from_density(jd.rho);
    const GradedAlgebra alg(chain_grading_signs(c.sites));

    Rng rng(99);
    double worst_gap = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix raw = c.net.embed(rng.gaussian_matrix(2, 2), 1);
        const Matrix b = c.net.embed(rng.gaussian_matrix(2, 2), 1);
        const auto [ae, ao] = alg.parity_split(raw);
        const Matrix smoothed = flow.smooth(ao, 1e-3, Complex(0, 0));
        const double with_smoothing = std::abs(wp(b * jd.chi_plus * smoothed));
        const double without = std::abs(wp(b * jd.chi_plus * ao));
        worst_gap = std::max(worst_gap,
                             std::abs(with_smoothing - without) /
                                 std::max(1e-300, b.norm() * ao.norm() * omega.norm()));
    }
    CHECK(worst_gap < 1e-6);
}
