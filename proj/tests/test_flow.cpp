#include "gkms/flow.hpp"
#include "gkms/jordan.hpp"
#include "gkms/rng.hpp"

#include <doctest.h>

using namespace gkms;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

struct Fixture {
    GradedAlgebra alg{1, 1};
    Matrix rho = diag2(0.75, 0.25);
    Functional omega = supertrace_functional(alg, rho);
    ModularFlow flow = ModularFlow::from_density(rho);
};

Matrix random_even_density(const GradedAlgebra& alg, std::uint64_t seed, double spread = 0.4) {
    Rng rng(seed);
    const Matrix h = rng.gaussian_hermitian(alg.dim());
    const Matrix h_even = (h + alg.gamma(h)) * 0.5;
    return matrix_power(h_even * spread + Matrix::Identity(alg.dim(), alg.dim()) * 2.0,
                        Complex(1, 0));
}

}  // namespace

TEST_CASE("evolution fixed points and eigenbasis action") {
    Fixture f;
    Rng rng(2);
    const Matrix a = rng.gaussian_matrix(2, 2);
    CHECK((f.flow.evolve(a, Complex(0, 0)) - a).norm() == 0.0);

    // alpha_i multiplies E_12 by lambda_1/lambda_2 and E_21 by the inverse.
    const Matrix e12 = f.alg.unit(0, 1);
    const Matrix e21 = f.alg.unit(1, 0);
    CHECK((f.flow.evolve(e12, Complex(0, 1)) - 3.0 * e12).norm() < 1e-13);
    CHECK((f.flow.evolve(e21, Complex(0, 1)) - e21 / 3.0).norm() < 1e-13);

    const Matrix commuting = diag2(2.0, -1.0);
    CHECK((f.flow.evolve(commuting, Complex(0.7, -0.3)) - commuting).norm() < 1e-13);

    CHECK_THROWS_AS(ModularFlow::from_density(diag2(1.0, 0.0)), SingularDensity);
}

TEST_CASE("graded boundary identity on the worked example") {
    Fixture f;
    const Matrix a = f.alg.unit(1, 0);
    const Matrix b = f.alg.unit(0, 1);
    CHECK(std::abs(f.omega(a * b) - Complex(-0.25)) < 1e-15);
    CHECK(std::abs(f.omega(f.alg.gamma(b) * f.flow.evolve(a, Complex(0, 1))) - Complex(-0.25)) <
          1e-14);
    CHECK(graded_kms_residual(f.omega, f.flow, f.alg, a, b) < 1e-12);
}

TEST_CASE("unit element reduces the graded identity to evenness") {
    Fixture f;
    Rng rng(6);
    const Matrix one = Matrix::Identity(2, 2);
    for (int trial = 0; trial < 6; ++trial) {
        const Matrix b = rng.gaussian_matrix(2, 2);
        CHECK(graded_kms_residual(f.omega, f.flow, f.alg, one, b) < 1e-12);
    }
}

TEST_CASE("mismatched flow is detected") {
    Fixture f;
    const ModularFlow wrong = ModularFlow::from_density(diag2(0.25, 0.75));
    CHECK(graded_kms_residual(f.omega, wrong, f.alg, f.alg.unit(1, 0), f.alg.unit(0, 1)) > 0.01);
}

TEST_CASE("plain KMS identity for positive functionals") {
    Fixture f;
    const Functional phi{f.rho};
    const Matrix a = f.alg.unit(0, 1);
    const Matrix b = f.alg.unit(1, 0);
    CHECK(std::abs(phi(a * b) - Complex(0.75)) < 1e-15);
    CHECK(std::abs(phi(b * f.flow.evolve(a, Complex(0, 1))) - Complex(0.75)) < 1e-14);
    CHECK(kms_residual(phi, f.flow, a, b) < 1e-12);

    // tracial density: the flow is trivial and the trace is cyclic
    const Matrix eye = Matrix::Identity(3, 3) / 3.0;
    const ModularFlow tracial = ModularFlow::from_density(eye);
    Rng rng(4);
    for (int trial = 0; trial < 6; ++trial) {
        const Matrix x = rng.gaussian_matrix(3, 3);
        const Matrix y = rng.gaussian_matrix(3, 3);
        CHECK(kms_residual(Functional{eye}, tracial, x, y) < 1e-14);
    }

    const GradedAlgebra alg(2, 2);
    const Matrix rho = random_even_density(alg, 15);
    const ModularFlow flow = ModularFlow::from_density(rho);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix x = rng.gaussian_matrix(4, 4);
        const Matrix y = rng.gaussian_matrix(4, 4);
        CHECK(kms_residual(Functional{rho}, flow, x, y) < 1e-10);
    }
}

TEST_CASE("strip function boundary values") {
    Fixture f;
    Rng rng(8);
    const Matrix a = rng.gaussian_matrix(2, 2);
    const Matrix b = rng.gaussian_matrix(2, 2);
    CHECK(std::abs(strip_function(f.omega, f.flow, a, b, Complex(0, 0)) - f.omega(a * b)) <
          1e-14);

    // worked pair at the top boundary
    const Matrix e21 = f.alg.unit(1, 0);
    const Matrix e12 = f.alg.unit(0, 1);
    CHECK(std::abs(strip_function(f.omega, f.flow, e21, e12, Complex(0, 1)) - Complex(-0.75)) <
          1e-14);
    CHECK(std::abs(f.omega(e12 * f.alg.gamma(e21)) - Complex(-0.75)) < 1e-14);

    // modulus G-function boundary, both sides evaluated directly
    const Functional mod = modulus(f.omega);
    for (double t : {-0.6, 0.2, 1.0}) {
        const Complex top = mod(e12 * f.flow.evolve(e21, Complex(t, 1.0)));
        const Complex expected = mod(f.flow.evolve(e21, Complex(t, 0.0)) * e12);
        CHECK(std::abs(top - expected) < 1e-12);
    }
}

TEST_CASE("growth probe certifies bounded strip functions") {
    const GrowthEstimate constant = growth_probe([](Complex) { return Complex(2.5, 0.0); },
                                                 8.0, 65, 5);
    CHECK(constant.N == 0);
    CHECK(constant.C == doctest::Approx(2.5));

    Fixture f;
    const Matrix a = f.alg.unit(1, 0);
    const Matrix b = f.alg.unit(0, 1);
    auto strip = [&](Complex z) { return strip_function(f.omega, f.flow, a, b, z); };
    const GrowthEstimate est = growth_probe(strip, 8.0, 129, 5);
    CHECK(est.N == 0);
    CHECK(est.C <= a.norm() * b.norm() * f.omega.norm() * f.flow.cond() * (1.0 + 1e-12));

    const GrowthEstimate fine = growth_probe(strip, 8.0, 257, 5);
    CHECK(std::abs(fine.C - est.C) < 0.05 * est.C);

    // genuine polynomial growth is reported as such
    const GrowthEstimate linear = growth_probe(
        [](Complex z) { return Complex(1.0 + std::abs(z.real()), 0.0); }, 8.0, 65, 5);
    CHECK(linear.N == 1);
}

TEST_CASE("smoothing closed form") {
    Fixture f;
    const Matrix commuting = diag2(1.0, 4.0);
    CHECK((f.flow.smooth(commuting, 1.0, Complex(0.3, 0.2)) - commuting).norm() < 1e-13);

    const Matrix e12 = f.alg.unit(0, 1);
    const double expected = std::exp(-std::log(3.0) * std::log(3.0) / 4.0);
    const Matrix smoothed = f.flow.smooth(e12, 1.0, Complex(0, 0));
    CHECK(std::abs(smoothed(0, 1) - Complex(expected)) < 1e-14);

    // sigma -> 0 recovers the element
    Rng rng(3);
    const Matrix a = rng.gaussian_matrix(2, 2);
    CHECK((f.flow.smooth(a, 0.01, Complex(0, 0)) - a).norm() < 1e-4 * a.norm());

    CHECK_THROWS_AS(f.flow.smooth(a, 0.0, Complex(0, 0)), NonpositiveSigma);
}

TEST_CASE("smoothing quadrature path agrees with the closed form") {
    Fixture f;
    Rng rng(9);
    const Matrix a = rng.gaussian_matrix(2, 2);
    for (const Complex z : {Complex(0, 0), Complex(0.4, 0.3), Complex(-0.2, 1.0)}) {
        const Matrix closed = f.flow.smooth(a, 1.0, z);
        const Matrix quad = f.flow.smooth_quadrature(a, 1.0, z, 64);
        CHECK((closed - quad).norm() < 1e-8 * closed.norm());
    }

    const GradedAlgebra alg(2, 1);
    const Matrix rho = random_even_density(alg, 33, 0.8);
    const ModularFlow flow = ModularFlow::from_density(rho);
    const Matrix b = rng.gaussian_matrix(3, 3);
    const Matrix closed = flow.smooth(b, 1.0, Complex(0.1, 0.5));
    const Matrix quad = flow.smooth_quadrature(b, 1.0, Complex(0.1, 0.5), 64);
    CHECK((closed - quad).norm() < 1e-8 * closed.norm());
}

TEST_CASE("smoothing shift property") {
    Fixture f;
    Rng rng(10);
    const Matrix a = rng.gaussian_matrix(2, 2);
    const Complex w(0.5, 0.3), zeta(-0.2, 0.4);
    const Matrix lhs = f.flow.evolve(f.flow.smooth(a, 0.8, zeta), w);
    const Matrix rhs = f.flow.smooth(a, 0.8, w + zeta);
    CHECK((lhs - rhs).norm() < 1e-11 * rhs.norm());
}

TEST_CASE("flow is a one-parameter *-automorphism group") {
    const GradedAlgebra alg(2, 2);
    const Matrix rho = random_even_density(alg, 44);
    const ModularFlow flow = ModularFlow::from_density(rho);
    Rng rng(45);
    for (int trial = 0; trial < 6; ++trial) {
        const Matrix a = rng.gaussian_matrix(4, 4);
        const Matrix b = rng.gaussian_matrix(4, 4);
        const Complex z(0.3, 0.1), w(-0.5, 0.2);
        CHECK((flow.evolve(flow.evolve(a, w), z) - flow.evolve(a, z + w)).norm() <
              1e-11 * flow.evolve(a, z + w).norm());
        const double t = 1.1;
        const Matrix at = flow.evolve(a, Complex(t, 0));
        const Matrix bt = flow.evolve(b, Complex(t, 0));
        CHECK((flow.evolve(a * b, Complex(t, 0)) - at * bt).norm() <
              1e-12 * at.norm() * bt.norm());
        CHECK((flow.evolve(a.adjoint(), Complex(t, 0)) - at.adjoint()).norm() <
              1e-12 * at.norm());
        // even density: the flow commutes with the grading
        CHECK((flow.evolve(alg.gamma(a), z) - alg.gamma(flow.evolve(a, z))).norm() <
              1e-12 * flow.evolve(a, z).norm() * 10.0);
    }
}
