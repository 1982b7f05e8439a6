#include "gkms/gns.hpp"
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
    JordanData jd = jordan_decompose(omega);
    Functional mod = modulus(jd);
    GnsSpace gns = build_gns(alg, mod);
    ModularFlow flow = ModularFlow::from_density(mod.kernel);
};

Matrix random_even_density(const GradedAlgebra& alg, std::uint64_t seed, double spread = 0.4) {
    Rng rng(seed);
    const Matrix h = rng.gaussian_hermitian(alg.dim());
    const Matrix h_even = (h + alg.gamma(h)) * 0.5;
    return matrix_power(h_even * spread + Matrix::Identity(alg.dim(), alg.dim()) * 2.0,
                        Complex(1, 0));
}

}  // namespace

TEST_CASE("gns space over the worked 2x2 modulus") {
    Fixture f;
    CHECK(f.gns.N == 4);
    CHECK(f.gns.faithful);

    // gram is diagonal (3/4, 1/4, 3/4, 1/4) in matrix-unit order.
    const Matrix expected_diag = (Vector(4) << 0.75, 0.25, 0.75, 0.25).finished().asDiagonal();
    CHECK((f.gns.gram - expected_diag).norm() < 1e-14);

    // inner products match the functional
    Rng rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = rng.gaussian_matrix(2, 2);
        const Matrix b = rng.gaussian_matrix(2, 2);
        const Complex lhs = f.gns.inner(f.gns.embed(a), f.gns.embed(b));
        const Complex rhs = f.mod(a.adjoint() * b);
        CHECK(std::abs(lhs - rhs) < 1e-11 * a.norm() * b.norm());
    }

    // omega(a) = <Omega, pi(a) Omega> for the modulus
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Matrix e = f.alg.unit(i, j);
            CHECK(std::abs(f.mod(e) -
                           f.gns.inner(f.gns.omega_vec, f.gns.pi(e) * f.gns.omega_vec)) < 1e-12);
        }
}

TEST_CASE("tracial gns space") {
    const GradedAlgebra alg(1, 1);
    const Functional mod{Matrix::Identity(2, 2) * 0.5};
    const GnsSpace gns = build_gns(alg, mod);
    CHECK((gns.gram - Matrix::Identity(4, 4) * 0.5).norm() < 1e-14);
    CHECK((gns.omega_vec - gns.embed(Matrix::Identity(2, 2))).norm() == 0.0);
}

TEST_CASE("rank-deficient modulus quotients the null directions") {
    const GradedAlgebra alg(1, 1);
    const Functional mod{diag2(1.0, 0.0)};
    const GnsSpace gns = build_gns(alg, mod);
    CHECK(gns.N == 2);
    CHECK(!gns.faithful);

    // pi is still a *-homomorphism on the quotient
    Rng rng(4);
    const Matrix a = rng.gaussian_matrix(2, 2);
    const Matrix b = rng.gaussian_matrix(2, 2);
    CHECK((gns.pi(a * b) - gns.pi(a) * gns.pi(b)).norm() < 1e-12 * a.norm() * b.norm());

    const JordanData jd = jordan_decompose(Functional{diag2(1.0, 0.0)});
    const CommutantProjections proj = commutant_projections(gns, jd);
    CHECK((proj.p_plus + proj.p_minus - Matrix::Identity(2, 2)).norm() < 1e-12);

    CHECK_THROWS_AS(build_gns(alg, Functional{diag2(1.0, -0.5)}), NotPositive);
}

TEST_CASE("commutant projections on the worked example") {
    Fixture f;
    const CommutantProjections proj = commutant_projections(f.gns, f.jd);

    // p_pm eta(a) = eta(a chi_pm) and H_+ is spanned by first-column units.
    Rng rng(5);
    for (int trial = 0; trial < 8; ++trial) {
        const Matrix a = rng.gaussian_matrix(2, 2);
        CHECK((proj.p_plus * f.gns.embed(a) - f.gns.embed(a * f.jd.chi_plus)).norm() <
              1e-12 * a.norm());
        CHECK((proj.p_minus * f.gns.embed(a) - f.gns.embed(a * f.jd.chi_minus)).norm() <
              1e-12 * a.norm());
    }
    for (int i = 0; i < 2; ++i) {
        CHECK((proj.p_plus * f.gns.embed(f.alg.unit(i, 0)) - f.gns.embed(f.alg.unit(i, 0))).norm() <
              1e-13);
        CHECK((proj.p_plus * f.gns.embed(f.alg.unit(i, 1))).norm() < 1e-13);
    }

    // spectra in {0,1}, commutation with pi, graded expectation value
    const Matrix id = Matrix::Identity(4, 4);
    CHECK((proj.p_plus * proj.p_plus - proj.p_plus).norm() < 1e-11);
    CHECK((proj.p_plus + proj.p_minus - id).norm() < 1e-11);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Matrix pa = f.gns.pi(f.alg.unit(i, j));
            CHECK((proj.p_plus * pa - pa * proj.p_plus).norm() < 1e-11);
            CHECK(std::abs(f.omega(f.alg.unit(i, j)) -
                           f.gns.inner(f.gns.omega_vec,
                                       f.gns.pi(f.alg.unit(i, j)) *
                                           (proj.gamma_op * f.gns.omega_vec))) < 1e-11);
        }

    // positive functional: p_minus vanishes, Gamma is the identity
    const GradedAlgebra trivial(2, 0);
    const Matrix rho = random_even_density(trivial, 7);
    const Functional pos = supertrace_functional(trivial, rho);
    const JordanData jd_pos = jordan_decompose(pos);
    const GnsSpace gns_pos = build_gns(trivial, modulus(jd_pos));
    const CommutantProjections proj_pos = commutant_projections(gns_pos, jd_pos);
    CHECK(proj_pos.p_minus.norm() < 1e-12);
    CHECK((proj_pos.gamma_op - Matrix::Identity(gns_pos.N, gns_pos.N)).norm() < 1e-11);

    // inconsistent jordan data is rejected
    const JordanData other = jordan_decompose(Functional{diag2(0.5, -0.5)});
    CHECK_THROWS_AS(commutant_projections(f.gns, other), InconsistentInputs);
}

TEST_CASE("four-fold subspace split on the worked example") {
    Fixture f;
    const SubspaceSplit split = subspace_split(f.gns, f.alg, f.jd);

    // dimensions 1+1+1+1 sum to N = 4
    CHECK(split.h0_plus.trace().real() == doctest::Approx(1.0));
    CHECK(split.h1_plus.trace().real() == doctest::Approx(1.0));
    CHECK(split.h0_minus.trace().real() == doctest::Approx(1.0));
    CHECK(split.h1_minus.trace().real() == doctest::Approx(1.0));

    // H0_+ = span eta(E11), H1_+ = span eta(E21), H1_- = span eta(E12),
    // H0_- = span eta(E22)
    auto unit_vec = [&](int i, int j) {
        Vector v = f.gns.embed(f.alg.unit(i, j));
        return v / v.norm();
    };
    CHECK((split.h0_plus * unit_vec(0, 0) - unit_vec(0, 0)).norm() < 1e-12);
    CHECK((split.h1_plus * unit_vec(1, 0) - unit_vec(1, 0)).norm() < 1e-12);
    CHECK((split.h1_minus * unit_vec(0, 1) - unit_vec(0, 1)).norm() < 1e-12);
    CHECK((split.h0_minus * unit_vec(1, 1) - unit_vec(1, 1)).norm() < 1e-12);

    const Matrix sum = split.h0_plus + split.h1_plus + split.h0_minus + split.h1_minus;
    CHECK((sum - Matrix::Identity(4, 4)).norm() < 1e-11);
    CHECK((split.h0_plus * split.h1_plus).norm() < 1e-12);
    CHECK((split.h0_minus * split.h1_minus).norm() < 1e-12);

    // ungraded case: odd subspaces are empty
    const GradedAlgebra trivial(2, 0);
    const Functional pos = supertrace_functional(trivial, random_even_density(trivial, 8));
    const JordanData jd_pos = jordan_decompose(pos);
    const GnsSpace gns_pos = build_gns(trivial, modulus(jd_pos));
    const SubspaceSplit split_pos = subspace_split(gns_pos, trivial, jd_pos);
    CHECK(split_pos.h1_plus.norm() < 1e-12);
    CHECK(split_pos.h1_minus.norm() < 1e-12);
}

TEST_CASE("modular conjugation on the worked example") {
    Fixture f;
    const AntilinearMap j = modular_conjugation(f.gns, f.flow);

    // J eta(E12) = (1/sqrt 3) eta(E21)
    const Vector lhs = j.apply(f.gns.embed(f.alg.unit(0, 1)));
    const Vector rhs = f.gns.embed(f.alg.unit(1, 0)) / std::sqrt(3.0);
    CHECK((lhs - rhs).norm() < 1e-13);

    // J Omega = Omega, J^2 = 1
    CHECK((j.apply(f.gns.omega_vec) - f.gns.omega_vec).norm() < 1e-13);
    CHECK((j.m * j.m.conjugate() - Matrix::Identity(4, 4)).norm() < 1e-13);

    // defining action and antiunitarity on random vectors
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = rng.gaussian_matrix(2, 2);
        const Matrix b = rng.gaussian_matrix(2, 2);
        const Vector u = f.gns.embed(a);
        const Vector v = f.gns.embed(b);
        CHECK((j.apply(u) - f.gns.embed(f.flow.evolve(a.adjoint(), Complex(0, 0.5)))).norm() <
              1e-11 * u.norm());
        CHECK(std::abs(f.gns.inner(j.apply(u), j.apply(v)) - std::conj(f.gns.inner(u, v))) <
              1e-11 * u.norm() * v.norm());
    }

    // flow mismatch is rejected
    const ModularFlow wrong = ModularFlow::from_density(diag2(0.25, 0.75));
    CHECK_THROWS_AS(modular_conjugation(f.gns, wrong), FlowMismatch);
}

TEST_CASE("conjugated representation restores the odd blocks") {
    Fixture f;
    const AntilinearMap j = modular_conjugation(f.gns, f.flow);
    const ConjugateRep rep = conjugate_representation(f.gns, j);
    const CommutantProjections proj = commutant_projections(f.gns, f.jd);

    auto unit_vec = [&](int i, int jj) {
        Vector v = f.gns.embed(f.alg.unit(i, jj));
        return v / v.norm();
    };

    // pi'(E12): b12 -> b11, b22 -> b21, annihilates H_+
    const Matrix pp = rep.pi_prime(f.gns, f.alg.unit(0, 1));
    CHECK((pp * unit_vec(0, 1) - unit_vec(0, 0)).norm() < 1e-12);
    CHECK((pp * unit_vec(1, 1) - unit_vec(1, 0)).norm() < 1e-12);
    CHECK((pp * unit_vec(0, 0)).norm() < 1e-12);
    CHECK((pp * unit_vec(1, 0)).norm() < 1e-12);

    // even elements act block-diagonally
    const Matrix even_op = rep.pi_prime(f.gns, diag2(1.0, -2.0));
    CHECK((proj.p_minus * even_op * proj.p_plus).norm() < 1e-11);
    CHECK((proj.p_plus * even_op * proj.p_minus).norm() < 1e-11);

    // U pi(g') U* = Gamma and the graded expectation value through pi'
    CHECK((rep.u * f.gns.pi(f.jd.g_prime()) * rep.u.adjoint() - proj.gamma_op).norm() < 1e-11);
    for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj) {
            const Matrix e = f.alg.unit(i, jj);
            CHECK(std::abs(f.omega(e) -
                           f.gns.inner(f.gns.omega_vec,
                                       proj.gamma_op * (rep.pi_prime(f.gns, e) *
                                                        f.gns.omega_vec))) < 1e-11);
        }

    // ungraded case: Gamma = 1 makes pi' unitarily equivalent to pi trivially
    const GradedAlgebra trivial(2, 0);
    const Functional pos = supertrace_functional(trivial, random_even_density(trivial, 9));
    const JordanData jd_pos = jordan_decompose(pos);
    const GnsSpace gns_pos = build_gns(trivial, modulus(jd_pos));
    const ModularFlow flow_pos = ModularFlow::from_density(jd_pos.rho);
    const AntilinearMap j_pos = modular_conjugation(gns_pos, flow_pos);
    const ConjugateRep rep_pos = conjugate_representation(gns_pos, j_pos);
    const CommutantProjections proj_pos = commutant_projections(gns_pos, jd_pos);
    CHECK((proj_pos.gamma_op - Matrix::Identity(gns_pos.N, gns_pos.N)).norm() < 1e-11);
    Rng rng(10);
    const Matrix a = rng.gaussian_matrix(2, 2);
    const Matrix b = rng.gaussian_matrix(2, 2);
    CHECK((rep_pos.pi_prime(gns_pos, a * b) -
           rep_pos.pi_prime(gns_pos, a) * rep_pos.pi_prime(gns_pos, b)).norm() <
          1e-11 * a.norm() * b.norm());
}

TEST_CASE("conjugation lands in the commutant") {
    Fixture f;
    const AntilinearMap j = modular_conjugation(f.gns, f.flow);

    // J pi(E12) J acts as right multiplication by rho^{1/2} E21 rho^{-1/2}
    const Matrix mirrored = j.m * f.gns.pi(f.alg.unit(0, 1)).conjugate() * j.m.conjugate();
    const Matrix twist = matrix_power(f.flow.eig, Complex(0.5, 0)) * f.alg.unit(1, 0) *
                         matrix_power(f.flow.eig, Complex(-0.5, 0));
    Rng rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        const Matrix v = rng.gaussian_matrix(2, 2);
        CHECK((mirrored * f.gns.embed(v) - f.gns.embed(v * twist)).norm() < 1e-12 * v.norm());
    }

    // abelian subalgebra: the commutator vanishes exactly
    const Matrix d = diag2(1.0, 2.0);
    CHECK(commutant_residual(f.gns, j, d, d) < 1e-14);

    // generic pairs stay below threshold
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = rng.gaussian_matrix(2, 2);
        const Matrix b = rng.gaussian_matrix(2, 2);
        CHECK(commutant_residual(f.gns, j, a, b) < 1e-10);
    }

    // cross-check against an explicitly computed commutant basis
    std::vector<Matrix> gens;
    gens.push_back(f.gns.pi(diag2(1.0, 2.0)));
    gens.push_back(f.gns.pi(f.alg.unit(0, 1) + f.alg.unit(1, 0)));
    const auto commutant = commutant_basis(gens, f.gns.N);
    CHECK(commutant.size() == 4);
    for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj) {
            const Matrix m = j.m * f.gns.pi(f.alg.unit(i, jj)).conjugate() * j.m.conjugate();
            CHECK(span_distance(m, commutant) < 1e-9 * m.norm());
        }

    // double commutant closes back onto pi(A)
    std::vector<Matrix> second(commutant.begin(), commutant.end());
    const auto double_comm = commutant_basis(second, f.gns.N);
    CHECK(double_comm.size() == 4);
    for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj) {
            const Matrix pu = f.gns.pi(f.alg.unit(i, jj));
            CHECK(span_distance(pu, double_comm) < 1e-9 * pu.norm());
        }
}

TEST_CASE("modular operator and the closure S") {
    Fixture f;
    const ModularOperator mo = modular_operator(f.gns, f.flow);

    CHECK((mo.delta * f.gns.omega_vec - f.gns.omega_vec).norm() < 1e-13);

    // Delta eta(E12) = 3 eta(E12)
    const Vector v12 = f.gns.embed(f.alg.unit(0, 1));
    CHECK((mo.delta * v12 - 3.0 * v12).norm() < 1e-13);

    Rng rng(12);
    for (int trial = 0; trial < 8; ++trial) {
        const Matrix a = rng.gaussian_matrix(2, 2);
        const Vector u = f.gns.embed(a);
        CHECK((mo.s.apply(u) - f.gns.embed(a.adjoint())).norm() < 1e-10 * u.norm());
    }
}

TEST_CASE("intertwiner between conjugation variants") {
    Fixture f;
    const AntilinearMap j = modular_conjugation(f.gns, f.flow);
    const ConjugateRep rep1 = conjugate_representation(f.gns, j);
    const CommutantProjections proj = commutant_projections(f.gns, f.jd);

    GradedRep abstract1{f.gns.N,
                        [&](const Matrix& a) -> Matrix { return rep1.pi_prime(f.gns, a); },
                        proj.gamma_op, f.gns.omega_vec};

    SUBCASE("identical representations admit the identity") {
        const Matrix v = intertwiner(abstract1, abstract1, 2);
        CHECK((v - Matrix::Identity(4, 4)).norm() < 1e-10);
    }

    SUBCASE("diagonal rephasing of the conjugation basis") {
        Rng rng(13);
        Vector phases(f.gns.N);
        for (int k = 0; k < f.gns.N; ++k)
            phases(k) = std::exp(Complex(0.0, 2.0 * M_PI * rng.uniform()));
        const Matrix u2 = phases.asDiagonal() * rep1.u;
        GradedRep abstract2{f.gns.N,
                            [&](const Matrix& a) -> Matrix { return u2 * f.gns.pi(a) * u2.adjoint(); },
                            proj.gamma_op, f.gns.omega_vec};
        const Matrix v = intertwiner(abstract1, abstract2, 2);
        CHECK((v.adjoint() * v - Matrix::Identity(4, 4)).norm() < 1e-10);
        CHECK((v * proj.gamma_op - proj.gamma_op * v).norm() < 1e-10);
        CHECK((v * f.gns.omega_vec - f.gns.omega_vec).norm() < 1e-10);
        for (int i = 0; i < 2; ++i)
            for (int jj = 0; jj < 2; ++jj) {
                const Matrix e = f.alg.unit(i, jj);
                CHECK((v * abstract1.rep(e) - abstract2.rep(e) * v).norm() < 1e-10);
            }
    }

    SUBCASE("perturbed expectation values violate the hypotheses") {
        GradedRep perturbed{f.gns.N,
                            [&](const Matrix& a) -> Matrix { return rep1.pi_prime(f.gns, a); },
                            proj.gamma_op, f.gns.omega_vec * 1.01};
        CHECK_THROWS_AS(intertwiner(abstract1, perturbed, 2), HypothesisViolation);
    }
}

TEST_CASE("support identities and kernel swap through the gns extension") {
    const GradedAlgebra alg(2, 1);
    const Matrix rho = random_even_density(alg, 20);
    const Functional omega = supertrace_functional(alg, rho);
    const JordanData jd = jordan_decompose(omega);
    const GnsSpace gns = build_gns(alg, modulus(jd));
    const CommutantProjections proj = commutant_projections(gns, jd);
    const double t1 = omega.norm();

    auto omega_part = [&](const Matrix& x, bool plus) {
        const Matrix& p = plus ? proj.p_plus : proj.p_minus;
        return gns.inner(gns.omega_vec, gns.pi(x) * (p * gns.omega_vec));
    };

    Rng rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        const Matrix raw = rng.gaussian_matrix(3, 3);
        const Matrix b = rng.gaussian_matrix(3, 3);
        const auto [ae, ao] = alg.parity_split(raw);
        CHECK(std::abs(omega_part(b * jd.chi_plus * ae, false)) < 1e-10 * b.norm() * ae.norm() * t1);
        CHECK(std::abs(omega_part(b * jd.chi_minus * ae, true)) < 1e-10 * b.norm() * ae.norm() * t1);
        CHECK(std::abs(omega_part(b * jd.chi_plus * ao, true)) < 1e-10 * b.norm() * ao.norm() * t1);
        CHECK(std::abs(omega_part(b * jd.chi_minus * ao, false)) < 1e-10 * b.norm() * ao.norm() * t1);

        const Functional wp = positive_part(jd);
        const Functional wm = negative_part(jd);
        const Matrix even_dead = ae * jd.chi_minus;
        const Matrix odd_dead = ao * jd.chi_minus;
        CHECK(std::abs(wp(even_dead.adjoint() * even_dead)) < 1e-10 * even_dead.squaredNorm() * t1);
        CHECK(std::abs(wp(even_dead * even_dead.adjoint())) < 1e-10 * even_dead.squaredNorm() * t1);
        CHECK(std::abs(wp(odd_dead.adjoint() * odd_dead)) < 1e-10 * odd_dead.squaredNorm() * t1);
        CHECK(std::abs(wm(odd_dead * odd_dead.adjoint())) < 1e-10 * odd_dead.squaredNorm() * t1);
    }
}
