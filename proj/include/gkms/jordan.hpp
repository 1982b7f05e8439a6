#pragma once

#include "gkms/algebra.hpp"
#include "gkms/kernel.hpp"

#include <span>

namespace gkms {

/// Spectral split of a self-adjoint kernel T into orthogonal positive parts:
/// T = T_plus - T_minus with support projections chi_pm and modulus |T|.
/// Eigenvalues inside the dead zone around 0 belong to neither support; the
/// decomposition is then non-faithful and g_prime squares to a projection
/// rather than the identity.
struct JordanData {
    Matrix t_plus;
    Matrix t_minus;
    Matrix chi_plus;
    Matrix chi_minus;
    Matrix rho;  // |T| = t_plus + t_minus

    Matrix g_prime() const { return chi_plus - chi_minus; }
    bool faithful(double rtol = 1e-10) const;
};

JordanData jordan_decompose(const Functional& omega);

/// The modulus functional |omega| with kernel |T|.
Functional modulus(const Functional& omega);
Functional modulus(const JordanData& jd);

/// Positive and negative parts as functionals: omega_pm(a) = pm omega(a chi_pm).
Functional positive_part(const JordanData& jd);
Functional negative_part(const JordanData& jd);

/// The orthogonality witness z = chi_plus together with the two witness
/// values (omega_plus(1 - z), omega_minus(z)); both vanish exactly in finite
/// dimension.
struct OrthogonalityWitness {
    Matrix z;
    double plus_defect;
    double minus_defect;
};
OrthogonalityWitness orthogonality_witness(const Functional& omega, const JordanData& jd);

/// Max over samples of ||g' a g' - gamma(a)|| / ||a||: how well the induced
/// grading element reproduces the algebra grading. Requires a faithful jd.
double grading_residual(const JordanData& jd, const GradedAlgebra& alg,
                        std::span<const Matrix> samples);

/// Residuals of the two polar links: | |omega|(a) - omega(a g') | and
/// | omega(a) - |omega|(a g') |, maximized over samples, relative to
/// ||a|| ||T||_1.
std::pair<double, double> sakai_residuals(const Functional& omega, const JordanData& jd,
                                          std::span<const Matrix> samples);

/// Sampled status of the Cauchy-Schwarz-type bound linking omega and |omega|.
/// The squared form |omega(a)|^2 <= ||omega|| |omega|(a*a) is the invariant;
/// the unsquared variant |omega(a)| <= ||omega|| |omega|(a*a) is only
/// tallied, never asserted.
struct CauchySchwarzProbe {
    double squared_min_slack = 0.0;  // min of rhs - lhs over samples, / scale
    int unsquared_violations = 0;
    int samples = 0;
};
CauchySchwarzProbe cauchy_schwarz_probe(const Functional& omega, std::span<const Matrix> samples);

}  // namespace gkms
