#include "gkms/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gkms {

bool JordanData::faithful(double rtol) const {
    const Matrix sum = chi_plus + chi_minus;
    return (sum - Matrix::Identity(sum.rows(), sum.cols())).norm() <=
           rtol * std::sqrt(static_cast<double>(sum.rows()));
}

JordanData jordan_decompose(const Functional& omega) {
    if (!omega.is_self_adjoint())
        throw NotSelfAdjoint("jordan_decompose: kernel is not self-adjoint");
    const EigenSystem es = hermitian_eigendecompose((omega.kernel + omega.kernel.adjoint()) * 0.5);

    const Eigen::Index n = es.dim();
    const double top = es.values.cwiseAbs().maxCoeff();
    const double dead = tol::zero_eig_rel * top;

    Matrix chi_p = Matrix::Zero(n, n);
    Matrix chi_m = Matrix::Zero(n, n);
    Matrix t_p = Matrix::Zero(n, n);
    Matrix t_m = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double lam = es.values(j);
        if (std::abs(lam) <= dead) continue;
        const Matrix proj = es.vectors.col(j) * es.vectors.col(j).adjoint();
        if (lam > 0.0) {
            chi_p += proj;
            t_p += lam * proj;
        } else {
            chi_m += proj;
            t_m += (-lam) * proj;
        }
    }
    return JordanData{t_p, t_m, chi_p, chi_m, t_p + t_m};
}

Functional modulus(const Functional& omega) { return modulus(jordan_decompose(omega)); }

Functional modulus(const JordanData& jd) { return Functional{jd.rho}; }

Functional positive_part(const JordanData& jd) { return Functional{jd.t_plus}; }

Functional negative_part(const JordanData& jd) { return Functional{jd.t_minus}; }

OrthogonalityWitness orthogonality_witness(const Functional& omega, const JordanData& jd) {
    const Functional wp = positive_part(jd);
    const Functional wm = negative_part(jd);
    const Matrix one = Matrix::Identity(omega.dim(), omega.dim());
    return OrthogonalityWitness{jd.chi_plus, std::abs(wp(one - jd.chi_plus)),
                                std::abs(wm(jd.chi_plus))};
}

double grading_residual(const JordanData& jd, const GradedAlgebra& alg,
                        std::span<const Matrix> samples) {
    if (!jd.faithful())
        throw NotFaithful("grading_residual: chi_plus + chi_minus is not the identity");
    const Matrix gp = jd.g_prime();
    double worst = 0.0;
    for (const Matrix& a : samples) {
        const double scale = a.norm();
        if (scale == 0.0) continue;
        worst = std::max(worst, (gp * a * gp - alg.gamma(a)).norm() / scale);
    }
    return worst;
}

std::pair<double, double> sakai_residuals(const Functional& omega, const JordanData& jd,
                                          std::span<const Matrix> samples) {
    const Functional mod = modulus(jd);
    const Matrix gp = jd.g_prime();
    const double t1 = omega.norm();
    double r1 = 0.0, r2 = 0.0;
    for (const Matrix& a : samples) {
        const double scale = a.norm() * t1;
        if (scale == 0.0) continue;
        r1 = std::max(r1, std::abs(mod(a) - omega(a * gp)) / scale);
        r2 = std::max(r2, std::abs(omega(a) - mod(a * gp)) / scale);
    }
    return {r1, r2};
}

CauchySchwarzProbe cauchy_schwarz_probe(const Functional& omega, std::span<const Matrix> samples) {
    const Functional mod = modulus(omega);
    const double nrm = omega.norm();
    CauchySchwarzProbe probe;
    probe.squared_min_slack = std::numeric_limits<double>::infinity();
    for (const Matrix& a : samples) {
        const double an = a.norm();
        if (an == 0.0) continue;
        const double lhs = std::abs(omega(a));
        const double rhs = nrm * std::real(mod(a.adjoint() * a));
        const double scale = nrm * nrm * an * an;
        if (scale > 0.0)
            probe.squared_min_slack = std::min(probe.squared_min_slack, (rhs - lhs * lhs) / scale);
        if (lhs > rhs + 1e-12 * nrm * an * std::max(1.0, an)) ++probe.unsquared_violations;
        ++probe.samples;
    }
    if (probe.samples == 0) probe.squared_min_slack = 0.0;
    return probe;
}

}  // namespace gkms
