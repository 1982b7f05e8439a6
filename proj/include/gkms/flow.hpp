#pragma once

#include "gkms/algebra.hpp"
#include "gkms/kernel.hpp"

#include <functional>
#include <span>
#include <vector>

namespace gkms {

/// One-parameter automorphism group of a positive definite density rho,
/// alpha_z(a) = rho^{-iz} a rho^{iz}, together with its entire continuation.
/// In the rho eigenbasis entry (j,k) picks up exp(i z (E_j - E_k)) with the
/// modular energies E_j = -ln lambda_j; alpha_i(a) = rho a rho^{-1}.
struct ModularFlow {
    Matrix rho;
    EigenSystem eig;
    RealVector energies;

    static ModularFlow from_density(const Matrix& rho);

    Eigen::Index dim() const { return rho.rows(); }
    double cond() const { return eig.cond(); }
    bool is_even(const GradedAlgebra& alg) const { return alg.is_even(rho); }

    Matrix evolve(const Matrix& a, Complex z) const;

    /// Gaussian-smoothed analytic element a_{sigma,z}; closed form in the
    /// eigenbasis, entry (j,k) multiplied by
    /// exp(i z (E_j - E_k)) exp(-sigma^2 (E_j - E_k)^2 / 4).
    Matrix smooth(const Matrix& a, double sigma, Complex z) const;

    /// The same element computed from the defining time integral by
    /// Gauss-Hermite quadrature on a contour through Re z; the closed form
    /// above is its oracle.
    Matrix smooth_quadrature(const Matrix& a, double sigma, Complex z, int nodes = 64) const;
};

/// |omega(ab) - omega(gamma(b) alpha_i(a))| / scale with
/// scale = ||a|| ||b|| ||T||_1 max(1, cond(rho)).
double graded_kms_residual(const Functional& omega, const ModularFlow& flow,
                           const GradedAlgebra& alg, const Matrix& a, const Matrix& b);

/// Ungraded counterpart |phi(ab) - phi(b alpha_i(a))| / scale for positive phi.
double kms_residual(const Functional& phi, const ModularFlow& flow, const Matrix& a,
                    const Matrix& b);

/// F_{a,b}(z) = omega(a alpha_z(b)), entire in finite dimension with
/// graded-KMS boundary values on the unit strip.
Complex strip_function(const Functional& omega, const ModularFlow& flow, const Matrix& a,
                       const Matrix& b, Complex z);

/// Minimal polynomial growth certificate |F(t+is)| <= C (1+|t|)^N on a
/// sampled grid over the unit strip.
struct GrowthEstimate {
    double C = 0.0;
    int N = 0;
    std::vector<double> grid;  // sampled |F| values
};
GrowthEstimate growth_probe(const std::function<Complex(Complex)>& f, double t_max, int nt,
                            int ns);

/// Precomputed alpha_i(a) for sweep loops.
Matrix analytic_rotate(const ModularFlow& flow, const Matrix& a);

}  // namespace gkms
