#include "gkms/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gkms {

namespace {
constexpr Complex kImag{0.0, 1.0};

// Gauss-Hermite nodes/weights for weight exp(-x^2) via the Golub-Welsch
// tridiagonal; deterministic because the eigensolver below is.
void gauss_hermite(int n, RealVector& nodes, RealVector& weights) {
    Matrix jac = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double off = std::sqrt(k / 2.0);
        jac(k - 1, k) = off;
        jac(k, k - 1) = off;
    }
    const EigenSystem es = hermitian_eigendecompose(jac);
    nodes = es.values;
    weights.resize(n);
    const double sqrt_pi = std::sqrt(M_PI);
    for (int k = 0; k < n; ++k) weights(k) = sqrt_pi * std::norm(es.vectors(0, k));
}
}  // namespace

ModularFlow ModularFlow::from_density(const Matrix& density) {
    require_square(density, "ModularFlow");
    EigenSystem es = hermitian_eigendecompose(density);
    if (!es.positive_definite())
        throw SingularDensity("ModularFlow: density is not positive definite");
    RealVector energies(es.dim());
    for (Eigen::Index j = 0; j < es.dim(); ++j) energies(j) = -std::log(es.values(j));
    return ModularFlow{density, std::move(es), std::move(energies)};
}

Matrix ModularFlow::evolve(const Matrix& a, Complex z) const {
    require_dim(a, dim(), "evolve");
    if (z == Complex(0.0, 0.0)) return a;
    Matrix tilde = eig.vectors.adjoint() * a * eig.vectors;
    for (Eigen::Index j = 0; j < dim(); ++j)
        for (Eigen::Index k = 0; k < dim(); ++k)
            tilde(j, k) *= std::exp(kImag * z * (energies(j) - energies(k)));
    return eig.vectors * tilde * eig.vectors.adjoint();
}

Matrix ModularFlow::smooth(const Matrix& a, double sigma, Complex z) const {
    require_dim(a, dim(), "smooth");
    if (!(sigma > 0.0)) throw NonpositiveSigma("smooth: sigma must be positive");
    Matrix tilde = eig.vectors.adjoint() * a * eig.vectors;
    for (Eigen::Index j = 0; j < dim(); ++j)
        for (Eigen::Index k = 0; k < dim(); ++k) {
            const double d = energies(j) - energies(k);
            tilde(j, k) *= std::exp(kImag * z * d) * std::exp(-sigma * sigma * d * d / 4.0);
        }
    return eig.vectors * tilde * eig.vectors.adjoint();
}

Matrix ModularFlow::smooth_quadrature(const Matrix& a, double sigma, Complex z, int nodes) const {
    require_dim(a, dim(), "smooth_quadrature");
    if (!(sigma > 0.0)) throw NonpositiveSigma("smooth_quadrature: sigma must be positive");
    RealVector x, w;
    gauss_hermite(nodes, x, w);

    // Substituting t = Re z + sigma x in the defining integral leaves the
    // weight exp(-x^2) and the prefactor exp((Im z)^2 / sigma^2).
    const double xi = z.real();
    const double theta = z.imag();
    Matrix acc = Matrix::Zero(dim(), dim());
    for (int m = 0; m < nodes; ++m) {
        const Complex phase = std::exp(kImag * (2.0 * x(m) * theta / sigma));
        acc += (w(m) * phase) * evolve(a, Complex(xi + sigma * x(m), 0.0));
    }
    return (std::exp(theta * theta / (sigma * sigma)) / std::sqrt(M_PI)) * acc;
}

Matrix analytic_rotate(const ModularFlow& flow, const Matrix& a) {
    return flow.evolve(a, kImag);
}

namespace {
double pair_scale(const Functional& f, const ModularFlow& flow, const Matrix& a,
                  const Matrix& b) {
    return a.norm() * b.norm() * f.norm() * std::max(1.0, flow.cond());
}
}  // namespace

double graded_kms_residual(const Functional& omega, const ModularFlow& flow,
                           const GradedAlgebra& alg, const Matrix& a, const Matrix& b) {
    require_dim(a, flow.dim(), "graded_kms_residual");
    require_dim(b, flow.dim(), "graded_kms_residual");
    const double scale = pair_scale(omega, flow, a, b);
    if (scale == 0.0) return 0.0;
    const Complex lhs = omega(a * b);
    const Complex rhs = omega(alg.gamma(b) * analytic_rotate(flow, a));
    return std::abs(lhs - rhs) / scale;
}

double kms_residual(const Functional& phi, const ModularFlow& flow, const Matrix& a,
                    const Matrix& b) {
    require_dim(a, flow.dim(), "kms_residual");
    require_dim(b, flow.dim(), "kms_residual");
    const double scale = pair_scale(phi, flow, a, b);
    if (scale == 0.0) return 0.0;
    const Complex lhs = phi(a * b);
    const Complex rhs = phi(b * analytic_rotate(flow, a));
    return std::abs(lhs - rhs) / scale;
}

Complex strip_function(const Functional& omega, const ModularFlow& flow, const Matrix& a,
                       const Matrix& b, Complex z) {
    require_dim(a, flow.dim(), "strip_function");
    require_dim(b, flow.dim(), "strip_function");
    return omega(a * flow.evolve(b, z));
}

GrowthEstimate growth_probe(const std::function<Complex(Complex)>& f, double t_max, int nt,
                            int ns) {
    GrowthEstimate est;
    nt = std::max(nt, 13);
    ns = std::max(ns, 2);
    est.grid.reserve(static_cast<std::size_t>(nt) * static_cast<std::size_t>(ns));

    std::vector<std::pair<double, double>> samples;  // (|t|, |F|)
    for (int i = 0; i < nt; ++i) {
        const double t = -t_max + 2.0 * t_max * i / (nt - 1);
        for (int j = 0; j < ns; ++j) {
            const double s = static_cast<double>(j) / (ns - 1);
            const double v = std::abs(f(Complex(t, s)));
            est.grid.push_back(v);
            samples.emplace_back(std::abs(t), v);
        }
    }

    // Fit the polynomial order from band maxima: slope of log(max |F| in
    // band) against log(1 + t). Band-wise maxima make the fit insensitive to
    // oscillation and beating, which a window-max comparison is not.
    constexpr int bands = 6;
    double xs[bands], ys[bands];
    int used = 0;
    for (int b = 0; b < bands; ++b) {
        const double lo = t_max * b / bands;
        const double hi = t_max * (b + 1) / bands;
        double peak = 0.0;
        for (const auto& [t, v] : samples)
            if (t >= lo && t <= hi) peak = std::max(peak, v);
        if (peak <= 0.0) continue;
        xs[used] = std::log(1.0 + 0.5 * (lo + hi));
        ys[used] = std::log(peak);
        ++used;
    }
    double slope = 0.0;
    if (used >= 2) {
        double mx = 0.0, my = 0.0;
        for (int b = 0; b < used; ++b) {
            mx += xs[b];
            my += ys[b];
        }
        mx /= used;
        my /= used;
        double sxx = 0.0, sxy = 0.0;
        for (int b = 0; b < used; ++b) {
            sxx += (xs[b] - mx) * (xs[b] - mx);
            sxy += (xs[b] - mx) * (ys[b] - my);
        }
        if (sxx > 0.0) slope = sxy / sxx;
    }
    est.N = std::max(0, std::min(16, static_cast<int>(std::lround(slope))));

    double c = 0.0;
    for (const auto& [t, v] : samples) c = std::max(c, v / std::pow(1.0 + t, est.N));
    est.C = c;
    return est;
}

}  // namespace gkms
