#include "gkms/algebra.hpp"

#include "gkms/kernel.hpp"

namespace gkms {

GradedAlgebra::GradedAlgebra(int even_dim, int odd_dim) : n_plus(even_dim), n_minus(odd_dim) {
    if (even_dim < 0 || odd_dim < 0 || even_dim + odd_dim < 1)
        throw DimensionMismatch("GradedAlgebra: sector dimensions must be nonnegative, total >= 1");
    const int n = even_dim + odd_dim;
    g_ = Matrix::Identity(n, n);
    for (int k = n_plus; k < n; ++k) g_(k, k) = -1.0;
}

GradedAlgebra::GradedAlgebra(const std::vector<int>& signs) {
    if (signs.empty()) throw DimensionMismatch("GradedAlgebra: empty sign pattern");
    const int n = static_cast<int>(signs.size());
    g_ = Matrix::Identity(n, n);
    for (int k = 0; k < n; ++k) {
        if (signs[static_cast<std::size_t>(k)] == 1) {
            ++n_plus;
        } else if (signs[static_cast<std::size_t>(k)] == -1) {
            g_(k, k) = -1.0;
            ++n_minus;
        } else {
            throw DimensionMismatch("GradedAlgebra: sign pattern entries must be +1 or -1");
        }
    }
}

Matrix GradedAlgebra::gamma(const Matrix& a) const {
    require_dim(a, dim(), "gamma");
    return g_ * a * g_;
}

std::pair<Matrix, Matrix> GradedAlgebra::parity_split(const Matrix& a) const {
    require_dim(a, dim(), "parity_split");
    const Matrix twisted = g_ * a * g_;
    return {(a + twisted) * 0.5, (a - twisted) * 0.5};
}

bool GradedAlgebra::is_even(const Matrix& a, double rtol) const {
    require_dim(a, dim(), "is_even");
    const double scale = a.norm();
    if (scale == 0.0) return true;
    return (g_ * a * g_ - a).norm() <= rtol * scale;
}

Matrix GradedAlgebra::unit(int i, int j) const {
    Matrix e = Matrix::Zero(dim(), dim());
    e(i, j) = 1.0;
    return e;
}

Complex Functional::operator()(const Matrix& a) const {
    require_dim(a, kernel.rows(), "Functional::operator()");
    return (a * kernel).trace();
}

double Functional::norm() const { return trace_norm(kernel); }

bool Functional::is_self_adjoint(double rtol) const { return is_hermitian(kernel, rtol); }

bool Functional::is_even(const GradedAlgebra& alg, double rtol) const {
    return alg.is_even(kernel, rtol);
}

Functional supertrace_functional(const GradedAlgebra& alg, const Matrix& rho) {
    require_dim(rho, alg.dim(), "supertrace_functional");
    const double scale = rho.norm();
    if (scale == 0.0 || (alg.g() * rho * alg.g() - rho).norm() > tol::even_rel * scale)
        throw OddDensity("supertrace_functional: density is not even");
    const EigenSystem es = hermitian_eigendecompose(rho);
    if (!es.positive_definite())
        throw SingularDensity("supertrace_functional: density is not positive definite");
    return Functional{alg.g() * rho};
}

}  // namespace gkms
