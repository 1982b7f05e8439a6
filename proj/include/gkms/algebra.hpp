#pragma once

#include "gkms/types.hpp"

#include <utility>
#include <vector>

namespace gkms {

/// Finite-dimensional matrix algebra with a Z2 grading. The basis is ordered
/// so the grading involution is g = diag(+1..+1, -1..-1): even elements are
/// block diagonal, odd elements block off-diagonal. n_minus = 0 degenerates
/// to an ungraded algebra with gamma = identity.
struct GradedAlgebra {
    int n_plus = 0;
    int n_minus = 0;

    GradedAlgebra(int even_dim, int odd_dim);

    /// Grading with an explicit diagonal sign pattern (+1/-1 entries), as
    /// produced by tensor products of graded sites.
    explicit GradedAlgebra(const std::vector<int>& signs);

    int dim() const { return static_cast<int>(g_.rows()); }
    const Matrix& g() const { return g_; }

    /// a -> g a g, the grading *-automorphism.
    Matrix gamma(const Matrix& a) const;

    /// (even part, odd part): a = a_plus + a_minus with g a_pm g = pm a_pm.
    std::pair<Matrix, Matrix> parity_split(const Matrix& a) const;

    bool is_even(const Matrix& a, double rtol = tol::even_rel) const;

    /// Matrix unit E_ij of the ambient algebra.
    Matrix unit(int i, int j) const;

private:
    Matrix g_;
};

/// Linear functional omega(a) = tr(a T). Self-adjoint iff T = T*, even iff
/// g T g = T; the functional norm is the trace norm of T.
struct Functional {
    Matrix kernel;  // T

    Complex operator()(const Matrix& a) const;
    double norm() const;
    bool is_self_adjoint(double rtol = tol::hermitian_rel) const;
    bool is_even(const GradedAlgebra& alg, double rtol = tol::even_rel) const;
    Eigen::Index dim() const { return kernel.rows(); }
};

/// The regularized-supertrace functional a -> tr(g a rho) = tr(a g rho) for a
/// positive definite even rho; its kernel is T = g rho.
Functional supertrace_functional(const GradedAlgebra& alg, const Matrix& rho);

}  // namespace gkms
