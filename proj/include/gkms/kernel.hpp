#pragma once

#include "gkms/types.hpp"

#include <vector>

namespace gkms {

/// Eigendecomposition of a self-adjoint matrix, eigenvalues ascending,
/// eigenvector phases and degenerate clusters fixed deterministically.
struct EigenSystem {
    RealVector values;  // ascending
    Matrix vectors;     // unitary, column eigenvectors

    Eigen::Index dim() const { return values.size(); }
    Matrix reconstruct() const {
        return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
    }
    double cond() const;  // max |lambda| / min |lambda|
    bool positive_definite() const {
        const double top = values.cwiseAbs().maxCoeff();
        return top > 0.0 && values.minCoeff() > tol::posdef_rel * top;
    }
};

EigenSystem hermitian_eigendecompose(const Matrix& m);

/// Principal-branch power V diag(lambda^z) V* of a positive definite matrix.
Matrix matrix_power(const EigenSystem& es, Complex z);
Matrix matrix_power(const Matrix& rho, Complex z);

/// Sum of singular values: the functional norm ||tr(. T)|| on a full matrix
/// algebra equals ||T||_1.
double trace_norm(const Matrix& m);

/// Trace over the sites after the first `keep` ones; site_dims must multiply
/// to the matrix dimension.
Matrix partial_trace(const Matrix& m, const std::vector<int>& site_dims, int keep);

/// Frobenius-orthonormal basis of {X : [X, G_i] = [X, G_i*] = 0 for all i},
/// computed as the SVD null space of the stacked maps X -> X G_i - G_i X.
/// `dim` fixes the ambient size when `generators` is empty.
std::vector<Matrix> commutant_basis(const std::vector<Matrix>& generators, int dim);

/// Frobenius distance of `x` from the linear span of `basis`.
double span_distance(const Matrix& x, const std::vector<Matrix>& basis);

}  // namespace gkms
