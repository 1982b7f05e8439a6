#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace gkms {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Error taxonomy shared by all modules. Every precondition failure throws a
// subtype so callers can route negative-control scenarios explicitly.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NonHermitian : Error { using Error::Error; };
struct SingularDensity : Error { using Error::Error; };
struct OddDensity : Error { using Error::Error; };
struct NotSelfAdjoint : Error { using Error::Error; };
struct NotFaithful : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct InconsistentInputs : Error { using Error::Error; };
struct FlowMismatch : Error { using Error::Error; };
struct NonUnitary : Error { using Error::Error; };
struct HypothesisViolation : Error { using Error::Error; };
struct RegionOutOfRange : Error { using Error::Error; };
struct BudgetZero : Error { using Error::Error; };
struct NonpositiveSigma : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// All tolerances are relative to a stated scale (Frobenius or trace norm of
// the inputs); absolute thresholds are never used.
namespace tol {
inline constexpr double hermitian_rel = 1e-10;   // ||M - M*|| / ||M||
inline constexpr double eig_recon_rel = 1e-12;   // eigendecomposition residual
inline constexpr double posdef_rel = 1e-14;      // min/max eigenvalue ratio
inline constexpr double cluster_rel = 1e-10;     // degenerate-cluster gap x diameter
inline constexpr double nullspace_rel = 1e-10;   // singular values below s_max x this
inline constexpr double zero_eig_rel = 1e-12;    // sign-split dead zone x max|lambda|
inline constexpr double even_rel = 1e-12;        // ||g rho g - rho|| / ||rho||
inline constexpr double cond_guard = 1e6;        // scenario rejection threshold
}  // namespace tol

inline double frobenius(const Matrix& m) { return m.norm(); }

inline bool is_hermitian(const Matrix& m, double rtol = tol::hermitian_rel) {
    if (m.rows() != m.cols()) return false;
    const double scale = m.norm();
    if (scale == 0.0) return true;
    return (m - m.adjoint()).norm() <= rtol * scale;
}

inline void require_square(const Matrix& m, const char* where) {
    if (m.rows() != m.cols())
        throw DimensionMismatch(std::string(where) + ": matrix is " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + ", expected square");
}

inline void require_dim(const Matrix& m, Eigen::Index n, const char* where) {
    if (m.rows() != n || m.cols() != n)
        throw DimensionMismatch(std::string(where) + ": expected " + std::to_string(n) + "x" +
                                std::to_string(n) + ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
}

// Kronecker product, row-major index convention: (i1 i2, j1 j2).
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace gkms
