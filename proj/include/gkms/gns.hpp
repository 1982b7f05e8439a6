#pragma once

#include "gkms/flow.hpp"
#include "gkms/jordan.hpp"

#include <functional>
#include <span>
#include <vector>

namespace gkms {

/// Antilinear operator stored as (matrix, implicit conjugation): it acts as
/// v -> M conj(v) in the orthonormal GNS basis. Composition order matters
/// and is always spelled out at the call site; (A after B) has matrix
/// M_A conj(M_B) and the conjugations cancel pairwise.
struct AntilinearMap {
    Matrix m;
    Vector apply(const Vector& v) const { return m * v.conjugate(); }
    Matrix apply_cols(const Matrix& v) const { return m * v.conjugate(); }
};

/// GNS space of a positive functional phi(a) = tr(a K) over the matrix
/// algebra M_n. The orthonormal basis is the K-adapted family
/// b_ij = Etil_ij / sqrt(lambda_j), where Etil_ij are matrix units in the
/// eigenbasis of K (ascending eigenvalues, deterministic tie-breaking) and
/// columns with lambda_j below the null threshold are quotiented away.
struct GnsSpace {
    int n = 0;                    // algebra dimension
    int N = 0;                    // Hilbert dimension = n * #kept columns
    Matrix basis;                 // eigenvectors of the kernel
    RealVector lambda;            // all eigenvalues, ascending
    std::vector<int> kept;        // surviving column labels j
    Vector omega_vec;             // coordinates of eta(1)
    Matrix kernel;                // the defining kernel K = |T|
    Matrix gram;                  // <eta(E_ij), eta(E_kl)> over ambient units
    bool faithful = false;

    /// Coordinates of eta(a).
    Vector embed(const Matrix& a) const;
    /// Left multiplication pi(a) as an N x N matrix.
    Matrix pi(const Matrix& a) const;
    /// Right multiplication by y transported to coordinates; y must commute
    /// with the kernel for this to be well defined on the quotient.
    Matrix right_mult(const Matrix& y) const;

    Complex inner(const Vector& u, const Vector& v) const { return u.dot(v); }
};

GnsSpace build_gns(const GradedAlgebra& alg, const Functional& mod_phi);

/// p_pm = right multiplication by chi_pm and the grading operator
/// Gamma = p_plus - p_minus on the GNS space.
struct CommutantProjections {
    Matrix p_plus;
    Matrix p_minus;
    Matrix gamma_op;
};
CommutantProjections commutant_projections(const GnsSpace& gns, const JordanData& jd);

/// Orthogonal projectors onto the four subspaces
/// H^0_pm = span eta(A_even chi_pm), H^1_pm = span eta(A_odd chi_pm).
struct SubspaceSplit {
    Matrix h0_plus;
    Matrix h1_plus;
    Matrix h0_minus;
    Matrix h1_minus;
};
SubspaceSplit subspace_split(const GnsSpace& gns, const GradedAlgebra& alg, const JordanData& jd);

/// The conjugation J eta(a) = eta(alpha_{i/2}(a*)); on the adapted basis it
/// swaps b_ij -> b_ji, so its matrix is the index-transposition permutation.
/// Requires the faithful path and a flow built from the GNS kernel.
AntilinearMap modular_conjugation(const GnsSpace& gns, const ModularFlow& flow);

/// K (coordinate conjugation), the unitary U = K J, and the conjugated
/// graded representation pi'(a) = U pi(a) U*.
struct ConjugateRep {
    AntilinearMap k;
    AntilinearMap j;
    Matrix u;
    Matrix pi_prime(const GnsSpace& gns, const Matrix& a) const;
};
ConjugateRep conjugate_representation(const GnsSpace& gns, const AntilinearMap& j);

/// Max commutator residual of J pi(a) J against pi(b) over sample pairs,
/// relative to the operator norms involved.
double commutant_residual(const GnsSpace& gns, const AntilinearMap& j, const Matrix& a,
                          const Matrix& b);

/// Modular operator Delta eta(a) = eta(K a K^{-1}) for kernel K, and the
/// closure S = J Delta^{1/2} with S eta(a) = eta(a*).
struct ModularOperator {
    Matrix delta;
    AntilinearMap s;
    Matrix delta_power(const GnsSpace& gns, Complex z) const;
};
ModularOperator modular_operator(const GnsSpace& gns, const ModularFlow& flow);

/// A graded representation presented abstractly for the uniqueness check.
struct GradedRep {
    int N = 0;
    std::function<Matrix(const Matrix&)> rep;
    Matrix gamma_op;
    Vector omega;
};

/// Intertwiner V with V pi1(a) Omega1 = pi2(a) Omega2; throws
/// HypothesisViolation when the graded or ungraded expectation values of the
/// two representations disagree on the algebra units.
Matrix intertwiner(const GradedRep& rep1, const GradedRep& rep2, int algebra_dim,
                   double rtol = 1e-10);

}  // namespace gkms
