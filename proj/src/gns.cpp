#include "gkms/gns.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace gkms {

namespace {

Matrix orthonormal_projector(const std::vector<Vector>& vecs, Eigen::Index dim) {
    if (vecs.empty()) return Matrix::Zero(dim, dim);
    Matrix stack(dim, static_cast<Eigen::Index>(vecs.size()));
    for (std::size_t c = 0; c < vecs.size(); ++c) stack.col(static_cast<Eigen::Index>(c)) = vecs[c];
    Eigen::BDCSVD<Matrix> svd(stack, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? sv(0) * tol::nullspace_rel : 0.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    const Matrix q = svd.matrixU().leftCols(rank);
    return q * q.adjoint();
}

}  // namespace

Vector GnsSpace::embed(const Matrix& a) const {
    require_dim(a, n, "GnsSpace::embed");
    const Matrix tilde = basis.adjoint() * a * basis;
    const auto k = static_cast<Eigen::Index>(kept.size());
    Vector coords(N);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index c = 0; c < k; ++c)
            coords(i * k + c) = tilde(i, kept[static_cast<std::size_t>(c)]) *
                                std::sqrt(lambda(kept[static_cast<std::size_t>(c)]));
    return coords;
}

Matrix GnsSpace::pi(const Matrix& a) const {
    require_dim(a, n, "GnsSpace::pi");
    const Matrix tilde = basis.adjoint() * a * basis;
    const auto k = static_cast<Eigen::Index>(kept.size());
    return kron(tilde, Matrix::Identity(k, k));
}

Matrix GnsSpace::right_mult(const Matrix& y) const {
    require_dim(y, n, "GnsSpace::right_mult");
    const Matrix tilde = basis.adjoint() * y * basis;
    const auto k = static_cast<Eigen::Index>(kept.size());
    Matrix s(k, k);
    for (Eigen::Index ck = 0; ck < k; ++ck)
        for (Eigen::Index cj = 0; cj < k; ++cj) {
            const int jj = kept[static_cast<std::size_t>(cj)];
            const int jk = kept[static_cast<std::size_t>(ck)];
            s(ck, cj) = tilde(jj, jk) * std::sqrt(lambda(jk) / lambda(jj));
        }
    return kron(Matrix::Identity(n, n), s);
}

GnsSpace build_gns(const GradedAlgebra& alg, const Functional& mod_phi) {
    const int n = alg.dim();
    require_dim(mod_phi.kernel, n, "build_gns");
    const EigenSystem es = hermitian_eigendecompose(mod_phi.kernel);
    const double top = es.values.maxCoeff();
    if (top <= 0.0) throw NotPositive("build_gns: kernel is zero or negative");
    if (es.values.minCoeff() < -tol::nullspace_rel * top)
        throw NotPositive("build_gns: kernel has a negative eigenvalue");

    GnsSpace gns;
    gns.n = n;
    gns.basis = es.vectors;
    gns.lambda = es.values;
    for (int j = 0; j < n; ++j)
        if (es.values(j) > tol::nullspace_rel * top) gns.kept.push_back(j);
    gns.N = n * static_cast<int>(gns.kept.size());
    gns.faithful = static_cast<int>(gns.kept.size()) == n;
    gns.kernel = mod_phi.kernel;
    gns.omega_vec = gns.embed(Matrix::Identity(n, n));

    // gram[(i,j),(k,l)] = |omega|(E_ij* E_kl) = delta_ik kernel(l, j)
    gns.gram = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                gns.gram(i * n + j, i * n + l) = mod_phi.kernel(l, j);
    return gns;
}

CommutantProjections commutant_projections(const GnsSpace& gns, const JordanData& jd) {
    require_dim(jd.chi_plus, gns.n, "commutant_projections");
    const Matrix p_plus = gns.right_mult(jd.chi_plus);
    const Matrix p_minus = gns.right_mult(jd.chi_minus);

    const double scale = trace_norm(gns.kernel);
    const Functional wp = positive_part(jd);
    const Functional wm = negative_part(jd);
    for (int i = 0; i < gns.n; ++i)
        for (int j = 0; j < gns.n; ++j) {
            const Matrix e = GradedAlgebra(gns.n, 0).unit(i, j);
            const Complex lhs_p = wp(e);
            const Complex rhs_p = gns.inner(gns.omega_vec, gns.pi(e) * (p_plus * gns.omega_vec));
            const Complex lhs_m = wm(e);
            const Complex rhs_m = gns.inner(gns.omega_vec, gns.pi(e) * (p_minus * gns.omega_vec));
            if (std::abs(lhs_p - rhs_p) > 1e-9 * scale || std::abs(lhs_m - rhs_m) > 1e-9 * scale)
                throw InconsistentInputs(
                    "commutant_projections: jordan data does not match the GNS kernel");
        }
    return CommutantProjections{p_plus, p_minus, p_plus - p_minus};
}

SubspaceSplit subspace_split(const GnsSpace& gns, const GradedAlgebra& alg, const JordanData& jd) {
    if (alg.dim() != gns.n)
        throw InconsistentInputs("subspace_split: algebra dimension mismatch");
    require_dim(jd.chi_plus, gns.n, "subspace_split");

    std::vector<Vector> e0p, e1p, e0m, e1m;
    for (int r = 0; r < gns.n; ++r)
        for (int s = 0; s < gns.n; ++s) {
            const Matrix u = alg.unit(r, s);
            const auto [even, odd] = alg.parity_split(u);
            if (even.norm() > 0.5) {
                e0p.push_back(gns.embed(even * jd.chi_plus));
                e0m.push_back(gns.embed(even * jd.chi_minus));
            } else {
                e1p.push_back(gns.embed(odd * jd.chi_plus));
                e1m.push_back(gns.embed(odd * jd.chi_minus));
            }
        }
    return SubspaceSplit{orthonormal_projector(e0p, gns.N), orthonormal_projector(e1p, gns.N),
                         orthonormal_projector(e0m, gns.N), orthonormal_projector(e1m, gns.N)};
}

AntilinearMap modular_conjugation(const GnsSpace& gns, const ModularFlow& flow) {
    if (!gns.faithful)
        throw NotFaithful("modular_conjugation: quotient path has no modular conjugation");
    if (flow.dim() != gns.n || (flow.rho - gns.kernel).norm() > 1e-11 * gns.kernel.norm())
        throw FlowMismatch("modular_conjugation: flow density differs from the GNS kernel");
    const int n = gns.n;
    Matrix m = Matrix::Zero(gns.N, gns.N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(j * n + i, i * n + j) = 1.0;
    return AntilinearMap{std::move(m)};
}

Matrix ConjugateRep::pi_prime(const GnsSpace& gns, const Matrix& a) const {
    return u * gns.pi(a) * u.adjoint();
}

ConjugateRep conjugate_representation(const GnsSpace& gns, const AntilinearMap& j) {
    if (j.m.rows() != gns.N)
        throw FlowMismatch("conjugate_representation: conjugation does not match the GNS space");
    AntilinearMap k{Matrix::Identity(gns.N, gns.N)};
    Matrix u = k.m * j.m.conjugate();
    if ((u.adjoint() * u - Matrix::Identity(gns.N, gns.N)).norm() > 1e-11 * std::sqrt(gns.N))
        throw NonUnitary("conjugate_representation: K J is not unitary");
    return ConjugateRep{std::move(k), j, std::move(u)};
}

double commutant_residual(const GnsSpace& gns, const AntilinearMap& j, const Matrix& a,
                          const Matrix& b) {
    const Matrix pa = gns.pi(a);
    const Matrix pb = gns.pi(b);
    // J pi(a) J as a linear operator: v -> M_J conj(pi(a)) conj(M_J) v.
    const Matrix mirrored = j.m * pa.conjugate() * j.m.conjugate();
    const double scale = mirrored.norm() * pb.norm();
    if (scale == 0.0) return 0.0;
    return (mirrored * pb - pb * mirrored).norm() / scale;
}

Matrix ModularOperator::delta_power(const GnsSpace& gns, Complex z) const {
    const auto k = static_cast<Eigen::Index>(gns.kept.size());
    Vector d(gns.N);
    for (Eigen::Index i = 0; i < gns.n; ++i)
        for (Eigen::Index c = 0; c < k; ++c) {
            const double ratio =
                gns.lambda(i) / gns.lambda(gns.kept[static_cast<std::size_t>(c)]);
            d(i * k + c) = std::exp(z * std::log(ratio));
        }
    return d.asDiagonal();
}

ModularOperator modular_operator(const GnsSpace& gns, const ModularFlow& flow) {
    if (!gns.faithful)
        throw NotFaithful("modular_operator: quotient path has no modular operator");
    if (flow.dim() != gns.n || (flow.rho - gns.kernel).norm() > 1e-11 * gns.kernel.norm())
        throw FlowMismatch("modular_operator: flow density differs from the GNS kernel");

    ModularOperator mo;
    mo.delta = Matrix::Zero(gns.N, gns.N);
    for (int i = 0; i < gns.n; ++i)
        for (int j = 0; j < gns.n; ++j)
            mo.delta(i * gns.n + j, i * gns.n + j) = gns.lambda(i) / gns.lambda(j);
    const AntilinearMap j = modular_conjugation(gns, flow);
    mo.s = AntilinearMap{j.m * mo.delta_power(gns, Complex(0.5, 0.0))};
    return mo;
}

Matrix intertwiner(const GradedRep& rep1, const GradedRep& rep2, int algebra_dim, double rtol) {
    const int n = algebra_dim;
    const double omega_norm = rep1.omega.norm();
    const double scale = std::max(omega_norm * omega_norm, 1e-300);

    Matrix x1(rep1.N, n * n), x2(rep2.N, n * n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            Matrix e = Matrix::Zero(n, n);
            e(r, s) = 1.0;
            const Matrix m1 = rep1.rep(e);
            const Matrix m2 = rep2.rep(e);
            const Complex graded1 = rep1.omega.dot(rep1.gamma_op * (m1 * rep1.omega));
            const Complex graded2 = rep2.omega.dot(rep2.gamma_op * (m2 * rep2.omega));
            const Complex plain1 = rep1.omega.dot(m1 * rep1.omega);
            const Complex plain2 = rep2.omega.dot(m2 * rep2.omega);
            if (std::abs(graded1 - graded2) > rtol * scale ||
                std::abs(plain1 - plain2) > rtol * scale)
                throw HypothesisViolation(
                    "intertwiner: expectation values of the two representations disagree");
            x1.col(r * n + s) = m1 * rep1.omega;
            x2.col(r * n + s) = m2 * rep2.omega;
        }
    return x2 * x1.completeOrthogonalDecomposition().pseudoInverse();
}

}  // namespace gkms
