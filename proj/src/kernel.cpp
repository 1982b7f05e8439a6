#include "gkms/kernel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gkms {

double EigenSystem::cond() const {
    const double lo = values.cwiseAbs().minCoeff();
    const double hi = values.cwiseAbs().maxCoeff();
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

namespace {

// Rotate each column so its largest-magnitude entry (lowest index on ties)
// is real and positive. Keeps repeated runs and rebuilt clusters bit-stable.
void canonicalize_phases(Matrix& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const double a = std::abs(v(r, c));
            if (a > best * (1.0 + 1e-12)) {
                best = a;
                pivot = r;
            }
        }
        if (best <= 0.0) continue;
        const Complex ph = v(pivot, c) / best;
        v.col(c) *= std::conj(ph);
    }
}

// Replace the eigenvector block of a degenerate cluster by the pivoted
// Gram-Schmidt orthonormalization of the standard basis projected onto the
// cluster subspace. The projector of an even matrix is even, so the repaired
// vectors stay inside one grading sector whenever the input does.
void repair_cluster(Matrix& v, Eigen::Index first, Eigen::Index count) {
    const Eigen::Index n = v.rows();
    const Matrix block = v.middleCols(first, count);
    const Matrix proj = block * block.adjoint();

    std::vector<Vector> pool(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) pool[static_cast<std::size_t>(k)] = proj.col(k);

    Matrix repaired(n, count);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (Eigen::Index c = 0; c < count; ++c) {
        Eigen::Index pick = -1;
        double best = -1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (used[static_cast<std::size_t>(k)]) continue;
            const double nn = pool[static_cast<std::size_t>(k)].norm();
            if (nn > best * (1.0 + 1e-12)) {
                best = nn;
                pick = k;
            }
        }
        Vector q = pool[static_cast<std::size_t>(pick)] / best;
        used[static_cast<std::size_t>(pick)] = true;
        repaired.col(c) = q;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (used[static_cast<std::size_t>(k)]) continue;
            auto& w = pool[static_cast<std::size_t>(k)];
            w -= q * q.dot(w);
        }
    }
    v.middleCols(first, count) = repaired;
}

}  // namespace

EigenSystem hermitian_eigendecompose(const Matrix& m) {
    require_square(m, "hermitian_eigendecompose");
    const double scale = m.norm();
    if (scale > 0.0 && (m - m.adjoint()).norm() > tol::hermitian_rel * scale)
        throw NonHermitian("hermitian_eigendecompose: input is not self-adjoint");

    Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint()) * 0.5);
    if (solver.info() != Eigen::Success)
        throw Error("hermitian_eigendecompose: solver failed to converge");

    EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};

    const Eigen::Index n = es.dim();
    const double diameter = n > 0 ? es.values(n - 1) - es.values(0) : 0.0;
    const double gap_tol = tol::cluster_rel * diameter;
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start;
        while (end + 1 < n && es.values(end + 1) - es.values(end) <= gap_tol) ++end;
        if (end > start) repair_cluster(es.vectors, start, end - start + 1);
        start = end + 1;
    }
    canonicalize_phases(es.vectors);
    return es;
}

Matrix matrix_power(const EigenSystem& es, Complex z) {
    if (!es.positive_definite())
        throw SingularDensity("matrix_power: spectrum is not strictly positive");
    if (z == Complex(0.0, 0.0)) return Matrix::Identity(es.dim(), es.dim());
    Vector powered(es.dim());
    for (Eigen::Index j = 0; j < es.dim(); ++j)
        powered(j) = std::exp(z * std::log(es.values(j)));
    return es.vectors * powered.asDiagonal() * es.vectors.adjoint();
}

Matrix matrix_power(const Matrix& rho, Complex z) {
    return matrix_power(hermitian_eigendecompose(rho), z);
}

double trace_norm(const Matrix& m) {
    require_square(m, "trace_norm");
    if (m.norm() == 0.0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& site_dims, int keep) {
    require_square(m, "partial_trace");
    long total = 1;
    for (int d : site_dims) {
        if (d <= 0) throw DimensionMismatch("partial_trace: nonpositive site dimension");
        total *= d;
    }
    if (total != m.rows())
        throw DimensionMismatch("partial_trace: site dimensions do not factor the matrix");
    if (keep < 0 || keep > static_cast<int>(site_dims.size()))
        throw DimensionMismatch("partial_trace: keep index out of range");

    long dk = 1, dt = 1;
    for (int s = 0; s < keep; ++s) dk *= site_dims[static_cast<std::size_t>(s)];
    for (std::size_t s = static_cast<std::size_t>(keep); s < site_dims.size(); ++s)
        dt *= site_dims[s];

    Matrix out = Matrix::Zero(dk, dk);
    for (long i = 0; i < dk; ++i)
        for (long j = 0; j < dk; ++j) {
            Complex acc = 0.0;
            for (long t = 0; t < dt; ++t) acc += m(i * dt + t, j * dt + t);
            out(i, j) = acc;
        }
    return out;
}

std::vector<Matrix> commutant_basis(const std::vector<Matrix>& generators, int dim) {
    const Eigen::Index n = dim;
    if (n <= 0) throw DimensionMismatch("commutant_basis: nonpositive dimension");
    for (const Matrix& g : generators) require_dim(g, n, "commutant_basis");

    const Eigen::Index nn = n * n;
    std::vector<Matrix> basis;
    if (generators.empty()) {
        basis.reserve(static_cast<std::size_t>(nn));
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                Matrix e = Matrix::Zero(n, n);
                e(i, j) = 1.0;
                basis.push_back(std::move(e));
            }
        return basis;
    }

    // vec(XG - GX) = (G^T (x) I - I (x) G) vec(X), row-major vec convention.
    Matrix stacked(2 * static_cast<Eigen::Index>(generators.size()) * nn, nn);
    const Matrix id = Matrix::Identity(n, n);
    Eigen::Index row = 0;
    for (const Matrix& g : generators) {
        stacked.middleRows(row, nn) = kron(id, g.transpose()) - kron(g, id);
        row += nn;
        const Matrix ga = g.adjoint();
        stacked.middleRows(row, nn) = kron(id, ga.transpose()) - kron(ga, id);
        row += nn;
    }

    Eigen::BDCSVD<Matrix> svd(stacked, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? sv(0) * tol::nullspace_rel : 0.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;

    const Matrix v = svd.matrixV();
    for (Eigen::Index c = rank; c < v.cols(); ++c) {
        Matrix x(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) x(i, j) = v(i * n + j, c);
        x /= x.norm();
        basis.push_back(std::move(x));
    }
    return basis;
}

double span_distance(const Matrix& x, const std::vector<Matrix>& basis) {
    Matrix residual = x;
    for (const Matrix& b : basis) {
        const Complex coeff = (b.adjoint() * residual).trace();
        residual -= coeff * b;
    }
    return residual.norm();
}

}  // namespace gkms
