#include "gkms/net.hpp"

#include "gkms/rng.hpp"
#include "gkms/scan.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>

namespace gkms {

namespace {

// Trace out every site except `site`.
Matrix reduce_to_site(const Matrix& m, const std::vector<int>& dims, int site) {
    long pre = 1, post = 1;
    for (int s = 0; s < site; ++s) pre *= dims[static_cast<std::size_t>(s)];
    for (std::size_t s = static_cast<std::size_t>(site) + 1; s < dims.size(); ++s) post *= dims[s];
    const long d = dims[static_cast<std::size_t>(site)];

    Matrix out = Matrix::Zero(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            Complex acc = 0.0;
            for (long p = 0; p < pre; ++p)
                for (long q = 0; q < post; ++q)
                    acc += m((p * d + i) * post + q, (p * d + j) * post + q);
            out(i, j) = acc;
        }
    return out;
}

Matrix orthonormal_columns(const std::vector<Vector>& vecs, Eigen::Index dim) {
    Matrix stack(dim, static_cast<Eigen::Index>(vecs.size()));
    for (std::size_t c = 0; c < vecs.size(); ++c) stack.col(static_cast<Eigen::Index>(c)) = vecs[c];
    Eigen::BDCSVD<Matrix> svd(stack, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? sv(0) * tol::nullspace_rel : 0.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return svd.matrixU().leftCols(rank);
}

}  // namespace

std::vector<int> chain_grading_signs(const std::vector<SiteSpec>& sites, int k) {
    const std::size_t limit = k < 0 ? sites.size() : static_cast<std::size_t>(k);
    std::vector<int> signs{1};
    for (std::size_t s = 0; s < limit && s < sites.size(); ++s) {
        std::vector<int> site_signs;
        site_signs.insert(site_signs.end(), static_cast<std::size_t>(sites[s].plus), 1);
        site_signs.insert(site_signs.end(), static_cast<std::size_t>(sites[s].minus), -1);
        std::vector<int> next;
        next.reserve(signs.size() * site_signs.size());
        for (int a : signs)
            for (int b : site_signs) next.push_back(a * b);
        signs.swap(next);
    }
    return signs;
}

int LocalNet::region_dim(int k) const {
    int d = 1;
    for (int s = 0; s < k; ++s) d *= site_dims[static_cast<std::size_t>(s)];
    return d;
}

Matrix LocalNet::embed(const Matrix& a, int k) const {
    const int dk = region_dim(k);
    require_dim(a, dk, "LocalNet::embed");
    return kron(a, Matrix::Identity(dim() / dk, dim() / dk));
}

Matrix LocalNet::compress(const Matrix& x, int k) const {
    require_dim(x, dim(), "LocalNet::compress");
    const int dk = region_dim(k);
    const double rest = static_cast<double>(dim() / dk);
    std::vector<int> dims(site_dims.begin(), site_dims.end());
    return partial_trace(x, dims, k) / rest;
}

LocalNet build_chain(const std::vector<SiteSpec>& sites, const Matrix& rho) {
    if (sites.size() < 2) throw DimensionMismatch("build_chain: at least two sites required");
    LocalNet net;
    net.sites = sites;
    long total = 1;
    for (const SiteSpec& s : sites) {
        if (s.dim() < 2) throw DimensionMismatch("build_chain: every site needs dimension >= 2");
        net.site_dims.push_back(s.dim());
        total *= s.dim();
    }
    require_dim(rho, total, "build_chain");

    const GradedAlgebra alg(chain_grading_signs(sites));
    net.global_g = alg.g();

    const double scale = rho.norm();
    if (scale == 0.0 || (net.global_g * rho * net.global_g - rho).norm() > tol::even_rel * scale)
        throw OddDensity("build_chain: density is not even for the chain grading");
    if (!hermitian_eigendecompose(rho).positive_definite())
        throw SingularDensity("build_chain: density is not positive definite");

    net.rho = rho;
    net.global_t = net.global_g * rho;

    Matrix product = Matrix::Identity(1, 1);
    for (int s = 0; s < net.num_sites(); ++s)
        product = kron(product, reduce_to_site(rho, net.site_dims, s));
    const double tr = std::real(rho.trace());
    product /= std::pow(tr, net.num_sites() - 1);
    net.product_rho = trace_norm(rho - product) <= 1e-10 * trace_norm(rho);
    return net;
}

Functional restrict_functional(const LocalNet& net, int k) {
    if (k < 1 || k > net.num_sites())
        throw RegionOutOfRange("restrict_functional: region index out of range");
    return Functional{partial_trace(net.global_t, net.site_dims, k)};
}

std::vector<ModulusDiscrepancy> local_modulus_probe(const LocalNet& net) {
    std::vector<ModulusDiscrepancy> table;
    std::vector<JordanData> jordans;
    for (int k = 1; k <= net.num_sites(); ++k)
        jordans.push_back(jordan_decompose(restrict_functional(net, k)));

    for (int k = 1; k < net.num_sites(); ++k)
        for (int kp = k + 1; kp <= net.num_sites(); ++kp) {
            const Matrix modulus_of_restriction = jordans[static_cast<std::size_t>(k - 1)].rho;
            std::vector<int> dims(net.site_dims.begin(), net.site_dims.begin() + kp);
            const Matrix restriction_of_modulus =
                partial_trace(jordans[static_cast<std::size_t>(kp - 1)].rho, dims, k);
            const double raw = trace_norm(modulus_of_restriction - restriction_of_modulus);
            const double scale = trace_norm(restrict_functional(net, k).kernel);
            table.push_back(
                ModulusDiscrepancy{k, kp, raw, scale, scale > 0.0 ? raw / scale : raw});
        }
    return table;
}

RegionGnsReport local_gns_structure(const LocalNet& net) {
    const GradedAlgebra alg(chain_grading_signs(net.sites));
    const Functional omega{net.global_t};
    const JordanData jd = jordan_decompose(omega);
    const GnsSpace gns = build_gns(alg, modulus(jd));
    const Matrix p_plus = gns.right_mult(jd.chi_plus);
    const Functional omega_plus = positive_part(jd);

    const int m = net.num_sites();
    std::vector<Matrix> q(static_cast<std::size_t>(m));  // orthonormal bases of H(O_k)
    for (int k = 1; k <= m; ++k) {
        const int dk = net.region_dim(k);
        std::vector<Vector> span;
        span.reserve(static_cast<std::size_t>(dk) * static_cast<std::size_t>(dk));
        for (int r = 0; r < dk; ++r)
            for (int s = 0; s < dk; ++s) {
                Matrix e = Matrix::Zero(dk, dk);
                e(r, s) = 1.0;
                span.push_back(gns.embed(net.embed(e, k)));
            }
        q[static_cast<std::size_t>(k - 1)] = orthonormal_columns(span, gns.N);
    }

    RegionGnsReport report;
    for (int k = 1; k <= m; ++k) {
        const Matrix& qk = q[static_cast<std::size_t>(k - 1)];
        const Matrix pk = qk.adjoint() * p_plus * qk;  // compressed to H(O_k)

        RegionGnsReport::Region reg;
        reg.k = k;
        reg.subspace_dim = static_cast<int>(qk.cols());

        if (k < m) {
            const Matrix& qn = q[static_cast<std::size_t>(k)];
            reg.containment_residual = (qk - qn * (qn.adjoint() * qk)).norm();
            const Matrix pn = qn.adjoint() * p_plus * qn;
            const Matrix overlap = qn.adjoint() * qk;
            reg.agreement_residual = (overlap.adjoint() * pn * overlap - pk).norm();
            // Operator-order candidate p_{O_k'} - p_{O_k} (zero-extended), on H(O_k').
            const Matrix diff = pn - overlap * pk * overlap.adjoint();
            reg.monotonicity_min_eig =
                hermitian_eigendecompose((diff + diff.adjoint()) * 0.5).values.minCoeff();
        } else {
            reg.containment_residual = 0.0;
            reg.agreement_residual = 0.0;
            reg.monotonicity_min_eig = 0.0;
        }

        const int dk = net.region_dim(k);
        double reproduction = 0.0;
        const double scale = trace_norm(gns.kernel);
        for (int r = 0; r < dk; ++r)
            for (int s = 0; s < dk; ++s) {
                Matrix e = Matrix::Zero(dk, dk);
                e(r, s) = 1.0;
                const Complex via_gns =
                    gns.inner(gns.omega_vec, gns.pi(net.embed(e, k)) *
                                                 (qk * (pk * (qk.adjoint() * gns.omega_vec))));
                const Complex direct = omega_plus(net.embed(e, k));
                reproduction = std::max(reproduction, std::abs(via_gns - direct) / scale);
            }
        reg.reproduction_residual = reproduction;

        double commutation = 0.0;
        for (int gidx = 0; gidx < dk; ++gidx) {
            Matrix gen = Matrix::Zero(dk, dk);
            gen(gidx, gidx) = static_cast<double>(gidx + 1);
            if (gidx + 1 < dk) gen(gidx, gidx + 1) = 1.0;
            const Matrix pg = qk.adjoint() * gns.pi(net.embed(gen, k)) * qk;
            const double denom = pg.norm() * std::max(pk.norm(), 1e-300);
            if (denom > 0.0)
                commutation = std::max(commutation, (pk * pg - pg * pk).norm() / denom);
        }
        reg.commutation_residual = commutation;

        const EigenSystem spec = hermitian_eigendecompose((pk + pk.adjoint()) * 0.5);
        reg.spectrum_lo = spec.values.minCoeff();
        reg.spectrum_hi = spec.values.maxCoeff();
        reg.projection_defect = (pk * pk - pk).norm();

        report.regions.push_back(reg);
    }
    return report;
}

NetSuiteReport net_kms_suite(const LocalNet& net, int sample_budget, std::uint64_t seed) {
    if (sample_budget <= 0) throw BudgetZero("net_kms_suite: sample budget must be positive");

    const GradedAlgebra alg(chain_grading_signs(net.sites));
    const Functional omega{net.global_t};
    const JordanData jd = jordan_decompose(omega);
    const Functional mod = modulus(jd);
    const Functional wp = positive_part(jd);
    const Functional wm = negative_part(jd);
    const ModularFlow flow = ModularFlow::from_density(jd.rho);
    const double t1 = mod.norm();
    const double sigma = 0.5;

    // Deterministic sample pool: per sample a region, two local elements and
    // a point in the strip.
    struct Sample {
        Matrix a_even, a_odd, b_even, b_odd;
        Complex z;
    };
    Rng rng(seed);
    std::vector<Sample> pool;
    pool.reserve(static_cast<std::size_t>(sample_budget));
    for (int s = 0; s < sample_budget; ++s) {
        const int k = 1 + s % net.num_sites();
        const int dk = net.region_dim(k);
        const Matrix a = net.embed(rng.gaussian_matrix(dk, dk), k);
        const Matrix b = net.embed(rng.gaussian_matrix(dk, dk), k);
        const double tt = 2.0 * rng.uniform() - 1.0;
        const double ss = rng.uniform();
        auto [ae, ao] = alg.parity_split(a);
        auto [be, bo] = alg.parity_split(b);
        pool.push_back(Sample{ae, ao, be, bo, Complex(tt, ss)});
    }

    NetSuiteReport rep;
    rep.samples = sample_budget;

    rep.kms_boundary = max_over(pool.size(), [&](std::size_t i) {
        const Sample& smp = pool[i];
        double worst = 0.0;
        const std::array<std::pair<const Matrix*, const Matrix*>, 2> parity_pairs{
            {{&smp.a_even, &smp.b_even}, {&smp.a_odd, &smp.b_odd}}};
        for (const auto& [ap, bp] : parity_pairs) {
            const Matrix& a = *ap;
            const Matrix& b = *bp;
            const double scale = a.norm() * b.norm() * t1 * std::max(1.0, flow.cond());
            if (scale == 0.0) continue;
            for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
                const Complex boundary = mod(b * flow.evolve(a, Complex(t, 1.0)));
                const Complex other = mod(flow.evolve(a, Complex(t, 0.0)) * b);
                worst = std::max(worst, std::abs(boundary - other) / scale);
            }
        }
        return worst;
    });

    rep.identities = max_over(pool.size(), [&](std::size_t i) {
        const Sample& smp = pool[i];
        const Matrix b = smp.b_even + smp.b_odd;
        double worst = 0.0;
        const Matrix ae = flow.smooth(smp.a_even, sigma, smp.z);
        const Matrix ao = flow.smooth(smp.a_odd, sigma, smp.z);
        const double se = b.norm() * ae.norm() * t1;
        const double so = b.norm() * ao.norm() * t1;
        if (se > 0.0) {
            worst = std::max(worst, std::abs(wm(b * jd.chi_plus * ae)) / se);
            worst = std::max(worst, std::abs(wp(b * jd.chi_minus * ae)) / se);
        }
        if (so > 0.0) {
            worst = std::max(worst, std::abs(wp(b * jd.chi_plus * ao)) / so);
            worst = std::max(worst, std::abs(wm(b * jd.chi_minus * ao)) / so);
        }
        return worst;
    });

    rep.kernel_swap = max_over(pool.size(), [&](std::size_t i) {
        const Sample& smp = pool[i];
        double worst = 0.0;
        const Matrix even_dead = smp.a_even * jd.chi_minus;  // even, right support in chi_-
        const Matrix odd_dead = smp.a_odd * jd.chi_minus;    // odd, right support in chi_-
        const double se = even_dead.squaredNorm() * t1;
        const double so = odd_dead.squaredNorm() * t1;
        if (se > 0.0) {
            worst = std::max(worst, std::abs(wp(even_dead.adjoint() * even_dead)) / se);
            worst = std::max(worst, std::abs(wp(even_dead * even_dead.adjoint())) / se);
        }
        if (so > 0.0) {
            worst = std::max(worst, std::abs(wp(odd_dead.adjoint() * odd_dead)) / so);
            worst = std::max(worst, std::abs(wm(odd_dead * odd_dead.adjoint())) / so);
        }
        return worst;
    });

    rep.positivity_min = min_over(pool.size(), [&](std::size_t i) {
        const Sample& smp = pool[i];
        const Matrix a = flow.smooth(smp.a_even + smp.a_odd, sigma, smp.z);
        const Matrix sq = a.adjoint() * a;
        const double scale = sq.norm() * t1;
        if (scale == 0.0) return 0.0;
        const double vp = std::real(wp(sq)) / scale;
        const double vm = std::real(wm(sq)) / scale;
        return std::min(vp, vm);
    });

    return rep;
}

}  // namespace gkms
