#include "ksr/mixedchar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "ksr/errors.hpp"
#include "ksr/multiaffine.hpp"
#include "ksr/zxpoly.hpp"

namespace ksr {

namespace {

const Rat kRootTol(1, 1000000000);

void check_instance(const SubsetDistribution& dist, const VectorSystem& vs) {
    if (!dist.homogeneous())
        throw PreconditionError("mixed characteristic polynomial requires a homogeneous distribution");
    if (vs.count() != dist.ground_size())
        throw InvalidInputError("vector count does not match the distribution's ground set");
}

MixedCharPoly make_mixed(UnivariatePoly poly, int d_mu, int d) {
    for (int k = 1; k <= poly.degree(); k += 2)
        if (poly.coeff(k) != 0)
            throw InternalConsistencyError("mixed polynomial has a nonzero odd coefficient");
    if (poly.degree() != 2 * d)
        throw InternalConsistencyError("mixed polynomial degree is not 2d");
    if (!is_real_rooted(poly))
        throw PreconditionError("mixed polynomial is not real-rooted (measure not strongly Rayleigh?)");
    MixedCharPoly out{std::move(poly), d_mu, d, 0.0};
    out.max_root = max_real_root(out.poly, kRootTol);
    return out;
}

UnivariatePoly chi_of_set(const SubsetDistribution&, const VectorSystem& vs, uint64_t set) {
    return char_poly_x2(vs.sum_outer(set) * Rat(2));
}

double spectral_norm_checked(const VectorSystem& vs, uint64_t set, const Rat& tol) {
    // exact route: largest root of chi[2M](x^2) squared, halved
    UnivariatePoly chi = char_poly_x2(vs.sum_outer(set) * Rat(2));
    double r = max_real_root(chi, tol);
    double exact_route = r * r / 2.0;
    // floating cross-check through a symmetric eigensolver
    int d = vs.dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < vs.count(); ++i) {
        if (!(set >> i & 1)) continue;
        Eigen::VectorXd v(d);
        for (int k = 0; k < d; ++k) v(k) = to_double(vs.vector(i)[k]);
        m += v * v.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    double eig_route = es.eigenvalues().cwiseAbs().maxCoeff();
    if (std::abs(eig_route - exact_route) > 1e-8)
        throw InternalConsistencyError("spectral norm: eigensolver and root routes disagree");
    return exact_route;
}

}  // namespace

MixedCharPoly mixed_enum(const SubsetDistribution& dist, const VectorSystem& vs) {
    check_instance(dist, vs);
    UnivariatePoly acc;
    for (const auto& [set, p] : dist.support()) acc = acc + chi_of_set(dist, vs, set) * p;
    return make_mixed(std::move(acc), dist.degree(), vs.dim());
}

MixedCharPoly mixed_operator(const SubsetDistribution& dist, const VectorSystem& vs) {
    check_instance(dist, vs);
    int d_mu = dist.degree(), d = vs.dim();

    ZXPoly shifted = shift_diagonal(generating_poly(dist));
    ZXPoly det_part = cauchy_binet_expand(vs);
    ZXPoly q = zx_mul(shifted, det_part);
    for (int i = 0; i < dist.ground_size(); ++i) q = apply_one_minus_dzz(q, i);
    UnivariatePoly restricted = restrict_zero(q);

    // Eq-level alignment: restricted = x^{d_mu - d} * mixed
    UnivariatePoly poly =
        d_mu >= d ? restricted.div_xpow(d_mu - d) : restricted.mul_xpow(d - d_mu);

    MixedCharPoly reference = mixed_enum(dist, vs);
    if (poly != reference.poly)
        throw InternalConsistencyError("operator identity failed: operator route != enumeration route");
    return make_mixed(std::move(poly), d_mu, d);
}

MixedCharPoly mixed_closed_form(const SubsetDistribution& dist, const VectorSystem& vs) {
    check_instance(dist, vs);
    int d_mu = dist.degree(), d = vs.dim(), m = dist.ground_size();

    UnivariatePoly acc;
    int kmax = std::min({d, d_mu, m});
    std::vector<int> idx;
    for (int k = 0; k <= kmax; ++k) {
        Rat level(0);
        std::function<void(int, int)> rec = [&](int from, int depth) {
            if (depth == k) {
                uint64_t mask = indices_to_mask(idx);
                Rat contain(0);
                for (const auto& [t, p] : dist.support())
                    if ((t & mask) == mask) contain += p;
                if (sgn(contain) == 0) return;
                Rat sk = k == 0 ? Rat(1) : vs.gram_det(idx);
                level += contain * sk;
                return;
            }
            for (int i = from; i <= m - (k - depth); ++i) {
                idx.push_back(i);
                rec(i + 1, depth + 1);
                idx.pop_back();
            }
        };
        rec(0, 0);
        Rat coeff = level * Rat(k % 2 == 0 ? 1 : -1);
        for (int t = 0; t < k; ++t) coeff *= 2;
        acc = acc + UnivariatePoly::monomial(coeff, d_mu + d - 2 * k);
    }

    UnivariatePoly poly = d_mu >= d ? acc.div_xpow(d_mu - d) : acc.mul_xpow(d - d_mu);
    MixedCharPoly reference = mixed_enum(dist, vs);
    if (poly != reference.poly)
        throw InternalConsistencyError("closed-form identity failed against enumeration route");
    return make_mixed(std::move(poly), d_mu, d);
}

SubsetCertificate descend(const SubsetDistribution& dist, const VectorSystem& vs, const Rat& tol) {
    check_instance(dist, vs);
    int m = dist.ground_size();

    MixedCharPoly top = mixed_enum(dist, vs);

    // chi cache and the unnormalized node polynomial f = sum mu(S) chi_S
    std::map<uint64_t, UnivariatePoly> chi;
    for (const auto& [set, p] : dist.support())
        if (!chi.count(set)) chi.emplace(set, chi_of_set(dist, vs, set));

    std::vector<std::pair<uint64_t, Rat>> active(dist.support().begin(), dist.support().end());
    auto node_poly = [&](const std::vector<std::pair<uint64_t, Rat>>& sets) {
        UnivariatePoly f;
        for (const auto& [s, p] : sets) f = f + chi.at(s) * p;
        return f;
    };

    UnivariatePoly f_cur = node_poly(active);
    AlgebraicReal root_cur = max_root_algebraic(f_cur);

    SubsetCertificate cert;
    cert.trace.reserve(m);

    for (int i = 0; i < m; ++i) {
        std::vector<std::pair<uint64_t, Rat>> zero, one;
        for (const auto& sp : active)
            (sp.first >> i & 1 ? one : zero).push_back(sp);

        DescentStep step;
        step.element = i;
        step.parent_root = root_cur.to_double(tol);

        if (zero.empty() || one.empty()) {
            step.forced = true;
            step.bit = zero.empty() ? 1 : 0;
            step.chosen_root = step.parent_root;  // polynomial unchanged
            cert.trace.push_back(step);
            active = zero.empty() ? std::move(one) : std::move(zero);
            continue;
        }

        UnivariatePoly f0 = node_poly(zero);
        UnivariatePoly f1 = node_poly(one);
        if (f0 + f1 != f_cur)
            throw InternalConsistencyError("descent: branch decomposition identity failed");

        AlgebraicReal r0 = max_root_algebraic(f0);
        if (compare(r0, root_cur) <= 0) {
            step.bit = 0;
            step.chosen_root = r0.to_double(tol);
            active = std::move(zero);
            f_cur = std::move(f0);
            root_cur = std::move(r0);
        } else {
            AlgebraicReal r1 = max_root_algebraic(f1);
            if (compare(r1, root_cur) > 0)
                throw NumericalFailure(
                    "descent: neither branch root is below the parent root (tolerance too tight?)");
            step.bit = 1;
            step.chosen_root = r1.to_double(tol);
            active = std::move(one);
            f_cur = std::move(f1);
            root_cur = std::move(r1);
        }
        cert.trace.push_back(step);
    }

    if (active.size() != 1)
        throw InternalConsistencyError("descent did not terminate in a single support set");
    cert.set = active.front().first;

    cert.mixed_root = top.max_root;
    cert.spectral_norm = spectral_norm_checked(vs, cert.set, tol);

    Rat eps1(0);
    for (int i = 0; i < m; ++i) {
        Rat mi = marginal(dist, i);
        if (mi > eps1) eps1 = mi;
    }
    cert.eps1 = to_double(eps1);
    cert.eps2 = to_double(vs.eps2());
    double eps = cert.eps1 + cert.eps2;
    cert.bound = 4 * eps + 2 * eps * eps;
    cert.barrier_bound = 2 * std::sqrt(2 * eps + eps * eps);

    if (cert.spectral_norm > cert.mixed_root * cert.mixed_root / 2 + 1e-9)
        throw InternalConsistencyError("certificate invariant violated: norm exceeds mixed_root^2/2");
    return cert;
}

namespace {

void require_isotropic(const VectorSystem& vs) {
    uint64_t all = vs.count() >= 64 ? ~uint64_t(0) : (uint64_t(1) << vs.count()) - 1;
    MatQ gap = vs.sum_outer(all) - MatQ::identity(vs.dim());
    Rat lim(1, 10000000000L);
    for (int i = 0; i < vs.dim(); ++i)
        for (int j = 0; j < vs.dim(); ++j)
            if (abs(gap.at(i, j)) > lim)
                throw PreconditionError("vector system is not isotropic (beyond 1e-10)");
}

}  // namespace

SubsetCertificate main_certificate(const SubsetDistribution& dist, const VectorSystem& vs,
                                   const Rat& tol) {
    require_isotropic(vs);
    SubsetCertificate cert = descend(dist, vs, tol);
    double tol_d = to_double(tol);
    if (cert.spectral_norm > cert.bound + tol_d)
        throw NumericalFailure("main certificate: spectral norm exceeds 4eps+2eps^2");
    if (cert.mixed_root > cert.barrier_bound + tol_d)
        throw NumericalFailure("main certificate: mixed root exceeds 2sqrt(2eps+eps^2)");
    return cert;
}

KsrPartition ksr_partition(const VectorSystem& vs, int r, const Rat& tol, uint64_t budget) {
    if (r < 2) throw InvalidInputError("ksr_partition: r must be at least 2");
    require_isotropic(vs);
    int m = vs.count();
    if (m * r > 64) throw InvalidInputError("ksr_partition: lifted ground set exceeds 64 elements");

    SubsetDistribution lift = product_lift(m, r, budget);
    VectorSystem lifted = vs.lift_blocks(r);

    KsrPartition out;
    out.lifted = descend(lift, lifted, tol);

    out.parts.assign(r, {});
    std::vector<int> assigned(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < r; ++j)
            if (out.lifted.set >> (i * r + j) & 1) {
                out.parts[j].push_back(i);
                ++assigned[i];
            }
    for (int i = 0; i < m; ++i)
        if (assigned[i] != 1)
            throw InternalConsistencyError("ksr_partition: element not assigned exactly once");

    double eps = 1.0 / r + to_double(vs.eps2());
    out.bound = 4 * eps + 2 * eps * eps;
    out.part_norms.resize(r);
    double tol_d = to_double(tol);
    for (int j = 0; j < r; ++j) {
        uint64_t mask = 0;
        for (int i : out.parts[j]) mask |= uint64_t(1) << i;
        out.part_norms[j] = mask == 0 ? 0.0 : spectral_norm_checked(vs, mask, tol);
        if (out.part_norms[j] > out.bound + tol_d)
            throw NumericalFailure("ksr_partition: a part exceeds the corollary bound");
    }
    return out;
}

}  // namespace ksr
