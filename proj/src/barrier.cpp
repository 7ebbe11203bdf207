#include "ksr/barrier.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "ksr/errors.hpp"
#include "ksr/mixedchar.hpp"

namespace ksr {

namespace {
const Rat kSlack(1, 10000000000L);  // 1e-10
}

MVarPoly MVarPoly::constant(int m, const Rat& c) {
    MVarPoly p(m);
    p.add_term(Key(m, 0), c);
    return p;
}

MVarPoly MVarPoly::variable(int m, int i) {
    MVarPoly p(m);
    Key k(m, 0);
    k[i] = 1;
    p.add_term(k, Rat(1));
    return p;
}

MVarPoly MVarPoly::linear_form(const std::vector<Rat>& coeffs, const Rat& b) {
    int m = static_cast<int>(coeffs.size());
    MVarPoly p(m);
    p.add_term(Key(m, 0), b);
    for (int i = 0; i < m; ++i) {
        Key k(m, 0);
        k[i] = 1;
        p.add_term(k, coeffs[i]);
    }
    return p;
}

MVarPoly MVarPoly::from_multiaffine(const MultiAffinePoly& p) {
    MVarPoly out(p.vars());
    for (const auto& [mask, c] : p.terms()) {
        Key k(p.vars(), 0);
        for (int i = 0; i < p.vars(); ++i)
            if (mask >> i & 1) k[i] = 1;
        out.add_term(k, c);
    }
    return out;
}

MVarPoly MVarPoly::det_outer_sum(const VectorSystem& vs) {
    int m = vs.count(), d = vs.dim();
    MVarPoly out(m);
    std::vector<int> idx;
    std::function<void(int, int)> rec = [&](int from, int depth) {
        if (depth == d) {
            Rat g = vs.gram_det(idx);
            if (sgn(g) == 0) return;
            Key k(m, 0);
            for (int i : idx) k[i] = 1;
            out.add_term(k, g);
            return;
        }
        for (int i = from; i <= m - (d - depth); ++i) {
            idx.push_back(i);
            rec(i + 1, depth + 1);
            idx.pop_back();
        }
    };
    if (d <= m) rec(0, 0);
    return out;
}

void MVarPoly::add_term(const Key& exps, const Rat& c) {
    if (static_cast<int>(exps.size()) != m_) throw InvalidInputError("MVarPoly: key length mismatch");
    if (c == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Rat MVarPoly::eval(const std::vector<Rat>& z) const {
    if (static_cast<int>(z.size()) != m_) throw InvalidInputError("MVarPoly::eval: dimension mismatch");
    Rat acc(0);
    for (const auto& [k, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < m_; ++i)
            for (int e = 0; e < k[i]; ++e) t *= z[i];
        acc += t;
    }
    return acc;
}

MVarPoly MVarPoly::partial(int i) const {
    MVarPoly out(m_);
    for (const auto& [k, c] : terms_) {
        if (k[i] == 0) continue;
        Key nk = k;
        nk[i] -= 1;
        out.add_term(nk, c * static_cast<long>(k[i]));
    }
    return out;
}

MVarPoly MVarPoly::operator+(const MVarPoly& o) const {
    if (m_ != o.m_) throw InvalidInputError("MVarPoly: variable count mismatch");
    MVarPoly out = *this;
    for (const auto& [k, c] : o.terms_) out.add_term(k, c);
    return out;
}

MVarPoly MVarPoly::operator-(const MVarPoly& o) const {
    if (m_ != o.m_) throw InvalidInputError("MVarPoly: variable count mismatch");
    MVarPoly out = *this;
    for (const auto& [k, c] : o.terms_) out.add_term(k, -c);
    return out;
}

MVarPoly MVarPoly::operator*(const MVarPoly& o) const {
    if (m_ != o.m_) throw InvalidInputError("MVarPoly: variable count mismatch");
    MVarPoly out(m_);
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            Key k(m_);
            for (int i = 0; i < m_; ++i) {
                int e = ka[i] + kb[i];
                if (e > 255) throw InvalidInputError("MVarPoly: exponent overflow");
                k[i] = static_cast<uint8_t>(e);
            }
            out.add_term(k, ca * cb);
        }
    return out;
}

MVarPoly MVarPoly::operator*(const Rat& s) const {
    MVarPoly out(m_);
    if (s == 0) return out;
    for (const auto& [k, c] : terms_) out.add_term(k, c * s);
    return out;
}

UnivariatePoly MVarPoly::restrict_to_var(int i, const std::vector<Rat>& z) const {
    if (i < 0 || i >= m_) throw InvalidInputError("restrict_to_var: index out of range");
    std::vector<Rat> coeffs;
    for (const auto& [k, c] : terms_) {
        Rat t = c;
        for (int j = 0; j < m_; ++j) {
            if (j == i) continue;
            for (int e = 0; e < k[j]; ++e) t *= z[j];
        }
        if (k[i] >= coeffs.size()) coeffs.resize(k[i] + 1, Rat(0));
        coeffs[k[i]] += t;
    }
    return UnivariatePoly(std::move(coeffs));
}

UnivariatePoly MVarPoly::restrict_diagonal() const {
    std::vector<Rat> coeffs;
    for (const auto& [k, c] : terms_) {
        size_t deg = 0;
        for (int j = 0; j < m_; ++j) deg += k[j];
        if (deg >= coeffs.size()) coeffs.resize(deg + 1, Rat(0));
        coeffs[deg] += c;
    }
    return UnivariatePoly(std::move(coeffs));
}

std::pair<Rat, Rat> phi_psi(const MVarPoly& p, const std::vector<Rat>& z, int i) {
    UnivariatePoly q = p.restrict_to_var(i, z);
    Rat val = q.eval(z[i]);
    if (val == 0) throw AtRootError("phi_psi: polynomial vanishes at the evaluation point");
    UnivariatePoly dq = q.derivative();
    return {dq.eval(z[i]) / val, dq.derivative().eval(z[i]) / val};
}

bool above_roots_probe(const MVarPoly& p, const std::vector<Rat>& z, int probes, uint64_t seed) {
    if (static_cast<int>(z.size()) != p.vars())
        throw InvalidInputError("above_roots_probe: dimension mismatch");
    if (sgn(p.eval(z)) <= 0) return false;

    Rat scale(1);
    for (const Rat& c : z) {
        Rat a = abs(c);
        if (a > scale) scale = a;
    }

    // axis rays at three magnitudes
    int m = p.vars();
    for (int i = 0; i < m; ++i) {
        for (int mag : {1, 8, 64}) {
            std::vector<Rat> w = z;
            w[i] += scale * mag;
            if (sgn(p.eval(w)) <= 0) return false;
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(0, 48);
    for (int s = 0; s < probes; ++s) {
        std::vector<Rat> w = z;
        for (int i = 0; i < m; ++i) w[i] += scale * make_rat(num(rng), 16);
        if (sgn(p.eval(w)) <= 0) return false;
    }
    return true;
}

BarrierProbe probe_point(const MVarPoly& p, const std::vector<Rat>& z, int probes, uint64_t seed) {
    BarrierProbe out;
    out.point = z;
    out.above_roots = above_roots_probe(p, z, probes, seed);
    out.phi.reserve(p.vars());
    out.psi.reserve(p.vars());
    for (int i = 0; i < p.vars(); ++i) {
        auto [phi, psi] = phi_psi(p, z, i);
        out.phi.push_back(phi);
        out.psi.push_back(psi);
    }
    if (out.above_roots) {
        for (int i = 0; i < p.vars(); ++i) {
            if (sgn(out.phi[i]) < 0)
                throw InternalConsistencyError("probe: negative barrier value above the roots");
            if (out.psi[i] > out.phi[i] * out.phi[i] + kSlack)
                throw InternalConsistencyError("probe: Psi exceeds Phi^2 above the roots");
        }
    }
    return out;
}

ShiftLemmaReport shift_lemma_check(const MVarPoly& p, const std::vector<Rat>& z, int j,
                                   const Rat& delta, int probes, uint64_t seed) {
    if (sgn(delta) <= 0) throw InvalidInputError("shift_lemma_check: delta must be positive");
    if (!above_roots_probe(p, z, probes, seed))
        throw PreconditionError("shift_lemma_check: point failed the above-roots probe");

    ShiftLemmaReport rep;
    rep.phi_j = phi_psi(p, z, j).first;
    rep.hypothesis_holds = (Rat(2) / delta) * rep.phi_j + rep.phi_j * rep.phi_j <= 1;
    if (!rep.hypothesis_holds) return rep;

    MVarPoly shifted = p - p.partial(j).partial(j);
    std::vector<Rat> zs = z;
    zs[j] += delta;

    int m = p.vars();
    rep.phi_non_increasing = true;
    for (int i = 0; i < m; ++i) {
        Rat before = phi_psi(p, z, i).first;
        Rat after = phi_psi(shifted, zs, i).first;
        rep.phi_before.push_back(before);
        rep.phi_after.push_back(after);
        if (after > before + kSlack) rep.phi_non_increasing = false;
    }
    rep.shifted_above_roots = above_roots_probe(shifted, zs, probes, seed + 1);
    return rep;
}

RatioCheck ratio_lemma_check(const MVarPoly& p, const std::vector<Rat>& z, int i, int j) {
    Rat pv = p.eval(z);
    if (pv == 0) throw AtRootError("ratio_lemma_check: polynomial vanishes at the point");
    MVarPoly pi = p.partial(i);
    MVarPoly pj = p.partial(j);
    MVarPoly pjj = pj.partial(j);

    Rat dpi = pi.eval(z), dpj = pj.eval(z), dpjj = pjj.eval(z);
    Rat dpij = pj.partial(i).eval(z), dpjji = pjj.partial(i).eval(z);

    // p^2 cancels between numerator and denominator of the two quotients
    Rat num_psi = dpjji * pv - dpjj * dpi;
    if (num_psi == 0) return RatioCheck::Holds;  // 0 <= 2 Phi above the roots
    Rat num_phi = dpij * pv - dpj * dpi;
    if (num_phi == 0) return RatioCheck::DegenerateDirection;
    Rat ratio = num_psi / num_phi;
    Rat two_phi = Rat(2) * dpj / pv;
    return ratio <= two_phi + kSlack ? RatioCheck::Holds : RatioCheck::Fails;
}

BoundReport bound_report(double eps1, double eps2) {
    if (eps1 < 0 || eps2 < 0) throw InvalidInputError("bound_report: epsilons must be nonnegative");
    BoundReport r;
    r.eps1 = eps1;
    r.eps2 = eps2;
    r.eps = eps1 + eps2;
    r.t = r.delta = std::sqrt(2 * r.eps + r.eps * r.eps);
    r.x_root_bound = 2 * r.t;
    r.eigen_bound = 4 * r.eps + 2 * r.eps * r.eps;
    if (r.eps > 0) {
        double phi = r.eps / r.t;
        double identity = (2 / r.delta) * phi + phi * phi;
        if (std::abs(identity - 1.0) > 1e-12)
            throw InternalConsistencyError("bound_report: (2/delta)phi + phi^2 != 1");
    }
    return r;
}

ReplayReport barrier_replay(const SubsetDistribution& dist, const VectorSystem& vs, int probes,
                            uint64_t seed) {
    if (!dist.homogeneous()) throw PreconditionError("barrier_replay: homogeneous measure required");
    if (vs.count() != dist.ground_size())
        throw InvalidInputError("barrier_replay: vector count mismatch");
    int m = vs.count();

    uint64_t all = m >= 64 ? ~uint64_t(0) : (uint64_t(1) << m) - 1;
    MatQ b = vs.sum_outer(all);
    Rat detb = det(b);
    if (sgn(detb) == 0) throw RankDeficientError("barrier_replay: vectors do not span the space");

    // leverage of v_i against B, via the matrix determinant lemma
    Rat eps2(0);
    for (int i = 0; i < m; ++i) {
        Rat lev = Rat(1) - det(b - MatQ::outer(vs.vector(i))) / detb;
        if (lev > eps2) eps2 = lev;
    }
    Rat eps1(0);
    for (int i = 0; i < m; ++i) {
        Rat mi = marginal(dist, i);
        if (mi > eps1) eps1 = mi;
    }
    Rat eps = eps1 + eps2;

    ReplayReport rep;
    rep.t = rat_sqrt_upper(2 * eps + eps * eps, Rat(1, 1000000000));
    rep.phi_cap = eps / rep.t;

    MVarPoly p = MVarPoly::from_multiaffine(generating_poly(dist)) * MVarPoly::det_outer_sum(vs);
    std::vector<Rat> z(m, rep.t);

    rep.ok = true;
    for (int k = 0; k <= m; ++k) {
        ReplayStep step;
        step.applied = k - 1;
        step.point = z;
        step.above_ok = above_roots_probe(p, z, probes, seed + k);
        step.phi_within_cap = true;
        for (int i = 0; i < m; ++i) {
            Rat phi = phi_psi(p, z, i).first;
            step.phi.push_back(phi);
            if (phi > rep.phi_cap + kSlack) step.phi_within_cap = false;
        }
        if (!step.above_ok || !step.phi_within_cap) rep.ok = false;
        rep.steps.push_back(std::move(step));
        if (k == m) break;

        // shift hypothesis at the operator about to be applied
        Rat phi_k = rep.steps.back().phi[k];
        if ((Rat(2) / rep.t) * phi_k + phi_k * phi_k > 1) rep.ok = false;

        p = p - p.partial(k).partial(k);
        z[k] += rep.t;
    }

    UnivariatePoly diag = p.restrict_diagonal();
    AlgebraicReal top = max_root_algebraic(diag);
    rep.diagonal_root = top.to_double(Rat(1, 1000000000));
    rep.final_upper = 2 * to_double(rep.t);
    if (compare_to_rat(top, 2 * rep.t) > 0) rep.ok = false;

    rep.instance_mixed_root = mixed_enum(dist, vs).max_root;
    if (rep.instance_mixed_root > rep.final_upper + 1e-9) rep.ok = false;
    return rep;
}

}  // namespace ksr
