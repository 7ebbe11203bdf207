#include "ksr/zxpoly.hpp"

#include <bit>
#include <functional>

#include "ksr/errors.hpp"

namespace ksr {

namespace {
const UnivariatePoly kZeroPoly;
}

void ZXPoly::add_term(uint64_t ones, uint64_t twos, const UnivariatePoly& coeff) {
    if ((twos & ~ones) != 0) throw InvalidInputError("ZXPoly: twos mask must be a subset of ones");
    if (m_ < 64 && (ones >> m_) != 0) throw InvalidInputError("ZXPoly: term uses variables beyond m");
    if (coeff.is_zero()) return;
    Key k{ones, twos};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, coeff);
        return;
    }
    it->second = it->second + coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

const UnivariatePoly& ZXPoly::coeff(uint64_t ones, uint64_t twos) const {
    auto it = terms_.find(Key{ones, twos});
    return it == terms_.end() ? kZeroPoly : it->second;
}

bool ZXPoly::multi_affine_z() const {
    for (const auto& [key, c] : terms_)
        if (key.second != 0) return false;
    return true;
}

Rat ZXPoly::eval(const std::vector<Rat>& z, const Rat& x) const {
    if (static_cast<int>(z.size()) != m_) throw InvalidInputError("ZXPoly::eval: dimension mismatch");
    Rat acc(0);
    for (const auto& [key, c] : terms_) {
        Rat t = c.eval(x);
        for (int i = 0; i < m_; ++i) {
            if (key.first >> i & 1) t *= z[i];
            if (key.second >> i & 1) t *= z[i];
        }
        acc += t;
    }
    return acc;
}

ZXPoly ZXPoly::operator+(const ZXPoly& o) const {
    if (m_ != o.m_) throw InvalidInputError("ZXPoly: variable count mismatch");
    ZXPoly out = *this;
    for (const auto& [key, c] : o.terms_) out.add_term(key.first, key.second, c);
    return out;
}

ZXPoly ZXPoly::operator-(const ZXPoly& o) const {
    if (m_ != o.m_) throw InvalidInputError("ZXPoly: variable count mismatch");
    ZXPoly out = *this;
    for (const auto& [key, c] : o.terms_) out.add_term(key.first, key.second, -c);
    return out;
}

ZXPoly shift_diagonal(const MultiAffinePoly& g) {
    ZXPoly out(g.vars());
    for (const auto& [mask, c] : g.terms()) {
        int k = std::popcount(mask);
        // prod_{i in S} (z_i + x) = sum_{T subset S} z^T x^{|S|-|T|}
        uint64_t t = mask;
        for (;;) {
            out.add_term(t, 0, UnivariatePoly::monomial(c, k - std::popcount(t)));
            if (t == 0) break;
            t = (t - 1) & mask;
        }
    }
    return out;
}

ZXPoly cauchy_binet_expand(const VectorSystem& vs) {
    int m = vs.count(), d = vs.dim();
    if (m > 64) throw InvalidInputError("cauchy_binet_expand: more than 64 vectors");
    ZXPoly out(m);
    std::vector<int> idx;
    std::function<void(int, int)> rec = [&](int from, int k) {
        if (k == 0) {
            Rat sk = idx.empty() ? Rat(1) : vs.gram_det(idx);
            if (sgn(sk) != 0)
                out.add_term(indices_to_mask(idx), 0,
                             UnivariatePoly::monomial(sk, d - static_cast<int>(idx.size())));
            return;
        }
        for (int i = from; i <= m - k; ++i) {
            idx.push_back(i);
            rec(i + 1, k - 1);
            idx.pop_back();
        }
    };
    for (int k = 0; k <= std::min(m, d); ++k) rec(0, k);
    return out;
}

ZXPoly zx_mul(const ZXPoly& p, const ZXPoly& q) {
    if (p.vars() != q.vars()) throw InvalidInputError("zx_mul: variable count mismatch");
    if (!p.multi_affine_z() || !q.multi_affine_z())
        throw PreconditionError("zx_mul: unsupported degree, factors must be multi-affine in z");
    ZXPoly out(p.vars());
    for (const auto& [ka, ca] : p.terms())
        for (const auto& [kb, cb] : q.terms())
            out.add_term(ka.first | kb.first, ka.first & kb.first, ca * cb);
    return out;
}

ZXPoly apply_one_minus_dzz(const ZXPoly& p, int i) {
    if (i < 0 || i >= p.vars()) throw InvalidInputError("apply_one_minus_dzz: index out of range");
    ZXPoly out = p;
    uint64_t bit = uint64_t(1) << i;
    for (const auto& [key, c] : p.terms()) {
        if (!(key.second & bit)) continue;  // z_i degree < 2: second derivative vanishes
        out.add_term(key.first & ~bit, key.second & ~bit, -(c * Rat(2)));
    }
    return out;
}

UnivariatePoly restrict_zero(const ZXPoly& p) { return p.coeff(0, 0); }

}  // namespace ksr
