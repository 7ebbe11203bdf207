#include "ksr/multiaffine.hpp"

#include <random>

#include "ksr/errors.hpp"

namespace ksr {

MultiAffinePoly::MultiAffinePoly(int m, std::map<uint64_t, Rat> terms)
    : m_(m), terms_(std::move(terms)) {
    if (m_ < 0 || m_ > 64) throw InvalidInputError("MultiAffinePoly: variable count in [0,64] required");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (m_ < 64 && (it->first >> m_) != 0)
            throw InvalidInputError("MultiAffinePoly: term uses variables beyond m");
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

Rat MultiAffinePoly::coeff(uint64_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Rat(0) : it->second;
}

void MultiAffinePoly::add_term(uint64_t mask, const Rat& c) {
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(mask, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Rat MultiAffinePoly::eval(const std::vector<Rat>& z) const {
    if (static_cast<int>(z.size()) != m_) throw InvalidInputError("eval: point dimension mismatch");
    Rat acc(0);
    for (const auto& [mask, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < m_; ++i)
            if (mask >> i & 1) t *= z[i];
        acc += t;
    }
    return acc;
}

MultiAffinePoly MultiAffinePoly::partial(int i) const {
    MultiAffinePoly out(m_);
    for (const auto& [mask, c] : terms_)
        if (mask >> i & 1) out.add_term(mask & ~(uint64_t(1) << i), c);
    return out;
}

MultiAffinePoly MultiAffinePoly::substitute(int i, const Rat& value) const {
    MultiAffinePoly out(m_);
    for (const auto& [mask, c] : terms_) {
        if (mask >> i & 1)
            out.add_term(mask & ~(uint64_t(1) << i), c * value);
        else
            out.add_term(mask, c);
    }
    return out;
}

MultiAffinePoly MultiAffinePoly::mul_var(int i) const {
    MultiAffinePoly out(m_);
    for (const auto& [mask, c] : terms_) {
        if (mask >> i & 1)
            throw PreconditionError("mul_var would exceed multi-affine degree");
        out.add_term(mask | (uint64_t(1) << i), c);
    }
    return out;
}

MultiAffinePoly MultiAffinePoly::operator+(const MultiAffinePoly& o) const {
    if (m_ != o.m_) throw InvalidInputError("MultiAffinePoly: variable count mismatch");
    MultiAffinePoly out = *this;
    for (const auto& [mask, c] : o.terms_) out.add_term(mask, c);
    return out;
}

MultiAffinePoly MultiAffinePoly::operator-(const MultiAffinePoly& o) const {
    if (m_ != o.m_) throw InvalidInputError("MultiAffinePoly: variable count mismatch");
    MultiAffinePoly out = *this;
    for (const auto& [mask, c] : o.terms_) out.add_term(mask, -c);
    return out;
}

MultiAffinePoly MultiAffinePoly::operator*(const Rat& s) const {
    MultiAffinePoly out(m_);
    if (s == 0) return out;
    for (const auto& [mask, c] : terms_) out.add_term(mask, c * s);
    return out;
}

MultiAffinePoly generating_poly(const SubsetDistribution& dist) {
    // the distribution constructor already guarantees nonnegativity and unit mass
    MultiAffinePoly g(dist.ground_size());
    for (const auto& [s, p] : dist.support()) g.add_term(s, p);
    return g;
}

MultiAffinePoly condition_poly_one(const MultiAffinePoly& g, int i) {
    MultiAffinePoly d = g.partial(i);
    std::vector<Rat> ones(g.vars(), Rat(1));
    Rat norm = d.eval(ones);
    if (sgn(norm) == 0) throw EmptyConditionError("condition_poly_one: no support contains element");
    return d.mul_var(i) * (Rat(1) / norm);
}

MultiAffinePoly condition_poly_zero(const MultiAffinePoly& g, int i) {
    MultiAffinePoly r = g.substitute(i, Rat(0));
    std::vector<Rat> ones(g.vars(), Rat(1));
    Rat norm = r.eval(ones);
    if (sgn(norm) == 0) throw EmptyConditionError("condition_poly_zero: all support contains element");
    return r * (Rat(1) / norm);
}

bool stability_falsifier(const MultiAffinePoly& p, int samples, uint64_t seed) {
    if (p.is_zero()) return true;
    int m = p.vars();

    std::vector<MultiAffinePoly> dp;
    dp.reserve(m);
    for (int i = 0; i < m; ++i) dp.push_back(p.partial(i));

    auto violated_at = [&](const std::vector<Rat>& z) {
        std::vector<Rat> pv(m), base{p.eval(z)};
        for (int i = 0; i < m; ++i) pv[i] = dp[i].eval(z);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                Rat dij = dp[i].partial(j).eval(z);
                if (pv[i] * pv[j] - base[0] * dij < 0) return true;
            }
        return false;
    };

    std::vector<Rat> z(m, Rat(0));
    if (violated_at(z)) return false;
    std::fill(z.begin(), z.end(), Rat(1));
    if (violated_at(z)) return false;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-32, 32);
    for (int s = 0; s < samples; ++s) {
        for (int i = 0; i < m; ++i) z[i] = make_rat(num(rng), 8);
        if (violated_at(z)) return false;
    }
    return true;
}

}  // namespace ksr
