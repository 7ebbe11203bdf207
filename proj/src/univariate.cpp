#include "ksr/univariate.hpp"

#include <algorithm>
#include <sstream>

#include "ksr/errors.hpp"

namespace ksr {

namespace {
const Rat kZero(0);
}

UnivariatePoly::UnivariatePoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

void UnivariatePoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UnivariatePoly UnivariatePoly::constant(const Rat& c) {
    return UnivariatePoly(std::vector<Rat>{c});
}

UnivariatePoly UnivariatePoly::monomial(const Rat& c, int k) {
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = c;
    return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::from_roots(const std::vector<Rat>& roots) {
    UnivariatePoly p = constant(Rat(1));
    for (const Rat& r : roots) p = p * UnivariatePoly({-r, Rat(1)});
    return p;
}

const Rat& UnivariatePoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
    return coeffs_[k];
}

const Rat& UnivariatePoly::leading() const {
    if (is_zero()) throw PreconditionError("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Rat UnivariatePoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UnivariatePoly UnivariatePoly::derivative() const {
    if (coeffs_.size() <= 1) return zero();
    std::vector<Rat> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return UnivariatePoly(std::move(d));
}

UnivariatePoly UnivariatePoly::operator-() const {
    std::vector<Rat> v(coeffs_);
    for (auto& c : v) c = -c;
    return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& o) const {
    std::vector<Rat> v(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& o) const { return *this + (-o); }

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<Rat> v(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::operator*(const Rat& s) const {
    std::vector<Rat> v(coeffs_);
    for (auto& c : v) c *= s;
    return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::mul_xpow(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Rat> v(coeffs_.size() + k, Rat(0));
    std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + k);
    return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::div_xpow(int k) const {
    if (k == 0 || is_zero()) return *this;
    if (static_cast<int>(coeffs_.size()) <= k)
        throw InternalConsistencyError("div_xpow: degree too small");
    for (int i = 0; i < k; ++i)
        if (coeffs_[i] != 0) throw InternalConsistencyError("div_xpow: polynomial not divisible by x^k");
    return UnivariatePoly(std::vector<Rat>(coeffs_.begin() + k, coeffs_.end()));
}

UnivariatePoly UnivariatePoly::compose_x_squared() const {
    if (is_zero()) return zero();
    std::vector<Rat> v(2 * coeffs_.size() - 1, Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) v[2 * i] = coeffs_[i];
    return UnivariatePoly(std::move(v));
}

std::string UnivariatePoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rat& c = coeff(k);
        if (c == 0) continue;
        if (!first) os << (sgn(c) > 0 ? " + " : " - ");
        Rat a = first ? c : Rat(abs(c));
        if (first && sgn(c) < 0) {
            os << "-";
            a = Rat(abs(c));
        }
        if (k == 0 || a != 1) os << rat_to_string(a);
        if (k > 0) {
            if (a != 1) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

std::pair<UnivariatePoly, UnivariatePoly> divmod(const UnivariatePoly& a, const UnivariatePoly& b) {
    if (b.is_zero()) throw InvalidInputError("polynomial division by zero");
    std::vector<Rat> rem(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {UnivariatePoly::zero(), a};
    std::vector<Rat> quot(a.degree() - db + 1, Rat(0));
    for (int k = a.degree(); k >= db; --k) {
        if (rem[k] == 0) continue;
        Rat q = rem[k] / b.leading();
        quot[k - db] = q;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= q * b.coeff(j);
    }
    return {UnivariatePoly(std::move(quot)), UnivariatePoly(std::move(rem))};
}

UnivariatePoly poly_gcd(UnivariatePoly a, UnivariatePoly b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero()) b = b * (Rat(1) / b.leading());  // keep coefficients small
    }
    if (!a.is_zero()) a = a * (Rat(1) / a.leading());
    return a;
}

UnivariatePoly squarefree_part(const UnivariatePoly& p) {
    if (p.is_zero()) throw PreconditionError("squarefree_part of the zero polynomial");
    if (p.degree() == 0) return UnivariatePoly::constant(Rat(1));
    UnivariatePoly g = poly_gcd(p, p.derivative());
    auto [q, r] = divmod(p, g);
    if (!r.is_zero()) throw InternalConsistencyError("squarefree_part: gcd does not divide");
    return q * (Rat(1) / q.leading());
}

Rat cauchy_root_bound(const UnivariatePoly& p) {
    if (p.is_zero() || p.degree() == 0) return Rat(1);
    Rat m(0);
    for (int k = 0; k < p.degree(); ++k) {
        Rat a = abs(p.coeff(k) / p.leading());
        if (a > m) m = a;
    }
    return m + 2;
}

std::vector<UnivariatePoly> sturm_chain(const UnivariatePoly& p) {
    if (p.is_zero()) throw PreconditionError("Sturm chain of the zero polynomial");
    std::vector<UnivariatePoly> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        auto [q, r] = divmod(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        r = -r;
        r = r * (Rat(1) / abs(r.leading()));
        chain.push_back(std::move(r));
    }
    if (chain.back().is_zero()) chain.pop_back();
    return chain;
}

namespace {

long sign_variations(const std::vector<int>& signs) {
    long v = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

long variations_at(const std::vector<UnivariatePoly>& chain, const Rat& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) signs.push_back(sgn(q.eval(x)));
    return sign_variations(signs);
}

long variations_at_inf(const std::vector<UnivariatePoly>& chain, bool plus) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) {
        if (q.is_zero()) {
            signs.push_back(0);
            continue;
        }
        int s = sgn(q.leading());
        if (!plus && q.degree() % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return sign_variations(signs);
}

}  // namespace

long sturm_count(const std::vector<UnivariatePoly>& chain, const Rat& a, const Rat& b) {
    return variations_at(chain, a) - variations_at(chain, b);
}

long sturm_count_all(const std::vector<UnivariatePoly>& chain) {
    return variations_at_inf(chain, false) - variations_at_inf(chain, true);
}

void AlgebraicReal::refine() {
    if (exact()) return;
    Rat m = (lo + hi) / 2;
    Rat pm = poly.eval(m);
    if (pm == 0) {
        lo = hi = m;
        return;
    }
    if (sgn(poly.eval(lo)) * sgn(pm) < 0)
        hi = m;
    else
        lo = m;
}

void AlgebraicReal::refine_below(const Rat& eps) {
    while (!exact() && hi - lo > eps) refine();
}

double AlgebraicReal::to_double(const Rat& tol) const {
    AlgebraicReal copy = *this;
    copy.refine_below(tol);
    return ksr::to_double((copy.lo + copy.hi) / 2);
}

std::vector<AlgebraicReal> isolate_real_roots(const UnivariatePoly& p) {
    if (p.is_zero()) throw PreconditionError("isolate_real_roots of the zero polynomial");
    std::vector<Rat> exact_roots;
    UnivariatePoly q = p * (Rat(1) / p.leading());

    std::vector<AlgebraicReal> out;
    for (;;) {
        out.clear();
        if (q.degree() <= 0) break;
        Rat B = cauchy_root_bound(q);
        auto chain = sturm_chain(q);
        bool deflated = false;
        struct Seg {
            Rat a, b;
            long n;
        };
        std::vector<Seg> stack{{-B, B, sturm_count(chain, -B, B)}};
        while (!stack.empty() && !deflated) {
            Seg s = stack.back();
            stack.pop_back();
            if (s.n == 0) continue;
            if (s.n == 1) {
                out.push_back(AlgebraicReal{q, s.a, s.b});
                continue;
            }
            Rat m = (s.a + s.b) / 2;
            if (q.eval(m) == 0) {
                exact_roots.push_back(m);
                auto [quot, rem] = divmod(q, UnivariatePoly({-m, Rat(1)}));
                if (!rem.is_zero())
                    throw InternalConsistencyError("isolate_real_roots: deflation remainder");
                q = quot;
                deflated = true;
                break;
            }
            long na = sturm_count(chain, s.a, m);
            stack.push_back({s.a, m, na});
            stack.push_back({m, s.b, s.n - na});
        }
        if (!deflated) break;
    }
    for (const Rat& r : exact_roots)
        out.push_back(AlgebraicReal{UnivariatePoly({-r, Rat(1)}), r, r});
    std::sort(out.begin(), out.end(),
              [](AlgebraicReal a, AlgebraicReal b) { return compare(a, b) < 0; });
    return out;
}

namespace {

// Does square-free g (with g nonzero at both endpoints) have a root in (a, b)?
bool has_root_inside(const UnivariatePoly& g, const Rat& a, const Rat& b) {
    if (g.degree() <= 0 || a >= b) return false;
    auto chain = sturm_chain(g);
    long n = sturm_count(chain, a, b);
    if (g.eval(b) == 0) --n;  // (a, b] -> (a, b)
    return n > 0;
}

int compare_bracket_vs_rat(const AlgebraicReal& a, const Rat& q) {
    // a is a strict bracket: root strictly inside (lo, hi)
    if (q <= a.lo) return +1;
    if (q >= a.hi) return -1;
    if (a.poly.eval(q) == 0) return 0;
    // bisect the bracket at q, then the positions separate
    return sgn(a.poly.eval(a.lo)) * sgn(a.poly.eval(q)) < 0 ? -1 : +1;
    // root in (lo, q) -> root < q -> -1; else root in (q, hi) -> +1
}

}  // namespace

int compare_to_rat(AlgebraicReal a, const Rat& q) {
    if (a.exact()) return a.lo < q ? -1 : (a.lo == q ? 0 : +1);
    return compare_bracket_vs_rat(a, q);
}

int compare(AlgebraicReal a, AlgebraicReal b) {
    if (a.exact() && b.exact()) return a.lo < b.lo ? -1 : (a.lo == b.lo ? 0 : +1);
    if (a.exact()) return -compare_to_rat(b, a.lo);
    if (b.exact()) return compare_to_rat(a, b.lo);

    // both strict brackets
    for (int round = 0;; ++round) {
        if (a.hi <= b.lo) return -1;
        if (b.hi <= a.lo) return +1;
        if (a.exact() || b.exact()) return compare(a, b);
        if (round == 2) {
            // decide equality once via the gcd of the defining polynomials
            UnivariatePoly g = poly_gcd(a.poly, b.poly);
            if (g.degree() >= 1) {
                bool in_a = has_root_inside(g, a.lo, a.hi);
                bool in_b = has_root_inside(g, b.lo, b.hi);
                Rat ilo = std::max(a.lo, b.lo), ihi = std::min(a.hi, b.hi);
                if (in_a && in_b && has_root_inside(g, ilo, ihi)) return 0;
            }
        }
        a.refine();
        b.refine();
    }
}

bool is_real_rooted(const UnivariatePoly& p) {
    if (p.is_zero()) throw PreconditionError("is_real_rooted is undefined for the zero polynomial");
    if (p.degree() == 0) return true;
    UnivariatePoly sq = squarefree_part(p);
    if (sq.degree() == 0) return true;
    return sturm_count_all(sturm_chain(sq)) == sq.degree();
}

AlgebraicReal max_root_algebraic(const UnivariatePoly& p) {
    if (!is_real_rooted(p)) throw PreconditionError("max_root_algebraic: polynomial is not real-rooted");
    if (p.degree() < 1) throw PreconditionError("max_root_algebraic: constant polynomial has no roots");
    auto roots = isolate_real_roots(squarefree_part(p));
    if (roots.empty()) throw InternalConsistencyError("real-rooted polynomial with no isolated roots");
    return roots.back();
}

double max_real_root(const UnivariatePoly& p, const Rat& tol) {
    return max_root_algebraic(p).to_double(tol);
}

namespace {

// Sorted real roots with multiplicity, as algebraic numbers.
std::vector<AlgebraicReal> roots_with_multiplicity(const UnivariatePoly& p) {
    // g_0 = p, g_{k+1} = gcd(g_k, g_k'); a root of multiplicity m in p is a
    // root of g_0 .. g_{m-1}.
    std::vector<UnivariatePoly> layers;
    UnivariatePoly g = p;
    while (g.degree() >= 1) {
        layers.push_back(g);
        g = poly_gcd(g, g.derivative());
    }
    UnivariatePoly sq = squarefree_part(p);
    std::vector<AlgebraicReal> out;
    for (const AlgebraicReal& r : isolate_real_roots(sq)) {
        int mult = 0;
        for (const auto& layer : layers) {
            UnivariatePoly h = poly_gcd(r.poly, squarefree_part(layer));
            bool root_of_layer;
            if (r.exact())
                root_of_layer = layer.eval(r.lo) == 0;
            else
                root_of_layer = h.degree() >= 1 && has_root_inside(h, r.lo, r.hi);
            if (root_of_layer)
                ++mult;
            else
                break;
        }
        for (int i = 0; i < mult; ++i) out.push_back(r);
    }
    return out;
}

}  // namespace

bool is_interlacing(const UnivariatePoly& g, const UnivariatePoly& f) {
    if (g.is_zero() || f.is_zero()) throw InvalidInputError("is_interlacing: zero polynomial");
    if (g.degree() != f.degree() - 1)
        throw InvalidInputError("is_interlacing: deg g must equal deg f - 1");
    if (sgn(g.leading()) <= 0 || sgn(f.leading()) <= 0)
        throw PreconditionError("is_interlacing: leading coefficients must be positive");
    if (!is_real_rooted(g) || !is_real_rooted(f))
        throw PreconditionError("is_interlacing: inputs must be real-rooted");

    auto beta = roots_with_multiplicity(f);   // m roots
    auto alpha = roots_with_multiplicity(g);  // m-1 roots
    size_t m = beta.size();
    if (alpha.size() + 1 != m) throw InternalConsistencyError("is_interlacing: root count mismatch");
    for (size_t i = 0; i + 1 < m; ++i) {
        if (compare(beta[i], alpha[i]) > 0) return false;
        if (compare(alpha[i], beta[i + 1]) > 0) return false;
    }
    return true;
}

bool common_interlacing_test(const std::vector<UnivariatePoly>& polys, int grid) {
    if (polys.empty()) throw InvalidInputError("common_interlacing_test: empty list");
    if (grid < 1) throw InvalidInputError("common_interlacing_test: grid must be positive");
    int deg = polys.front().degree();
    for (const auto& p : polys) {
        if (p.is_zero() || p.degree() != deg)
            throw PreconditionError("common_interlacing_test: equal degrees required");
        if (sgn(p.leading()) <= 0)
            throw PreconditionError("common_interlacing_test: positive leading coefficients required");
        if (!is_real_rooted(p))
            throw PreconditionError("common_interlacing_test: inputs must be real-rooted");
    }
    // pairwise convex combinations on the lambda grid
    for (size_t i = 0; i < polys.size(); ++i) {
        for (size_t j = i + 1; j < polys.size(); ++j) {
            for (int t = 0; t <= grid; ++t) {
                Rat lam(t, grid);
                UnivariatePoly mix = polys[i] * lam + polys[j] * (Rat(1) - lam);
                if (!is_real_rooted(mix)) return false;
            }
        }
    }
    // coarse full-simplex grid for three or more polynomials
    if (polys.size() >= 3) {
        int steps = std::min(grid, 6);
        size_t k = polys.size();
        std::vector<int> comp(k, 0);
        long combos = 1;
        for (size_t i = 1; i < k; ++i) {
            combos *= (steps + static_cast<long>(i));
            combos /= static_cast<long>(i);
            if (combos > 5000) break;
        }
        if (combos <= 5000) {
            // enumerate compositions of `steps` into k parts
            std::vector<int> idx(k, 0);
            auto test_mix = [&](const std::vector<int>& parts) {
                UnivariatePoly mix;
                for (size_t i = 0; i < k; ++i)
                    if (parts[i] > 0) mix = mix + polys[i] * Rat(parts[i], steps);
                return is_real_rooted(mix);
            };
            std::vector<int> parts(k, 0);
            // recursive enumeration without recursion: odometer over first k-1 slots
            std::vector<int> state(k - 1, 0);
            for (;;) {
                int used = 0;
                bool valid = true;
                for (size_t i = 0; i < k - 1; ++i) {
                    parts[i] = state[i];
                    used += state[i];
                    if (used > steps) {
                        valid = false;
                        break;
                    }
                }
                if (valid) {
                    parts[k - 1] = steps - used;
                    if (!test_mix(parts)) return false;
                }
                size_t pos = 0;
                while (pos < k - 1) {
                    if (++state[pos] <= steps) break;
                    state[pos] = 0;
                    ++pos;
                }
                if (pos == k - 1) break;
            }
        }
    }
    return true;
}

}  // namespace ksr
