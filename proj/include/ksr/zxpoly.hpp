#ifndef KSR_ZXPOLY_HPP
#define KSR_ZXPOLY_HPP

#include <cstdint>
#include <map>
#include <utility>

#include "ksr/multiaffine.hpp"
#include "ksr/ratmatrix.hpp"
#include "ksr/univariate.hpp"

namespace ksr {

/// Polynomial in z_0..z_{m-1} with per-variable degree at most 2 and
/// univariate-polynomial (in x) coefficients. A z-exponent vector is encoded
/// as a mask pair (ones, twos): e_i = ones_i + twos_i with twos subset-of ones.
/// Degree 2 is all the operator pipeline needs: it multiplies two multi-affine
/// factors and then differentiates; exceeding it is a hard error.
class ZXPoly {
  public:
    using Key = std::pair<uint64_t, uint64_t>;

    explicit ZXPoly(int m) : m_(m) {}

    int vars() const { return m_; }
    const std::map<Key, UnivariatePoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(uint64_t ones, uint64_t twos, const UnivariatePoly& coeff);
    const UnivariatePoly& coeff(uint64_t ones, uint64_t twos) const;

    /// All z-exponents <= 1.
    bool multi_affine_z() const;

    Rat eval(const std::vector<Rat>& z, const Rat& x) const;

    ZXPoly operator+(const ZXPoly& o) const;
    ZXPoly operator-(const ZXPoly& o) const;
    bool operator==(const ZXPoly& o) const { return m_ == o.m_ && terms_ == o.terms_; }

  private:
    int m_;
    std::map<Key, UnivariatePoly> terms_;
};

/// g(z_0 + x, ..., z_{m-1} + x) expanded with z-exponents in {0,1}.
ZXPoly shift_diagonal(const MultiAffinePoly& g);

/// det(xI + sum_i z_i v_i v_i^T) via subset expansion:
/// sum_k x^{d-k} sum_{|S|=k} z^S det(Gram(S)).
ZXPoly cauchy_binet_expand(const VectorSystem& vs);

/// Exact product of two z-multi-affine polynomials.
ZXPoly zx_mul(const ZXPoly& p, const ZXPoly& q);

/// p - d^2/dz_i^2 p.
ZXPoly apply_one_minus_dzz(const ZXPoly& p, int i);

/// Coefficient polynomial at z = 0.
UnivariatePoly restrict_zero(const ZXPoly& p);

}  // namespace ksr

#endif
