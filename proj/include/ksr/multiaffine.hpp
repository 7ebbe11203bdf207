#ifndef KSR_MULTIAFFINE_HPP
#define KSR_MULTIAFFINE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "ksr/distribution.hpp"
#include "ksr/rational.hpp"

namespace ksr {

/// Multi-affine polynomial in z_0..z_{m-1}: every variable appears with
/// degree at most one, so terms are keyed by subset masks. No explicit zero
/// coefficients are stored.
class MultiAffinePoly {
  public:
    explicit MultiAffinePoly(int m) : m_(m) {}
    MultiAffinePoly(int m, std::map<uint64_t, Rat> terms);

    int vars() const { return m_; }
    const std::map<uint64_t, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rat coeff(uint64_t mask) const;
    void add_term(uint64_t mask, const Rat& c);

    Rat eval(const std::vector<Rat>& z) const;
    MultiAffinePoly partial(int i) const;
    /// Substitute z_i = value (the variable slot remains, unused).
    MultiAffinePoly substitute(int i, const Rat& value) const;
    /// Multiply by z_i; every term must currently avoid z_i.
    MultiAffinePoly mul_var(int i) const;

    MultiAffinePoly operator+(const MultiAffinePoly& o) const;
    MultiAffinePoly operator-(const MultiAffinePoly& o) const;
    MultiAffinePoly operator*(const Rat& s) const;
    bool operator==(const MultiAffinePoly& o) const { return m_ == o.m_ && terms_ == o.terms_; }

  private:
    int m_;
    std::map<uint64_t, Rat> terms_;
};

/// g_mu(z) = sum_S mu(S) z^S.
MultiAffinePoly generating_poly(const SubsetDistribution& dist);

/// Conditioning formulas on the generating-polynomial side: the normalized
/// z_i * d/dz_i g (element kept) and normalized g|_{z_i=0} (element dropped).
MultiAffinePoly condition_poly_one(const MultiAffinePoly& g, int i);
MultiAffinePoly condition_poly_zero(const MultiAffinePoly& g, int i);

/// One-sided falsifier for real stability of a multi-affine polynomial:
/// tests the pairwise criterion  dP_i * dP_j - P * dP_ij >= 0  at the origin,
/// the all-ones point, and `samples` seeded rational points. Returns false
/// only on a certified violation.
bool stability_falsifier(const MultiAffinePoly& p, int samples = 200, uint64_t seed = 0);

}  // namespace ksr

#endif
