#ifndef KSR_UNIVARIATE_HPP
#define KSR_UNIVARIATE_HPP

#include <utility>
#include <vector>

#include "ksr/rational.hpp"

namespace ksr {

/// Dense univariate polynomial with exact rational coefficients, ascending
/// degree order. The zero polynomial has an empty coefficient list.
class UnivariatePoly {
  public:
    UnivariatePoly() = default;
    explicit UnivariatePoly(std::vector<Rat> coeffs);

    static UnivariatePoly zero() { return UnivariatePoly(); }
    static UnivariatePoly constant(const Rat& c);
    static UnivariatePoly monomial(const Rat& c, int k);
    static UnivariatePoly from_roots(const std::vector<Rat>& roots);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rat& coeff(int k) const;  // zero beyond the stored degree
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    const Rat& leading() const;  // requires nonzero polynomial

    Rat eval(const Rat& x) const;
    UnivariatePoly derivative() const;

    UnivariatePoly operator-() const;
    UnivariatePoly operator+(const UnivariatePoly& o) const;
    UnivariatePoly operator-(const UnivariatePoly& o) const;
    UnivariatePoly operator*(const UnivariatePoly& o) const;
    UnivariatePoly operator*(const Rat& s) const;
    bool operator==(const UnivariatePoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const UnivariatePoly& o) const { return !(*this == o); }

    UnivariatePoly mul_xpow(int k) const;
    /// Exact division by x^k; throws InternalConsistencyError if any of the
    /// low-order coefficients are nonzero.
    UnivariatePoly div_xpow(int k) const;

    /// Substitute x -> x^2 (interleaves coefficients with zeros).
    UnivariatePoly compose_x_squared() const;

    std::string str(const std::string& var = "x") const;

  private:
    void normalize();
    std::vector<Rat> coeffs_;
};

std::pair<UnivariatePoly, UnivariatePoly> divmod(const UnivariatePoly& a,
                                                 const UnivariatePoly& b);

/// Monic gcd; gcd(0,0) = 0.
UnivariatePoly poly_gcd(UnivariatePoly a, UnivariatePoly b);

/// p / gcd(p, p'): same distinct roots, all simple.
UnivariatePoly squarefree_part(const UnivariatePoly& p);

/// All real roots lie strictly inside (-B, B).
Rat cauchy_root_bound(const UnivariatePoly& p);

/// Sturm chain of a nonzero polynomial (remainders sign-normalized).
std::vector<UnivariatePoly> sturm_chain(const UnivariatePoly& p);

/// Distinct real roots of square-free p in (a, b]; requires p(a) != 0.
long sturm_count(const std::vector<UnivariatePoly>& chain, const Rat& a, const Rat& b);
long sturm_count_all(const std::vector<UnivariatePoly>& chain);

/// One real root of a square-free polynomial. lo == hi encodes an exact
/// rational root; otherwise p(lo) and p(hi) are nonzero with opposite signs
/// and the unique bracketed root is simple.
struct AlgebraicReal {
    UnivariatePoly poly;  // square-free
    Rat lo, hi;

    bool exact() const { return lo == hi; }
    void refine();                      // halve the bracket
    void refine_below(const Rat& eps);  // until hi - lo <= eps
    double to_double(const Rat& tol) const;
};

/// Disjoint brackets for every distinct real root of square-free p, ascending.
std::vector<AlgebraicReal> isolate_real_roots(const UnivariatePoly& p);

/// Exact three-way comparison of two algebraic reals (-1, 0, +1).
int compare(AlgebraicReal a, AlgebraicReal b);
int compare_to_rat(AlgebraicReal a, const Rat& q);

/// True iff every complex root of p is real (square-free reduction + Sturm).
/// Throws PreconditionError on the zero polynomial.
bool is_real_rooted(const UnivariatePoly& p);

/// Largest real root as an exact algebraic number; requires p real-rooted.
AlgebraicReal max_root_algebraic(const UnivariatePoly& p);

/// Largest real root within +-tol.
double max_real_root(const UnivariatePoly& p, const Rat& tol = Rat(1, 1000000000));

/// Roots of g separate the roots of f (deg g = deg f - 1, both real-rooted
/// with positive leading coefficients; non-strict inequalities, so shared
/// roots are allowed).
bool is_interlacing(const UnivariatePoly& g, const UnivariatePoly& f);

/// Sampled falsifier for the existence of a common interlacing: tries convex
/// combinations (pairwise at j/grid plus a coarse simplex grid for three or
/// more polynomials) and reports false on the first non-real-rooted mix.
bool common_interlacing_test(const std::vector<UnivariatePoly>& polys, int grid = 64);

}  // namespace ksr

#endif
