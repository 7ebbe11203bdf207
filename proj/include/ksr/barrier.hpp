#ifndef KSR_BARRIER_HPP
#define KSR_BARRIER_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ksr/distribution.hpp"
#include "ksr/multiaffine.hpp"
#include "ksr/ratmatrix.hpp"
#include "ksr/univariate.hpp"

namespace ksr {

/// Sparse multivariate polynomial with exact rational coefficients and small
/// per-variable degrees. The barrier instrumentation works on these rather
/// than on the degree-capped pipeline type, because the test instances
/// (products of linear forms) need arbitrary per-variable degree.
class MVarPoly {
  public:
    using Key = std::vector<uint8_t>;

    explicit MVarPoly(int m) : m_(m) {}

    static MVarPoly constant(int m, const Rat& c);
    static MVarPoly variable(int m, int i);
    /// c_0 z_0 + ... + c_{m-1} z_{m-1} + b.
    static MVarPoly linear_form(const std::vector<Rat>& coeffs, const Rat& b);
    static MVarPoly from_multiaffine(const MultiAffinePoly& p);
    /// det(sum_i z_i v_i v_i^T) as a multi-affine polynomial (Cauchy-Binet).
    static MVarPoly det_outer_sum(const VectorSystem& vs);

    int vars() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rat>& terms() const { return terms_; }
    void add_term(const Key& exps, const Rat& c);

    Rat eval(const std::vector<Rat>& z) const;
    MVarPoly partial(int i) const;
    MVarPoly operator+(const MVarPoly& o) const;
    MVarPoly operator-(const MVarPoly& o) const;
    MVarPoly operator*(const MVarPoly& o) const;
    MVarPoly operator*(const Rat& s) const;

    /// Substitute every variable except i: exact univariate restriction.
    UnivariatePoly restrict_to_var(int i, const std::vector<Rat>& z) const;
    /// Restrict all variables to the diagonal z_i = x.
    UnivariatePoly restrict_diagonal() const;

  private:
    int m_;
    std::map<Key, Rat> terms_;
};

/// (Phi, Psi) = (d_i p / p, d_i^2 p / p) at z, exact; AtRootError when p(z)=0.
std::pair<Rat, Rat> phi_psi(const MVarPoly& p, const std::vector<Rat>& z, int i);

/// One-sided probe of "z above all roots of p": evaluates p at z, at seeded
/// random nonnegative rational offsets, and along axis rays at three
/// magnitudes. False certifies z is not above the roots.
bool above_roots_probe(const MVarPoly& p, const std::vector<Rat>& z, int probes = 200,
                       uint64_t seed = 0);

/// Point probe record: all barrier values in every direction.
struct BarrierProbe {
    std::vector<Rat> point;
    std::vector<Rat> phi, psi;
    bool above_roots = false;
};

BarrierProbe probe_point(const MVarPoly& p, const std::vector<Rat>& z, int probes = 200,
                         uint64_t seed = 0);

struct ShiftLemmaReport {
    bool hypothesis_holds = false;  // (2/delta) Phi^j + (Phi^j)^2 <= 1
    Rat phi_j;
    std::vector<Rat> phi_before, phi_after;
    bool phi_non_increasing = false;
    bool shifted_above_roots = false;
    bool conclusion_holds() const { return phi_non_increasing && shifted_above_roots; }
};

/// Checks the shift step: with the hypothesis in force, p -> p - d_j^2 p and
/// z -> z + delta 1_j keeps the point above the roots and no Phi^i increases.
ShiftLemmaReport shift_lemma_check(const MVarPoly& p, const std::vector<Rat>& z, int j,
                                   const Rat& delta, int probes = 200, uint64_t seed = 0);

enum class RatioCheck { Holds, Fails, DegenerateDirection };

/// d_i Psi^j / d_i Phi^j <= 2 Phi^j at z, exact rational with 1e-10 slack.
RatioCheck ratio_lemma_check(const MVarPoly& p, const std::vector<Rat>& z, int i, int j);

struct BoundReport {
    double eps1 = 0, eps2 = 0, eps = 0;
    double t = 0, delta = 0;
    double x_root_bound = 0;  // 2 sqrt(2 eps + eps^2)
    double eigen_bound = 0;   // 4 eps + 2 eps^2
};

BoundReport bound_report(double eps1, double eps2);

struct ReplayStep {
    int applied = -1;  // operator index handled before reaching this state
    std::vector<Rat> point;
    std::vector<Rat> phi;
    bool above_ok = false;
    bool phi_within_cap = false;
};

struct ReplayReport {
    Rat t, phi_cap;          // start height and eps/t
    std::vector<ReplayStep> steps;
    double final_upper = 0;       // t + delta as double
    double diagonal_root = 0;     // largest root of Q(x,..,x)
    double instance_mixed_root = 0;
    bool ok = false;
};

/// Full barrier-argument replay on p = g_mu(y) det(sum y_i v_i v_i^T):
/// start at t*1 with rational t >= sqrt(2 eps + eps^2), apply 1 - d_i^2 and
/// shift coordinate i by t, in element order; every intermediate point must
/// stay above the roots with all Phi <= eps/t, and the final diagonal height
/// bounds the largest root of the diagonal restriction.
ReplayReport barrier_replay(const SubsetDistribution& dist, const VectorSystem& vs,
                            int probes = 60, uint64_t seed = 0);

}  // namespace ksr

#endif
