#ifndef KSR_MIXEDCHAR_HPP
#define KSR_MIXEDCHAR_HPP

#include <cstdint>
#include <vector>

#include "ksr/distribution.hpp"
#include "ksr/ratmatrix.hpp"
#include "ksr/univariate.hpp"

namespace ksr {

/// E_{S~mu} chi[sum_{i in S} 2 v_i v_i^T](x^2): exact rational, degree 2d,
/// even in x, real-rooted (both asserted at construction).
struct MixedCharPoly {
    UnivariatePoly poly;
    int d_mu = 0;
    int d = 0;
    double max_root = 0.0;
};

/// Direct expectation over the support.
MixedCharPoly mixed_enum(const SubsetDistribution& dist, const VectorSystem& vs);

/// Differential-operator route: prod_i (1 - d^2/dz_i^2) applied to
/// g_mu(x1+z) * det(xI + sum z_i v_i v_i^T), restricted to z = 0, with the
/// x-power aligned; asserts exact equality with mixed_enum.
MixedCharPoly mixed_operator(const SubsetDistribution& dist, const VectorSystem& vs);

/// Closed form sum_k (-1)^k 2^k x^{d_mu+d-2k} sum_{|S|=k} P[S subset T] sigma_k;
/// asserted equal to the other two routes.
MixedCharPoly mixed_closed_form(const SubsetDistribution& dist, const VectorSystem& vs);

struct DescentStep {
    int element = 0;
    int bit = 0;
    bool forced = false;
    double parent_root = 0.0;
    double chosen_root = 0.0;
};

/// Outcome of the interlacing descent plus the main-theorem bookkeeping.
struct SubsetCertificate {
    uint64_t set = 0;
    double spectral_norm = 0.0;  // ||sum_{i in S} v_i v_i^T||
    double mixed_root = 0.0;     // largest root of the full mixed polynomial
    double bound = 0.0;          // 4 eps + 2 eps^2, eps = eps1 + eps2
    double eps1 = 0.0;           // max marginal
    double eps2 = 0.0;           // max squared norm
    double barrier_bound = 0.0;  // 2 sqrt(2 eps + eps^2)
    std::vector<DescentStep> trace;
};

/// Walks the conditioning tree, at each element keeping the branch whose
/// largest root does not exceed the parent's (exact comparisons; ties take
/// bit 0). Returns a support set with max root of q_S <= max root of the
/// full mixed polynomial.
SubsetCertificate descend(const SubsetDistribution& dist, const VectorSystem& vs,
                          const Rat& tol = Rat(1, 1000000000));

/// descend plus the isotropy precondition and the headline bound assertions:
/// spectral norm <= 4 eps + 2 eps^2 and mixed root <= 2 sqrt(2 eps + eps^2).
SubsetCertificate main_certificate(const SubsetDistribution& dist, const VectorSystem& vs,
                                   const Rat& tol = Rat(1, 1000000000));

struct KsrPartition {
    std::vector<std::vector<int>> parts;  // r index lists covering [m] exactly once
    std::vector<double> part_norms;
    double bound = 0.0;  // 4(1/r + eps) + 2(1/r + eps)^2
    SubsetCertificate lifted;
};

/// Corollary-style r-partition via block-lifted vectors and the product
/// distribution that picks one block per element.
KsrPartition ksr_partition(const VectorSystem& vs, int r, const Rat& tol = Rat(1, 1000000000),
                           uint64_t budget = kDefaultBudget);

}  // namespace ksr

#endif
