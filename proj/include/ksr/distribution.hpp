#ifndef KSR_DISTRIBUTION_HPP
#define KSR_DISTRIBUTION_HPP

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "ksr/rational.hpp"
#include "ksr/ratmatrix.hpp"
#include "ksr/weighted_graph.hpp"

namespace ksr {

inline constexpr uint64_t kDefaultBudget = 1000000;

/// Probability distribution on subsets of {0..m-1} with explicit support.
/// Subsets are 64-bit masks, probabilities exact rationals summing to one;
/// zero-probability entries are dropped at construction.
class SubsetDistribution {
  public:
    SubsetDistribution(int m, std::map<uint64_t, Rat> support);

    static SubsetDistribution point_mass(int m, uint64_t set);
    static SubsetDistribution uniform(int m, const std::vector<uint64_t>& sets);

    int ground_size() const { return m_; }
    const std::map<uint64_t, Rat>& support() const { return support_; }
    Rat prob(uint64_t set) const;

    bool homogeneous() const { return homogeneous_; }
    /// Common support cardinality; only meaningful when homogeneous().
    int degree() const { return degree_; }

  private:
    int m_;
    std::map<uint64_t, Rat> support_;
    bool homogeneous_;
    int degree_;
};

/// P[i in S], computed by direct summation and cross-checked against the
/// derivative of the generating polynomial at the all-ones point.
Rat marginal(const SubsetDistribution& dist, int i);

/// Renormalized restriction to sets containing (bit = 1) or excluding
/// (bit = 0) element i. Throws EmptyConditionError if no support remains.
SubsetDistribution condition(const SubsetDistribution& dist, int i, int bit);

std::pair<bool, int> is_homogeneous(const SubsetDistribution& dist);

/// Product distribution on [m] x [r]: each of the r^m support sets picks one
/// pair (i, j) per i, with probability 1/r^m. Element (i, j) has index i*r+j.
SubsetDistribution product_lift(int m, int r, uint64_t budget = kDefaultBudget);

/// Weighted spanning-tree measure mu(T) ~ prod_{e in T} lambda_e over the
/// explicit tree list; the normalization is asserted against the determinant
/// of the reduced weighted Laplacian (matrix-tree).
SubsetDistribution lambda_tree_distribution(const WeightedGraph& g, const std::vector<Rat>& lambda,
                                            uint64_t budget = kDefaultBudget);

/// Determinantal basis measure mu(T) = prod_{i in T} lambda_i * det(sum_T v v^T) / det(B)
/// over size-d independent subsets; Cauchy-Binet normalization asserted.
SubsetDistribution determinantal_from_lambda(const VectorSystem& vs, const std::vector<Rat>& lambda,
                                             uint64_t budget = kDefaultBudget);

/// Inverse-CDF draw over the explicit support; deterministic given the
/// generator state.
uint64_t sample(const SubsetDistribution& dist, std::mt19937_64& rng);

std::vector<int> mask_to_indices(uint64_t mask);
uint64_t indices_to_mask(const std::vector<int>& idx);

}  // namespace ksr

#endif
