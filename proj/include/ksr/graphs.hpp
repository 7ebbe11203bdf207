#ifndef KSR_GRAPHS_HPP
#define KSR_GRAPHS_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "ksr/weighted_graph.hpp"

namespace ksr {

Eigen::MatrixXd laplacian(const WeightedGraph& g);

/// Moore-Penrose pseudo-inverse of the Laplacian (eigenvalue cutoff 1e-9).
Eigen::MatrixXd pseudo_inverse(const WeightedGraph& g);

/// b_e^T L^+ b_e; InfiniteResistanceError when the endpoints are disconnected.
double effective_resistance(const WeightedGraph& g, int edge_id);

/// Reduced edge vectors: columns of an orthonormal eigenbasis of the
/// reference matrix (L_G, or D + L_G when D is given) scaled by 1/sqrt(eig),
/// applied to b_e for each e in F. Without D the full-edge-set system is
/// isotropic on the (n-1)-dimensional range; with D it is sub-isotropic.
struct EdgeVectorSystem {
    std::vector<int> edge_ids;                 // F, in input order
    std::vector<std::vector<double>> vectors;  // reduced coordinates per edge
    int rdim = 0;                              // rank of the reference matrix
    Eigen::MatrixXd basis;                     // n x rdim, orthonormal columns
};

EdgeVectorSystem edge_vectors(const WeightedGraph& g, const std::vector<int>& f,
                              const Eigen::MatrixXd* d_matrix = nullptr);

struct TreePacking {
    std::vector<std::vector<int>> trees;  // edge-disjoint spanning trees
    int found = 0;
};

/// Matroid-union augmentation; returns up to `want` edge-disjoint spanning
/// trees, with found < want when no more exist.
TreePacking disjoint_spanning_trees(const WeightedGraph& g, int want);

/// Smallest alpha with L_T <= alpha * R; R defaults to L_G.
double spectral_thinness(const WeightedGraph& g, const std::vector<int>& tree);
double spectral_thinness(const Eigen::MatrixXd& reference, const WeightedGraph& g,
                         const std::vector<int>& tree);

/// max over nontrivial cuts of |T(S,~S)| / w(E(S,~S)); enumerates cuts, n <= 24.
double combinatorial_thinness(const WeightedGraph& g, const std::vector<int>& tree);

/// 1_S^T D 1_S <= 1_S^T L_G 1_S for every nontrivial S; n <= 24.
bool cut_dominance(const Eigen::MatrixXd& d_matrix, const WeightedGraph& g);

/// One exact weighted-spanning-tree sample by sequential conditional
/// marginals (leverage scores in the contracted/deleted graph).
std::vector<int> sample_weighted_tree(const WeightedGraph& g, const std::vector<double>& lambda,
                                      std::mt19937_64& rng);

struct ThinnessCertificate {
    std::vector<int> tree;
    double alpha_spectral = 0.0;       // against the reference matrix
    double alpha_combinatorial = -1.0; // against L_G; -1 when n > 24
    int k = 0;                         // disjoint trees found in F
    double eps = 0.0;                  // max ||v_e||^2 over F
    double eps_target = 0.0;           // caller-requested bound, echoed
    bool sampled = false;              // budget fallback used
    bool maxent_fit_ok = true;         // false when lambda fell back to uniform
    bool d_cut_dominated = false;      // D <= L_G on cuts (when D given)
    double max_marginal = 0.0;         // largest marginal of the fitted measure
};

/// End-to-end spectrally thin tree search: edge vectors on F, tree packing,
/// interior point, max-entropy fit, then the interlacing descent on the
/// materialized lambda-weighted tree measure (sampled search beyond budget).
ThinnessCertificate thin_tree_pipeline(const WeightedGraph& g, const std::vector<int>& f,
                                       const Eigen::MatrixXd* d_matrix, double eps_target,
                                       double tol, uint64_t budget = 1000000, uint64_t seed = 0);

}  // namespace ksr

#endif
