#ifndef KSR_MAXENT_HPP
#define KSR_MAXENT_HPP

#include <vector>

#include "ksr/ratmatrix.hpp"

namespace ksr {

/// Point of the basis polytope conv{1_T : T basis}; coordinates in [0,1]
/// summing to the basis cardinality.
struct BasisPolytopePoint {
    std::vector<double> x;
    bool boundary_risk = false;  // set when built with eps = 0
};

BasisPolytopePoint make_polytope_point(std::vector<double> x);

/// (1-eps) * average of the k disjoint basis indicators + eps * average of
/// all basis indicators. Max coordinate is at most 1/k + eps.
BasisPolytopePoint interior_point(const std::vector<std::vector<int>>& disjoint_bases,
                                  const std::vector<std::vector<int>>& all_bases, int m, double eps);

struct MaxEntModel {
    std::vector<double> gamma;   // dual variables, centered
    std::vector<double> lambda;  // exp(gamma), geometric mean normalized to 1
    std::vector<double> target;
    double residual = 0.0;  // max marginal error at the final iterate
    int iterations = 0;
};

/// det(sum_i lambda_i v_i v_i^T); RankDeficientError when singular.
double partition_function(const std::vector<std::vector<double>>& vectors, int d,
                          const std::vector<double>& lambda);
double partition_function(const VectorSystem& vs, const std::vector<double>& lambda);

/// Leverage scores lambda_i v_i^T B(lambda)^{-1} v_i; these are the marginals
/// of the lambda-weighted determinantal basis measure, and they sum to d.
std::vector<double> maxent_marginals(const std::vector<std::vector<double>>& vectors, int d,
                                     const std::vector<double>& lambda);
std::vector<double> maxent_marginals(const VectorSystem& vs, const std::vector<double>& lambda);

/// Damped Newton on the dual f(gamma) = log det B(e^gamma) - <gamma, x>.
/// Converges when every marginal matches the target within tol; throws
/// BoundaryInfeasibleError when the target sits on the polytope boundary
/// (coordinate at 0/1, or dual drift past +-50).
MaxEntModel fit_lambda(const std::vector<std::vector<double>>& vectors, int d,
                       const BasisPolytopePoint& target, double tol = 1e-8, int max_iter = 300);
MaxEntModel fit_lambda(const VectorSystem& vs, const BasisPolytopePoint& target, double tol = 1e-8,
                       int max_iter = 300);

std::vector<std::vector<double>> to_double_vectors(const VectorSystem& vs);

}  // namespace ksr

#endif
