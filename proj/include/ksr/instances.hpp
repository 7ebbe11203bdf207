#ifndef KSR_INSTANCES_HPP
#define KSR_INSTANCES_HPP

#include <random>
#include <string>

#include "ksr/distribution.hpp"
#include "ksr/ratmatrix.hpp"

namespace ksr {

struct RandomInstance {
    SubsetDistribution dist;
    VectorSystem vs;
    std::string kind;  // "ust", "lift", "point"
};

/// Homogeneous strongly Rayleigh instance with rational random vectors:
/// uniform spanning trees of a random connected graph (<= 5 vertices),
/// a product lift, or a point mass, with ground size <= max_m and vector
/// dimension <= max_d.
RandomInstance random_instance(std::mt19937_64& rng, int max_m = 6, int max_d = 3);

/// Random rational vectors (entries k/8, |k| <= 16) in dimension d.
VectorSystem random_vectors(std::mt19937_64& rng, int m, int d);

}  // namespace ksr

#endif
