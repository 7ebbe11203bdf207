#include "ksr/distribution.hpp"

#include <bit>
#include <functional>

#include "ksr/errors.hpp"
#include "ksr/multiaffine.hpp"

namespace ksr {

std::vector<int> mask_to_indices(uint64_t mask) {
    std::vector<int> idx;
    for (int i = 0; i < 64; ++i)
        if (mask >> i & 1) idx.push_back(i);
    return idx;
}

uint64_t indices_to_mask(const std::vector<int>& idx) {
    uint64_t m = 0;
    for (int i : idx) {
        if (i < 0 || i >= 64) throw InvalidInputError("element index outside 64-bit mask range");
        m |= uint64_t(1) << i;
    }
    return m;
}

SubsetDistribution::SubsetDistribution(int m, std::map<uint64_t, Rat> support)
    : m_(m), support_(std::move(support)) {
    if (m_ < 0 || m_ > 64) throw InvalidInputError("ground set size must be in [0, 64]");
    Rat total(0);
    for (auto it = support_.begin(); it != support_.end();) {
        if (m_ < 64 && (it->first >> m_) != 0)
            throw InvalidInputError("support set contains elements outside the ground set");
        if (sgn(it->second) < 0) throw InvalidInputError("negative probability in distribution");
        total += it->second;
        if (sgn(it->second) == 0)
            it = support_.erase(it);
        else
            ++it;
    }
    if (total != 1) throw InvalidInputError("distribution probabilities must sum to exactly 1");
    homogeneous_ = true;
    degree_ = std::popcount(support_.begin()->first);
    for (const auto& [s, p] : support_)
        if (std::popcount(s) != degree_) {
            homogeneous_ = false;
            degree_ = -1;
            break;
        }
}

SubsetDistribution SubsetDistribution::point_mass(int m, uint64_t set) {
    return SubsetDistribution(m, {{set, Rat(1)}});
}

SubsetDistribution SubsetDistribution::uniform(int m, const std::vector<uint64_t>& sets) {
    if (sets.empty()) throw InvalidInputError("uniform distribution needs a nonempty set list");
    std::map<uint64_t, Rat> sup;
    Rat p(1, static_cast<unsigned long>(sets.size()));
    for (uint64_t s : sets) sup[s] += p;
    return SubsetDistribution(m, std::move(sup));
}

Rat SubsetDistribution::prob(uint64_t set) const {
    auto it = support_.find(set);
    return it == support_.end() ? Rat(0) : it->second;
}

Rat marginal(const SubsetDistribution& dist, int i) {
    if (i < 0 || i >= dist.ground_size()) throw InvalidInputError("marginal: element out of range");
    Rat direct(0);
    for (const auto& [s, p] : dist.support())
        if (s >> i & 1) direct += p;
    // same quantity through the generating polynomial
    MultiAffinePoly g = generating_poly(dist);
    std::vector<Rat> ones(dist.ground_size(), Rat(1));
    Rat via_poly = g.partial(i).eval(ones);
    if (direct != via_poly)
        throw InternalConsistencyError("marginal: support sum and polynomial derivative disagree");
    return direct;
}

SubsetDistribution condition(const SubsetDistribution& dist, int i, int bit) {
    if (i < 0 || i >= dist.ground_size()) throw InvalidInputError("condition: element out of range");
    if (bit != 0 && bit != 1) throw InvalidInputError("condition: bit must be 0 or 1");
    std::map<uint64_t, Rat> sup;
    Rat mass(0);
    for (const auto& [s, p] : dist.support()) {
        if (int(s >> i & 1) != bit) continue;
        sup[s] = p;
        mass += p;
    }
    if (sup.empty()) throw EmptyConditionError("conditioning on an empty branch");
    for (auto& [s, p] : sup) p /= mass;
    return SubsetDistribution(dist.ground_size(), std::move(sup));
}

std::pair<bool, int> is_homogeneous(const SubsetDistribution& dist) {
    return {dist.homogeneous(), dist.degree()};
}

SubsetDistribution product_lift(int m, int r, uint64_t budget) {
    if (m < 1 || r < 1) throw InvalidInputError("product_lift: m and r must be positive");
    if (m * r > 64) throw InvalidInputError("product_lift: ground set exceeds 64-bit mask");
    uint64_t count = 1;
    for (int i = 0; i < m; ++i) {
        if (count > budget / static_cast<uint64_t>(r)) throw BudgetError("product_lift: r^m exceeds budget");
        count *= static_cast<uint64_t>(r);
    }

    std::map<uint64_t, Rat> sup;
    Rat p(1);
    for (int i = 0; i < m; ++i) p /= r;
    std::vector<int> digit(m, 0);
    for (;;) {
        uint64_t mask = 0;
        for (int i = 0; i < m; ++i) mask |= uint64_t(1) << (i * r + digit[i]);
        sup[mask] = p;
        int pos = 0;
        while (pos < m && ++digit[pos] == r) digit[pos++] = 0;
        if (pos == m) break;
    }
    return SubsetDistribution(m * r, std::move(sup));
}

SubsetDistribution lambda_tree_distribution(const WeightedGraph& g, const std::vector<Rat>& lambda,
                                            uint64_t budget) {
    int m = g.edge_count();
    if (static_cast<int>(lambda.size()) != m)
        throw InvalidInputError("lambda_tree_distribution: one weight per edge required");
    for (const Rat& l : lambda)
        if (sgn(l) <= 0) throw InvalidInputError("lambda_tree_distribution: weights must be positive");
    if (m > 64) throw InvalidInputError("lambda_tree_distribution: more than 64 edges");
    if (!g.connected()) throw NoBasisError("lambda_tree_distribution: graph is disconnected");

    auto trees = g.enumerate_spanning_trees(budget);
    Rat z(0);
    std::map<uint64_t, Rat> sup;
    for (const auto& t : trees) {
        Rat w(1);
        for (int id : t) w *= lambda[id];
        sup[indices_to_mask(t)] += w;
        z += w;
    }

    // matrix-tree cross-check: Z == det of the reduced weighted Laplacian
    int n = g.vertex_count();
    MatQ L(n - 1, n - 1);
    for (int id = 0; id < m; ++id) {
        const Edge& e = g.edge(id);
        int a = e.u - 1, b = e.v - 1;
        if (a >= 0) L.at(a, a) += lambda[id];
        if (b >= 0) L.at(b, b) += lambda[id];
        if (a >= 0 && b >= 0) {
            L.at(a, b) -= lambda[id];
            L.at(b, a) -= lambda[id];
        }
    }
    if (det(L) != z)
        throw InternalConsistencyError("lambda_tree_distribution: matrix-tree check failed");

    for (auto& [s, p] : sup) p /= z;
    return SubsetDistribution(m, std::move(sup));
}

SubsetDistribution determinantal_from_lambda(const VectorSystem& vs, const std::vector<Rat>& lambda,
                                             uint64_t budget) {
    int m = vs.count(), d = vs.dim();
    if (static_cast<int>(lambda.size()) != m)
        throw InvalidInputError("determinantal_from_lambda: one weight per vector required");
    for (const Rat& l : lambda)
        if (sgn(l) <= 0) throw InvalidInputError("determinantal_from_lambda: weights must be positive");
    if (m > 64) throw InvalidInputError("determinantal_from_lambda: more than 64 elements");

    // enumeration guard: C(m, d)
    uint64_t combos = 1;
    for (int i = 0; i < d; ++i) {
        combos = combos * static_cast<uint64_t>(m - i) / static_cast<uint64_t>(i + 1);
        if (combos > budget) throw BudgetError("determinantal_from_lambda: C(m,d) exceeds budget");
    }

    MatQ b(d, d);
    for (int i = 0; i < m; ++i) {
        for (int a = 0; a < d; ++a) {
            if (vs.vector(i)[a] == 0) continue;
            for (int c = 0; c < d; ++c) b.at(a, c) += lambda[i] * vs.vector(i)[a] * vs.vector(i)[c];
        }
    }
    Rat z = det(b);
    if (sgn(z) == 0) throw NoBasisError("determinantal_from_lambda: vectors do not span the space");

    std::map<uint64_t, Rat> sup;
    Rat total(0);
    std::vector<int> idx(d);
    std::function<void(int, int)> rec = [&](int from, int depth) {
        if (depth == d) {
            Rat gd = vs.gram_det(idx);
            if (sgn(gd) == 0) return;
            Rat w = gd;
            for (int i : idx) w *= lambda[i];
            sup[indices_to_mask(idx)] = w;
            total += w;
            return;
        }
        for (int i = from; i <= m - (d - depth); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    if (total != z)
        throw InternalConsistencyError("determinantal_from_lambda: Cauchy-Binet normalization failed");

    for (auto& [s, p] : sup) p /= z;
    return SubsetDistribution(m, std::move(sup));
}

uint64_t sample(const SubsetDistribution& dist, std::mt19937_64& rng) {
    uint64_t u = rng();
    Rat threshold(0);
    mpz_class two64(1);
    two64 <<= 64;
    Rat uq(mpz_class(static_cast<unsigned long>(u)), two64);
    uq.canonicalize();
    uint64_t last = dist.support().rbegin()->first;
    for (const auto& [s, p] : dist.support()) {
        threshold += p;
        if (uq < threshold) return s;
    }
    return last;  // numerically unreachable: cumulative mass is exactly 1
}

}  // namespace ksr
