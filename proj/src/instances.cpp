#include "ksr/instances.hpp"

#include <algorithm>

#include "ksr/errors.hpp"
#include "ksr/weighted_graph.hpp"

namespace ksr {

VectorSystem random_vectors(std::mt19937_64& rng, int m, int d) {
    std::uniform_int_distribution<int> num(-16, 16);
    std::vector<std::vector<Rat>> vecs(m);
    for (auto& v : vecs) {
        v.resize(d);
        for (auto& c : v) c = make_rat(num(rng), 8);
    }
    return VectorSystem(d, std::move(vecs));
}

RandomInstance random_instance(std::mt19937_64& rng, int max_m, int max_d) {
    if (max_m < 2 || max_d < 1) throw InvalidInputError("random_instance: sizes too small");
    std::uniform_int_distribution<int> kind_pick(0, 2);
    std::uniform_int_distribution<int> dpick(1, max_d);
    int kind = kind_pick(rng);
    int d = dpick(rng);

    if (kind == 0) {
        // uniform spanning trees of a random connected graph
        std::uniform_int_distribution<int> npick(2, std::min(5, max_m + 1));
        int n = npick(rng);
        std::vector<Edge> edges;
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (int i = 1; i < n; ++i) {
            std::uniform_int_distribution<int> attach(0, i - 1);
            edges.push_back({order[attach(rng)], order[i], 1.0});
        }
        // a few extra edges, no duplicates, up to max_m total
        std::uniform_int_distribution<int> extra_pick(0, max_m - static_cast<int>(edges.size()));
        int extra = extra_pick(rng);
        auto has_edge = [&](int u, int v) {
            for (const Edge& e : edges)
                if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return true;
            return false;
        };
        std::uniform_int_distribution<int> vpick(0, n - 1);
        for (int tries = 0; extra > 0 && tries < 40; ++tries) {
            int u = vpick(rng), v = vpick(rng);
            if (u == v || has_edge(u, v)) continue;
            edges.push_back({u, v, 1.0});
            --extra;
        }
        WeightedGraph g(n, std::move(edges));
        std::vector<Rat> ones(g.edge_count(), Rat(1));
        return {lambda_tree_distribution(g, ones), random_vectors(rng, g.edge_count(), d), "ust"};
    }

    if (kind == 1) {
        // product lift with mm * r <= max_m
        std::vector<std::pair<int, int>> shapes;
        for (int mm = 1; mm <= max_m; ++mm)
            for (int r = 2; mm * r <= max_m; ++r) shapes.push_back({mm, r});
        if (shapes.empty()) shapes.push_back({1, 2});
        std::uniform_int_distribution<size_t> spick(0, shapes.size() - 1);
        auto [mm, r] = shapes[spick(rng)];
        SubsetDistribution dist = product_lift(mm, r);
        return {dist, random_vectors(rng, dist.ground_size(), d), "lift"};
    }

    std::uniform_int_distribution<int> mpick(2, max_m);
    int m = mpick(rng);
    std::uniform_int_distribution<uint64_t> set_pick(0, (uint64_t(1) << m) - 1);
    uint64_t set = set_pick(rng);
    return {SubsetDistribution::point_mass(m, set), random_vectors(rng, m, d), "point"};
}

}  // namespace ksr
