#include "ksr/weighted_graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "ksr/errors.hpp"
#include "ksr/ratmatrix.hpp"

namespace ksr {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw InvalidInputError("graph needs at least one vertex");
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw InvalidInputError("edge endpoint out of range");
        if (e.u == e.v) throw InvalidInputError("self-loops are not allowed");
        if (!(e.w > 0)) throw InvalidInputError("edge weights must be positive");
    }
}

bool WeightedGraph::connected() const {
    std::vector<int> all(edges_.size());
    std::iota(all.begin(), all.end(), 0);
    return connected_on(all);
}

bool WeightedGraph::connected_on(const std::vector<int>& edge_ids) const {
    UnionFind uf(n_);
    int comps = n_;
    for (int id : edge_ids)
        if (uf.unite(edges_[id].u, edges_[id].v)) --comps;
    return comps == 1;
}

bool WeightedGraph::is_spanning_tree(const std::vector<int>& edge_ids) const {
    if (static_cast<int>(edge_ids.size()) != n_ - 1) return false;
    UnionFind uf(n_);
    for (int id : edge_ids)
        if (!uf.unite(edges_[id].u, edges_[id].v)) return false;
    return true;
}

unsigned long long WeightedGraph::spanning_tree_count() const {
    if (n_ == 1) return 1;
    MatQ L(n_ - 1, n_ - 1);  // reduced Laplacian, vertex 0 dropped
    for (const Edge& e : edges_) {
        int a = e.u - 1, b = e.v - 1;
        if (a >= 0) L.at(a, a) += 1;
        if (b >= 0) L.at(b, b) += 1;
        if (a >= 0 && b >= 0) {
            L.at(a, b) -= 1;
            L.at(b, a) -= 1;
        }
    }
    Rat d = det(L);
    if (d.get_den() != 1 || sgn(d) < 0)
        throw InternalConsistencyError("matrix-tree determinant not a nonnegative integer");
    if (!d.get_num().fits_ulong_p()) throw BudgetError("spanning tree count overflows");
    return d.get_num().get_ui();
}

std::vector<std::vector<int>> WeightedGraph::enumerate_spanning_trees(uint64_t budget) const {
    unsigned long long count = spanning_tree_count();
    if (count > budget) throw BudgetError("spanning tree count exceeds budget");
    std::vector<std::vector<int>> trees;
    trees.reserve(count);
    int need = n_ - 1;
    std::vector<int> chosen;
    // combination recursion with acyclicity pruning
    std::function<void(int, UnionFind)> rec = [&](int next, UnionFind uf) {
        if (static_cast<int>(chosen.size()) == need) {
            trees.push_back(chosen);
            return;
        }
        int remaining = need - static_cast<int>(chosen.size());
        for (int id = next; id + remaining <= edge_count(); ++id) {
            UnionFind uf2 = uf;
            if (!uf2.unite(edges_[id].u, edges_[id].v)) continue;
            chosen.push_back(id);
            rec(id + 1, uf2);
            chosen.pop_back();
        }
    };
    if (need == 0) {
        trees.push_back({});
        return trees;
    }
    rec(0, UnionFind(n_));
    if (trees.size() != count)
        throw InternalConsistencyError("tree enumeration disagrees with matrix-tree count");
    return trees;
}

int WeightedGraph::edge_connectivity() const {
    if (n_ > 24) throw BudgetError("edge_connectivity enumerates cuts only for n <= 24");
    if (n_ == 1) return 0;
    int best = edge_count() + 1;
    uint64_t half = uint64_t(1) << (n_ - 1);
    for (uint64_t s = 1; s < half; ++s) {
        uint64_t side = s << 1 | 1;  // vertex 0 always on the S side
        int crossing = 0;
        for (const Edge& e : edges_)
            if (((side >> e.u) & 1) != ((side >> e.v) & 1)) ++crossing;
        best = std::min(best, crossing);
    }
    return best == edge_count() + 1 ? 0 : best;
}

WeightedGraph WeightedGraph::subgraph(const std::vector<int>& edge_ids) const {
    std::vector<Edge> sub;
    sub.reserve(edge_ids.size());
    for (int id : edge_ids) {
        if (id < 0 || id >= edge_count()) throw InvalidInputError("edge id out of range");
        sub.push_back(edges_[id]);
    }
    return WeightedGraph(n_, std::move(sub));
}

WeightedGraph WeightedGraph::from_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open edge list file: " + path);
    std::vector<Edge> edges;
    int maxv = 0;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) continue;
        double w = 1.0;
        ls >> w;
        edges.push_back({u, v, w});
        maxv = std::max({maxv, u, v});
    }
    if (edges.empty()) throw InvalidInputError("edge list file has no edges: " + path);
    return WeightedGraph(maxv + 1, std::move(edges));
}

WeightedGraph WeightedGraph::complete(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph WeightedGraph::cycle(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n, 1.0});
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph WeightedGraph::path(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1, 1.0});
    return WeightedGraph(n, std::move(edges));
}

}  // namespace ksr
