#ifndef KSR_WEIGHTED_GRAPH_HPP
#define KSR_WEIGHTED_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ksr {

struct Edge {
    int u, v;
    double w = 1.0;
};

/// Undirected weighted graph with a fixed edge orientation u -> v.
class WeightedGraph {
  public:
    WeightedGraph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_[i]; }

    bool connected() const;
    bool connected_on(const std::vector<int>& edge_ids) const;
    bool is_spanning_tree(const std::vector<int>& edge_ids) const;

    /// Exact spanning-tree count via the (unweighted) matrix-tree theorem.
    unsigned long long spanning_tree_count() const;

    /// All spanning trees as edge-id lists; BudgetError when the count
    /// exceeds the budget.
    std::vector<std::vector<int>> enumerate_spanning_trees(uint64_t budget) const;

    /// Minimum number of edges across a nontrivial cut, by enumerating all
    /// 2^(n-1)-1 cuts; BudgetError for n > 24. Zero if disconnected.
    int edge_connectivity() const;

    /// Subgraph on the same vertex set keeping only the listed edges.
    WeightedGraph subgraph(const std::vector<int>& edge_ids) const;

    /// Text format: one edge per line "u v [w]", 0-indexed, '#' comments.
    static WeightedGraph from_edge_list_file(const std::string& path);

    static WeightedGraph complete(int n);
    static WeightedGraph cycle(int n);
    static WeightedGraph path(int n);

  private:
    int n_;
    std::vector<Edge> edges_;
};

}  // namespace ksr

#endif
