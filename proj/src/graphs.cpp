#include "ksr/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "ksr/distribution.hpp"
#include "ksr/errors.hpp"
#include "ksr/maxent.hpp"
#include "ksr/mixedchar.hpp"

namespace ksr {

namespace {

constexpr double kEigCutoff = 1e-9;

Eigen::VectorXd incidence(const WeightedGraph& g, int edge_id) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(g.vertex_count());
    b(g.edge(edge_id).u) = 1;
    b(g.edge(edge_id).v) = -1;
    return b;
}

Eigen::MatrixXd pinv_sym(const Eigen::MatrixXd& m, Eigen::MatrixXd* half = nullptr,
                         int* rank = nullptr) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(m.rows(), m.cols());
    if (half) *half = Eigen::MatrixXd::Zero(m.rows(), m.cols());
    int r = 0;
    for (int i = 0; i < vals.size(); ++i) {
        if (vals(i) <= kEigCutoff) continue;
        ++r;
        inv += vecs.col(i) * vecs.col(i).transpose() / vals(i);
        if (half) *half += vecs.col(i) * vecs.col(i).transpose() / std::sqrt(vals(i));
    }
    if (rank) *rank = r;
    return inv;
}

struct UF {
    std::vector<int> p;
    explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

}  // namespace

Eigen::MatrixXd laplacian(const WeightedGraph& g) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.vertex_count(), g.vertex_count());
    for (const Edge& e : g.edges()) {
        l(e.u, e.u) += e.w;
        l(e.v, e.v) += e.w;
        l(e.u, e.v) -= e.w;
        l(e.v, e.u) -= e.w;
    }
    return l;
}

Eigen::MatrixXd pseudo_inverse(const WeightedGraph& g) { return pinv_sym(laplacian(g)); }

double effective_resistance(const WeightedGraph& g, int edge_id) {
    if (edge_id < 0 || edge_id >= g.edge_count())
        throw InvalidInputError("effective_resistance: edge id out of range");
    const Edge& e = g.edge(edge_id);
    // endpoints must share a component
    UF uf(g.vertex_count());
    for (const Edge& f : g.edges()) uf.unite(f.u, f.v);
    if (uf.find(e.u) != uf.find(e.v))
        throw InfiniteResistanceError("effective_resistance: endpoints are disconnected");
    Eigen::VectorXd b = incidence(g, edge_id);
    return b.dot(pseudo_inverse(g) * b);
}

EdgeVectorSystem edge_vectors(const WeightedGraph& g, const std::vector<int>& f,
                              const Eigen::MatrixXd* d_matrix) {
    if (!g.connected()) throw PreconditionError("edge_vectors: graph must be connected");
    Eigen::MatrixXd ref = laplacian(g);
    if (d_matrix) {
        if (d_matrix->rows() != g.vertex_count() || d_matrix->cols() != g.vertex_count())
            throw InvalidInputError("edge_vectors: D has the wrong shape");
        if (!d_matrix->isApprox(d_matrix->transpose(), 1e-12))
            throw PreconditionError("edge_vectors: D must be symmetric");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(*d_matrix);
        if (es.eigenvalues().minCoeff() <= 0)
            throw PreconditionError("edge_vectors: D must be positive definite");
        ref += *d_matrix;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ref);
    std::vector<int> keep;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > kEigCutoff) keep.push_back(i);

    EdgeVectorSystem out;
    out.rdim = static_cast<int>(keep.size());
    out.basis.resize(g.vertex_count(), out.rdim);
    Eigen::VectorXd scale(out.rdim);
    for (int j = 0; j < out.rdim; ++j) {
        out.basis.col(j) = es.eigenvectors().col(keep[j]);
        scale(j) = 1.0 / std::sqrt(es.eigenvalues()(keep[j]));
    }
    out.edge_ids = f;
    for (int id : f) {
        if (id < 0 || id >= g.edge_count()) throw InvalidInputError("edge_vectors: edge id out of range");
        Eigen::VectorXd v = scale.asDiagonal() * (out.basis.transpose() * incidence(g, id));
        out.vectors.emplace_back(v.data(), v.data() + v.size());
    }
    return out;
}

namespace {

// forest helpers on edge-id lists
bool forest_accepts(const WeightedGraph& g, const std::vector<int>& forest, int eid) {
    UF uf(g.vertex_count());
    for (int id : forest) uf.unite(g.edge(id).u, g.edge(id).v);
    return uf.find(g.edge(eid).u) != uf.find(g.edge(eid).v);
}

// unique cycle created by adding eid: the tree path between its endpoints
std::vector<int> forest_cycle(const WeightedGraph& g, const std::vector<int>& forest, int eid) {
    int n = g.vertex_count();
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
    for (int id : forest) {
        adj[g.edge(id).u].push_back({g.edge(id).v, id});
        adj[g.edge(id).v].push_back({g.edge(id).u, id});
    }
    int src = g.edge(eid).u, dst = g.edge(eid).v;
    std::vector<int> via_edge(n, -1), prev(n, -1);
    std::queue<int> q;
    q.push(src);
    prev[src] = src;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (u == dst) break;
        for (auto [w, id] : adj[u]) {
            if (prev[w] != -1) continue;
            prev[w] = u;
            via_edge[w] = id;
            q.push(w);
        }
    }
    std::vector<int> path;
    for (int u = dst; u != src; u = prev[u]) path.push_back(via_edge[u]);
    return path;
}

// one matroid-union augmentation: try to place eid into some forest,
// possibly displacing edges along a BFS-shortest exchange path
bool try_augment(const WeightedGraph& g, std::vector<std::vector<int>>& forests, int eid) {
    std::map<int, std::pair<int, int>> parent;  // displaced edge -> (incoming edge, forest)
    std::set<int> visited{eid};
    std::queue<int> q;
    q.push(eid);
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (size_t i = 0; i < forests.size(); ++i) {
            if (forest_accepts(g, forests[i], f)) {
                forests[i].push_back(f);
                int cur = f;
                while (parent.count(cur)) {
                    auto [incoming, fi] = parent.at(cur);
                    auto& fo = forests[fi];
                    fo.erase(std::find(fo.begin(), fo.end(), cur));
                    fo.push_back(incoming);
                    cur = incoming;
                }
                return true;
            }
            for (int disp : forest_cycle(g, forests[i], f)) {
                if (visited.count(disp)) continue;
                visited.insert(disp);
                parent[disp] = {f, static_cast<int>(i)};
                q.push(disp);
            }
        }
    }
    return false;
}

}  // namespace

TreePacking disjoint_spanning_trees(const WeightedGraph& g, int want) {
    if (want < 1) throw InvalidInputError("disjoint_spanning_trees: want must be positive");
    int need = g.vertex_count() - 1;
    TreePacking best;
    std::vector<std::vector<int>> forests;
    for (int t = 1; t <= want; ++t) {
        forests.push_back({});
        std::set<int> placed;
        for (const auto& fo : forests)
            for (int id : fo) placed.insert(id);
        for (int id = 0; id < g.edge_count(); ++id) {
            if (placed.count(id)) continue;
            try_augment(g, forests, id);
        }
        size_t total = 0;
        for (const auto& fo : forests) total += fo.size();
        if (total != static_cast<size_t>(t) * need) break;
        best.trees = forests;
        best.found = t;
    }
    // structural validation of the exchange bookkeeping
    std::set<int> seen;
    for (auto& tree : best.trees) {
        std::sort(tree.begin(), tree.end());
        if (!g.is_spanning_tree(tree))
            throw InternalConsistencyError("disjoint_spanning_trees: non-tree in packing");
        for (int id : tree)
            if (!seen.insert(id).second)
                throw InternalConsistencyError("disjoint_spanning_trees: trees share an edge");
    }
    return best;
}

double spectral_thinness(const Eigen::MatrixXd& reference, const WeightedGraph& g,
                         const std::vector<int>& tree) {
    if (!g.is_spanning_tree(tree))
        throw PreconditionError("spectral_thinness: edge set is not a spanning tree");
    Eigen::MatrixXd half;
    pinv_sym(reference, &half);
    Eigen::MatrixXd lt = Eigen::MatrixXd::Zero(g.vertex_count(), g.vertex_count());
    for (int id : tree) {
        Eigen::VectorXd b = incidence(g, id);
        lt += b * b.transpose();
    }
    Eigen::MatrixXd m = half * lt * half;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    return es.eigenvalues().maxCoeff();
}

double spectral_thinness(const WeightedGraph& g, const std::vector<int>& tree) {
    return spectral_thinness(laplacian(g), g, tree);
}

double combinatorial_thinness(const WeightedGraph& g, const std::vector<int>& tree) {
    int n = g.vertex_count();
    if (n > 24) throw BudgetError("combinatorial_thinness: cut enumeration limited to n <= 24");
    if (!g.is_spanning_tree(tree))
        throw PreconditionError("combinatorial_thinness: edge set is not a spanning tree");
    std::set<int> in_tree(tree.begin(), tree.end());
    double best = 0.0;
    uint64_t half = uint64_t(1) << (n - 1);
    for (uint64_t s = 0; s + 1 < half; ++s) {
        uint64_t side = s << 1 | 1;
        int t_cross = 0;
        double g_cross = 0.0;
        for (int id = 0; id < g.edge_count(); ++id) {
            const Edge& e = g.edge(id);
            if (((side >> e.u) & 1) == ((side >> e.v) & 1)) continue;
            g_cross += e.w;
            if (in_tree.count(id)) ++t_cross;
        }
        if (t_cross > 0) best = std::max(best, t_cross / g_cross);
    }
    return best;
}

bool cut_dominance(const Eigen::MatrixXd& d_matrix, const WeightedGraph& g) {
    int n = g.vertex_count();
    if (n > 24) throw BudgetError("cut_dominance: cut enumeration limited to n <= 24");
    if (d_matrix.rows() != n || d_matrix.cols() != n)
        throw InvalidInputError("cut_dominance: D has the wrong shape");
    Eigen::MatrixXd l = laplacian(g);
    uint64_t half = uint64_t(1) << (n - 1);
    for (uint64_t s = 0; s + 1 < half; ++s) {
        uint64_t side = s << 1 | 1;
        Eigen::VectorXd ind = Eigen::VectorXd::Zero(n);
        for (int v = 0; v < n; ++v)
            if (side >> v & 1) ind(v) = 1;
        double dv = ind.dot(d_matrix * ind), lv = ind.dot(l * ind);
        if (dv > lv + 1e-12 * std::max(1.0, std::abs(lv))) return false;
    }
    return true;
}

std::vector<int> sample_weighted_tree(const WeightedGraph& g, const std::vector<double>& lambda,
                                      std::mt19937_64& rng) {
    if (static_cast<int>(lambda.size()) != g.edge_count())
        throw InvalidInputError("sample_weighted_tree: one weight per edge required");
    if (!g.connected()) throw NoBasisError("sample_weighted_tree: graph is disconnected");
    int n = g.vertex_count();
    UF uf(n);
    std::vector<int> chosen;
    std::vector<bool> deleted(g.edge_count(), false);
    for (int j = 0; j < g.edge_count() && static_cast<int>(chosen.size()) < n - 1; ++j) {
        int ru = uf.find(g.edge(j).u), rv = uf.find(g.edge(j).v);
        if (ru == rv) {
            deleted[j] = true;
            continue;
        }
        // conditional inclusion probability: weighted leverage in the
        // contracted graph over the still-undecided edges
        Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
        for (int k = j; k < g.edge_count(); ++k) {
            if (deleted[k]) continue;
            int a = uf.find(g.edge(k).u), b = uf.find(g.edge(k).v);
            if (a == b) continue;
            l(a, a) += lambda[k];
            l(b, b) += lambda[k];
            l(a, b) -= lambda[k];
            l(b, a) -= lambda[k];
        }
        Eigen::MatrixXd linv = pinv_sym(l);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        b(ru) = 1;
        b(rv) = -1;
        double p = std::clamp(lambda[j] * b.dot(linv * b), 0.0, 1.0);
        double u = std::ldexp(static_cast<double>(rng()), -64);
        if (u < p) {
            chosen.push_back(j);
            uf.unite(ru, rv);
        } else {
            deleted[j] = true;
        }
    }
    if (static_cast<int>(chosen.size()) != n - 1)
        throw InternalConsistencyError("sample_weighted_tree: sample is not spanning");
    return chosen;
}

ThinnessCertificate thin_tree_pipeline(const WeightedGraph& g, const std::vector<int>& f,
                                       const Eigen::MatrixXd* d_matrix, double eps_target,
                                       double tol, uint64_t budget, uint64_t seed) {
    if (!g.connected_on(f)) throw PreconditionError("thin_tree_pipeline: (V, F) must be connected");
    WeightedGraph gf = g.subgraph(f);
    int n = g.vertex_count(), mf = gf.edge_count();

    ThinnessCertificate cert;
    cert.eps_target = eps_target;

    Eigen::MatrixXd reference = laplacian(g);
    if (d_matrix) {
        cert.d_cut_dominated = cut_dominance(*d_matrix, g);
        reference += *d_matrix;
    }

    EdgeVectorSystem evs = edge_vectors(g, f, d_matrix);
    for (const auto& v : evs.vectors) {
        double ns = 0;
        for (double c : v) ns += c * c;
        cert.eps = std::max(cert.eps, ns);
    }

    TreePacking packing = disjoint_spanning_trees(gf, std::max(1, mf / std::max(1, n - 1)));
    cert.k = packing.found;
    if (cert.k == 0) throw NoBasisError("thin_tree_pipeline: F contains no spanning tree");

    // interior point of the spanning-tree polytope of (V, F)
    unsigned long long tree_count = gf.spanning_tree_count();
    std::vector<double> lam(mf, 1.0);
    constexpr double kMixEps = 0.05;
    try {
        std::vector<double> x(mf);
        if (tree_count <= budget && mf <= 64) {
            auto all_trees = gf.enumerate_spanning_trees(budget);
            BasisPolytopePoint pt = interior_point(packing.trees, all_trees, mf, kMixEps);
            x = pt.x;
        } else {
            // leverage scores of the uniform measure are an interior point
            std::vector<double> x1 = maxent_marginals(evs.vectors, evs.rdim, lam);
            std::vector<double> x0(mf, 0.0);
            for (const auto& tree : packing.trees)
                for (int id : tree) x0[id] += 1.0 / packing.found;
            for (int i = 0; i < mf; ++i) x[i] = (1 - kMixEps) * x0[i] + kMixEps * x1[i];
        }
        MaxEntModel model = fit_lambda(evs.vectors, evs.rdim, make_polytope_point(x), tol, 300);
        lam = model.lambda;
    } catch (const BoundaryInfeasibleError&) {
        cert.maxent_fit_ok = false;  // uniform weights still give a valid measure
        std::fill(lam.begin(), lam.end(), 1.0);
    }
    {
        auto marg = maxent_marginals(evs.vectors, evs.rdim, lam);
        cert.max_marginal = *std::max_element(marg.begin(), marg.end());
    }

    std::vector<int> tree_local;
    if (tree_count <= budget && mf <= 64) {
        std::vector<Rat> lam_q(mf);
        for (int i = 0; i < mf; ++i) lam_q[i] = rat_from_double(std::max(lam[i], 1e-9));
        SubsetDistribution mu = lambda_tree_distribution(gf, lam_q, budget);
        std::vector<std::vector<Rat>> vecs_q(mf);
        for (int i = 0; i < mf; ++i)
            for (double c : evs.vectors[i]) vecs_q[i].push_back(rat_from_double(c));
        VectorSystem vs_q(evs.rdim, std::move(vecs_q));
        SubsetCertificate sc = descend(mu, vs_q, rat_from_double(tol, 40));
        tree_local = mask_to_indices(sc.set);
    } else {
        cert.sampled = true;
        std::mt19937_64 rng(seed);
        double best_alpha = std::numeric_limits<double>::infinity();
        for (int s = 0; s < 64; ++s) {
            std::vector<int> cand_local = sample_weighted_tree(gf, lam, rng);
            std::vector<int> cand(cand_local.size());
            for (size_t i = 0; i < cand_local.size(); ++i) cand[i] = f[cand_local[i]];
            double alpha = spectral_thinness(reference, g, cand);
            if (alpha < best_alpha) {
                best_alpha = alpha;
                tree_local = cand_local;
            }
        }
    }

    cert.tree.resize(tree_local.size());
    for (size_t i = 0; i < tree_local.size(); ++i) cert.tree[i] = f[tree_local[i]];
    std::sort(cert.tree.begin(), cert.tree.end());
    if (!g.is_spanning_tree(cert.tree))
        throw InternalConsistencyError("thin_tree_pipeline: result is not a spanning tree");

    cert.alpha_spectral = spectral_thinness(reference, g, cert.tree);
    if (n <= 24) cert.alpha_combinatorial = combinatorial_thinness(g, cert.tree);
    return cert;
}

}  // namespace ksr
