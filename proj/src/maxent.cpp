#include "ksr/maxent.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "ksr/errors.hpp"

namespace ksr {

namespace {

Eigen::MatrixXd weighted_outer_sum(const std::vector<Eigen::VectorXd>& v,
                                   const std::vector<double>& lambda, int d) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
    for (size_t i = 0; i < v.size(); ++i) b += lambda[i] * v[i] * v[i].transpose();
    return b;
}

std::vector<Eigen::VectorXd> to_eigen(const std::vector<std::vector<double>>& vectors, int d) {
    std::vector<Eigen::VectorXd> v;
    v.reserve(vectors.size());
    for (const auto& w : vectors) {
        if (static_cast<int>(w.size()) != d)
            throw InvalidInputError("vector length does not match dimension");
        v.push_back(Eigen::Map<const Eigen::VectorXd>(w.data(), d));
    }
    return v;
}

Eigen::MatrixXd inverse_checked(const Eigen::MatrixXd& b) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    if (!lu.isInvertible()) throw RankDeficientError("B(lambda) is singular");
    return lu.inverse();
}

}  // namespace

BasisPolytopePoint make_polytope_point(std::vector<double> x) {
    double sum = 0.0;
    for (double c : x) {
        if (c < -1e-12 || c > 1 + 1e-12)
            throw InvalidInputError("polytope point coordinate outside [0,1]");
        sum += c;
    }
    double d = std::round(sum);
    if (std::abs(sum - d) > 1e-9)
        throw InvalidInputError("polytope point coordinates must sum to the basis cardinality");
    return BasisPolytopePoint{std::move(x), false};
}

BasisPolytopePoint interior_point(const std::vector<std::vector<int>>& disjoint_bases,
                                  const std::vector<std::vector<int>>& all_bases, int m, double eps) {
    if (disjoint_bases.empty()) throw InvalidInputError("interior_point: need at least one basis");
    if (all_bases.empty()) throw InvalidInputError("interior_point: need the full basis list");
    if (eps < 0 || eps > 1) throw InvalidInputError("interior_point: eps must lie in [0,1]");

    std::vector<int> seen(m, 0);
    for (const auto& basis : disjoint_bases)
        for (int i : basis) {
            if (i < 0 || i >= m) throw InvalidInputError("interior_point: index out of range");
            if (seen[i]++) throw InvalidInputError("interior_point: bases are not disjoint");
        }

    std::vector<double> x0(m, 0.0), x1(m, 0.0);
    for (const auto& basis : disjoint_bases)
        for (int i : basis) x0[i] += 1.0 / disjoint_bases.size();
    for (const auto& basis : all_bases)
        for (int i : basis) {
            if (i < 0 || i >= m) throw InvalidInputError("interior_point: index out of range");
            x1[i] += 1.0 / all_bases.size();
        }

    std::vector<double> x(m);
    for (int i = 0; i < m; ++i) x[i] = (1 - eps) * x0[i] + eps * x1[i];
    BasisPolytopePoint p = make_polytope_point(std::move(x));
    p.boundary_risk = (eps == 0.0);
    return p;
}

double partition_function(const std::vector<std::vector<double>>& vectors, int d,
                          const std::vector<double>& lambda) {
    if (vectors.size() != lambda.size())
        throw InvalidInputError("partition_function: weight count mismatch");
    for (double l : lambda)
        if (!(l > 0)) throw InvalidInputError("partition_function: weights must be positive");
    auto v = to_eigen(vectors, d);
    Eigen::MatrixXd b = weighted_outer_sum(v, lambda, d);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    if (!lu.isInvertible()) throw RankDeficientError("partition_function: B(lambda) is singular");
    return lu.determinant();
}

double partition_function(const VectorSystem& vs, const std::vector<double>& lambda) {
    return partition_function(to_double_vectors(vs), vs.dim(), lambda);
}

std::vector<double> maxent_marginals(const std::vector<std::vector<double>>& vectors, int d,
                                     const std::vector<double>& lambda) {
    if (vectors.size() != lambda.size())
        throw InvalidInputError("maxent_marginals: weight count mismatch");
    auto v = to_eigen(vectors, d);
    Eigen::MatrixXd binv = inverse_checked(weighted_outer_sum(v, lambda, d));
    std::vector<double> marg(v.size());
    double sum = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        marg[i] = lambda[i] * v[i].dot(binv * v[i]);
        sum += marg[i];
    }
    if (std::abs(sum - d) > 1e-10)
        throw InternalConsistencyError("maxent_marginals: leverage scores do not sum to d");
    return marg;
}

std::vector<double> maxent_marginals(const VectorSystem& vs, const std::vector<double>& lambda) {
    return maxent_marginals(to_double_vectors(vs), vs.dim(), lambda);
}

MaxEntModel fit_lambda(const std::vector<std::vector<double>>& vectors, int d,
                       const BasisPolytopePoint& target, double tol, int max_iter) {
    int m = static_cast<int>(vectors.size());
    if (static_cast<int>(target.x.size()) != m)
        throw InvalidInputError("fit_lambda: target dimension mismatch");
    for (double c : target.x)
        if (c < 1e-9 || c > 1 - 1e-9)
            throw BoundaryInfeasibleError(
                "fit_lambda: target touches a coordinate facet of the polytope");

    auto v = to_eigen(vectors, d);
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(target.x.data(), m);
    Eigen::VectorXd gamma = Eigen::VectorXd::Zero(m);

    auto objective = [&](const Eigen::VectorXd& g) {
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
        for (int i = 0; i < m; ++i) b += std::exp(g(i)) * v[i] * v[i].transpose();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
        if (!lu.isInvertible()) return std::numeric_limits<double>::infinity();
        double det = lu.determinant();
        if (!(det > 0)) return std::numeric_limits<double>::infinity();
        return std::log(det) - g.dot(x);
    };

    double f_cur = objective(gamma);
    if (!std::isfinite(f_cur)) throw RankDeficientError("fit_lambda: vectors do not span the space");

    MaxEntModel model;
    model.target = target.x;

    constexpr double kArmijo = 0.3;
    constexpr double kShrink = 0.5;
    constexpr double kDriftLimit = 50.0;

    int it = 0;
    for (; it < max_iter; ++it) {
        std::vector<double> lam(m);
        for (int i = 0; i < m; ++i) lam[i] = std::exp(gamma(i));
        Eigen::MatrixXd binv = inverse_checked(weighted_outer_sum(v, lam, d));

        Eigen::VectorXd marg(m);
        for (int i = 0; i < m; ++i) marg(i) = lam[i] * v[i].dot(binv * v[i]);
        Eigen::VectorXd grad = marg - x;
        double residual = grad.cwiseAbs().maxCoeff();
        model.residual = residual;
        if (residual <= tol) break;

        // Hessian of the dual: H_ij = delta_ij m_i - lam_i lam_j (v_i^T B^-1 v_j)^2.
        // Its kernel contains the all-ones direction (scale invariance), and the
        // gradient is orthogonal to it, so a rank-one shift makes LDLT usable
        // without changing the step.
        Eigen::MatrixXd h(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double cross = lam[i] * lam[j] * std::pow(v[i].dot(binv * v[j]), 2);
                h(i, j) = (i == j ? marg(i) : 0.0) - cross;
            }
        double shift = std::max(1e-12, h.trace() / m);
        Eigen::MatrixXd reg = h + (shift / m) * Eigen::MatrixXd::Ones(m, m);

        Eigen::VectorXd dir;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(reg);
        bool newton_ok = ldlt.info() == Eigen::Success;
        if (newton_ok) {
            dir = ldlt.solve(-grad);
            newton_ok = dir.allFinite() && grad.dot(dir) < 0;
        }
        if (!newton_ok) dir = -grad;  // gradient fallback

        double slope = grad.dot(dir);
        double alpha = 1.0;
        bool accepted = false;
        while (alpha > 1e-14) {
            double f_new = objective(gamma + alpha * dir);
            if (f_new <= f_cur + kArmijo * alpha * slope) {
                gamma += alpha * dir;
                f_cur = f_new;
                accepted = true;
                break;
            }
            alpha *= kShrink;
        }
        if (!accepted)
            throw NumericalFailure("fit_lambda: line search failed to make progress");

        if (gamma.cwiseAbs().maxCoeff() > kDriftLimit)
            throw BoundaryInfeasibleError("fit_lambda: dual drifted past +-50, target infeasible");
    }
    if (it == max_iter) {
        if (gamma.cwiseAbs().maxCoeff() > kDriftLimit)
            throw BoundaryInfeasibleError("fit_lambda: iteration cap with drifting dual");
        if (model.residual > tol)
            throw NumericalFailure("fit_lambda: iteration cap reached before convergence");
    }
    model.iterations = it;

    // normalize the geometric mean of lambda to 1
    double mean = gamma.mean();
    model.gamma.resize(m);
    model.lambda.resize(m);
    for (int i = 0; i < m; ++i) {
        model.gamma[i] = gamma(i) - mean;
        model.lambda[i] = std::exp(model.gamma[i]);
    }
    return model;
}

MaxEntModel fit_lambda(const VectorSystem& vs, const BasisPolytopePoint& target, double tol,
                       int max_iter) {
    return fit_lambda(to_double_vectors(vs), vs.dim(), target, tol, max_iter);
}

std::vector<std::vector<double>> to_double_vectors(const VectorSystem& vs) {
    std::vector<std::vector<double>> out(vs.count());
    for (int i = 0; i < vs.count(); ++i) {
        out[i].resize(vs.dim());
        for (int k = 0; k < vs.dim(); ++k) out[i][k] = to_double(vs.vector(i)[k]);
    }
    return out;
}

}  // namespace ksr
