#include "airgraph/graph_learning.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>

namespace airgraph {

namespace {

// Packed upper-triangle edge indexing: e runs over pairs (i, j), i < j,
// row-major. M = N(N-1)/2 weights parametrize a valid Laplacian.
struct EdgeIndex {
    int n;
    std::vector<std::pair<int, int>> pairs;

    explicit EdgeIndex(int n_) : n(n_) {
        pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    int m() const { return static_cast<int>(pairs.size()); }
};

// deg = B w, where B is the unsigned node-edge incidence matrix.
Eigen::VectorXd degrees(const EdgeIndex& idx, const Eigen::VectorXd& w) {
    Eigen::VectorXd deg = Eigen::VectorXd::Zero(idx.n);
    for (int e = 0; e < idx.m(); ++e) {
        deg(idx.pairs[e].first) += w(e);
        deg(idx.pairs[e].second) += w(e);
    }
    return deg;
}

// (B' v)_e = v_i + v_j for edge e = (i, j).
Eigen::VectorXd incidence_t(const EdgeIndex& idx, const Eigen::VectorXd& v) {
    Eigen::VectorXd out(idx.m());
    for (int e = 0; e < idx.m(); ++e) {
        out(e) = v(idx.pairs[e].first) + v(idx.pairs[e].second);
    }
    return out;
}

// Euclidean projection onto {w >= 0, sum(w) = s}.
Eigen::VectorXd project_scaled_simplex(const Eigen::VectorXd& v, double s) {
    const int m = static_cast<int>(v.size());
    std::vector<double> u(v.data(), v.data() + m);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumsum = 0.0;
    double theta = 0.0;
    for (int k = 0; k < m; ++k) {
        cumsum += u[k];
        const double t = (cumsum - s) / (k + 1);
        if (u[k] - t > 0.0) {
            theta = t;
        } else {
            break;
        }
    }
    return (v.array() - theta).max(0.0);
}

// Squared pairwise distances between the columns of Y, packed per edge.
// alpha * tr(Y' L Y) = alpha * d' w.
Eigen::VectorXd column_distances(const EdgeIndex& idx, const Eigen::MatrixXd& y) {
    const Eigen::MatrixXd gram = y.transpose() * y;
    Eigen::VectorXd d(idx.m());
    for (int e = 0; e < idx.m(); ++e) {
        const auto [i, j] = idx.pairs[e];
        d(e) = std::max(gram(i, i) + gram(j, j) - 2.0 * gram(i, j), 0.0);
    }
    return d;
}

Eigen::MatrixXd assemble_laplacian(const EdgeIndex& idx, const Eigen::VectorXd& w) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(idx.n, idx.n);
    for (int e = 0; e < idx.m(); ++e) {
        const auto [i, j] = idx.pairs[e];
        l(i, j) = -w(e);
        l(j, i) = -w(e);
    }
    const Eigen::VectorXd deg = degrees(idx, w);
    for (int i = 0; i < idx.n; ++i) l(i, i) = deg(i);
    return l;
}

// Projected gradient on f(w) = alpha*d'w + beta*(2||w||^2 + ||Bw||^2)
// over the scaled simplex. BB step with exact line search on the segment
// towards the projected trial point keeps every iterate monotone.
Eigen::VectorXd solve_weight_qp(const EdgeIndex& idx, const Eigen::VectorXd& d,
                                double alpha, double beta, const SmoothLearnConfig& cfg,
                                Eigen::VectorXd w, bool& converged) {
    const double target = idx.n / 2.0;
    const auto grad = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return alpha * d + beta * (4.0 * x + 2.0 * incidence_t(idx, degrees(idx, x)));
    };
    const auto hess_prod = [&](const Eigen::VectorXd& p) -> Eigen::VectorXd {
        return beta * (4.0 * p + 2.0 * incidence_t(idx, degrees(idx, p)));
    };

    w = project_scaled_simplex(w, target);
    // lambda_max(4I + 2B'B) <= 4N, so 1/(4 beta N) is a safe reference step.
    const double t_ref = 1.0 / (4.0 * beta * idx.n);
    double t = t_ref;
    converged = false;
    Eigen::VectorXd g = grad(w);
    for (int it = 0; it < cfg.qp_max_iters; ++it) {
        const Eigen::VectorXd check = project_scaled_simplex(w - t_ref * g, target);
        if ((w - check).norm() / t_ref <= cfg.qp_tol) {
            converged = true;
            break;
        }
        const Eigen::VectorXd trial = project_scaled_simplex(w - t * g, target);
        const Eigen::VectorXd p = trial - w;
        const double pnorm2 = p.squaredNorm();
        if (pnorm2 == 0.0) {
            converged = true;
            break;
        }
        const Eigen::VectorXd hp = hess_prod(p);
        const double php = p.dot(hp);
        const double gamma = php > 0.0 ? std::clamp(-g.dot(p) / php, 0.0, 1.0) : 1.0;
        w += gamma * p;
        g += gamma * hp;
        if (php > 0.0) {
            t = pnorm2 / php; // BB step on the fixed Hessian
        }
    }
    // Tighten the trace constraint to rounding error.
    const double sum = w.sum();
    if (sum > 0.0) w *= target / sum;
    return w;
}

void check_no_constant_columns(const Eigen::MatrixXd& x) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        if (x.col(j).maxCoeff() - x.col(j).minCoeff() == 0.0) {
            throw zero_variance_error("column " + std::to_string(j) +
                                      " is constant; smoothness cannot place its edges");
        }
    }
}

} // namespace

void SmoothLearnConfig::validate() const {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw invalid_config_error("alpha and beta must be positive");
    }
    if (max_outer_iters < 1 || qp_max_iters < 1) {
        throw invalid_config_error("iteration limits must be at least 1");
    }
    if (!(rel_tol > 0.0) || !(qp_tol > 0.0)) {
        throw invalid_config_error("tolerances must be positive");
    }
}

Eigen::MatrixXd y_step(const Eigen::MatrixXd& x, const LaplacianMatrix& l, double alpha) {
    if (x.cols() != l.size()) {
        throw dimension_mismatch_error("observation columns do not match graph size");
    }
    if (!(alpha > 0.0)) {
        throw invalid_config_error("alpha must be positive");
    }
    const Eigen::Index n = l.size();
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) + alpha * l.matrix();
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) {
        throw solve_failure_error("I + alpha*L is not positive definite");
    }
    return llt.solve(x.transpose()).transpose();
}

LaplacianMatrix l_step(const Eigen::MatrixXd& y, double alpha, double beta,
                       const SmoothLearnConfig& cfg,
                       const std::optional<Eigen::VectorXd>& initial_weights,
                       bool* qp_converged, Eigen::VectorXd* final_weights) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw invalid_config_error("alpha and beta must be positive");
    }
    const int n = static_cast<int>(y.cols());
    if (n < 2) {
        throw invalid_config_error("graph learning needs at least two nodes");
    }
    EdgeIndex idx(n);
    Eigen::VectorXd w0;
    if (initial_weights) {
        if (initial_weights->size() != idx.m()) {
            throw dimension_mismatch_error("warm-start weight vector has wrong length");
        }
        w0 = *initial_weights;
    } else {
        w0 = Eigen::VectorXd::Constant(idx.m(), (n / 2.0) / idx.m());
    }
    const Eigen::VectorXd d = column_distances(idx, y);
    bool ok = false;
    const Eigen::VectorXd w = solve_weight_qp(idx, d, alpha, beta, cfg, w0, ok);
    if (qp_converged) *qp_converged = ok;
    if (final_weights) *final_weights = w;
    return LaplacianMatrix(assemble_laplacian(idx, w));
}

double learn_objective(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                       const LaplacianMatrix& l, double alpha, double beta) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.cols() != l.size()) {
        throw dimension_mismatch_error("objective operands have mismatched shapes");
    }
    const double fidelity = (x - y).squaredNorm();
    const double smooth = (y * l.matrix()).cwiseProduct(y).sum();
    const double sparsity = l.matrix().squaredNorm();
    return fidelity + alpha * smooth + beta * sparsity;
}

GraphLearnResult learn_graph(const Eigen::MatrixXd& x, const SmoothLearnConfig& cfg) {
    cfg.validate();
    if (x.rows() < 2 || x.cols() < 2) {
        throw invalid_config_error("graph learning needs P >= 2 and N >= 2");
    }
    if (!x.allFinite()) {
        throw missing_data_error("observations contain non-finite entries");
    }
    check_no_constant_columns(x);

    const int n = static_cast<int>(x.cols());
    EdgeIndex idx(n);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(idx.m(), (n / 2.0) / idx.m());
    Eigen::MatrixXd y = x;

    std::vector<double> trace;
    trace.reserve(cfg.max_outer_iters);
    bool all_qp_ok = true;
    bool tol_met = false;
    double prev = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd l_mat;

    for (int it = 0; it < cfg.max_outer_iters; ++it) {
        const Eigen::VectorXd d = column_distances(idx, y);
        bool qp_ok = false;
        w = solve_weight_qp(idx, d, cfg.alpha, cfg.beta, cfg, w, qp_ok);
        all_qp_ok = all_qp_ok && qp_ok;
        l_mat = assemble_laplacian(idx, w);
        LaplacianMatrix l(l_mat);
        y = y_step(x, l, cfg.alpha);
        const double obj = learn_objective(x, y, l, cfg.alpha, cfg.beta);
        trace.push_back(obj);
        if (std::isfinite(prev) &&
            std::abs(prev - obj) <= cfg.rel_tol * std::max(std::abs(prev), 1e-12)) {
            tol_met = true;
            break;
        }
        prev = obj;
    }

    return GraphLearnResult{LaplacianMatrix(l_mat), std::move(y), std::move(trace),
                            tol_met && all_qp_ok};
}

GraphLearnResult learn_graph(const TimeSeriesMatrix& x, const SmoothLearnConfig& cfg) {
    if (!x.complete()) {
        throw missing_data_error("graph learning requires complete observations; "
                                 "apply listwise deletion first");
    }
    return learn_graph(x.values, cfg);
}

} // namespace airgraph
