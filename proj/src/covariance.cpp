#include "airgraph/covariance.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace airgraph {

namespace {

double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

// Lasso subproblem for one glasso column:
//   min_beta 0.5*beta'*W11*beta - s12'*beta + lambda*||beta||_1
// solved by cyclic coordinate descent, warm-started from `beta`.
void lasso_cd(const Eigen::MatrixXd& w11, const Eigen::VectorXd& s12, double lambda,
              Eigen::VectorXd& beta) {
    const Eigen::Index m = s12.size();
    Eigen::VectorXd w11_beta = w11 * beta;
    const double scale = std::max(1.0, s12.cwiseAbs().maxCoeff());
    for (int sweep = 0; sweep < 1000; ++sweep) {
        double max_delta = 0.0;
        for (Eigen::Index k = 0; k < m; ++k) {
            const double old = beta(k);
            const double partial = s12(k) - (w11_beta(k) - w11(k, k) * old);
            const double updated = soft_threshold(partial, lambda) / w11(k, k);
            if (updated != old) {
                beta(k) = updated;
                w11_beta += (updated - old) * w11.col(k);
                max_delta = std::max(max_delta, std::abs(updated - old));
            }
        }
        if (max_delta <= 1e-12 * scale) break;
    }
}

double neg_log_det(const Eigen::MatrixXd& w, bool& ok) {
    Eigen::LLT<Eigen::MatrixXd> llt(w);
    if (llt.info() != Eigen::Success) {
        ok = false;
        return 0.0;
    }
    ok = true;
    return -2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

} // namespace

Eigen::MatrixXd empirical_covariance(const Eigen::MatrixXd& x) {
    if (x.rows() < 2) {
        throw insufficient_samples_error("covariance needs at least two rows");
    }
    if (!x.allFinite()) {
        throw missing_data_error("covariance input contains non-finite entries");
    }
    const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
    Eigen::MatrixXd s = (centered.transpose() * centered) / (x.rows() - 1.0);
    return 0.5 * (s + s.transpose());
}

CovarianceEstimate graphical_lasso(const Eigen::MatrixXd& s, double lambda, double tol,
                                   int max_iters) {
    if (s.rows() != s.cols()) {
        throw dimension_mismatch_error("covariance must be square");
    }
    if (!(lambda >= 0.0)) {
        throw invalid_config_error("glasso lambda must be nonnegative");
    }
    if (!(tol > 0.0) || max_iters < 1) {
        throw invalid_config_error("glasso tolerance/iterations out of range");
    }
    const Eigen::Index n = s.rows();
    CovarianceEstimate out;
    out.lambda = lambda;

    Eigen::MatrixXd s_pen = 0.5 * (s + s.transpose());
    s_pen.diagonal().array() += lambda;
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s_pen, Eigen::EigenvaluesOnly);
        const double max_eig = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        if (es.eigenvalues().minCoeff() <= 1e-12 * max_eig) {
            throw non_pd_input_error("S + lambda*I is not positive definite");
        }
    }

    if (n == 1) {
        out.sigma = s_pen;
        out.theta = Eigen::MatrixXd::Constant(1, 1, 1.0 / s_pen(0, 0));
        out.converged = true;
        bool ok = true;
        out.objective_trace.push_back(neg_log_det(out.sigma, ok));
        return out;
    }

    Eigen::MatrixXd w = s_pen;
    Eigen::MatrixXd betas = Eigen::MatrixXd::Zero(n - 1, n);
    const double change_scale = std::max(1.0, s_pen.cwiseAbs().maxCoeff());

    std::vector<int> others(n - 1);
    Eigen::MatrixXd w11(n - 1, n - 1);
    Eigen::VectorXd s12(n - 1);
    out.converged = false;
    for (int iter = 0; iter < max_iters; ++iter) {
        const Eigen::MatrixXd w_prev = w;
        for (Eigen::Index j = 0; j < n; ++j) {
            int c = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (i != j) others[c++] = static_cast<int>(i);
            }
            for (int r = 0; r < n - 1; ++r) {
                s12(r) = s_pen(others[r], j);
                for (int q = 0; q < n - 1; ++q) w11(r, q) = w(others[r], others[q]);
            }
            Eigen::VectorXd beta = betas.col(j);
            lasso_cd(w11, s12, lambda, beta);
            betas.col(j) = beta;
            const Eigen::VectorXd w12 = w11 * beta;
            for (int r = 0; r < n - 1; ++r) {
                w(others[r], j) = w12(r);
                w(j, others[r]) = w12(r);
            }
        }
        bool ok = true;
        out.objective_trace.push_back(neg_log_det(w, ok));
        if (!ok) break; // numerically lost positive definiteness
        if ((w - w_prev).cwiseAbs().maxCoeff() <= tol * change_scale) {
            out.converged = true;
            break;
        }
    }

    // Recover Theta column-wise from the final W so sigma*theta ~= I.
    Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        int c = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i != j) others[c++] = static_cast<int>(i);
        }
        for (int r = 0; r < n - 1; ++r) {
            s12(r) = s_pen(others[r], j);
            for (int q = 0; q < n - 1; ++q) w11(r, q) = w(others[r], others[q]);
        }
        Eigen::VectorXd beta = betas.col(j);
        lasso_cd(w11, s12, lambda, beta);
        betas.col(j) = beta;
        const double schur = w(j, j) - (w11 * beta).dot(beta);
        const double tjj = 1.0 / schur;
        theta(j, j) = tjj;
        for (int r = 0; r < n - 1; ++r) {
            theta(others[r], j) = -beta(r) * tjj;
        }
    }
    out.theta = 0.5 * (theta + theta.transpose());
    out.sigma = 0.5 * (w + w.transpose());
    return out;
}

WeightMatrix precision_to_adjacency(const Eigen::MatrixXd& theta, double tau) {
    if (theta.rows() != theta.cols()) {
        throw dimension_mismatch_error("precision matrix must be square");
    }
    if (tau < 0.0) {
        throw invalid_config_error("threshold must be nonnegative");
    }
    const Eigen::Index n = theta.rows();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = 0.5 * (std::abs(theta(i, j)) + std::abs(theta(j, i)));
            if (v > tau) {
                w(i, j) = v;
                w(j, i) = v;
            }
        }
    }
    return WeightMatrix(w);
}

} // namespace airgraph
