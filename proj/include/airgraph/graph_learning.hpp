#ifndef AIRGRAPH_GRAPH_LEARNING_HPP
#define AIRGRAPH_GRAPH_LEARNING_HPP

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "airgraph/graph_core.hpp"
#include "airgraph/pipeline_io.hpp"

namespace airgraph {

/// Hyperparameters and stopping rules for smoothness-based graph learning.
struct SmoothLearnConfig {
    double alpha = 1.0;     ///< smoothness weight
    double beta = 1.0;      ///< Frobenius/sparsity weight
    int max_outer_iters = 50;
    double rel_tol = 1e-4;  ///< relative objective change between outer iterations
    int qp_max_iters = 2000;
    double qp_tol = 1e-8;   ///< projected-gradient norm

    void validate() const;
};

struct GraphLearnResult {
    LaplacianMatrix laplacian;
    Eigen::MatrixXd filtered;            ///< the smoothed observations Y
    std::vector<double> objective_trace; ///< full objective after each alternation
    bool converged = false;
};

/// Smoothed-signal update with the graph fixed: each row y of the result
/// solves (I + alpha*L) y = x via an SPD factorization.
Eigen::MatrixXd y_step(const Eigen::MatrixXd& x, const LaplacianMatrix& l, double alpha);

/// Graph update with the signals fixed: minimizes
/// alpha*tr(Y'LY) + beta*||L||_F^2 over valid Laplacians with tr(L) = N,
/// parametrized by the upper-triangle weights w >= 0 with sum(w) = N/2.
/// Solved by projected gradient on the scaled simplex. `initial_weights`
/// warm-starts the solver (packed upper triangle, row-major i<j).
/// `qp_converged`, when given, receives the solver status.
LaplacianMatrix l_step(const Eigen::MatrixXd& y, double alpha, double beta,
                       const SmoothLearnConfig& cfg,
                       const std::optional<Eigen::VectorXd>& initial_weights = std::nullopt,
                       bool* qp_converged = nullptr,
                       Eigen::VectorXd* final_weights = nullptr);

/// Full objective ||X - Y||_F^2 + alpha*tr(Y'LY) + beta*||L||_F^2.
double learn_objective(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                       const LaplacianMatrix& l, double alpha, double beta);

/// Alternating minimization over Y and L. Input must be standardized and
/// complete; constant columns are rejected. Deterministic given the
/// config (fixed initialization Y = X, no randomness).
GraphLearnResult learn_graph(const Eigen::MatrixXd& x, const SmoothLearnConfig& cfg);

/// TimeSeriesMatrix front end; throws missing_data_error when the mask
/// has any false entry.
GraphLearnResult learn_graph(const TimeSeriesMatrix& x, const SmoothLearnConfig& cfg);

} // namespace airgraph

#endif // AIRGRAPH_GRAPH_LEARNING_HPP
