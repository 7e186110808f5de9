#ifndef AIRGRAPH_COVARIANCE_HPP
#define AIRGRAPH_COVARIANCE_HPP

#include <Eigen/Dense>

#include <vector>

#include "airgraph/graph_core.hpp"

namespace airgraph {

/// Regularized covariance / precision pair from the graphical lasso.
/// `sigma` (= Theta^-1 at convergence) doubles as the KRR-COV kernel.
struct CovarianceEstimate {
    Eigen::MatrixXd sigma;
    Eigen::MatrixXd theta;
    double lambda = 0.0;
    bool converged = false;
    std::vector<double> objective_trace; ///< -log det W after each sweep
};

/// Sample covariance with 1/(P-1) normalization.
Eigen::MatrixXd empirical_covariance(const Eigen::MatrixXd& x);

/// L1-penalized maximum-likelihood precision estimation by block
/// coordinate descent over columns with lasso subproblems. Non-convergence
/// is reported through the flag, not an exception, so callers can skip
/// unstable grid cells. Throws non_pd_input_error when S + lambda*I is
/// not positive definite.
CovarianceEstimate graphical_lasso(const Eigen::MatrixXd& s, double lambda,
                                   double tol = 1e-6, int max_iters = 500);

/// Support of the precision matrix as a weight matrix: |theta_ij| above
/// tau, zero diagonal. Used for the edge-count statistic of KRR-COV.
WeightMatrix precision_to_adjacency(const Eigen::MatrixXd& theta,
                                    double tau = kDefaultEdgeThreshold);

} // namespace airgraph

#endif // AIRGRAPH_COVARIANCE_HPP
