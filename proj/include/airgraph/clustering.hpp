#ifndef AIRGRAPH_CLUSTERING_HPP
#define AIRGRAPH_CLUSTERING_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "airgraph/graph_core.hpp"
#include "airgraph/graph_learning.hpp"
#include "airgraph/pipeline_io.hpp"
#include "airgraph/reconstruction.hpp"

namespace airgraph {

/// Partition of the node set into C nonempty clusters.
class ClusterAssignment {
public:
    ClusterAssignment(std::vector<int> labels, int c);

    int n() const { return static_cast<int>(labels_.size()); }
    int c() const { return c_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<std::vector<int>>& member_lists() const { return members_; }

    /// 1 - largest cluster size / N: the fraction by which the dominant
    /// graph-learning problem shrinks.
    double problem_size_reduction() const;

    void save_json(const std::string& path) const;
    static ClusterAssignment load_json(const std::string& path);

private:
    int c_ = 0;
    std::vector<int> labels_;
    std::vector<std::vector<int>> members_;
};

/// Agglomerative clustering of the N column time-series (points in R^P)
/// with Euclidean distance and Ward linkage, Lance-Williams updates and a
/// deterministic smallest-index tie-break.
ClusterAssignment hierarchical_cluster(const Eigen::MatrixXd& x, int c);

struct ClusterScore {
    int c;
    double calinski_harabasz;
    bool degenerate = false; ///< zero within-cluster dispersion
};

/// Calinski-Harabasz index for each candidate cluster count; the caller
/// picks the argmax.
std::vector<ClusterScore> score_cluster_count(const Eigen::MatrixXd& x,
                                              const std::vector<int>& c_range);

struct ClusterwiseLearnResult {
    std::vector<GraphLearnResult> per_cluster;
    std::vector<bool> singleton; ///< clusters of size 1 get a 1x1 zero Laplacian
    LaplacianMatrix block_diagonal;
};

/// Learns one graph per cluster and assembles the block-diagonal
/// Laplacian under the original node ordering. `configs` holds either one
/// config applied to every cluster or one per cluster.
ClusterwiseLearnResult clusterwise_learn(const Eigen::MatrixXd& x,
                                         const ClusterAssignment& assignment,
                                         const std::vector<SmoothLearnConfig>& configs);

/// Reconstructs a raw sample cluster by cluster: derive the unobserved
/// set from the mask, standardize, reconstruct each cluster's unobserved
/// members from that cluster's observed members only, unstandardize.
/// Observed entries pass through exactly. Throws
/// cluster_unobserved_error naming any cluster whose unobserved members
/// have no observed neighbor.
Eigen::VectorXd clusterwise_reconstruct(std::vector<ReconstructionInputs>& cluster_inputs,
                                        const ClusterAssignment& assignment,
                                        const MethodSpec& method, const GraphSignal& sample,
                                        const StandardizationParams& params);

/// Per-cluster method variant (Algorithm hyperparameters indexed by
/// cluster).
Eigen::VectorXd clusterwise_reconstruct(std::vector<ReconstructionInputs>& cluster_inputs,
                                        const ClusterAssignment& assignment,
                                        const std::vector<MethodSpec>& methods,
                                        const GraphSignal& sample,
                                        const StandardizationParams& params);

} // namespace airgraph

#endif // AIRGRAPH_CLUSTERING_HPP
