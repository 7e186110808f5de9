#ifndef AIRGRAPH_GRAPH_CORE_HPP
#define AIRGRAPH_GRAPH_CORE_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "airgraph/errors.hpp"

namespace airgraph {

/// Validity tolerances for Laplacian matrices produced anywhere in the
/// library. Solver output is approximate, exact zeros are not expected.
inline constexpr double kLaplacianSymmetryTol = 1e-10;
inline constexpr double kLaplacianRowSumTol = 1e-8;
inline constexpr double kLaplacianOffDiagTol = 1e-10;

/// Default threshold on standardized-data weight scale below which an
/// entry of W does not count as an edge.
inline constexpr double kDefaultEdgeThreshold = 1e-4;

/// Symmetric nonnegative weight matrix with zero diagonal. Stored
/// canonically from the upper triangle so symmetry is exact.
class WeightMatrix {
public:
    /// Builds the canonical symmetric matrix from the upper triangle of
    /// `w`. Throws invalid_config_error on negative weights or a nonzero
    /// diagonal, dimension_mismatch_error if `w` is not square.
    explicit WeightMatrix(const Eigen::MatrixXd& w);

    Eigen::Index size() const { return w_.rows(); }
    const Eigen::MatrixXd& matrix() const { return w_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return w_(i, j); }

private:
    Eigen::MatrixXd w_;
};

/// Combinatorial graph Laplacian L = D - W. Symmetric, zero row sums,
/// nonpositive off-diagonal entries.
class LaplacianMatrix {
public:
    /// Validates against the module tolerances; throws invalid_config_error
    /// when a constraint is violated.
    explicit LaplacianMatrix(const Eigen::MatrixXd& l);

    Eigen::Index size() const { return l_.rows(); }
    const Eigen::MatrixXd& matrix() const { return l_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return l_(i, j); }

    /// Weight matrix recovered from the off-diagonal entries,
    /// w[i][j] = max(-l[i][j], 0).
    WeightMatrix weights() const;

private:
    Eigen::MatrixXd l_;
};

/// Ordered spectral data of a Laplacian: ascending eigenvalues paired
/// with orthonormal eigenvector columns. Sign convention: the first
/// nonzero component of each eigenvector is positive.
class EigenDecomposition {
public:
    EigenDecomposition(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors);

    Eigen::Index size() const { return eigenvalues_.size(); }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

/// One sample across the network: a value per node plus an observation
/// mask (true = observed). Masked-out entries are never read.
struct GraphSignal {
    Eigen::VectorXd values;
    std::vector<bool> mask;

    GraphSignal() = default;
    GraphSignal(Eigen::VectorXd v, std::vector<bool> m);

    Eigen::Index size() const { return values.size(); }
};

/// Sorted observed/unobserved index sets partitioning {0..N-1}.
class SamplingPattern {
public:
    /// `observed` need not be sorted; it is canonicalized. Throws
    /// invalid_config_error when empty, out of range or duplicated.
    SamplingPattern(std::vector<int> observed, int n);

    /// Pattern induced by a signal mask (true = observed).
    static SamplingPattern from_mask(const std::vector<bool>& mask);

    int n() const { return n_; }
    const std::vector<int>& observed() const { return observed_; }
    const std::vector<int>& unobserved() const { return unobserved_; }
    int n_observed() const { return static_cast<int>(observed_.size()); }
    int n_unobserved() const { return static_cast<int>(unobserved_.size()); }

private:
    int n_ = 0;
    std::vector<int> observed_;
    std::vector<int> unobserved_;
};

struct Edge {
    int i;
    int j;
    double weight;
};

/// L = D - W with D the diagonal degree matrix.
LaplacianMatrix laplacian_from_weights(const WeightMatrix& w);

/// Full symmetric eigendecomposition of L with ascending eigenvalues and
/// the deterministic sign convention. Throws decomposition_failure_error
/// if the eigensolver does not converge.
EigenDecomposition eigendecompose(const LaplacianMatrix& l);

/// Quadratic form x' L x.
double smoothness(const LaplacianMatrix& l, const Eigen::VectorXd& x);

/// Upper-triangle pairs with w[i][j] > tau; the count is the #edges
/// statistic reported by the evaluation pipeline.
std::vector<Edge> edge_set(const WeightMatrix& w, double tau = kDefaultEdgeThreshold);

/// Graph persistence. The JSON document stores node ids and the edge
/// list; weights below `tau` are dropped on save. Floats round-trip
/// exactly.
void save_graph_json(const std::string& path, const WeightMatrix& w,
                     const std::vector<std::string>& node_ids,
                     double tau = kDefaultEdgeThreshold);

struct LoadedGraph {
    WeightMatrix weights;
    std::vector<std::string> node_ids;
};

LoadedGraph load_graph_json(const std::string& path);

} // namespace airgraph

#endif // AIRGRAPH_GRAPH_CORE_HPP
