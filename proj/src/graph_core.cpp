#include "airgraph/graph_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace airgraph {

WeightMatrix::WeightMatrix(const Eigen::MatrixXd& w) {
    if (w.rows() != w.cols()) {
        throw dimension_mismatch_error("weight matrix must be square");
    }
    const Eigen::Index n = w.rows();
    w_ = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (w(i, i) != 0.0) {
            throw invalid_config_error("weight matrix diagonal must be zero");
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = w(i, j);
            if (!(v >= 0.0)) {
                throw invalid_config_error("weights must be nonnegative and finite");
            }
            w_(i, j) = v;
            w_(j, i) = v;
        }
    }
}

LaplacianMatrix::LaplacianMatrix(const Eigen::MatrixXd& l) {
    if (l.rows() != l.cols()) {
        throw dimension_mismatch_error("Laplacian must be square");
    }
    const Eigen::Index n = l.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (l(i, i) < -kLaplacianOffDiagTol) {
            throw invalid_config_error("Laplacian diagonal entries must be nonnegative");
        }
        double row_sum = l(i, i);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            if (std::abs(l(i, j) - l(j, i)) > kLaplacianSymmetryTol) {
                throw invalid_config_error("Laplacian is not symmetric");
            }
            if (l(i, j) > kLaplacianOffDiagTol) {
                throw invalid_config_error("Laplacian off-diagonal entries must be nonpositive");
            }
            row_sum += l(i, j);
        }
        if (std::abs(row_sum) > kLaplacianRowSumTol) {
            throw invalid_config_error("Laplacian row sums must be zero");
        }
    }
    // Canonical storage: exact symmetry from the upper triangle.
    l_ = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        l_(i, i) = l(i, i);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            l_(i, j) = l(i, j);
            l_(j, i) = l(i, j);
        }
    }
}

WeightMatrix LaplacianMatrix::weights() const {
    const Eigen::Index n = l_.rows();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            w(i, j) = std::max(-l_(i, j), 0.0);
            w(j, i) = w(i, j);
        }
    }
    return WeightMatrix(w);
}

EigenDecomposition::EigenDecomposition(Eigen::VectorXd eigenvalues,
                                       Eigen::MatrixXd eigenvectors)
    : eigenvalues_(std::move(eigenvalues)), eigenvectors_(std::move(eigenvectors)) {
    if (eigenvectors_.rows() != eigenvectors_.cols() ||
        eigenvectors_.rows() != eigenvalues_.size()) {
        throw dimension_mismatch_error("eigendecomposition shape mismatch");
    }
    for (Eigen::Index i = 1; i < eigenvalues_.size(); ++i) {
        if (eigenvalues_(i) < eigenvalues_(i - 1)) {
            throw invalid_config_error("eigenvalues must be nondecreasing");
        }
    }
}

GraphSignal::GraphSignal(Eigen::VectorXd v, std::vector<bool> m)
    : values(std::move(v)), mask(std::move(m)) {
    if (static_cast<size_t>(values.size()) != mask.size()) {
        throw dimension_mismatch_error("signal values/mask length mismatch");
    }
}

SamplingPattern::SamplingPattern(std::vector<int> observed, int n) : n_(n) {
    if (n <= 0) {
        throw invalid_config_error("pattern requires at least one node");
    }
    if (observed.empty()) {
        throw invalid_config_error("pattern requires at least one observed node");
    }
    std::sort(observed.begin(), observed.end());
    observed.erase(std::unique(observed.begin(), observed.end()), observed.end());
    if (observed.front() < 0 || observed.back() >= n) {
        throw invalid_config_error("observed index out of range");
    }
    observed_ = std::move(observed);
    unobserved_.reserve(n - observed_.size());
    size_t k = 0;
    for (int i = 0; i < n; ++i) {
        if (k < observed_.size() && observed_[k] == i) {
            ++k;
        } else {
            unobserved_.push_back(i);
        }
    }
}

SamplingPattern SamplingPattern::from_mask(const std::vector<bool>& mask) {
    std::vector<int> observed;
    for (size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) observed.push_back(static_cast<int>(i));
    }
    if (observed.empty()) {
        throw all_nodes_missing_error("signal has no observed nodes");
    }
    return SamplingPattern(std::move(observed), static_cast<int>(mask.size()));
}

LaplacianMatrix laplacian_from_weights(const WeightMatrix& w) {
    const Eigen::Index n = w.size();
    Eigen::MatrixXd l = -w.matrix();
    for (Eigen::Index i = 0; i < n; ++i) {
        l(i, i) = w.matrix().row(i).sum();
    }
    return LaplacianMatrix(l);
}

EigenDecomposition eigendecompose(const LaplacianMatrix& l) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l.matrix());
    if (solver.info() != Eigen::Success) {
        throw decomposition_failure_error("symmetric eigensolver did not converge");
    }
    Eigen::VectorXd values = solver.eigenvalues();
    Eigen::MatrixXd vectors = solver.eigenvectors();
    // First nonzero component of each eigenvector positive, so coefficient
    // vectors are reproducible across platforms.
    const Eigen::Index n = values.size();
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            const double v = vectors(r, c);
            if (v != 0.0) {
                if (v < 0.0) vectors.col(c) = -vectors.col(c);
                break;
            }
        }
    }
    return EigenDecomposition(std::move(values), std::move(vectors));
}

double smoothness(const LaplacianMatrix& l, const Eigen::VectorXd& x) {
    if (x.size() != l.size()) {
        throw dimension_mismatch_error("signal length does not match Laplacian size");
    }
    return x.dot(l.matrix() * x);
}

std::vector<Edge> edge_set(const WeightMatrix& w, double tau) {
    if (tau < 0.0) {
        throw invalid_config_error("edge threshold must be nonnegative");
    }
    std::vector<Edge> edges;
    const Eigen::Index n = w.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (w(i, j) > tau) {
                edges.push_back(Edge{static_cast<int>(i), static_cast<int>(j), w(i, j)});
            }
        }
    }
    return edges;
}

void save_graph_json(const std::string& path, const WeightMatrix& w,
                     const std::vector<std::string>& node_ids, double tau) {
    if (static_cast<Eigen::Index>(node_ids.size()) != w.size()) {
        throw dimension_mismatch_error("node id count does not match graph size");
    }
    nlohmann::json doc;
    doc["n"] = w.size();
    doc["nodes"] = node_ids;
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : edge_set(w, tau)) {
        edges.push_back({{"i", e.i}, {"j", e.j}, {"w", e.weight}});
    }
    doc["edges"] = std::move(edges);
    std::ofstream out(path);
    if (!out) {
        throw io_error("cannot open for writing: " + path);
    }
    out << doc.dump(2) << '\n';
}

LoadedGraph load_graph_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open for reading: " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    try {
        const int n = doc.at("n").get<int>();
        auto node_ids = doc.at("nodes").get<std::vector<std::string>>();
        if (static_cast<int>(node_ids.size()) != n) {
            throw parse_error(path + ": node list length does not match n");
        }
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
        for (const auto& e : doc.at("edges")) {
            const int i = e.at("i").get<int>();
            const int j = e.at("j").get<int>();
            if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
                throw parse_error(path + ": edge endpoint out of range");
            }
            w(i, j) = e.at("w").get<double>();
            w(j, i) = w(i, j);
        }
        return LoadedGraph{WeightMatrix(w), std::move(node_ids)};
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
}

} // namespace airgraph
