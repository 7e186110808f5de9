#ifndef AIRGRAPH_RECONSTRUCTION_HPP
#define AIRGRAPH_RECONSTRUCTION_HPP

#include <Eigen/Dense>

#include <optional>
#include <string>

#include "airgraph/graph_core.hpp"

namespace airgraph {

enum class MethodKind { LAP_INT, GSP_LOWPASS, KRR_DIFF, KRR_COV };

std::string method_name(MethodKind kind);
MethodKind method_from_name(const std::string& name);

/// Reconstruction method plus its hyperparameters. Laplacian
/// interpolation takes none, GSP takes the bandwidth K, KRR-DIFF takes
/// mu and sigma^2, KRR-COV takes mu.
struct MethodSpec {
    MethodKind kind = MethodKind::LAP_INT;
    std::optional<int> k;         ///< GSP bandwidth
    std::optional<double> mu;     ///< KRR ridge
    std::optional<double> sigma2; ///< diffusion kernel scale

    static MethodSpec lap_int();
    static MethodSpec gsp(int k);
    static MethodSpec krr_diff(double mu, double sigma2);
    static MethodSpec krr_cov(double mu);

    /// Throws invalid_config_error when a required hyperparameter is
    /// absent or out of range for the chosen kind.
    void validate() const;
};

/// Symmetric positive semidefinite kernel over the vertex set.
class KernelMatrix {
public:
    explicit KernelMatrix(const Eigen::MatrixXd& k);

    Eigen::Index size() const { return k_.rows(); }
    const Eigen::MatrixXd& matrix() const { return k_; }

private:
    Eigen::MatrixXd k_;
};

/// Fitted linear form x_U = beta * x_M for one sampling pattern. Fits are
/// transductive: a changed pattern requires a refit.
struct LinearReconstructor {
    Eigen::MatrixXd beta; ///< |U| x |M|
    SamplingPattern pattern;
    MethodSpec method;
    bool ridge_applied = false;   ///< L_UU was singular, 1e-8 ridge added
    bool rank_deficient = false;  ///< U_MK needed a truncated pseudoinverse
};

/// Laplacian interpolation: beta solves L_UU beta = -L_UM. A singular
/// L_UU gets a 1e-8 ridge and sets `ridge_applied`; if the ridged system
/// still fails, throws singular_submatrix_error.
LinearReconstructor fit_lap_int(const LaplacianMatrix& l, const SamplingPattern& p);

/// Low-pass GSP reconstruction with bandwidth k: beta = U_UK pinv(U_MK).
/// Requires 1 <= k <= |M|; a numerically rank-deficient U_MK is handled
/// with a truncated-SVD pseudoinverse (1e-10 relative cutoff) and flagged.
LinearReconstructor fit_gsp(const EigenDecomposition& eig, const SamplingPattern& p, int k);

/// Diffusion kernel K = U diag(exp(-sigma2*lambda/2)) U'. sigma2 = 0
/// yields exactly the identity.
KernelMatrix diffusion_kernel(const EigenDecomposition& eig, double sigma2);

/// Kernel ridge regression: beta = K[U,M] (K[M,M] + mu*|M|*I)^-1. Serves
/// both the diffusion kernel and the estimated-covariance kernel.
LinearReconstructor fit_krr(const KernelMatrix& kernel, const SamplingPattern& p, double mu);

/// beta * x_m.
Eigen::VectorXd reconstruct(const LinearReconstructor& r, const Eigen::VectorXd& x_m);

/// Precomputed per-graph inputs for dispatching any method. Eigensystems
/// and kernels are reused across patterns; they must be treated as
/// read-only once built.
struct ReconstructionInputs {
    std::optional<LaplacianMatrix> laplacian;
    std::optional<EigenDecomposition> eigs;
    std::optional<KernelMatrix> covariance; ///< KRR-COV kernel

    static ReconstructionInputs from_laplacian(const LaplacianMatrix& l);

    /// Eigendecomposition, computed from the Laplacian on first use.
    const EigenDecomposition& eigensystem();
};

/// Derives the pattern from the signal mask, fits the requested method
/// and splices reconstructed values into the unobserved slots. Observed
/// entries pass through untouched.
Eigen::VectorXd reconstruct_signal(const MethodSpec& method, ReconstructionInputs& inputs,
                                   const GraphSignal& signal);

/// Pattern-level variant used when the caller manages standardization:
/// fits on demand and returns the full-length spliced vector.
Eigen::VectorXd reconstruct_with_pattern(const MethodSpec& method,
                                         ReconstructionInputs& inputs,
                                         const SamplingPattern& pattern,
                                         const Eigen::VectorXd& observed_values);

/// Fits one method against precomputed inputs for a given pattern.
LinearReconstructor fit_method(const MethodSpec& method, ReconstructionInputs& inputs,
                               const SamplingPattern& pattern);

} // namespace airgraph

#endif // AIRGRAPH_RECONSTRUCTION_HPP
