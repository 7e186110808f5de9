#include "airgraph/reconstruction.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace airgraph {

namespace {

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
    return out;
}

} // namespace

std::string method_name(MethodKind kind) {
    switch (kind) {
        case MethodKind::LAP_INT: return "lapint";
        case MethodKind::GSP_LOWPASS: return "gsp";
        case MethodKind::KRR_DIFF: return "krr-diff";
        case MethodKind::KRR_COV: return "krr-cov";
    }
    throw invalid_config_error("unknown method kind");
}

MethodKind method_from_name(const std::string& name) {
    if (name == "lapint") return MethodKind::LAP_INT;
    if (name == "gsp") return MethodKind::GSP_LOWPASS;
    if (name == "krr-diff") return MethodKind::KRR_DIFF;
    if (name == "krr-cov") return MethodKind::KRR_COV;
    throw invalid_config_error("unknown method '" + name +
                               "' (expected lapint|gsp|krr-diff|krr-cov)");
}

MethodSpec MethodSpec::lap_int() { return MethodSpec{MethodKind::LAP_INT, {}, {}, {}}; }
MethodSpec MethodSpec::gsp(int k) { return MethodSpec{MethodKind::GSP_LOWPASS, k, {}, {}}; }
MethodSpec MethodSpec::krr_diff(double mu, double sigma2) {
    return MethodSpec{MethodKind::KRR_DIFF, {}, mu, sigma2};
}
MethodSpec MethodSpec::krr_cov(double mu) {
    return MethodSpec{MethodKind::KRR_COV, {}, mu, {}};
}

void MethodSpec::validate() const {
    switch (kind) {
        case MethodKind::LAP_INT:
            return;
        case MethodKind::GSP_LOWPASS:
            if (!k || *k < 1) {
                throw invalid_config_error("GSP requires bandwidth K >= 1");
            }
            return;
        case MethodKind::KRR_DIFF:
            if (!mu || !(*mu > 0.0)) {
                throw invalid_config_error("KRR-DIFF requires mu > 0");
            }
            if (!sigma2 || !(*sigma2 >= 0.0)) {
                throw invalid_config_error("KRR-DIFF requires sigma2 >= 0");
            }
            return;
        case MethodKind::KRR_COV:
            if (!mu || !(*mu > 0.0)) {
                throw invalid_config_error("KRR-COV requires mu > 0");
            }
            return;
    }
    throw invalid_config_error("unknown method kind");
}

KernelMatrix::KernelMatrix(const Eigen::MatrixXd& k) {
    if (k.rows() != k.cols()) {
        throw dimension_mismatch_error("kernel matrix must be square");
    }
    if (((k - k.transpose()).array().abs() > 1e-10).any()) {
        throw invalid_config_error("kernel matrix is not symmetric");
    }
    k_ = 0.5 * (k + k.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw decomposition_failure_error("kernel eigenvalue check failed");
    }
    if (solver.eigenvalues().minCoeff() <= -1e-8) {
        throw invalid_config_error("kernel matrix is not positive semidefinite");
    }
}

LinearReconstructor fit_lap_int(const LaplacianMatrix& l, const SamplingPattern& p) {
    if (p.n() != l.size()) {
        throw dimension_mismatch_error("pattern size does not match Laplacian");
    }
    const auto& u = p.unobserved();
    const auto& m = p.observed();
    LinearReconstructor out{Eigen::MatrixXd(u.size(), m.size()), p, MethodSpec::lap_int()};
    if (u.empty()) return out;

    const Eigen::MatrixXd luu = submatrix(l.matrix(), u, u);
    const Eigen::MatrixXd lum = submatrix(l.matrix(), u, m);
    const auto solve_ok = [&](const Eigen::MatrixXd& a, Eigen::MatrixXd& beta) {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
        if (ldlt.info() != Eigen::Success) return false;
        beta = ldlt.solve(-lum);
        if (!beta.allFinite()) return false;
        const double residual = (a * beta + lum).cwiseAbs().maxCoeff();
        const double scale = std::max(1.0, lum.cwiseAbs().maxCoeff());
        return residual <= 1e-6 * scale;
    };
    if (!solve_ok(luu, out.beta)) {
        // L_UU may be singular, e.g. an unobserved node disconnected from
        // every observed one. Retry with a small ridge and flag it.
        out.ridge_applied = true;
        const Eigen::MatrixXd ridged =
            luu + 1e-8 * Eigen::MatrixXd::Identity(luu.rows(), luu.cols());
        Eigen::LDLT<Eigen::MatrixXd> ldlt(ridged);
        if (ldlt.info() != Eigen::Success) {
            throw singular_submatrix_error("L_UU singular even after ridge");
        }
        out.beta = ldlt.solve(-lum);
        if (!out.beta.allFinite()) {
            throw singular_submatrix_error("L_UU singular even after ridge");
        }
    }
    return out;
}

LinearReconstructor fit_gsp(const EigenDecomposition& eig, const SamplingPattern& p, int k) {
    if (p.n() != eig.size()) {
        throw dimension_mismatch_error("pattern size does not match eigensystem");
    }
    if (k < 1) {
        throw invalid_config_error("GSP bandwidth must be at least 1");
    }
    if (k > p.n_observed()) {
        throw bandwidth_too_large_error("bandwidth " + std::to_string(k) +
                                        " exceeds observed count " +
                                        std::to_string(p.n_observed()));
    }
    const auto& u = p.unobserved();
    const auto& m = p.observed();
    LinearReconstructor out{Eigen::MatrixXd(u.size(), m.size()), p, MethodSpec::gsp(k)};
    if (u.empty()) return out;

    Eigen::MatrixXd u_mk(m.size(), k);
    Eigen::MatrixXd u_uk(u.size(), k);
    for (size_t r = 0; r < m.size(); ++r) u_mk.row(r) = eig.eigenvectors().row(m[r]).head(k);
    for (size_t r = 0; r < u.size(); ++r) u_uk.row(r) = eig.eigenvectors().row(u[r]).head(k);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(u_mk, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = 1e-10 * sv.maxCoeff();
    Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            inv_sv(i) = 1.0 / sv(i);
            ++rank;
        }
    }
    out.rank_deficient = rank < k;
    const Eigen::MatrixXd pinv =
        svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
    out.beta = u_uk * pinv;
    return out;
}

KernelMatrix diffusion_kernel(const EigenDecomposition& eig, double sigma2) {
    if (!(sigma2 >= 0.0)) {
        throw invalid_config_error("sigma2 must be nonnegative");
    }
    const Eigen::Index n = eig.size();
    if (sigma2 == 0.0) {
        return KernelMatrix(Eigen::MatrixXd::Identity(n, n));
    }
    const Eigen::VectorXd filt = (-0.5 * sigma2 * eig.eigenvalues().array()).exp();
    Eigen::MatrixXd k =
        eig.eigenvectors() * filt.asDiagonal() * eig.eigenvectors().transpose();
    return KernelMatrix(0.5 * (k + k.transpose()));
}

LinearReconstructor fit_krr(const KernelMatrix& kernel, const SamplingPattern& p, double mu) {
    if (p.n() != kernel.size()) {
        throw dimension_mismatch_error("pattern size does not match kernel");
    }
    if (!(mu > 0.0)) {
        throw invalid_config_error("mu must be positive");
    }
    const auto& u = p.unobserved();
    const auto& m = p.observed();
    LinearReconstructor out{Eigen::MatrixXd(u.size(), m.size()), p,
                            MethodSpec::krr_cov(mu)};
    if (u.empty()) return out;

    Eigen::MatrixXd kmm = submatrix(kernel.matrix(), m, m);
    kmm.diagonal().array() += mu * static_cast<double>(m.size());
    const Eigen::MatrixXd kum = submatrix(kernel.matrix(), u, m);
    Eigen::LLT<Eigen::MatrixXd> llt(kmm);
    if (llt.info() != Eigen::Success) {
        throw solve_failure_error("K_MM + mu*M*I is not positive definite");
    }
    out.beta = llt.solve(kum.transpose()).transpose();
    if (!out.beta.allFinite()) {
        throw solve_failure_error("KRR solve produced non-finite coefficients");
    }
    return out;
}

Eigen::VectorXd reconstruct(const LinearReconstructor& r, const Eigen::VectorXd& x_m) {
    if (x_m.size() != r.beta.cols()) {
        throw dimension_mismatch_error("observed vector length does not match pattern");
    }
    return r.beta * x_m;
}

ReconstructionInputs ReconstructionInputs::from_laplacian(const LaplacianMatrix& l) {
    ReconstructionInputs inputs;
    inputs.laplacian = l;
    return inputs;
}

const EigenDecomposition& ReconstructionInputs::eigensystem() {
    if (!eigs) {
        if (!laplacian) {
            throw invalid_config_error("no Laplacian available to decompose");
        }
        eigs = eigendecompose(*laplacian);
    }
    return *eigs;
}

LinearReconstructor fit_method(const MethodSpec& method, ReconstructionInputs& inputs,
                               const SamplingPattern& pattern) {
    method.validate();
    switch (method.kind) {
        case MethodKind::LAP_INT: {
            if (!inputs.laplacian) {
                throw invalid_config_error("Laplacian interpolation needs a Laplacian");
            }
            return fit_lap_int(*inputs.laplacian, pattern);
        }
        case MethodKind::GSP_LOWPASS:
            return fit_gsp(inputs.eigensystem(), pattern, *method.k);
        case MethodKind::KRR_DIFF: {
            const KernelMatrix kernel = diffusion_kernel(inputs.eigensystem(), *method.sigma2);
            LinearReconstructor fit = fit_krr(kernel, pattern, *method.mu);
            fit.method = method;
            return fit;
        }
        case MethodKind::KRR_COV: {
            if (!inputs.covariance) {
                throw invalid_config_error("KRR-COV needs an estimated covariance kernel");
            }
            LinearReconstructor fit = fit_krr(*inputs.covariance, pattern, *method.mu);
            fit.method = method;
            return fit;
        }
    }
    throw invalid_config_error("unknown method kind");
}

Eigen::VectorXd reconstruct_with_pattern(const MethodSpec& method,
                                         ReconstructionInputs& inputs,
                                         const SamplingPattern& pattern,
                                         const Eigen::VectorXd& observed_values) {
    if (observed_values.size() != pattern.n_observed()) {
        throw dimension_mismatch_error("observed value length does not match pattern");
    }
    Eigen::VectorXd full(pattern.n());
    for (int i = 0; i < pattern.n_observed(); ++i) {
        full(pattern.observed()[i]) = observed_values(i);
    }
    if (pattern.n_unobserved() == 0) return full;
    const LinearReconstructor fit = fit_method(method, inputs, pattern);
    const Eigen::VectorXd filled = reconstruct(fit, observed_values);
    for (int i = 0; i < pattern.n_unobserved(); ++i) {
        full(pattern.unobserved()[i]) = filled(i);
    }
    return full;
}

Eigen::VectorXd reconstruct_signal(const MethodSpec& method, ReconstructionInputs& inputs,
                                   const GraphSignal& signal) {
    const SamplingPattern pattern = SamplingPattern::from_mask(signal.mask);
    Eigen::VectorXd observed(pattern.n_observed());
    for (int i = 0; i < pattern.n_observed(); ++i) {
        observed(i) = signal.values(pattern.observed()[i]);
    }
    return reconstruct_with_pattern(method, inputs, pattern, observed);
}

} // namespace airgraph
