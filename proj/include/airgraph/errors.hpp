#ifndef AIRGRAPH_ERRORS_HPP
#define AIRGRAPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace airgraph {

/// Base class for all library errors. Carries a short machine-readable
/// name alongside the human-readable message.
class error : public std::runtime_error {
public:
    error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Invalid configuration or argument values (nonpositive hyperparameters,
/// mismatched dimensions, out-of-range cluster counts, ...).
class invalid_config_error : public error {
public:
    explicit invalid_config_error(const std::string& what)
        : error("invalid-config", what) {}
};

class dimension_mismatch_error : public error {
public:
    explicit dimension_mismatch_error(const std::string& what)
        : error("dimension-mismatch", what) {}
};

/// Input that was required to be complete carries masked-out entries.
class missing_data_error : public error {
public:
    explicit missing_data_error(const std::string& what)
        : error("missing-data", what) {}
};

/// A linear solve or decomposition failed on numerically pathological input.
class solve_failure_error : public error {
public:
    explicit solve_failure_error(const std::string& what)
        : error("solve-failure", what) {}
};

class decomposition_failure_error : public error {
public:
    explicit decomposition_failure_error(const std::string& what)
        : error("decomposition-failure", what) {}
};

/// L_UU (or a ridge-regularized version of it) could not be inverted.
class singular_submatrix_error : public error {
public:
    explicit singular_submatrix_error(const std::string& what)
        : error("singular-submatrix", what) {}
};

class bandwidth_too_large_error : public error {
public:
    explicit bandwidth_too_large_error(const std::string& what)
        : error("bandwidth-too-large", what) {}
};

class zero_variance_error : public error {
public:
    explicit zero_variance_error(const std::string& what)
        : error("zero-variance-column", what) {}
};

class insufficient_samples_error : public error {
public:
    explicit insufficient_samples_error(const std::string& what)
        : error("insufficient-samples", what) {}
};

class non_pd_input_error : public error {
public:
    explicit non_pd_input_error(const std::string& what)
        : error("non-pd-input", what) {}
};

class parse_error : public error {
public:
    explicit parse_error(const std::string& what) : error("parse-error", what) {}
};

class all_nodes_missing_error : public error {
public:
    explicit all_nodes_missing_error(const std::string& what)
        : error("all-nodes-missing", what) {}
};

class cluster_unobserved_error : public error {
public:
    explicit cluster_unobserved_error(const std::string& what)
        : error("cluster-fully-unobserved", what) {}
};

class all_cells_failed_error : public error {
public:
    explicit all_cells_failed_error(const std::string& what)
        : error("all-cells-failed", what) {}
};

class io_error : public error {
public:
    explicit io_error(const std::string& what) : error("io-error", what) {}
};

} // namespace airgraph

#endif // AIRGRAPH_ERRORS_HPP
