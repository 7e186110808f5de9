#ifndef AIRGRAPH_PIPELINE_IO_HPP
#define AIRGRAPH_PIPELINE_IO_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "airgraph/errors.hpp"

namespace airgraph {

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// P x N observation matrix with per-cell observation mask. Missing cells
/// (mask false) hold NaN and are never read as data.
struct TimeSeriesMatrix {
    std::vector<std::string> timestamps; ///< length P, strictly increasing
    std::vector<std::string> node_ids;   ///< length N, unique
    Eigen::MatrixXd values;              ///< P x N
    BoolArray mask;                      ///< P x N, true = present
    std::vector<int> original_rows;      ///< row indices in the source file

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
    bool complete() const { return mask.all(); }

    /// Index of a node id; throws invalid_config_error when unknown.
    int node_index(const std::string& id) const;

    /// Row extracted as a GraphSignal-style pair (values + mask).
    Eigen::VectorXd row_values(Eigen::Index r) const { return values.row(r); }
    std::vector<bool> row_mask(Eigen::Index r) const;
};

/// Per-column standardization statistics computed from a designated row
/// subset (sample std, 1/(P-1) normalization).
struct StandardizationParams {
    Eigen::VectorXd means;
    Eigen::VectorXd stds;

    /// Fit over all rows of a complete matrix.
    static StandardizationParams fit(const Eigen::MatrixXd& x);
    /// Fit over the given rows only. Throws zero_variance_error when a
    /// column is constant on those rows, insufficient_samples_error when
    /// fewer than two rows are designated.
    static StandardizationParams fit(const Eigen::MatrixXd& x, const std::vector<int>& rows);
};

/// CSV ingestion. First column "timestamp" (ISO-8601), remaining columns
/// node ids; empty cell = missing. Rejects nonmonotonic or duplicate
/// timestamps and duplicate node ids.
TimeSeriesMatrix load_csv(const std::string& path);

/// Value-identical round-trip counterpart of load_csv (missing cells are
/// written as empty fields, floats with shortest round-trip form).
void save_csv(const std::string& path, const TimeSeriesMatrix& x);

/// Listwise deletion: rows with any missing cell removed; surviving rows
/// keep their original indices in `original_rows`. Throws
/// missing_data_error when a nonempty input has no complete rows.
TimeSeriesMatrix complete_rows(const TimeSeriesMatrix& x);

/// z = (v - mean) / std per column.
Eigen::MatrixXd standardize(const Eigen::MatrixXd& x, const StandardizationParams& p);
Eigen::MatrixXd unstandardize(const Eigen::MatrixXd& z, const StandardizationParams& p);
Eigen::VectorXd standardize_row(const Eigen::VectorXd& x, const StandardizationParams& p);
Eigen::VectorXd unstandardize_row(const Eigen::VectorXd& z, const StandardizationParams& p);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

} // namespace airgraph

#endif // AIRGRAPH_PIPELINE_IO_HPP
