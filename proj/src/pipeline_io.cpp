#include "airgraph/pipeline_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace airgraph {

namespace {

// Sort key for an ISO-8601 instant: YYYY-MM-DD, optionally followed by
// 'T' or ' ' and HH:MM[:SS]. Only ordering matters, not a true epoch.
int64_t timestamp_key(const std::string& s, int line) {
    auto fail = [&](const char* why) -> int64_t {
        throw parse_error("line " + std::to_string(line) + ", column 1: bad timestamp '" +
                          s + "' (" + why + ")");
    };
    auto digits = [&](size_t pos, size_t n) -> int64_t {
        if (pos + n > s.size()) fail("truncated");
        int64_t v = 0;
        for (size_t i = pos; i < pos + n; ++i) {
            if (s[i] < '0' || s[i] > '9') fail("expected digit");
            v = v * 10 + (s[i] - '0');
        }
        return v;
    };
    if (s.size() < 10) fail("too short");
    const int64_t y = digits(0, 4);
    if (s[4] != '-') fail("expected '-'");
    const int64_t mo = digits(5, 2);
    if (s[7] != '-') fail("expected '-'");
    const int64_t d = digits(8, 2);
    if (mo < 1 || mo > 12 || d < 1 || d > 31) fail("month/day out of range");
    int64_t hh = 0, mi = 0, ss = 0;
    if (s.size() > 10) {
        if (s[10] != 'T' && s[10] != ' ') fail("expected 'T' or ' '");
        hh = digits(11, 2);
        if (s.size() < 16 || s[13] != ':') fail("expected ':'");
        mi = digits(14, 2);
        if (s.size() > 16) {
            if (s[16] != ':') fail("expected ':'");
            ss = digits(17, 2);
            if (s.size() > 19) fail("trailing characters");
        }
        if (hh > 23 || mi > 59 || ss > 60) fail("time out of range");
    }
    // days_from_civil (Hinnant): bijective ordered day number.
    const int64_t yy = y - (mo <= 2 ? 1 : 0);
    const int64_t era = (yy >= 0 ? yy : yy - 399) / 400;
    const int64_t yoe = yy - era * 400;
    const int64_t doy = (153 * (mo + (mo > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    const int64_t days = era * 146097 + doe - 719468;
    return ((days * 24 + hh) * 60 + mi) * 60 + ss;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

int TimeSeriesMatrix::node_index(const std::string& id) const {
    for (size_t i = 0; i < node_ids.size(); ++i) {
        if (node_ids[i] == id) return static_cast<int>(i);
    }
    throw invalid_config_error("unknown node id: " + id);
}

std::vector<bool> TimeSeriesMatrix::row_mask(Eigen::Index r) const {
    std::vector<bool> m(cols());
    for (Eigen::Index j = 0; j < cols(); ++j) m[j] = mask(r, j);
    return m;
}

TimeSeriesMatrix load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open for reading: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw parse_error(path + ": empty file");
    }
    auto header = split_csv_line(line);
    if (header.empty() || header[0] != "timestamp") {
        throw parse_error(path + ": first header column must be 'timestamp'");
    }
    TimeSeriesMatrix out;
    out.node_ids.assign(header.begin() + 1, header.end());
    std::unordered_set<std::string> seen;
    for (const auto& id : out.node_ids) {
        if (id.empty()) {
            throw parse_error(path + ": empty node id in header");
        }
        if (!seen.insert(id).second) {
            throw error("duplicate-node-id", id);
        }
    }
    const Eigen::Index n = static_cast<Eigen::Index>(out.node_ids.size());

    std::vector<std::string> stamps;
    std::vector<std::vector<double>> rows;
    std::vector<std::vector<bool>> masks;
    int64_t prev_key = std::numeric_limits<int64_t>::min();
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (static_cast<Eigen::Index>(fields.size()) != n + 1) {
            throw parse_error("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(n + 1) + " fields, got " +
                              std::to_string(fields.size()));
        }
        const int64_t key = timestamp_key(fields[0], line_no);
        if (key <= prev_key) {
            throw error("nonmonotonic-timestamps",
                        "line " + std::to_string(line_no) + ": '" + fields[0] + "'");
        }
        prev_key = key;
        stamps.push_back(fields[0]);
        std::vector<double> vals(n);
        std::vector<bool> msk(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const std::string& f = fields[j + 1];
            if (f.empty()) {
                vals[j] = std::numeric_limits<double>::quiet_NaN();
                msk[j] = false;
            } else {
                double v = 0.0;
                auto res = std::from_chars(f.data(), f.data() + f.size(), v);
                if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
                    throw parse_error("line " + std::to_string(line_no) + ", column " +
                                      std::to_string(j + 2) + ": bad number '" + f + "'");
                }
                vals[j] = v;
                msk[j] = true;
            }
        }
        rows.push_back(std::move(vals));
        masks.push_back(std::move(msk));
    }

    const Eigen::Index p = static_cast<Eigen::Index>(rows.size());
    out.timestamps = std::move(stamps);
    out.values.resize(p, n);
    out.mask.resize(p, n);
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out.values(i, j) = rows[i][j];
            out.mask(i, j) = masks[i][j];
        }
    }
    out.original_rows.resize(p);
    for (Eigen::Index i = 0; i < p; ++i) out.original_rows[i] = static_cast<int>(i);
    return out;
}

void save_csv(const std::string& path, const TimeSeriesMatrix& x) {
    std::ofstream out(path);
    if (!out) {
        throw io_error("cannot open for writing: " + path);
    }
    out << "timestamp";
    for (const auto& id : x.node_ids) out << ',' << id;
    out << '\n';
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        out << x.timestamps[i];
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out << ',';
            if (x.mask(i, j)) out << format_double(x.values(i, j));
        }
        out << '\n';
    }
}

TimeSeriesMatrix complete_rows(const TimeSeriesMatrix& x) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        if (x.mask.row(i).all()) keep.push_back(i);
    }
    if (keep.empty() && x.rows() > 0) {
        throw missing_data_error("no complete rows after listwise deletion");
    }
    TimeSeriesMatrix out;
    out.node_ids = x.node_ids;
    const Eigen::Index p = static_cast<Eigen::Index>(keep.size());
    out.values.resize(p, x.cols());
    out.mask = BoolArray::Constant(p, x.cols(), true);
    out.timestamps.reserve(p);
    out.original_rows.reserve(p);
    for (Eigen::Index r = 0; r < p; ++r) {
        out.values.row(r) = x.values.row(keep[r]);
        out.timestamps.push_back(x.timestamps[keep[r]]);
        out.original_rows.push_back(x.original_rows[keep[r]]);
    }
    return out;
}

StandardizationParams StandardizationParams::fit(const Eigen::MatrixXd& x) {
    std::vector<int> rows(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) rows[i] = static_cast<int>(i);
    return fit(x, rows);
}

StandardizationParams StandardizationParams::fit(const Eigen::MatrixXd& x,
                                                 const std::vector<int>& rows) {
    if (rows.size() < 2) {
        throw insufficient_samples_error("standardization needs at least two rows");
    }
    const Eigen::Index n = x.cols();
    const double p = static_cast<double>(rows.size());
    StandardizationParams out;
    out.means.resize(n);
    out.stds.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int r : rows) sum += x(r, j);
        const double mean = sum / p;
        double ss = 0.0;
        for (int r : rows) {
            const double d = x(r, j) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / (p - 1.0));
        if (!(sd > 0.0)) {
            throw zero_variance_error("column " + std::to_string(j) +
                                      " is constant on the designated rows");
        }
        out.means(j) = mean;
        out.stds(j) = sd;
    }
    return out;
}

Eigen::MatrixXd standardize(const Eigen::MatrixXd& x, const StandardizationParams& p) {
    if (x.cols() != p.means.size()) {
        throw dimension_mismatch_error("standardization params do not match column count");
    }
    return (x.rowwise() - p.means.transpose()).array().rowwise() /
           p.stds.transpose().array();
}

Eigen::MatrixXd unstandardize(const Eigen::MatrixXd& z, const StandardizationParams& p) {
    if (z.cols() != p.means.size()) {
        throw dimension_mismatch_error("standardization params do not match column count");
    }
    return (z.array().rowwise() * p.stds.transpose().array()).matrix().rowwise() +
           p.means.transpose();
}

Eigen::VectorXd standardize_row(const Eigen::VectorXd& x, const StandardizationParams& p) {
    if (x.size() != p.means.size()) {
        throw dimension_mismatch_error("standardization params do not match length");
    }
    return (x - p.means).cwiseQuotient(p.stds);
}

Eigen::VectorXd unstandardize_row(const Eigen::VectorXd& z, const StandardizationParams& p) {
    if (z.size() != p.means.size()) {
        throw dimension_mismatch_error("standardization params do not match length");
    }
    return z.cwiseProduct(p.stds) + p.means;
}

} // namespace airgraph
