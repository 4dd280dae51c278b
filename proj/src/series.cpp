#include "lw/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lw {

TimeSeries::TimeSeries(std::vector<double> v, std::string name_, std::string origin_)
    : values(std::move(v)), name(std::move(name_)), origin(std::move(origin_)) {
    validate(*this);
}

void validate(const TimeSeries& x) {
    if (x.values.empty())
        throw std::invalid_argument("TimeSeries: length must be >= 1");
    for (std::size_t i = 0; i < x.values.size(); ++i)
        if (!std::isfinite(x.values[i]))
            throw std::invalid_argument("TimeSeries: non-finite value at position " +
                                        std::to_string(i + 1));
}

namespace {

std::string append_origin(const std::string& origin, const std::string& step) {
    return origin.empty() ? step : origin + "|" + step;
}

// Solves the (k+1)x(k+1) normal equations by Gaussian elimination with
// partial pivoting. The design is tiny (k <= small), so no factorization
// library is warranted.
std::vector<double> solve_normal_equations(std::vector<std::vector<double>> A,
                                           std::vector<double> b) {
    const std::size_t p = b.size();
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < p; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        if (std::fabs(A[piv][col]) < 1e-300)
            throw std::invalid_argument("detrend_ols: rank-deficient design");
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = 0; r < p; ++r) {
            if (r == col) continue;
            const double f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < p; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> out(p);
    for (std::size_t i = 0; i < p; ++i) out[i] = b[i] / A[i][i];
    return out;
}

}  // namespace

TimeSeries detrend_ols(const TimeSeries& x, int degree) {
    validate(x);
    if (degree < 0) throw std::invalid_argument("detrend_ols: degree must be >= 0");
    const std::size_t n = x.size();
    const std::size_t p = static_cast<std::size_t>(degree) + 1;
    if (n < p + 1)
        throw std::invalid_argument("detrend_ols: need length >= degree + 2");

    // Regressors scaled to t/n for conditioning; residuals are unaffected.
    std::vector<std::vector<double>> cols(p, std::vector<double>(n));
    for (std::size_t t = 0; t < n; ++t) {
        double v = 1.0;
        const double u = static_cast<double>(t + 1) / static_cast<double>(n);
        for (std::size_t j = 0; j < p; ++j) {
            cols[j][t] = v;
            v *= u;
        }
    }
    std::vector<std::vector<double>> XtX(p, std::vector<double>(p, 0.0));
    std::vector<double> Xty(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) s += cols[i][t] * cols[j][t];
            XtX[i][j] = XtX[j][i] = s;
        }
        double s = 0.0;
        for (std::size_t t = 0; t < n; ++t) s += cols[i][t] * x.values[t];
        Xty[i] = s;
    }
    const std::vector<double> beta = solve_normal_equations(std::move(XtX), std::move(Xty));

    std::vector<double> resid(n);
    for (std::size_t t = 0; t < n; ++t) {
        double fit = 0.0;
        for (std::size_t j = 0; j < p; ++j) fit += beta[j] * cols[j][t];
        resid[t] = x.values[t] - fit;
    }
    return TimeSeries(std::move(resid), x.name,
                      append_origin(x.origin, "detrend_ols(" + std::to_string(degree) + ")"));
}

TimeSeries transform(const TimeSeries& x, TransformKind kind, int degree) {
    validate(x);
    const std::size_t n = x.size();
    switch (kind) {
        case TransformKind::log: {
            std::vector<double> out(n);
            for (std::size_t t = 0; t < n; ++t) {
                if (x.values[t] <= 0.0)
                    throw std::invalid_argument("transform(log): non-positive value at position " +
                                                std::to_string(t + 1));
                out[t] = std::log(x.values[t]);
            }
            return TimeSeries(std::move(out), x.name, append_origin(x.origin, "log"));
        }
        case TransformKind::diff: {
            if (n < 2) throw std::invalid_argument("transform(diff): need length >= 2");
            std::vector<double> out(n - 1);
            for (std::size_t t = 1; t < n; ++t) out[t - 1] = x.values[t] - x.values[t - 1];
            return TimeSeries(std::move(out), x.name, append_origin(x.origin, "diff"));
        }
        case TransformKind::log_diff:
            return transform(transform(x, TransformKind::log), TransformKind::diff);
        case TransformKind::demean_sample: {
            double mean = 0.0;
            for (double v : x.values) mean += v;
            mean /= static_cast<double>(n);
            std::vector<double> out(n);
            for (std::size_t t = 0; t < n; ++t) out[t] = x.values[t] - mean;
            return TimeSeries(std::move(out), x.name, append_origin(x.origin, "demean_sample"));
        }
        case TransformKind::demean_first: {
            const double first = x.values.front();
            std::vector<double> out(n);
            for (std::size_t t = 0; t < n; ++t) out[t] = x.values[t] - first;
            return TimeSeries(std::move(out), x.name, append_origin(x.origin, "demean_first"));
        }
        case TransformKind::detrend_ols:
            return detrend_ols(x, degree);
    }
    throw std::invalid_argument("transform: unknown kind");
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (quoted) {
            if (c == '"') quoted = false;
            else cur.push_back(c);
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

bool all_empty(const std::vector<std::string>& fields) {
    return std::all_of(fields.begin(), fields.end(),
                       [](const std::string& f) { return trim(f).empty(); });
}

bool parse_double(const std::string& s, double* out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) return false;
    *out = v;
    return true;
}

}  // namespace

TimeSeries load_csv(std::istream& in, const std::string& column, HasHeader header,
                    const std::string& source) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_numbers;  // 1-based positions in the file
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_csv_row(line);
        if (all_empty(fields)) continue;
        rows.push_back(std::move(fields));
        row_numbers.push_back(lineno);
    }
    if (rows.empty()) throw std::invalid_argument(source + ": no data rows");

    // Resolve the column. An exact header-name match wins; otherwise an
    // integer is a 1-based column index; empty means the only/first column.
    std::size_t col = 0;
    bool name_matched = false;
    if (!column.empty()) {
        for (std::size_t j = 0; j < rows[0].size(); ++j) {
            if (trim(rows[0][j]) == column) {
                col = j;
                name_matched = true;
                break;
            }
        }
        if (!name_matched) {
            char* end = nullptr;
            const long idx = std::strtol(column.c_str(), &end, 10);
            if (end == column.c_str() + column.size() && idx >= 1)
                col = static_cast<std::size_t>(idx - 1);
            else
                throw std::invalid_argument(source + ": column '" + column + "' not found");
        }
    }

    bool skip_first = false;
    switch (header) {
        case HasHeader::yes: skip_first = true; break;
        case HasHeader::no: skip_first = false; break;
        case HasHeader::detect: {
            double tmp;
            skip_first = name_matched ||
                         (col < rows[0].size() && !parse_double(rows[0][col], &tmp));
            break;
        }
    }
    if (name_matched) skip_first = true;

    std::vector<double> values;
    values.reserve(rows.size());
    for (std::size_t i = skip_first ? 1 : 0; i < rows.size(); ++i) {
        if (col >= rows[i].size())
            throw std::invalid_argument(source + ": row " + std::to_string(row_numbers[i]) +
                                        " has no column " + std::to_string(col + 1));
        double v;
        if (!parse_double(rows[i][col], &v))
            throw std::invalid_argument(source + ": cannot parse '" + trim(rows[i][col]) +
                                        "' as a number at row " + std::to_string(row_numbers[i]));
        if (!std::isfinite(v))
            throw std::invalid_argument(source + ": non-finite value at row " +
                                        std::to_string(row_numbers[i]));
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument(source + ": empty column");

    std::string label = column;
    if (name_matched) label = trim(rows[0][col]);
    return TimeSeries(std::move(values), label, source);
}

TimeSeries load_csv(const std::string& path, const std::string& column, HasHeader header) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_csv: cannot open '" + path + "'");
    return load_csv(in, column, header, path);
}

void save_csv(const TimeSeries& x, std::ostream& out) {
    out << (x.name.empty() ? "value" : x.name) << "\n";
    out << std::setprecision(17);
    for (double v : x.values) out << v << "\n";
}

void save_csv(const TimeSeries& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("save_csv: cannot open '" + path + "'");
    save_csv(x, out);
}

}  // namespace lw
