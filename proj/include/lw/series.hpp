#ifndef LW_SERIES_HPP
#define LW_SERIES_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace lw {

/// An ordered sequence of real observations with an implicit time index
/// 1..n. All transforms are value-returning; nothing mutates in place.
struct TimeSeries {
    std::vector<double> values;
    std::string name;    ///< optional label (e.g. CSV column name)
    std::string origin;  ///< trail of applied transforms, e.g. "cpi.csv|log|diff"

    TimeSeries() = default;
    TimeSeries(std::vector<double> v, std::string name = "", std::string origin = "");

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// Throws std::invalid_argument unless the series is nonempty and every
/// value is finite.
void validate(const TimeSeries& x);

enum class TransformKind {
    log,
    diff,
    log_diff,
    demean_sample,
    demean_first,
    detrend_ols,
};

/// Applies a deterministic pre-transform and returns a new series.
/// `degree` is only meaningful for detrend_ols (regression on 1, t, ..., t^k).
TimeSeries transform(const TimeSeries& x, TransformKind kind, int degree = 0);

/// OLS residuals from regressing x_t on (1, t, ..., t^k), t = 1..n.
TimeSeries detrend_ols(const TimeSeries& x, int degree);

enum class HasHeader { yes, no, detect };

/// Reads one column of a CSV file. `column` is a header name or a 1-based
/// column index; rows whose fields are all empty are skipped. Cell parse
/// failures report the offending 1-based row number.
TimeSeries load_csv(const std::string& path, const std::string& column = "",
                    HasHeader header = HasHeader::detect);

/// Same, from an already-open stream; `source` names the stream in errors.
TimeSeries load_csv(std::istream& in, const std::string& column = "",
                    HasHeader header = HasHeader::detect,
                    const std::string& source = "<stream>");

/// Writes a single-column CSV with a header row, full double precision.
void save_csv(const TimeSeries& x, std::ostream& out);
void save_csv(const TimeSeries& x, const std::string& path);

}  // namespace lw

#endif  // LW_SERIES_HPP
