#include "evdet/windowing.hpp"

#include <sstream>

#include "evdet/error.hpp"
#include "evdet/textio.hpp"

namespace evdet {

WindowMatrix build_windows(const TimeSeries& series, std::size_t window_steps) {
    validate_series(series);
    if (window_steps < 2) {
        throw Error(ErrorKind::InvalidArgument, "window size must be at least 2 steps");
    }
    if (window_steps > series.steps()) {
        throw Error(ErrorKind::WindowTooLarge,
                    "window of " + std::to_string(window_steps) + " steps exceeds series length " +
                        std::to_string(series.steps()));
    }
    WindowMatrix matrix;
    matrix.window_steps = window_steps;
    matrix.feature_count = series.features();
    matrix.window_seconds = window_duration(window_steps, series.spacing);
    matrix.rows = series.steps() - window_steps + 1;
    matrix.cols = window_steps * series.features();
    matrix.data.reserve(matrix.rows * matrix.cols);
    matrix.partition_start_times.reserve(matrix.rows);
    const std::size_t f = series.features();
    for (std::size_t i = 0; i < matrix.rows; ++i) {
        matrix.partition_start_times.push_back(series.time_at(i));
        const auto begin = series.values.begin() + static_cast<std::ptrdiff_t>(i * f);
        matrix.data.insert(matrix.data.end(), begin,
                           begin + static_cast<std::ptrdiff_t>(window_steps * f));
    }
    return matrix;
}

void fit_scaler(WindowMatrix& matrix) {
    if (matrix.rows == 0) {
        throw Error(ErrorKind::InvalidArgument, "cannot fit a scaler on an empty matrix");
    }
    ColumnScaler scaler;
    scaler.min.assign(matrix.cols, 0.0);
    scaler.max.assign(matrix.cols, 0.0);
    for (std::size_t c = 0; c < matrix.cols; ++c) {
        double lo = matrix.data[c];
        double hi = matrix.data[c];
        for (std::size_t r = 1; r < matrix.rows; ++r) {
            const double v = matrix.data[r * matrix.cols + c];
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        scaler.min[c] = lo;
        scaler.max[c] = hi;
    }
    matrix.scaler = std::move(scaler);
}

WindowMatrix apply_scaler(const WindowMatrix& matrix, const ColumnScaler& scaler) {
    if (scaler.columns() != matrix.cols) {
        throw Error(ErrorKind::DimensionMismatch,
                    "scaler has " + std::to_string(scaler.columns()) + " columns, matrix has " +
                        std::to_string(matrix.cols));
    }
    WindowMatrix out = matrix;
    for (std::size_t r = 0; r < out.rows; ++r) {
        for (std::size_t c = 0; c < out.cols; ++c) {
            out.data[r * out.cols + c] = scaler.transform_one(c, out.data[r * out.cols + c]);
        }
    }
    out.scaler = scaler;
    return out;
}

void save_scaler(const ColumnScaler& scaler, const std::string& path) {
    std::ostringstream out;
    out << "column,min,max\n";
    for (std::size_t c = 0; c < scaler.columns(); ++c) {
        out << c << ',' << textio::format_double_hex(scaler.min[c]) << ','
            << textio::format_double_hex(scaler.max[c]) << '\n';
    }
    textio::write_file(path, out.str());
}

ColumnScaler load_scaler(const std::string& path) {
    const auto lines = textio::read_lines(path);
    if (lines.empty() || lines[0] != "column,min,max") {
        throw Error(ErrorKind::Io, "not a scaler file: " + path);
    }
    ColumnScaler scaler;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (textio::trim(lines[i]).empty()) continue;
        const auto fields = textio::split_csv_line(lines[i]);
        if (fields.size() != 3) throw Error(ErrorKind::Io, "malformed scaler row in " + path);
        const auto lo = textio::parse_double(fields[1]);
        const auto hi = textio::parse_double(fields[2]);
        if (!lo || !hi) throw Error(ErrorKind::Io, "malformed scaler value in " + path);
        scaler.min.push_back(*lo);
        scaler.max.push_back(*hi);
    }
    return scaler;
}

} // namespace evdet
