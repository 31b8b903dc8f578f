#pragma once

#include <optional>
#include <span>

#include "evdet/series.hpp"

namespace evdet {

/// Per-column affine map to [0, 1] fitted from training rows. Columns with
/// max == min map to 0; transformed values outside the fitted range fall
/// outside [0, 1] unclipped.
struct ColumnScaler {
    std::vector<double> min;
    std::vector<double> max;

    std::size_t columns() const { return min.size(); }
    double transform_one(std::size_t column, double x) const {
        const double lo = min[column];
        const double hi = max[column];
        return hi == lo ? 0.0 : (x - lo) / (hi - lo);
    }
    double inverse_one(std::size_t column, double y) const {
        const double lo = min[column];
        const double hi = max[column];
        return lo + y * (hi - lo);
    }
};

/// Flattened sliding windows: row i concatenates the feature vectors of
/// steps i .. i+window_steps-1, time-major (entry m*features + k is step
/// i+m, feature k). Neighboring rows share (window_steps-1)*features
/// entries.
struct WindowMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0; // window_steps * feature_count
    std::vector<double> data;
    std::vector<double> partition_start_times;
    std::size_t window_steps = 0;
    std::size_t feature_count = 0;
    double window_seconds = 0.0;
    std::optional<ColumnScaler> scaler;

    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * cols, cols};
    }
};

WindowMatrix build_windows(const TimeSeries& series, std::size_t window_steps);

/// Records per-column min/max over the matrix rows into its scaler; the
/// data itself is untouched.
void fit_scaler(WindowMatrix& matrix);

/// Applies `scaler` to every row, returning the transformed matrix with the
/// scaler attached.
WindowMatrix apply_scaler(const WindowMatrix& matrix, const ColumnScaler& scaler);

void save_scaler(const ColumnScaler& scaler, const std::string& path);
ColumnScaler load_scaler(const std::string& path);

} // namespace evdet
