#pragma once

#include "evdet/eval.hpp"

namespace evdet {

/// Cross-product search space. Iteration order is fixed: sigmas outermost,
/// then radii, then thresholds.
struct TuneGrid {
    std::vector<double> sigmas;
    std::vector<int> radii;
    std::vector<double> thresholds;
};

struct SmoothParams {
    double sigma = 1.0;
    int radius = 3;
    double threshold = 0.5;
};

struct TuneEntry {
    SmoothParams params;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct TuneResult {
    SmoothParams best;
    double best_f1 = 0.0;
    std::vector<TuneEntry> table; // one row per evaluated point, in order
};

/// Expands a grid into points in the canonical iteration order.
std::vector<SmoothParams> expand_grid(const TuneGrid& grid);

/// Default search points: sigma in {0.5, 1, 2, 4, 8} steps, each paired
/// with radius ceil(3*sigma), thresholds 0.1 .. 0.9.
std::vector<SmoothParams> default_tune_points();

/// Scores every point by smooth -> find_peaks -> peaks_to_events ->
/// match_events and keeps the first point attaining the best F1. When
/// `evaluation_span` is set, both predicted and truth events are restricted
/// to it before matching.
TuneResult tune(const OverlapSeries& predicted, const AdjustedEventSet& truth,
                const std::vector<SmoothParams>& points, double tolerance,
                double event_duration,
                const std::optional<TimeSpan>& evaluation_span = std::nullopt);

TuneResult tune(const OverlapSeries& predicted, const AdjustedEventSet& truth,
                const TuneGrid& grid, double tolerance, double event_duration,
                const std::optional<TimeSpan>& evaluation_span = std::nullopt);

/// Writes `sigma,radius,threshold,precision,recall,f1` rows.
void save_tune_table(const TuneResult& result, const std::string& path);

/// Writes the winning row in the same format.
void save_tune_best(const TuneResult& result, const std::string& path);
SmoothParams load_tune_best(const std::string& path);

} // namespace evdet
