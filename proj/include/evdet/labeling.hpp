#pragma once

#include "evdet/series.hpp"

namespace evdet {

/// Overlap labels, one per window position: values[i] scores how much the
/// window starting at partition_start_times[i] overlaps the nearest event.
/// Scores lie in [0, 1] and reach 1 exactly when an adjusted event starts at
/// that time. Raw model predictions reuse this container and may leave the
/// range.
struct OverlapSeries {
    std::vector<double> values;
    std::vector<double> partition_start_times;
    std::size_t window_steps = 0;
    double window_seconds = 0.0;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    double mid_time(std::size_t i) const {
        return partition_start_times[i] + 0.5 * window_seconds;
    }
};

/// Overlap score between the window [partition_start, partition_start +
/// window_seconds] and one adjusted event: intersection duration over union
/// duration, gated to zero once the window start is window_seconds or more
/// away from the event start. The event must have duration window_seconds
/// (1e-9 relative).
double overlap_score(double partition_start, const Event& adjusted_event,
                     double window_seconds);

/// Overlap label for every window position against its nearest event
/// (max over the event set); all zeros when the set is empty.
OverlapSeries compute_overlap_series(const TimeSeries& series, const AdjustedEventSet& events,
                                     std::size_t window_steps);

/// Writes `partition_start_time,op` rows.
void save_overlap_series(const OverlapSeries& series, const std::string& path);

} // namespace evdet
