#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace evdet {

/// Uniformly sampled multivariate time series. Step i (0-based) has
/// timestamp start_time + i * spacing; values are row-major,
/// steps() x features(). Immutable by convention once validated.
struct TimeSeries {
    double start_time = 0.0;
    double spacing = 1.0;
    std::vector<std::string> feature_names;
    std::vector<double> values;

    std::size_t features() const { return feature_names.size(); }
    std::size_t steps() const {
        return feature_names.empty() ? 0 : values.size() / feature_names.size();
    }
    double time_at(std::size_t step) const {
        return start_time + static_cast<double>(step) * spacing;
    }
    double end_time() const { return steps() == 0 ? start_time : time_at(steps() - 1); }
    double value(std::size_t step, std::size_t feature) const {
        return values[step * features() + feature];
    }
    double& value(std::size_t step, std::size_t feature) {
        return values[step * features() + feature];
    }
};

/// Closed time interval [start, end], in seconds.
struct Event {
    double start = 0.0;
    double end = 0.0;

    double midpoint() const { return 0.5 * (start + end); }
    double duration() const { return end - start; }
};

/// Ground-truth events. Loaders keep events sorted by start and pairwise
/// disjoint (each end strictly before the next start). Predicted event sets
/// reuse this container but are exempt from the disjointness rule.
struct EventSet {
    std::vector<Event> events;

    std::size_t size() const { return events.size(); }
    bool empty() const { return events.empty(); }
};

/// Events re-centered on their source midpoints with one common duration.
struct AdjustedEventSet {
    std::vector<Event> events;            // each of duration window_seconds
    std::vector<double> source_midpoints; // midpoints of the source events
    double window_seconds = 0.0;

    std::size_t size() const { return events.size(); }
    bool empty() const { return events.empty(); }
};

/// Temporal span covered by a window of `window_steps` consecutive samples.
double window_duration(std::size_t window_steps, double spacing);

/// Enforces the TimeSeries invariants (>= 2 steps, >= 1 feature, positive
/// spacing, finite values).
void validate_series(const TimeSeries& series);

/// Enforces ground-truth invariants: start <= end per event, sorted, each
/// end strictly before the next start.
void validate_events(const EventSet& events);

/// Reads a comma-delimited series file with a header row. Spacing is
/// inferred from the first inter-row gap and all other gaps must agree
/// within 1e-9 relative. An empty feature list selects every column except
/// the time column.
TimeSeries load_series(const std::string& path, const std::string& time_column,
                       const std::vector<std::string>& feature_columns);

void save_series(const TimeSeries& series, const std::string& path,
                 const std::string& time_column = "time");

/// Header names of a delimited file.
std::vector<std::string> read_csv_header(const std::string& path);

/// One named numeric column of a delimited file (same layout as a series
/// file), one value per data row.
std::vector<double> load_column(const std::string& path, const std::string& column);

/// Reads a `start,end` events file, validated and sorted by start.
EventSet load_events(const std::string& path);

/// Reads a `start,end` file without the disjointness check (predicted
/// events may overlap). Still rejects inverted intervals.
EventSet load_event_list(const std::string& path);

void save_events(const EventSet& events, const std::string& path);

/// Converts per-step 0/1 labels into events of duration `event_duration`
/// centered on the labeled timestamps. Labels closer than the duration
/// produce overlapping intervals and are rejected.
EventSet labels_to_events(const TimeSeries& series, const std::vector<double>& labels,
                          double event_duration);

/// Re-centers every event on its midpoint with duration exactly
/// `event_duration`; count and order preserved. Midpoints closer than the
/// duration are rejected.
AdjustedEventSet adjust_events(const EventSet& events, double event_duration);

/// Adjusting an already-adjusted set reuses the stored source midpoints, so
/// the operation is exactly idempotent.
AdjustedEventSet adjust_events(const AdjustedEventSet& events, double event_duration);

/// Contiguous sub-series covering steps [begin_step, end_step).
TimeSeries slice_steps(const TimeSeries& series, std::size_t begin_step, std::size_t end_step);

} // namespace evdet
