#pragma once

#include <optional>
#include <utility>

#include "evdet/postprocess.hpp"

namespace evdet {

struct MatchReport {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    double precision = 0.0; // 0 when TP+FP == 0
    double recall = 0.0;    // 0 when TP+FN == 0
    double f1 = 0.0;        // 0 when precision+recall == 0
    std::vector<double> deltas; // predicted mid - truth mid, sorted by truth mid
    std::optional<double> delta_mean; // absent when there are no matches
    std::optional<double> delta_std;  // population standard deviation
};

/// One event per peak, centered on the peak time with the given duration.
/// Outputs may overlap; predictions are not bound by the ground-truth
/// disjointness rule.
EventSet peaks_to_events(const PeakList& peaks, double event_duration);

/// One-to-one matching on event midpoints: candidate pairs within
/// `tolerance` are taken nearest-first (ties by earlier truth midpoint,
/// then earlier predicted midpoint), each event matched at most once.
MatchReport match_events(const EventSet& predicted, const AdjustedEventSet& truth,
                         double tolerance);

/// Mean and population standard deviation of the matched time differences;
/// requires at least one match.
std::pair<double, double> delta_stats(const MatchReport& report);

/// Wraps an event list for matching as-is, without re-centering; midpoint
/// matching does not depend on durations.
AdjustedEventSet as_adjusted(const EventSet& events);

/// Closed time span used to restrict evaluation to a covered region.
struct TimeSpan {
    double begin = 0.0;
    double end = 0.0;

    bool contains(double t) const { return t >= begin && t <= end; }
};

EventSet restrict_to_span(const EventSet& events, const TimeSpan& span);
AdjustedEventSet restrict_to_span(const AdjustedEventSet& events, const TimeSpan& span);

/// Writes the report as key=value lines; delta stats are omitted when there
/// are no matches.
void save_report(const MatchReport& report, double tolerance, const std::string& path);

/// Writes one `delta` column for histogramming.
void save_deltas(const MatchReport& report, const std::string& path);

} // namespace evdet
