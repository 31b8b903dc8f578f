#include "evdet/labeling.hpp"

#include <cmath>
#include <sstream>

#include "evdet/error.hpp"
#include "evdet/textio.hpp"

namespace evdet {

double overlap_score(double partition_start, const Event& adjusted_event,
                     double window_seconds) {
    if (!(window_seconds > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "window duration must be positive");
    }
    const double duration = adjusted_event.end - adjusted_event.start;
    if (std::abs(duration - window_seconds) > 1e-9 * window_seconds) {
        std::ostringstream msg;
        msg << "event duration " << textio::format_double(duration)
            << " does not equal window duration " << textio::format_double(window_seconds);
        throw Error(ErrorKind::DurationMismatch, msg.str());
    }

    const double offset = partition_start - adjusted_event.start;
    // Zero unless the window starts strictly within one window duration of
    // the event start.
    if (!(std::abs(offset) < window_seconds)) return 0.0;
    // Exact unit score when the window and event start together; the ratio
    // below can round an ulp away from 1 when start + window_seconds does.
    if (offset == 0.0) return 1.0;
    if (offset < 0.0) {
        // Window starts before the event: shared span [start, window end].
        return (partition_start + window_seconds - adjusted_event.start) /
               (adjusted_event.end - partition_start);
    }
    // Window starts inside the event: shared span [window start, event end].
    return (adjusted_event.end - partition_start) /
           (partition_start + window_seconds - adjusted_event.start);
}

OverlapSeries compute_overlap_series(const TimeSeries& series, const AdjustedEventSet& events,
                                     std::size_t window_steps) {
    validate_series(series);
    if (window_steps < 2) {
        throw Error(ErrorKind::InvalidArgument, "window size must be at least 2 steps");
    }
    if (window_steps > series.steps()) {
        throw Error(ErrorKind::WindowTooLarge,
                    "window of " + std::to_string(window_steps) + " steps exceeds series length " +
                        std::to_string(series.steps()));
    }
    OverlapSeries out;
    out.window_steps = window_steps;
    out.window_seconds = window_duration(window_steps, series.spacing);
    const std::size_t count = series.steps() - window_steps + 1;
    out.values.resize(count, 0.0);
    out.partition_start_times.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = series.time_at(i);
        out.partition_start_times[i] = t;
        double best = 0.0;
        for (const Event& e : events.events) {
            best = std::max(best, overlap_score(t, e, out.window_seconds));
        }
        out.values[i] = best;
    }
    return out;
}

void save_overlap_series(const OverlapSeries& series, const std::string& path) {
    std::ostringstream out;
    out << "partition_start_time,op\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << textio::format_double(series.partition_start_times[i]) << ','
            << textio::format_double(series.values[i]) << '\n';
    }
    textio::write_file(path, out.str());
}

} // namespace evdet
