#include "evdet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "evdet/error.hpp"
#include "evdet/textio.hpp"

namespace evdet {

EventSet peaks_to_events(const PeakList& peaks, double event_duration) {
    if (!(event_duration > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "event duration must be positive");
    }
    const double half = 0.5 * event_duration;
    EventSet out;
    out.events.reserve(peaks.size());
    for (const Peak& p : peaks.peaks) out.events.push_back({p.time - half, p.time + half});
    return out;
}

MatchReport match_events(const EventSet& predicted, const AdjustedEventSet& truth,
                         double tolerance) {
    if (!(tolerance > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    }

    struct Candidate {
        double distance;
        double truth_mid;
        double predicted_mid;
        std::size_t predicted_index;
        std::size_t truth_index;
    };
    std::vector<Candidate> candidates;
    for (std::size_t p = 0; p < predicted.size(); ++p) {
        const double pm = predicted.events[p].midpoint();
        for (std::size_t t = 0; t < truth.size(); ++t) {
            const double tm = truth.events[t].midpoint();
            const double d = std::abs(pm - tm);
            if (d <= tolerance) candidates.push_back({d, tm, pm, p, t});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.distance, a.truth_mid, a.predicted_mid, a.truth_index, a.predicted_index) <
               std::tie(b.distance, b.truth_mid, b.predicted_mid, b.truth_index, b.predicted_index);
    });

    std::vector<bool> predicted_used(predicted.size(), false);
    std::vector<bool> truth_used(truth.size(), false);
    struct Match {
        double truth_mid;
        double delta;
    };
    std::vector<Match> matches;
    for (const Candidate& c : candidates) {
        if (predicted_used[c.predicted_index] || truth_used[c.truth_index]) continue;
        predicted_used[c.predicted_index] = true;
        truth_used[c.truth_index] = true;
        matches.push_back({c.truth_mid, c.predicted_mid - c.truth_mid});
    }
    std::sort(matches.begin(), matches.end(),
              [](const Match& a, const Match& b) { return a.truth_mid < b.truth_mid; });

    MatchReport report;
    report.true_positives = matches.size();
    report.false_positives = predicted.size() - matches.size();
    report.false_negatives = truth.size() - matches.size();
    report.deltas.reserve(matches.size());
    for (const Match& m : matches) report.deltas.push_back(m.delta);

    const double tp = static_cast<double>(report.true_positives);
    const double fp = static_cast<double>(report.false_positives);
    const double fn = static_cast<double>(report.false_negatives);
    report.precision = (tp + fp) > 0.0 ? tp / (tp + fp) : 0.0;
    report.recall = (tp + fn) > 0.0 ? tp / (tp + fn) : 0.0;
    report.f1 = (report.precision + report.recall) > 0.0
                    ? 2.0 * report.precision * report.recall / (report.precision + report.recall)
                    : 0.0;
    if (!report.deltas.empty()) {
        const auto [mean, sd] = delta_stats(report);
        report.delta_mean = mean;
        report.delta_std = sd;
    }
    return report;
}

std::pair<double, double> delta_stats(const MatchReport& report) {
    if (report.deltas.empty()) {
        throw Error(ErrorKind::InvalidArgument, "delta stats need at least one match");
    }
    double sum = 0.0;
    for (double d : report.deltas) sum += d;
    const double mean = sum / static_cast<double>(report.deltas.size());
    double var = 0.0;
    for (double d : report.deltas) var += (d - mean) * (d - mean);
    var /= static_cast<double>(report.deltas.size());
    return {mean, std::sqrt(var)};
}

AdjustedEventSet as_adjusted(const EventSet& events) {
    AdjustedEventSet out;
    out.events = events.events;
    out.source_midpoints.reserve(events.size());
    for (const Event& e : events.events) out.source_midpoints.push_back(e.midpoint());
    out.window_seconds = events.empty() ? 0.0 : events.events.front().duration();
    return out;
}

EventSet restrict_to_span(const EventSet& events, const TimeSpan& span) {
    EventSet out;
    for (const Event& e : events.events) {
        if (span.contains(e.midpoint())) out.events.push_back(e);
    }
    return out;
}

AdjustedEventSet restrict_to_span(const AdjustedEventSet& events, const TimeSpan& span) {
    AdjustedEventSet out;
    out.window_seconds = events.window_seconds;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (span.contains(events.events[i].midpoint())) {
            out.events.push_back(events.events[i]);
            out.source_midpoints.push_back(events.source_midpoints[i]);
        }
    }
    return out;
}

void save_report(const MatchReport& report, double tolerance, const std::string& path) {
    std::ostringstream out;
    out << "true_positives=" << report.true_positives << '\n';
    out << "false_positives=" << report.false_positives << '\n';
    out << "false_negatives=" << report.false_negatives << '\n';
    out << "precision=" << textio::format_double(report.precision) << '\n';
    out << "recall=" << textio::format_double(report.recall) << '\n';
    out << "f1=" << textio::format_double(report.f1) << '\n';
    out << "tolerance=" << textio::format_double(tolerance) << '\n';
    out << "delta_count=" << report.deltas.size() << '\n';
    if (report.delta_mean) {
        out << "delta_mean=" << textio::format_double(*report.delta_mean) << '\n';
        out << "delta_std=" << textio::format_double(*report.delta_std) << '\n';
    }
    textio::write_file(path, out.str());
}

void save_deltas(const MatchReport& report, const std::string& path) {
    std::ostringstream out;
    out << "delta\n";
    for (double d : report.deltas) out << textio::format_double(d) << '\n';
    textio::write_file(path, out.str());
}

} // namespace evdet
