#include "evdet/tune.hpp"

#include <cmath>
#include <sstream>

#include "evdet/error.hpp"
#include "evdet/textio.hpp"

namespace evdet {

std::vector<SmoothParams> expand_grid(const TuneGrid& grid) {
    if (grid.sigmas.empty() || grid.radii.empty() || grid.thresholds.empty()) {
        throw Error(ErrorKind::InvalidArgument, "tune grid lists must all be nonempty");
    }
    std::vector<SmoothParams> points;
    points.reserve(grid.sigmas.size() * grid.radii.size() * grid.thresholds.size());
    for (double sigma : grid.sigmas) {
        for (int radius : grid.radii) {
            for (double threshold : grid.thresholds) {
                points.push_back({sigma, radius, threshold});
            }
        }
    }
    return points;
}

std::vector<SmoothParams> default_tune_points() {
    std::vector<SmoothParams> points;
    for (double sigma : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const int radius = static_cast<int>(std::ceil(3.0 * sigma));
        for (int i = 1; i <= 9; ++i) {
            points.push_back({sigma, radius, static_cast<double>(i) / 10.0});
        }
    }
    return points;
}

TuneResult tune(const OverlapSeries& predicted, const AdjustedEventSet& truth,
                const std::vector<SmoothParams>& points, double tolerance,
                double event_duration, const std::optional<TimeSpan>& evaluation_span) {
    if (predicted.empty()) {
        throw Error(ErrorKind::InvalidArgument, "cannot tune on an empty predicted series");
    }
    if (points.empty()) {
        throw Error(ErrorKind::InvalidArgument, "cannot tune over an empty point list");
    }

    const AdjustedEventSet truth_eval =
        evaluation_span ? restrict_to_span(truth, *evaluation_span) : truth;

    TuneResult result;
    result.table.reserve(points.size());
    bool have_best = false;
    for (const SmoothParams& p : points) {
        const OverlapSeries smoothed = smooth(predicted, {p.sigma, p.radius});
        const PeakList peaks = find_peaks(smoothed, p.threshold);
        EventSet events = peaks_to_events(peaks, event_duration);
        if (evaluation_span) events = restrict_to_span(events, *evaluation_span);
        const MatchReport report = match_events(events, truth_eval, tolerance);
        result.table.push_back({p, report.precision, report.recall, report.f1});
        if (!have_best || report.f1 > result.best_f1) {
            have_best = true;
            result.best = p;
            result.best_f1 = report.f1;
        }
    }
    return result;
}

TuneResult tune(const OverlapSeries& predicted, const AdjustedEventSet& truth,
                const TuneGrid& grid, double tolerance, double event_duration,
                const std::optional<TimeSpan>& evaluation_span) {
    return tune(predicted, truth, expand_grid(grid), tolerance, event_duration, evaluation_span);
}

namespace {

void write_entry(std::ostringstream& out, const SmoothParams& p, double precision, double recall,
                 double f1) {
    out << textio::format_double(p.sigma) << ',' << p.radius << ','
        << textio::format_double(p.threshold) << ',' << textio::format_double(precision) << ','
        << textio::format_double(recall) << ',' << textio::format_double(f1) << '\n';
}

} // namespace

void save_tune_table(const TuneResult& result, const std::string& path) {
    std::ostringstream out;
    out << "sigma,radius,threshold,precision,recall,f1\n";
    for (const TuneEntry& e : result.table) {
        write_entry(out, e.params, e.precision, e.recall, e.f1);
    }
    textio::write_file(path, out.str());
}

void save_tune_best(const TuneResult& result, const std::string& path) {
    std::ostringstream out;
    out << "sigma,radius,threshold,f1\n";
    out << textio::format_double(result.best.sigma) << ',' << result.best.radius << ','
        << textio::format_double(result.best.threshold) << ','
        << textio::format_double(result.best_f1) << '\n';
    textio::write_file(path, out.str());
}

SmoothParams load_tune_best(const std::string& path) {
    const auto lines = textio::read_lines(path);
    if (lines.size() < 2 || lines[0] != "sigma,radius,threshold,f1") {
        throw Error(ErrorKind::Io, "not a tune result file: " + path);
    }
    const auto fields = textio::split_csv_line(lines[1]);
    if (fields.size() != 4) throw Error(ErrorKind::Io, "malformed tune result in " + path);
    const auto sigma = textio::parse_double(fields[0]);
    const auto radius = textio::parse_double(fields[1]);
    const auto threshold = textio::parse_double(fields[2]);
    if (!sigma || !radius || !threshold) {
        throw Error(ErrorKind::Io, "malformed tune result in " + path);
    }
    return {*sigma, static_cast<int>(*radius), *threshold};
}

} // namespace evdet
