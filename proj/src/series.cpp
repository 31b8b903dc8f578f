#include "evdet/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "evdet/error.hpp"
#include "evdet/textio.hpp"

namespace evdet {

namespace {

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::string& path) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw Error(ErrorKind::MissingColumn, "column '" + name + "' not found in " + path);
    }
    return static_cast<std::size_t>(it - header.begin());
}

double parse_cell(const std::string& token, const std::string& path, std::size_t row,
                  const std::string& column) {
    const auto value = textio::parse_double(token);
    if (!value || !std::isfinite(*value)) {
        std::ostringstream msg;
        msg << "non-finite or unparsable value '" << token << "' at data row " << row
            << ", column '" << column << "' in " << path;
        throw Error(ErrorKind::NonFiniteValue, msg.str());
    }
    return *value;
}

// Rows of a delimited file with the header stripped; blank lines skipped.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path) {
    const auto lines = textio::read_lines(path);
    if (lines.empty()) throw Error(ErrorKind::Io, "empty file: " + path);
    CsvTable table;
    table.header = textio::split_csv_line(lines[0]);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (textio::trim(lines[i]).empty()) continue;
        table.rows.push_back(textio::split_csv_line(lines[i]));
        if (table.rows.back().size() != table.header.size()) {
            std::ostringstream msg;
            msg << "row " << i << " has " << table.rows.back().size() << " fields, expected "
                << table.header.size() << " in " << path;
            throw Error(ErrorKind::InvalidArgument, msg.str());
        }
    }
    return table;
}

EventSet parse_event_rows(const std::string& path) {
    const CsvTable table = read_csv(path);
    const std::size_t start_col = find_column(table.header, "start", path);
    const std::size_t end_col = find_column(table.header, "end", path);
    EventSet set;
    set.events.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        Event e;
        e.start = parse_cell(table.rows[i][start_col], path, i, "start");
        e.end = parse_cell(table.rows[i][end_col], path, i, "end");
        if (e.end < e.start) {
            std::ostringstream msg;
            msg << "event row " << i << " has end " << textio::format_double(e.end)
                << " before start " << textio::format_double(e.start) << " in " << path;
            throw Error(ErrorKind::InvertedInterval, msg.str());
        }
        set.events.push_back(e);
    }
    return set;
}

} // namespace

double window_duration(std::size_t window_steps, double spacing) {
    return static_cast<double>(window_steps - 1) * spacing;
}

void validate_series(const TimeSeries& series) {
    if (series.features() < 1) {
        throw Error(ErrorKind::InvalidArgument, "series needs at least one feature");
    }
    if (series.values.size() % series.features() != 0) {
        throw Error(ErrorKind::InvalidArgument, "value buffer not a multiple of feature count");
    }
    if (series.steps() < 2) {
        throw Error(ErrorKind::InvalidArgument, "series needs at least two steps");
    }
    if (!(series.spacing > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "spacing must be positive");
    }
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (!std::isfinite(series.values[i])) {
            throw Error(ErrorKind::NonFiniteValue,
                        "non-finite value at flat index " + std::to_string(i));
        }
    }
}

void validate_events(const EventSet& events) {
    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& e = events.events[i];
        if (e.end < e.start) {
            throw Error(ErrorKind::InvertedInterval,
                        "event " + std::to_string(i) + " has end before start");
        }
        if (i > 0 && !(events.events[i - 1].end < e.start)) {
            std::ostringstream msg;
            msg << "events " << i - 1 << " and " << i << " intersect: ["
                << textio::format_double(events.events[i - 1].start) << ", "
                << textio::format_double(events.events[i - 1].end) << "] and ["
                << textio::format_double(e.start) << ", " << textio::format_double(e.end) << "]";
            throw Error(ErrorKind::OverlappingEvents, msg.str());
        }
    }
}

TimeSeries load_series(const std::string& path, const std::string& time_column,
                       const std::vector<std::string>& feature_columns) {
    const CsvTable table = read_csv(path);
    if (table.rows.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "series file needs at least two data rows: " + path);
    }
    const std::size_t time_col = find_column(table.header, time_column, path);

    std::vector<std::string> features = feature_columns;
    if (features.empty()) {
        for (const auto& name : table.header) {
            if (name != time_column) features.push_back(name);
        }
    }
    if (features.empty()) {
        throw Error(ErrorKind::MissingColumn, "no feature columns in " + path);
    }
    std::vector<std::size_t> feature_cols;
    feature_cols.reserve(features.size());
    for (const auto& name : features) feature_cols.push_back(find_column(table.header, name, path));

    TimeSeries series;
    series.feature_names = features;
    series.values.reserve(table.rows.size() * features.size());

    std::vector<double> times;
    times.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        times.push_back(parse_cell(table.rows[i][time_col], path, i, time_column));
        for (std::size_t k = 0; k < feature_cols.size(); ++k) {
            series.values.push_back(parse_cell(table.rows[i][feature_cols[k]], path, i, features[k]));
        }
    }

    series.start_time = times[0];
    series.spacing = times[1] - times[0];
    if (!(series.spacing > 0.0)) {
        throw Error(ErrorKind::NonUniformSampling, "timestamps not strictly increasing in " + path);
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double gap = times[i] - times[i - 1];
        if (std::abs(gap - series.spacing) > 1e-9 * series.spacing) {
            std::ostringstream msg;
            msg << "gap " << textio::format_double(gap) << " at data row " << i
                << " deviates from inferred spacing " << textio::format_double(series.spacing)
                << " in " << path;
            throw Error(ErrorKind::NonUniformSampling, msg.str());
        }
    }
    validate_series(series);
    return series;
}

void save_series(const TimeSeries& series, const std::string& path,
                 const std::string& time_column) {
    std::ostringstream out;
    out << time_column;
    for (const auto& name : series.feature_names) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < series.steps(); ++i) {
        out << textio::format_double(series.time_at(i));
        for (std::size_t k = 0; k < series.features(); ++k) {
            out << ',' << textio::format_double(series.value(i, k));
        }
        out << '\n';
    }
    textio::write_file(path, out.str());
}

std::vector<std::string> read_csv_header(const std::string& path) {
    const auto lines = textio::read_lines(path);
    if (lines.empty()) throw Error(ErrorKind::Io, "empty file: " + path);
    return textio::split_csv_line(lines[0]);
}

std::vector<double> load_column(const std::string& path, const std::string& column) {
    const CsvTable table = read_csv(path);
    const std::size_t col = find_column(table.header, column, path);
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        values.push_back(parse_cell(table.rows[i][col], path, i, column));
    }
    return values;
}

EventSet load_events(const std::string& path) {
    EventSet set = parse_event_rows(path);
    std::stable_sort(set.events.begin(), set.events.end(),
                     [](const Event& a, const Event& b) { return a.start < b.start; });
    validate_events(set);
    return set;
}

EventSet load_event_list(const std::string& path) {
    EventSet set = parse_event_rows(path);
    std::stable_sort(set.events.begin(), set.events.end(),
                     [](const Event& a, const Event& b) { return a.start < b.start; });
    return set;
}

void save_events(const EventSet& events, const std::string& path) {
    std::ostringstream out;
    out << "start,end\n";
    for (const Event& e : events.events) {
        out << textio::format_double(e.start) << ',' << textio::format_double(e.end) << '\n';
    }
    textio::write_file(path, out.str());
}

EventSet labels_to_events(const TimeSeries& series, const std::vector<double>& labels,
                          double event_duration) {
    if (labels.size() != series.steps()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "label count " + std::to_string(labels.size()) + " does not match " +
                        std::to_string(series.steps()) + " steps");
    }
    if (!(event_duration > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "event duration must be positive");
    }
    const double half = 0.5 * event_duration;
    EventSet set;
    double previous_center = 0.0;
    bool have_previous = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 0.0) continue;
        if (labels[i] != 1.0) {
            throw Error(ErrorKind::InvalidArgument,
                        "label at step " + std::to_string(i) + " is " +
                            textio::format_double(labels[i]) + ", expected 0 or 1");
        }
        const double center = series.time_at(i);
        if (have_previous && center - previous_center < event_duration) {
            std::ostringstream msg;
            msg << "labels at t=" << textio::format_double(previous_center)
                << " and t=" << textio::format_double(center) << " are closer than "
                << textio::format_double(event_duration);
            throw Error(ErrorKind::OverlappingEvents, msg.str());
        }
        set.events.push_back({center - half, center + half});
        previous_center = center;
        have_previous = true;
    }
    return set;
}

namespace {

AdjustedEventSet adjust_midpoints(const std::vector<double>& midpoints, double event_duration) {
    if (!(event_duration > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "event duration must be positive");
    }
    const double half = 0.5 * event_duration;
    AdjustedEventSet out;
    out.window_seconds = event_duration;
    out.source_midpoints = midpoints;
    out.events.reserve(midpoints.size());
    for (std::size_t i = 0; i < midpoints.size(); ++i) {
        if (i > 0 && midpoints[i] - midpoints[i - 1] < event_duration) {
            std::ostringstream msg;
            msg << "midpoints " << textio::format_double(midpoints[i - 1]) << " and "
                << textio::format_double(midpoints[i]) << " are closer than "
                << textio::format_double(event_duration);
            throw Error(ErrorKind::OverlappingEvents, msg.str());
        }
        out.events.push_back({midpoints[i] - half, midpoints[i] + half});
    }
    return out;
}

} // namespace

AdjustedEventSet adjust_events(const EventSet& events, double event_duration) {
    std::vector<double> midpoints;
    midpoints.reserve(events.size());
    for (const Event& e : events.events) midpoints.push_back(e.midpoint());
    return adjust_midpoints(midpoints, event_duration);
}

AdjustedEventSet adjust_events(const AdjustedEventSet& events, double event_duration) {
    return adjust_midpoints(events.source_midpoints, event_duration);
}

TimeSeries slice_steps(const TimeSeries& series, std::size_t begin_step, std::size_t end_step) {
    if (begin_step >= end_step || end_step > series.steps()) {
        throw Error(ErrorKind::InvalidArgument, "invalid slice range");
    }
    TimeSeries out;
    out.start_time = series.time_at(begin_step);
    out.spacing = series.spacing;
    out.feature_names = series.feature_names;
    const std::size_t f = series.features();
    out.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(begin_step * f),
                      series.values.begin() + static_cast<std::ptrdiff_t>(end_step * f));
    return out;
}

} // namespace evdet
