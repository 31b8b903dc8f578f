#include "evdet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <json.hpp>

#include "evdet/error.hpp"
#include "evdet/textio.hpp"

namespace evdet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string joined(const std::string& dir, const char* name) {
    return (fs::path(dir) / name).string();
}

void ensure_out_dir(const RunConfig& config) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create output directory " + config.out_dir);
}

std::string model_file(const RunConfig& config) {
    return config.model_path.empty() ? joined(config.out_dir, "model.txt") : config.model_path;
}

std::string scaler_file(const RunConfig& config) {
    return config.scaler_path.empty() ? joined(config.out_dir, "scaler.csv") : config.scaler_path;
}

struct PreparedData {
    TimeSeries series;
    EventSet truth;
    AdjustedEventSet adjusted;
    double window_sec = 0.0;
};

PreparedData prepare(const RunConfig& config) {
    if (config.series_path.empty()) {
        throw Error(ErrorKind::InvalidArgument, "a series file is required (--series)");
    }
    if (config.window_steps < 2) {
        throw Error(ErrorKind::InvalidArgument, "window size must be at least 2 steps");
    }
    PreparedData data;
    std::vector<std::string> features;
    if (!config.label_column.empty()) {
        for (const auto& name : read_csv_header(config.series_path)) {
            if (name != config.time_column && name != config.label_column) {
                features.push_back(name);
            }
        }
    }
    data.series = load_series(config.series_path, config.time_column, features);
    data.window_sec = window_duration(config.window_steps, data.series.spacing);

    if (!config.label_column.empty()) {
        const auto labels = load_column(config.series_path, config.label_column);
        data.truth = labels_to_events(data.series, labels, data.window_sec);
    } else {
        if (config.events_path.empty()) {
            throw Error(ErrorKind::InvalidArgument,
                        "either an events file (--events) or a label column (--label-column) is required");
        }
        data.truth = load_events(config.events_path);
    }
    data.adjusted = adjust_events(data.truth, data.window_sec);
    return data;
}

struct RegionSplit {
    TimeSeries train;
    TimeSeries test;
};

RegionSplit split_regions(const TimeSeries& series, const RunConfig& config) {
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "train fraction must lie in (0, 1)");
    }
    const std::size_t n = series.steps();
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(config.train_fraction * static_cast<double>(n)));
    if (n_train < config.window_steps) {
        throw Error(ErrorKind::InvalidArgument, "training region shorter than one window");
    }
    if (n - n_train < config.window_steps) {
        throw Error(ErrorKind::InvalidArgument, "test region shorter than one window");
    }
    return {slice_steps(series, 0, n_train), slice_steps(series, n_train, n)};
}

WindowMatrix scaled_windows(const TimeSeries& region, const RunConfig& config) {
    WindowMatrix matrix = build_windows(region, config.window_steps);
    if (!config.scale_inputs) return matrix;
    return apply_scaler(matrix, load_scaler(scaler_file(config)));
}

// Mid-times the predictions cover, pulled in by half a window duration per
// side: events outside are undetectable because their windows were dropped
// at the region boundary.
TimeSpan evaluation_span(const OverlapSeries& predicted) {
    const double half = 0.5 * predicted.window_seconds;
    return {predicted.mid_time(0) + half, predicted.mid_time(predicted.size() - 1) - half};
}

std::vector<SmoothParams> tune_points(const RunConfig& config) {
    std::vector<double> sigmas =
        config.sigmas.empty() ? std::vector<double>{0.5, 1.0, 2.0, 4.0, 8.0} : config.sigmas;
    std::vector<double> thresholds = config.thresholds;
    if (thresholds.empty()) {
        for (int i = 1; i <= 9; ++i) thresholds.push_back(static_cast<double>(i) / 10.0);
    }
    if (!config.radii.empty()) {
        return expand_grid({sigmas, config.radii, thresholds});
    }
    // No radius list: pair each sigma with a 3-sigma support radius.
    std::vector<SmoothParams> points;
    for (double sigma : sigmas) {
        const int radius = static_cast<int>(std::ceil(3.0 * sigma));
        for (double threshold : thresholds) points.push_back({sigma, radius, threshold});
    }
    return points;
}

SmoothParams detect_params(const RunConfig& config) {
    SmoothParams params{1.0, 3, 0.5};
    if (!config.tuned_path.empty()) params = load_tune_best(config.tuned_path);
    if (config.sigma) params.sigma = *config.sigma;
    if (config.radius) params.radius = *config.radius;
    if (config.threshold) params.threshold = *config.threshold;
    return params;
}

TrainConfig train_config(const RunConfig& config) {
    TrainConfig tc;
    tc.epochs = config.epochs;
    tc.batch_size = config.batch_size;
    tc.learning_rate = config.learning_rate;
    tc.seed = config.seed;
    tc.validation_fraction = config.validation_fraction;
    tc.optimizer = optimizer_from_string(config.optimizer);
    return tc;
}

std::size_t validation_rows(std::size_t rows, double fraction) {
    auto n_val = static_cast<std::size_t>(std::floor(static_cast<double>(rows) * fraction));
    return std::clamp<std::size_t>(n_val, 1, rows - 1);
}

void apply_config_json(RunConfig& config, const std::string& text);

} // namespace

void apply_config_file(RunConfig& config, const std::string& path) {
    const std::string text = textio::read_file(path);
    try {
        apply_config_json(config, text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument,
                    "cannot parse config file " + path + ": " + e.what());
    }
}

namespace {

void apply_config_json(RunConfig& config, const std::string& text) {
    const json doc = json::parse(text);
    const auto get = [&](const char* key, auto& field) {
        if (doc.contains(key) && !doc[key].is_null()) field = doc[key].get<std::decay_t<decltype(field)>>();
    };
    const auto get_opt = [&](const char* key, auto& field) {
        using Value = typename std::decay_t<decltype(field)>::value_type;
        if (doc.contains(key) && !doc[key].is_null()) field = doc[key].get<Value>();
    };
    get("series", config.series_path);
    get("events", config.events_path);
    get("label_column", config.label_column);
    get("time_column", config.time_column);
    get("out", config.out_dir);
    get("model", config.model_path);
    get("scaler", config.scaler_path);
    get("tuned", config.tuned_path);
    get("predicted", config.predicted_path);
    get("truth", config.truth_path);
    get("w", config.window_steps);
    get("hidden_units", config.hidden_units);
    get("activation", config.activation);
    get("train_fraction", config.train_fraction);
    get("scale", config.scale_inputs);
    get("epochs", config.epochs);
    get("batch_size", config.batch_size);
    get("learning_rate", config.learning_rate);
    get("validation_fraction", config.validation_fraction);
    get("optimizer", config.optimizer);
    get("seed", config.seed);
    get_opt("sigma", config.sigma);
    get_opt("radius", config.radius);
    get_opt("threshold", config.threshold);
    get("sigmas", config.sigmas);
    get("radii", config.radii);
    get("thresholds", config.thresholds);
    get_opt("tolerance", config.tolerance);
    get("synth_steps", config.synth_steps);
    get("synth_spacing", config.synth_spacing);
    get("synth_features", config.synth_features);
    get("synth_events", config.synth_events);
    get("synth_signature", config.synth_signature);
    get("synth_amplitude", config.synth_amplitude);
    get("synth_noise_std", config.synth_noise_std);
    get("synth_event_width", config.synth_event_width);
    get("synth_min_gap", config.synth_min_gap);
}

} // namespace

void echo_config(const RunConfig& config) {
    ensure_out_dir(config);
    json doc;
    doc["series"] = config.series_path;
    doc["events"] = config.events_path;
    doc["label_column"] = config.label_column;
    doc["time_column"] = config.time_column;
    doc["out"] = config.out_dir;
    doc["model"] = config.model_path;
    doc["scaler"] = config.scaler_path;
    doc["tuned"] = config.tuned_path;
    doc["predicted"] = config.predicted_path;
    doc["truth"] = config.truth_path;
    doc["w"] = config.window_steps;
    doc["hidden_units"] = config.hidden_units;
    doc["activation"] = config.activation;
    doc["train_fraction"] = config.train_fraction;
    doc["scale"] = config.scale_inputs;
    doc["epochs"] = config.epochs;
    doc["batch_size"] = config.batch_size;
    doc["learning_rate"] = config.learning_rate;
    doc["validation_fraction"] = config.validation_fraction;
    doc["optimizer"] = config.optimizer;
    doc["seed"] = config.seed;
    doc["sigma"] = config.sigma ? json(*config.sigma) : json(nullptr);
    doc["radius"] = config.radius ? json(*config.radius) : json(nullptr);
    doc["threshold"] = config.threshold ? json(*config.threshold) : json(nullptr);
    doc["sigmas"] = config.sigmas;
    doc["radii"] = config.radii;
    doc["thresholds"] = config.thresholds;
    doc["tolerance"] = config.tolerance ? json(*config.tolerance) : json(nullptr);
    doc["synth_steps"] = config.synth_steps;
    doc["synth_spacing"] = config.synth_spacing;
    doc["synth_features"] = config.synth_features;
    doc["synth_events"] = config.synth_events;
    doc["synth_signature"] = config.synth_signature;
    doc["synth_amplitude"] = config.synth_amplitude;
    doc["synth_noise_std"] = config.synth_noise_std;
    doc["synth_event_width"] = config.synth_event_width;
    doc["synth_min_gap"] = config.synth_min_gap;
    textio::write_file(joined(config.out_dir, "config.json"), doc.dump(2) + "\n");
}

void run_label(const RunConfig& config) {
    ensure_out_dir(config);
    const PreparedData data = prepare(config);
    const OverlapSeries labels =
        compute_overlap_series(data.series, data.adjusted, config.window_steps);
    save_overlap_series(labels, joined(config.out_dir, "op.csv"));
}

void run_train(const RunConfig& config) {
    ensure_out_dir(config);
    const PreparedData data = prepare(config);
    const RegionSplit regions = split_regions(data.series, config);

    WindowMatrix windows = build_windows(regions.train, config.window_steps);
    if (config.scale_inputs) {
        fit_scaler(windows);
        save_scaler(*windows.scaler, scaler_file(config));
        windows = apply_scaler(windows, *windows.scaler);
    }
    const OverlapSeries targets =
        compute_overlap_series(regions.train, data.adjusted, config.window_steps);

    Regressor model = init_regressor(windows.cols, config.hidden_units,
                                     activation_from_string(config.activation), config.seed);
    const LossHistory history = train(model, windows, targets, train_config(config));
    save_regressor(model, model_file(config));
    save_loss_history(history, joined(config.out_dir, "losses.csv"));
}

TuneResult run_tune(const RunConfig& config) {
    ensure_out_dir(config);
    const PreparedData data = prepare(config);
    const RegionSplit regions = split_regions(data.series, config);
    const Regressor model = load_regressor(model_file(config));

    const WindowMatrix windows = scaled_windows(regions.train, config);
    const OverlapSeries all_predictions = predict_series(model, windows);

    // Tuning sees only the validation slice of the training region (the
    // temporally last rows, matching the training holdout).
    const std::size_t n_val = validation_rows(windows.rows, config.validation_fraction);
    const std::size_t begin = windows.rows - n_val;
    OverlapSeries val_predictions;
    val_predictions.window_steps = all_predictions.window_steps;
    val_predictions.window_seconds = all_predictions.window_seconds;
    val_predictions.values.assign(all_predictions.values.begin() + static_cast<std::ptrdiff_t>(begin),
                                  all_predictions.values.end());
    val_predictions.partition_start_times.assign(
        all_predictions.partition_start_times.begin() + static_cast<std::ptrdiff_t>(begin),
        all_predictions.partition_start_times.end());

    const double tolerance = config.tolerance.value_or(data.window_sec);
    const TuneResult result =
        tune(val_predictions, data.adjusted, tune_points(config), tolerance, data.window_sec,
             evaluation_span(val_predictions));
    save_tune_table(result, joined(config.out_dir, "tune_table.csv"));
    save_tune_best(result, joined(config.out_dir, "tune_best.csv"));
    return result;
}

void run_detect(const RunConfig& config) {
    ensure_out_dir(config);
    const PreparedData data = prepare(config);
    const RegionSplit regions = split_regions(data.series, config);
    const Regressor model = load_regressor(model_file(config));
    const SmoothParams params = detect_params(config);

    const WindowMatrix windows = scaled_windows(regions.test, config);
    const OverlapSeries predictions = predict_series(model, windows);
    const OverlapSeries smoothed = smooth(predictions, {params.sigma, params.radius});
    save_overlap_series(smoothed, joined(config.out_dir, "smoothed.csv"));

    const PeakList peaks = find_peaks(smoothed, params.threshold);
    const TimeSpan span = evaluation_span(predictions);
    const EventSet predicted_events =
        restrict_to_span(peaks_to_events(peaks, data.window_sec), span);
    const AdjustedEventSet truth_events = restrict_to_span(data.adjusted, span);

    save_events(predicted_events, joined(config.out_dir, "predicted_events.csv"));
    EventSet truth_out;
    truth_out.events = truth_events.events;
    save_events(truth_out, joined(config.out_dir, "truth_test.csv"));
}

MatchReport run_eval(const RunConfig& config) {
    ensure_out_dir(config);
    if (config.predicted_path.empty() || config.truth_path.empty()) {
        throw Error(ErrorKind::InvalidArgument,
                    "eval needs a predicted events file and a truth events file");
    }
    double tolerance = 0.0;
    if (config.tolerance) {
        tolerance = *config.tolerance;
    } else if (!config.series_path.empty()) {
        const TimeSeries series = load_series(config.series_path, config.time_column, {});
        tolerance = window_duration(config.window_steps, series.spacing);
    } else {
        throw Error(ErrorKind::InvalidArgument,
                    "provide --tolerance, or --series and --w to derive the default");
    }
    const EventSet predicted = load_event_list(config.predicted_path);
    const EventSet truth = load_event_list(config.truth_path);
    const MatchReport report = match_events(predicted, as_adjusted(truth), tolerance);
    save_report(report, tolerance, joined(config.out_dir, "report.txt"));
    save_deltas(report, joined(config.out_dir, "deltas.csv"));
    return report;
}

void run_synth(const RunConfig& config) {
    ensure_out_dir(config);
    SynthConfig synth;
    synth.n_steps = config.synth_steps;
    synth.spacing = config.synth_spacing;
    synth.n_features = config.synth_features;
    synth.n_events = config.synth_events;
    synth.signature = signature_from_string(config.synth_signature);
    synth.amplitude = config.synth_amplitude;
    synth.noise_std = config.synth_noise_std;
    synth.event_width = config.synth_event_width;
    synth.min_event_gap =
        config.synth_min_gap > 0.0 ? config.synth_min_gap : 2.5 * config.synth_event_width;
    synth.seed = config.seed;
    const auto [series, events] = generate(synth);
    save_series(series, joined(config.out_dir, "series.csv"), config.time_column);
    save_events(events, joined(config.out_dir, "events.csv"));
}

MatchReport run_pipeline(const RunConfig& config) {
    ensure_out_dir(config);
    run_label(config);
    run_train(config);

    RunConfig staged = config;
    if (staged.model_path.empty()) staged.model_path = joined(config.out_dir, "model.txt");
    if (staged.scaler_path.empty()) staged.scaler_path = joined(config.out_dir, "scaler.csv");
    run_tune(staged);

    staged.tuned_path = joined(config.out_dir, "tune_best.csv");
    run_detect(staged);

    staged.predicted_path = joined(config.out_dir, "predicted_events.csv");
    staged.truth_path = joined(config.out_dir, "truth_test.csv");
    return run_eval(staged);
}

} // namespace evdet
