#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evdet/datagen.hpp"
#include "evdet/eval.hpp"
#include "evdet/model.hpp"
#include "evdet/tune.hpp"

namespace evdet {

/// Everything a command run needs, fillable from CLI flags and/or a JSON
/// config file (config file values win). The CLI echoes the effective
/// config into the output directory.
struct RunConfig {
    // inputs / outputs
    std::string series_path;
    std::string events_path;
    std::string label_column;      // binary-label variant when set
    std::string time_column = "time";
    std::string out_dir = "out";
    std::string model_path;        // defaults to <out>/model.txt
    std::string scaler_path;       // defaults to <out>/scaler.csv
    std::string tuned_path;        // smoothing params from a tune run
    std::string predicted_path;    // eval input
    std::string truth_path;        // eval input

    // windowing / model
    std::size_t window_steps = 2;
    std::size_t hidden_units = 20;
    std::string activation = "sigmoid";
    double train_fraction = 0.7;
    bool scale_inputs = true;

    // training
    std::size_t epochs = 500;
    std::size_t batch_size = 32;
    double learning_rate = 1e-3;
    double validation_fraction = 0.2;
    std::string optimizer = "adam";
    std::uint64_t seed = 0;

    // smoothing / detection (unset -> tuned file if given, else defaults)
    std::optional<double> sigma;
    std::optional<int> radius;
    std::optional<double> threshold;

    // tuning grid (all empty -> paired defaults)
    std::vector<double> sigmas;
    std::vector<int> radii;
    std::vector<double> thresholds;

    // evaluation
    std::optional<double> tolerance; // default: window duration

    // synthetic data
    std::size_t synth_steps = 5000;
    double synth_spacing = 1.0;
    std::size_t synth_features = 3;
    std::size_t synth_events = 10;
    std::string synth_signature = "pulse";
    double synth_amplitude = 1.0;
    double synth_noise_std = 0.0;
    double synth_event_width = 20.0;
    double synth_min_gap = 0.0; // <= 0 -> 2.5 * event width
};

/// Applies a JSON config file on top of `config`; file values win.
void apply_config_file(RunConfig& config, const std::string& path);

/// Writes the effective config as <out>/config.json.
void echo_config(const RunConfig& config);

/// label: adjusted-event overlap labels for the whole series -> op.csv.
void run_label(const RunConfig& config);

/// train: fit the regressor on the training region -> model.txt,
/// losses.csv, scaler.csv.
void run_train(const RunConfig& config);

/// tune: grid-search smoothing parameters on the validation slice of the
/// training region -> tune_table.csv, tune_best.csv.
TuneResult run_tune(const RunConfig& config);

/// detect: predict on the test region, smooth, extract peaks ->
/// smoothed.csv, predicted_events.csv, truth_test.csv.
void run_detect(const RunConfig& config);

/// eval: match two event files -> report.txt, deltas.csv.
MatchReport run_eval(const RunConfig& config);

/// synth: generate a synthetic dataset -> series.csv, events.csv.
void run_synth(const RunConfig& config);

/// pipeline: label, train, tune, detect, eval in sequence over the same
/// artifact files the individual commands use.
MatchReport run_pipeline(const RunConfig& config);

} // namespace evdet
