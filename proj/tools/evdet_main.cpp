#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "evdet/error.hpp"
#include "evdet/pipeline.hpp"
#include "evdet/textio.hpp"

namespace {

// Exit codes: 0 success, 2 validation error, 3 runtime/numeric error.
constexpr int kValidationExit = 2;
constexpr int kRuntimeExit = 3;

struct OptionalFlags {
    double sigma = 0.0;
    int radius = 0;
    double threshold = 0.0;
    double tolerance = 0.0;
};

void add_common(CLI::App* cmd, evdet::RunConfig& config, std::string& config_path) {
    cmd->add_option("--series", config.series_path, "series CSV file");
    cmd->add_option("--events", config.events_path, "ground-truth events CSV file");
    cmd->add_option("--label-column", config.label_column,
                    "0/1 column in the series file to derive events from");
    cmd->add_option("--time-column", config.time_column, "time column name (default: time)");
    cmd->add_option("--out", config.out_dir, "output directory (default: out)");
    cmd->add_option("--w", config.window_steps, "window size in steps");
    cmd->add_option("--hidden-units", config.hidden_units, "hidden layer width");
    cmd->add_option("--activation", config.activation, "sigmoid | tanh");
    cmd->add_option("--train-fraction", config.train_fraction, "leading fraction used for training");
    cmd->add_option("--seed", config.seed, "random seed");
    cmd->add_option("--config", config_path, "JSON config file; its values win over flags");
}

void add_train_flags(CLI::App* cmd, evdet::RunConfig& config) {
    cmd->add_option("--epochs", config.epochs, "training epochs");
    cmd->add_option("--batch-size", config.batch_size, "mini-batch size");
    cmd->add_option("--learning-rate", config.learning_rate, "optimizer step size");
    cmd->add_option("--validation-fraction", config.validation_fraction,
                    "trailing fraction of training windows held out");
    cmd->add_option("--optimizer", config.optimizer, "adam | sgd");
    cmd->add_flag("--no-scale", [&config](std::int64_t) { config.scale_inputs = false; },
                  "disable min-max input scaling");
}

void bind_detect_flags(CLI::App* cmd, evdet::RunConfig& config, OptionalFlags& flags) {
    auto* sigma = cmd->add_option("--sigma", flags.sigma, "Gaussian sigma in window steps");
    auto* radius = cmd->add_option("--radius", flags.radius, "Gaussian kernel radius in steps");
    auto* threshold = cmd->add_option("--threshold", flags.threshold, "peak height threshold");
    cmd->callback([&config, &flags, sigma, radius, threshold]() {
        if (sigma->count() > 0) config.sigma = flags.sigma;
        if (radius->count() > 0) config.radius = flags.radius;
        if (threshold->count() > 0) config.threshold = flags.threshold;
    });
}

void bind_tolerance(CLI::App* cmd, evdet::RunConfig& config, OptionalFlags& flags) {
    auto* tolerance =
        cmd->add_option("--tolerance", flags.tolerance, "match tolerance in seconds (default: window duration)");
    cmd->parse_complete_callback([&config, &flags, tolerance]() {
        if (tolerance->count() > 0) config.tolerance = flags.tolerance;
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regression-based event detection for multivariate time series"};
    app.require_subcommand(1);

    evdet::RunConfig config;
    std::string config_path;
    OptionalFlags flags;

    auto* label = app.add_subcommand("label", "compute overlap labels for the whole series");
    add_common(label, config, config_path);

    auto* train = app.add_subcommand("train", "train the regressor on the training region");
    add_common(train, config, config_path);
    add_train_flags(train, config);

    auto* tune_cmd = app.add_subcommand("tune", "grid-search smoothing parameters on the validation slice");
    add_common(tune_cmd, config, config_path);
    add_train_flags(tune_cmd, config);
    tune_cmd->add_option("--model", config.model_path, "trained model file");
    tune_cmd->add_option("--scaler", config.scaler_path, "scaler file from training");
    tune_cmd->add_option("--sigmas", config.sigmas, "sigma candidates");
    tune_cmd->add_option("--radii", config.radii, "radius candidates");
    tune_cmd->add_option("--thresholds", config.thresholds, "threshold candidates");
    bind_tolerance(tune_cmd, config, flags);

    auto* detect = app.add_subcommand("detect", "predict, smooth and extract events on the test region");
    add_common(detect, config, config_path);
    add_train_flags(detect, config);
    detect->add_option("--model", config.model_path, "trained model file");
    detect->add_option("--scaler", config.scaler_path, "scaler file from training");
    detect->add_option("--tuned", config.tuned_path, "tune_best.csv from a tune run");
    bind_detect_flags(detect, config, flags);

    auto* eval = app.add_subcommand("eval", "match predicted events against truth events");
    add_common(eval, config, config_path);
    eval->add_option("--predicted", config.predicted_path, "predicted events CSV")->required();
    eval->add_option("--truth", config.truth_path, "truth events CSV")->required();
    bind_tolerance(eval, config, flags);

    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    add_common(synth, config, config_path);
    synth->add_option("--synth-steps", config.synth_steps, "number of steps");
    synth->add_option("--synth-spacing", config.synth_spacing, "sample spacing in seconds");
    synth->add_option("--synth-features", config.synth_features, "feature count");
    synth->add_option("--synth-events", config.synth_events, "event count");
    synth->add_option("--synth-signature", config.synth_signature, "step | pulse | drift");
    synth->add_option("--synth-amplitude", config.synth_amplitude, "signature amplitude");
    synth->add_option("--synth-noise-std", config.synth_noise_std, "baseline noise level");
    synth->add_option("--synth-event-width", config.synth_event_width, "signature width in seconds");
    synth->add_option("--synth-min-gap", config.synth_min_gap,
                      "minimum midpoint gap (default: 2.5 * width)");

    auto* pipeline = app.add_subcommand("pipeline", "label, train, tune, detect and eval in one run");
    add_common(pipeline, config, config_path);
    add_train_flags(pipeline, config);
    pipeline->add_option("--sigmas", config.sigmas, "sigma candidates");
    pipeline->add_option("--radii", config.radii, "radius candidates");
    pipeline->add_option("--thresholds", config.thresholds, "threshold candidates");
    bind_detect_flags(pipeline, config, flags);
    bind_tolerance(pipeline, config, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidationExit;
    }

    try {
        if (!config_path.empty()) evdet::apply_config_file(config, config_path);
        evdet::echo_config(config);
        if (label->parsed()) {
            evdet::run_label(config);
        } else if (train->parsed()) {
            evdet::run_train(config);
        } else if (tune_cmd->parsed()) {
            const evdet::TuneResult result = evdet::run_tune(config);
            std::cout << "best sigma=" << evdet::textio::format_double(result.best.sigma)
                      << " radius=" << result.best.radius
                      << " threshold=" << evdet::textio::format_double(result.best.threshold)
                      << " f1=" << evdet::textio::format_double(result.best_f1) << "\n";
        } else if (detect->parsed()) {
            evdet::run_detect(config);
        } else if (eval->parsed()) {
            const evdet::MatchReport report = evdet::run_eval(config);
            std::cout << "precision=" << evdet::textio::format_double(report.precision)
                      << " recall=" << evdet::textio::format_double(report.recall)
                      << " f1=" << evdet::textio::format_double(report.f1) << "\n";
        } else if (synth->parsed()) {
            evdet::run_synth(config);
        } else if (pipeline->parsed()) {
            const evdet::MatchReport report = evdet::run_pipeline(config);
            std::cout << "precision=" << evdet::textio::format_double(report.precision)
                      << " recall=" << evdet::textio::format_double(report.recall)
                      << " f1=" << evdet::textio::format_double(report.f1) << "\n";
        }
    } catch (const evdet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_validation() ? kValidationExit : kRuntimeExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeExit;
    }
    return 0;
}
