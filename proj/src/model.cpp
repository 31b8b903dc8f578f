#include "evdet/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "evdet/error.hpp"
#include "evdet/rng.hpp"
#include "evdet/textio.hpp"

namespace evdet {

namespace {

double activate(Activation activation, double z) {
    return activation == Activation::Sigmoid ? 1.0 / (1.0 + std::exp(-z)) : std::tanh(z);
}

// Derivative in terms of the activation output a.
double activate_derivative(Activation activation, double a) {
    return activation == Activation::Sigmoid ? a * (1.0 - a) : 1.0 - a * a;
}

// Gradients in the same layout as the model parameters.
struct Gradients {
    std::vector<double> hidden_weights;
    std::vector<double> hidden_biases;
    std::vector<double> output_weights;
    double output_bias = 0.0;

    explicit Gradients(const Regressor& model)
        : hidden_weights(model.hidden_weights.size(), 0.0),
          hidden_biases(model.hidden_biases.size(), 0.0),
          output_weights(model.output_weights.size(), 0.0) {}

    void reset() {
        std::fill(hidden_weights.begin(), hidden_weights.end(), 0.0);
        std::fill(hidden_biases.begin(), hidden_biases.end(), 0.0);
        std::fill(output_weights.begin(), output_weights.end(), 0.0);
        output_bias = 0.0;
    }
};

// Forward pass keeping the hidden activations, then accumulate the
// gradients of `loss_scale * (prediction - target)` into `grads`.
double accumulate_gradients(const Regressor& model, std::span<const double> x, double target,
                            double loss_scale, Gradients& grads, std::vector<double>& hidden) {
    const std::size_t q = model.hidden_units;
    const std::size_t r = model.input_dim;
    double prediction = model.output_bias;
    for (std::size_t j = 0; j < q; ++j) {
        const double* wj = model.hidden_weights.data() + j * r;
        double z = model.hidden_biases[j];
        for (std::size_t k = 0; k < r; ++k) z += wj[k] * x[k];
        hidden[j] = activate(model.activation, z);
        prediction += model.output_weights[j] * hidden[j];
    }
    const double upstream = loss_scale * (prediction - target);
    grads.output_bias += upstream;
    for (std::size_t j = 0; j < q; ++j) {
        grads.output_weights[j] += upstream * hidden[j];
        const double dz =
            upstream * model.output_weights[j] * activate_derivative(model.activation, hidden[j]);
        grads.hidden_biases[j] += dz;
        double* gw = grads.hidden_weights.data() + j * r;
        for (std::size_t k = 0; k < r; ++k) gw[k] += dz * x[k];
    }
    return prediction;
}

// Flat view over the model parameters in storage order.
struct ParamView {
    Regressor& model;

    std::size_t size() const { return model.parameter_count(); }

    double& at(std::size_t i) {
        const std::size_t nw = model.hidden_weights.size();
        const std::size_t nb = model.hidden_biases.size();
        const std::size_t no = model.output_weights.size();
        if (i < nw) return model.hidden_weights[i];
        i -= nw;
        if (i < nb) return model.hidden_biases[i];
        i -= nb;
        if (i < no) return model.output_weights[i];
        return model.output_bias;
    }
};

struct GradView {
    const Gradients& grads;

    double at(std::size_t i) const {
        const std::size_t nw = grads.hidden_weights.size();
        const std::size_t nb = grads.hidden_biases.size();
        const std::size_t no = grads.output_weights.size();
        if (i < nw) return grads.hidden_weights[i];
        i -= nw;
        if (i < nb) return grads.hidden_biases[i];
        i -= nb;
        if (i < no) return grads.output_weights[i];
        return grads.output_bias;
    }
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::size_t step = 0;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

void apply_update(Regressor& model, const Gradients& grads, const TrainConfig& config,
                  AdamState& adam) {
    ParamView params{model};
    GradView grad_view{grads};
    const std::size_t n = params.size();
    if (config.optimizer == Optimizer::Sgd) {
        for (std::size_t i = 0; i < n; ++i) params.at(i) -= config.learning_rate * grad_view.at(i);
        return;
    }
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    adam.step += 1;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(adam.step));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(adam.step));
    for (std::size_t i = 0; i < n; ++i) {
        const double g = grad_view.at(i);
        adam.m[i] = beta1 * adam.m[i] + (1.0 - beta1) * g;
        adam.v[i] = beta2 * adam.v[i] + (1.0 - beta2) * g * g;
        const double m_hat = adam.m[i] / bc1;
        const double v_hat = adam.v[i] / bc2;
        params.at(i) -= config.learning_rate * m_hat / (std::sqrt(v_hat) + eps);
    }
}

double mse_over_rows(const Regressor& model, const WindowMatrix& windows,
                     const OverlapSeries& targets, std::size_t begin, std::size_t end) {
    if (end <= begin) return 0.0;
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double err = model.forward(windows.row(i)) - targets.values[i];
        sum += err * err;
    }
    return sum / static_cast<double>(end - begin);
}

} // namespace

Activation activation_from_string(const std::string& name) {
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "tanh") return Activation::Tanh;
    throw Error(ErrorKind::InvalidArgument, "unknown activation '" + name + "'");
}

const char* to_string(Activation activation) {
    return activation == Activation::Sigmoid ? "sigmoid" : "tanh";
}

Optimizer optimizer_from_string(const std::string& name) {
    if (name == "sgd") return Optimizer::Sgd;
    if (name == "adam") return Optimizer::Adam;
    throw Error(ErrorKind::InvalidArgument, "unknown optimizer '" + name + "'");
}

const char* to_string(Optimizer optimizer) {
    return optimizer == Optimizer::Sgd ? "sgd" : "adam";
}

double Regressor::forward(std::span<const double> x) const {
    if (x.size() != input_dim) {
        throw Error(ErrorKind::DimensionMismatch,
                    "input has " + std::to_string(x.size()) + " entries, model expects " +
                        std::to_string(input_dim));
    }
    double out = output_bias;
    for (std::size_t j = 0; j < hidden_units; ++j) {
        const double* wj = hidden_weights.data() + j * input_dim;
        double z = hidden_biases[j];
        for (std::size_t k = 0; k < input_dim; ++k) z += wj[k] * x[k];
        out += output_weights[j] * activate(activation, z);
    }
    return out;
}

Regressor init_regressor(std::size_t input_dim, std::size_t hidden_units,
                         Activation activation, std::uint64_t seed) {
    if (input_dim < 1 || hidden_units < 1) {
        throw Error(ErrorKind::InvalidArgument, "input_dim and hidden_units must be at least 1");
    }
    Regressor model;
    model.input_dim = input_dim;
    model.hidden_units = hidden_units;
    model.activation = activation;
    model.hidden_weights.resize(hidden_units * input_dim);
    model.hidden_biases.assign(hidden_units, 0.0);
    model.output_weights.resize(hidden_units);
    model.output_bias = 0.0;

    Rng rng(seed);
    const double hidden_limit =
        std::sqrt(6.0 / static_cast<double>(input_dim + hidden_units));
    for (double& w : model.hidden_weights) w = rng.uniform(-hidden_limit, hidden_limit);
    const double output_limit = std::sqrt(6.0 / static_cast<double>(hidden_units + 1));
    for (double& w : model.output_weights) w = rng.uniform(-output_limit, output_limit);
    return model;
}

LossHistory train(Regressor& model, const WindowMatrix& windows, const OverlapSeries& targets,
                  const TrainConfig& config) {
    if (windows.rows != targets.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "window rows " + std::to_string(windows.rows) + " do not match " +
                        std::to_string(targets.size()) + " targets");
    }
    if (windows.cols != model.input_dim) {
        throw Error(ErrorKind::DimensionMismatch,
                    "window width " + std::to_string(windows.cols) + " does not match model input " +
                        std::to_string(model.input_dim));
    }
    if (config.epochs < 1) throw Error(ErrorKind::InvalidArgument, "epochs must be at least 1");
    if (config.batch_size < 1) throw Error(ErrorKind::InvalidArgument, "batch size must be at least 1");
    if (!(config.learning_rate > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "learning rate must be positive");
    }
    if (!(config.validation_fraction > 0.0 && config.validation_fraction < 0.5)) {
        throw Error(ErrorKind::InvalidArgument, "validation fraction must lie in (0, 0.5)");
    }
    if (windows.rows < 2) {
        throw Error(ErrorKind::InvalidArgument, "training needs at least two rows");
    }

    // Temporally last slice held out for validation; at least one row each.
    const std::size_t n = windows.rows;
    std::size_t n_val = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * config.validation_fraction));
    n_val = std::clamp<std::size_t>(n_val, 1, n - 1);
    const std::size_t n_train = n - n_val;

    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), std::size_t{0});

    Rng rng(config.seed);
    Gradients grads(model);
    AdamState adam(model.parameter_count());
    std::vector<double> hidden(model.hidden_units);

    LossHistory history;
    history.train_mse.reserve(config.epochs);
    history.validation_mse.reserve(config.epochs);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle(order, rng);
        for (std::size_t batch_begin = 0; batch_begin < n_train;
             batch_begin += config.batch_size) {
            const std::size_t batch_end = std::min(batch_begin + config.batch_size, n_train);
            const double scale = 2.0 / static_cast<double>(batch_end - batch_begin);
            grads.reset();
            for (std::size_t b = batch_begin; b < batch_end; ++b) {
                const std::size_t row = order[b];
                accumulate_gradients(model, windows.row(row), targets.values[row], scale, grads,
                                     hidden);
            }
            apply_update(model, grads, config, adam);
        }
        const double train_loss = mse_over_rows(model, windows, targets, 0, n_train);
        const double val_loss = mse_over_rows(model, windows, targets, n_train, n);
        if (!std::isfinite(train_loss) || !std::isfinite(val_loss)) {
            throw Error(ErrorKind::NonFiniteLoss,
                        "training diverged at epoch " + std::to_string(epoch));
        }
        history.train_mse.push_back(train_loss);
        history.validation_mse.push_back(val_loss);
    }
    return history;
}

double mean_squared_error(const Regressor& model, const WindowMatrix& windows,
                          const OverlapSeries& targets) {
    if (windows.rows != targets.size()) {
        throw Error(ErrorKind::DimensionMismatch, "window rows do not match target count");
    }
    return mse_over_rows(model, windows, targets, 0, windows.rows);
}

double gradient_check(const Regressor& model, std::span<const double> x, double target) {
    Gradients grads(model);
    std::vector<double> hidden(model.hidden_units);
    accumulate_gradients(model, x, target, 2.0, grads, hidden);
    GradView analytic{grads};

    Regressor probe = model;
    ParamView params{probe};
    const auto loss_at = [&]() {
        const double err = probe.forward(x) - target;
        return err * err;
    };

    double worst = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        double& p = params.at(i);
        const double original = p;
        const double h = 1e-6 * std::max(1.0, std::abs(original));
        p = original + h;
        const double up = loss_at();
        p = original - h;
        const double down = loss_at();
        p = original;
        const double numeric = (up - down) / (2.0 * h);
        const double ga = analytic.at(i);
        const double rel = std::abs(ga - numeric) / std::max(1e-8, std::abs(ga) + std::abs(numeric));
        worst = std::max(worst, rel);
    }
    return worst;
}

OverlapSeries predict_series(const Regressor& model, const WindowMatrix& windows) {
    if (windows.rows > 0 && windows.cols != model.input_dim) {
        throw Error(ErrorKind::DimensionMismatch,
                    "window width " + std::to_string(windows.cols) + " does not match model input " +
                        std::to_string(model.input_dim));
    }
    OverlapSeries out;
    out.window_steps = windows.window_steps;
    out.window_seconds = windows.window_seconds;
    out.partition_start_times = windows.partition_start_times;
    out.values.reserve(windows.rows);
    for (std::size_t i = 0; i < windows.rows; ++i) {
        out.values.push_back(model.forward(windows.row(i)));
    }
    return out;
}

void save_regressor(const Regressor& model, const std::string& path) {
    std::ostringstream out;
    out << "evdet-regressor 1\n";
    out << "activation " << to_string(model.activation) << '\n';
    out << "input_dim " << model.input_dim << '\n';
    out << "hidden_units " << model.hidden_units << '\n';
    for (double w : model.hidden_weights) out << textio::format_double_hex(w) << '\n';
    for (double b : model.hidden_biases) out << textio::format_double_hex(b) << '\n';
    for (double w : model.output_weights) out << textio::format_double_hex(w) << '\n';
    out << textio::format_double_hex(model.output_bias) << '\n';
    textio::write_file(path, out.str());
}

Regressor load_regressor(const std::string& path) {
    const auto lines = textio::read_lines(path);
    if (lines.size() < 4 || lines[0] != "evdet-regressor 1") {
        throw Error(ErrorKind::Io, "not a regressor file: " + path);
    }
    const auto field = [&](std::size_t idx, const std::string& key) {
        std::istringstream in(lines[idx]);
        std::string name, value;
        in >> name >> value;
        if (name != key || value.empty()) {
            throw Error(ErrorKind::Io, "malformed regressor header in " + path);
        }
        return value;
    };
    Regressor model;
    model.activation = activation_from_string(field(1, "activation"));
    model.input_dim = static_cast<std::size_t>(std::stoull(field(2, "input_dim")));
    model.hidden_units = static_cast<std::size_t>(std::stoull(field(3, "hidden_units")));
    if (model.input_dim < 1 || model.hidden_units < 1) {
        throw Error(ErrorKind::Io, "invalid dimensions in " + path);
    }

    const std::size_t nw = model.hidden_units * model.input_dim;
    const std::size_t expected = nw + model.hidden_units + model.hidden_units + 1;
    if (lines.size() < 4 + expected) {
        throw Error(ErrorKind::Io, "truncated regressor file: " + path);
    }
    std::vector<double> params;
    params.reserve(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        const auto value = textio::parse_double(textio::trim(lines[4 + i]));
        if (!value) throw Error(ErrorKind::Io, "malformed parameter in " + path);
        params.push_back(*value);
    }
    auto cursor = params.begin();
    model.hidden_weights.assign(cursor, cursor + static_cast<std::ptrdiff_t>(nw));
    cursor += static_cast<std::ptrdiff_t>(nw);
    model.hidden_biases.assign(cursor, cursor + static_cast<std::ptrdiff_t>(model.hidden_units));
    cursor += static_cast<std::ptrdiff_t>(model.hidden_units);
    model.output_weights.assign(cursor, cursor + static_cast<std::ptrdiff_t>(model.hidden_units));
    cursor += static_cast<std::ptrdiff_t>(model.hidden_units);
    model.output_bias = *cursor;
    return model;
}

void save_loss_history(const LossHistory& history, const std::string& path) {
    std::ostringstream out;
    out << "epoch,train_mse,validation_mse\n";
    for (std::size_t i = 0; i < history.train_mse.size(); ++i) {
        out << i << ',' << textio::format_double(history.train_mse[i]) << ','
            << textio::format_double(history.validation_mse[i]) << '\n';
    }
    textio::write_file(path, out.str());
}

} // namespace evdet
