#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "evdet/labeling.hpp"
#include "evdet/windowing.hpp"

namespace evdet {

enum class Activation { Sigmoid, Tanh };

Activation activation_from_string(const std::string& name);
const char* to_string(Activation activation);

/// Single-hidden-layer feed-forward regressor:
///
///   f(x) = sum_j output_weights[j] * act(hidden_weights[j] . x + hidden_biases[j])
///          + output_bias
///
/// The hidden activation is a bounded squashing function; the output layer
/// is linear and predictions are never clipped.
struct Regressor {
    std::size_t input_dim = 0;
    std::size_t hidden_units = 0;
    Activation activation = Activation::Sigmoid;
    std::vector<double> hidden_weights; // hidden_units x input_dim, row-major
    std::vector<double> hidden_biases;  // hidden_units
    std::vector<double> output_weights; // hidden_units
    double output_bias = 0.0;

    std::size_t parameter_count() const {
        return (input_dim + 1) * hidden_units + hidden_units + 1;
    }

    double forward(std::span<const double> x) const;
};

/// Glorot-uniform weights, zero biases; bit-identical results under the
/// same seed.
Regressor init_regressor(std::size_t input_dim, std::size_t hidden_units,
                         Activation activation, std::uint64_t seed);

enum class Optimizer { Sgd, Adam };

Optimizer optimizer_from_string(const std::string& name);
const char* to_string(Optimizer optimizer);

struct TrainConfig {
    std::size_t epochs = 500;
    std::size_t batch_size = 32;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
    double validation_fraction = 0.2; // temporally last slice of the rows
    Optimizer optimizer = Optimizer::Adam;
};

struct LossHistory {
    std::vector<double> train_mse; // one entry per epoch
    std::vector<double> validation_mse;
};

/// Mini-batch MSE training. The validation slice is the temporally last
/// validation_fraction of rows (overlapping windows leak across random
/// splits); shuffling covers the remaining rows only and is reproducible
/// from the seed. Throws NonFiniteLoss naming the epoch if training
/// diverges.
LossHistory train(Regressor& model, const WindowMatrix& windows,
                  const OverlapSeries& targets, const TrainConfig& config);

double mean_squared_error(const Regressor& model, const WindowMatrix& windows,
                          const OverlapSeries& targets);

/// Max relative error between analytic and central-finite-difference
/// gradients of the squared error at (x, target), over all parameters.
double gradient_check(const Regressor& model, std::span<const double> x, double target);

/// One raw prediction per window row, carrying the row timestamps and
/// window metadata.
OverlapSeries predict_series(const Regressor& model, const WindowMatrix& windows);

/// Flat text format: dims and activation, then every parameter as a hex
/// float in storage order (hidden weights row-major, hidden biases, output
/// weights, output bias). Round-trips bit-exactly.
void save_regressor(const Regressor& model, const std::string& path);
Regressor load_regressor(const std::string& path);

/// Writes `epoch,train_mse,validation_mse` rows.
void save_loss_history(const LossHistory& history, const std::string& path);

} // namespace evdet
