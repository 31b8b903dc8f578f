#pragma once

#include <cstdint>
#include <utility>

#include "evdet/series.hpp"

namespace evdet {

enum class EventSignature { StepChange, Pulse, Drift };

EventSignature signature_from_string(const std::string& name);
const char* to_string(EventSignature signature);

/// Synthetic dataset recipe: Gaussian baseline noise with n_events injected
/// signatures of temporal width event_width, centered on midpoints placed
/// uniformly at random at least min_event_gap apart.
struct SynthConfig {
    std::size_t n_steps = 5000;
    double spacing = 1.0;
    std::size_t n_features = 3;
    std::size_t n_events = 10;
    EventSignature signature = EventSignature::Pulse;
    double amplitude = 1.0;
    double noise_std = 0.0;
    double event_width = 20.0;   // seconds
    double min_event_gap = 50.0; // seconds, >= 2 * event_width
    std::uint64_t seed = 0;
};

/// Returns the series plus point events (start == end) at the injected
/// midpoints, to be adjusted to a window duration downstream. Deterministic
/// under the seed; throws InfeasiblePlacement when the gap constraint
/// cannot be met after bounded retries.
std::pair<TimeSeries, EventSet> generate(const SynthConfig& config);

} // namespace evdet
