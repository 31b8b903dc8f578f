#include "evdet/datagen.hpp"

#include <algorithm>
#include <cmath>

#include "evdet/error.hpp"
#include "evdet/rng.hpp"

namespace evdet {

EventSignature signature_from_string(const std::string& name) {
    if (name == "step") return EventSignature::StepChange;
    if (name == "pulse") return EventSignature::Pulse;
    if (name == "drift") return EventSignature::Drift;
    throw Error(ErrorKind::InvalidArgument, "unknown event signature '" + name + "'");
}

const char* to_string(EventSignature signature) {
    switch (signature) {
        case EventSignature::StepChange: return "step";
        case EventSignature::Pulse: return "pulse";
        case EventSignature::Drift: return "drift";
    }
    return "unknown";
}

namespace {

double signature_value(EventSignature signature, double amplitude, double offset, double width) {
    const double half = 0.5 * width;
    if (offset < -half || offset > half) return 0.0;
    switch (signature) {
        case EventSignature::StepChange:
            return amplitude;
        case EventSignature::Pulse:
            return amplitude * 0.5 *
                   (1.0 + std::cos(2.0 * 3.14159265358979323846 * offset / width));
        case EventSignature::Drift:
            return amplitude * (offset + half) / width;
    }
    return 0.0;
}

void validate_config(const SynthConfig& config) {
    if (config.n_steps < 2) throw Error(ErrorKind::InvalidArgument, "need at least two steps");
    if (!(config.spacing > 0.0)) throw Error(ErrorKind::InvalidArgument, "spacing must be positive");
    if (config.n_features < 1) throw Error(ErrorKind::InvalidArgument, "need at least one feature");
    if (!(config.amplitude > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "amplitude must be positive");
    }
    if (config.noise_std < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "noise level cannot be negative");
    }
    if (!(config.event_width > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "event width must be positive");
    }
    if (config.min_event_gap < 2.0 * config.event_width) {
        throw Error(ErrorKind::InvalidArgument, "min event gap must be at least twice the event width");
    }
    const double total = static_cast<double>(config.n_steps) * config.spacing;
    if (static_cast<double>(config.n_events) * config.min_event_gap >= total) {
        throw Error(ErrorKind::InvalidArgument, "events do not fit: n_events * min_event_gap >= N * s");
    }
}

std::vector<double> place_midpoints(const SynthConfig& config, Rng& rng) {
    std::vector<double> midpoints;
    if (config.n_events == 0) return midpoints;
    const double total = static_cast<double>(config.n_steps - 1) * config.spacing;
    const double margin = config.event_width;
    const double lo = margin;
    const double hi = total - margin;
    if (!(hi > lo)) {
        throw Error(ErrorKind::InfeasiblePlacement, "series too short for the event width");
    }
    const std::size_t max_attempts = 1000 * config.n_events;
    std::size_t attempts = 0;
    while (midpoints.size() < config.n_events) {
        if (attempts++ >= max_attempts) {
            throw Error(ErrorKind::InfeasiblePlacement,
                        "could not place " + std::to_string(config.n_events) + " events with gap " +
                            std::to_string(config.min_event_gap) + " after " +
                            std::to_string(max_attempts) + " attempts");
        }
        const double candidate = rng.uniform(lo, hi);
        bool clear = true;
        for (double m : midpoints) {
            if (std::abs(candidate - m) < config.min_event_gap) {
                clear = false;
                break;
            }
        }
        if (clear) midpoints.push_back(candidate);
    }
    std::sort(midpoints.begin(), midpoints.end());
    return midpoints;
}

} // namespace

std::pair<TimeSeries, EventSet> generate(const SynthConfig& config) {
    validate_config(config);
    Rng rng(config.seed);
    const std::vector<double> midpoints = place_midpoints(config, rng);

    TimeSeries series;
    series.start_time = 0.0;
    series.spacing = config.spacing;
    series.feature_names.reserve(config.n_features);
    for (std::size_t k = 0; k < config.n_features; ++k) {
        series.feature_names.push_back("f" + std::to_string(k + 1));
    }
    series.values.assign(config.n_steps * config.n_features, 0.0);
    if (config.noise_std > 0.0) {
        for (double& v : series.values) v = config.noise_std * rng.normal();
    }
    for (double mid : midpoints) {
        const double half = 0.5 * config.event_width;
        const std::size_t first =
            static_cast<std::size_t>(std::max(0.0, std::ceil((mid - half) / config.spacing)));
        for (std::size_t i = first; i < config.n_steps; ++i) {
            const double offset = series.time_at(i) - mid;
            if (offset > half) break;
            const double bump =
                signature_value(config.signature, config.amplitude, offset, config.event_width);
            for (std::size_t k = 0; k < config.n_features; ++k) series.value(i, k) += bump;
        }
    }

    EventSet events;
    events.events.reserve(midpoints.size());
    for (double mid : midpoints) events.events.push_back({mid, mid});
    return {series, events};
}

} // namespace evdet
