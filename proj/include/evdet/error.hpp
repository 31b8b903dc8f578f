#pragma once

#include <stdexcept>
#include <string>

namespace evdet {

enum class ErrorKind {
    NonUniformSampling,
    MissingColumn,
    NonFiniteValue,
    OverlappingEvents,
    InvertedInterval,
    DurationMismatch,
    WindowTooLarge,
    DimensionMismatch,
    NonFiniteLoss,
    InfeasiblePlacement,
    InvalidArgument,
    Io,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonUniformSampling: return "NonUniformSampling";
        case ErrorKind::MissingColumn: return "MissingColumn";
        case ErrorKind::NonFiniteValue: return "NonFiniteValue";
        case ErrorKind::OverlappingEvents: return "OverlappingEvents";
        case ErrorKind::InvertedInterval: return "InvertedInterval";
        case ErrorKind::DurationMismatch: return "DurationMismatch";
        case ErrorKind::WindowTooLarge: return "WindowTooLarge";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonFiniteLoss: return "NonFiniteLoss";
        case ErrorKind::InfeasiblePlacement: return "InfeasiblePlacement";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

/// Library error with a machine-readable kind. Validation kinds map to CLI
/// exit code 2, runtime/numeric kinds (NonFiniteLoss, Io) to 3.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool is_validation() const noexcept {
        return kind_ != ErrorKind::NonFiniteLoss && kind_ != ErrorKind::Io;
    }

private:
    ErrorKind kind_;
};

} // namespace evdet
