#include "evdet/postprocess.hpp"

#include <cmath>

#include "evdet/error.hpp"

namespace evdet {

std::vector<double> gaussian_kernel(double sigma, int radius) {
    if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
    if (radius < 1) throw Error(ErrorKind::InvalidArgument, "radius must be at least 1");
    const std::size_t length = 2 * static_cast<std::size_t>(radius) + 1;
    std::vector<double> kernel(length);
    const double norm = 1.0 / (std::sqrt(2.0 * 3.14159265358979323846) * sigma);
    double sum = 0.0;
    for (int x = -radius; x <= radius; ++x) {
        const double value = norm * std::exp(-(static_cast<double>(x) * x) / (2.0 * sigma * sigma));
        kernel[static_cast<std::size_t>(x + radius)] = value;
        sum += value;
    }
    for (double& v : kernel) v /= sum;
    return kernel;
}

OverlapSeries smooth(const OverlapSeries& series, const SmoothingConfig& config) {
    if (series.empty()) throw Error(ErrorKind::InvalidArgument, "cannot smooth an empty series");
    const std::vector<double> kernel = gaussian_kernel(config.sigma, config.radius);
    const int radius = config.radius;
    const int n = static_cast<int>(series.size());

    OverlapSeries out = series;
    for (int k = 0; k < n; ++k) {
        double num = 0.0;
        double den = 0.0;
        // Renormalize over the taps whose source index is in range, so the
        // edges keep constant series constant.
        for (int x = -radius; x <= radius; ++x) {
            const int src = k - x;
            if (src < 0 || src >= n) continue;
            const double g = kernel[static_cast<std::size_t>(x + radius)];
            num += series.values[static_cast<std::size_t>(src)] * g;
            den += g;
        }
        out.values[static_cast<std::size_t>(k)] = num / den;
    }
    return out;
}

PeakList find_peaks(const OverlapSeries& series, double threshold) {
    PeakList out;
    const std::size_t n = series.size();
    if (n < 3) return out;
    std::size_t k = 0;
    while (k < n) {
        std::size_t j = k;
        while (j + 1 < n && series.values[j + 1] == series.values[k]) ++j;
        // Plateau [k, j]; a peak needs both flanks present and strictly lower.
        if (k > 0 && j + 1 < n && series.values[k - 1] < series.values[k] &&
            series.values[j + 1] < series.values[k] && series.values[k] >= threshold) {
            out.peaks.push_back({series.mid_time(k), series.values[k]});
        }
        k = j + 1;
    }
    return out;
}

} // namespace evdet
