#pragma once

#include "evdet/labeling.hpp"

namespace evdet {

/// Gaussian smoothing parameters, both in window-index units.
struct SmoothingConfig {
    double sigma = 1.0;
    int radius = 3;
};

struct Peak {
    double time = 0.0; // window mid-time of the peak
    double height = 0.0;
};

struct PeakList {
    std::vector<Peak> peaks;

    std::size_t size() const { return peaks.size(); }
    bool empty() const { return peaks.empty(); }
};

/// Normalized symmetric Gaussian taps, length 2*radius+1, summing to 1,
/// maximal at the center.
std::vector<double> gaussian_kernel(double sigma, int radius);

/// Gaussian convolution preserving length and timestamps. Near the edges
/// the kernel is renormalized over the in-range taps, so a constant series
/// is preserved at every index.
OverlapSeries smooth(const OverlapSeries& series, const SmoothingConfig& config);

/// Local maxima with height >= threshold. A peak is an index strictly
/// greater than both neighbors, or the leftmost index of a constant plateau
/// strictly greater than the values flanking it; series ends never qualify.
/// Peak times are window mid-times.
PeakList find_peaks(const OverlapSeries& series, double threshold);

} // namespace evdet
