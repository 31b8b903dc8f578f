#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evdet/error.hpp"
#include "evdet/labeling.hpp"
#include "evdet/postprocess.hpp"
#include "evdet/rng.hpp"

using namespace evdet;

namespace {

OverlapSeries series_of(std::vector<double> values, double spacing = 1.0,
                        std::size_t window_steps = 3) {
    OverlapSeries s;
    s.window_steps = window_steps;
    s.window_seconds = static_cast<double>(window_steps - 1) * spacing;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.partition_start_times.push_back(static_cast<double>(i) * spacing);
    }
    s.values = std::move(values);
    return s;
}

} // namespace

TEST_CASE("gaussian_kernel is normalized, symmetric, center-peaked") {
    Rng rng(66);
    for (int trial = 0; trial < 200; ++trial) {
        const double sigma = 0.1 + 10.0 * rng.uniform();
        const int radius = 1 + static_cast<int>(rng.uniform_index(30));
        const auto kernel = gaussian_kernel(sigma, radius);
        REQUIRE(kernel.size() == static_cast<std::size_t>(2 * radius + 1));
        const double sum = std::accumulate(kernel.begin(), kernel.end(), 0.0);
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        for (int k = 1; k <= radius; ++k) {
            CHECK(kernel[static_cast<std::size_t>(radius - k)] ==
                  kernel[static_cast<std::size_t>(radius + k)]);
            CHECK(kernel[static_cast<std::size_t>(radius)] >=
                  kernel[static_cast<std::size_t>(radius + k)]);
        }
    }
    CHECK_THROWS_AS(gaussian_kernel(0.0, 3), Error);
    CHECK_THROWS_AS(gaussian_kernel(1.0, 0), Error);
}

TEST_CASE("a huge sigma flattens the kernel toward uniform") {
    const auto kernel = gaussian_kernel(1e6, 3);
    for (double v : kernel) CHECK(std::abs(v - 1.0 / 7.0) <= 1e-6);
}

TEST_CASE("smoothing a constant series is the identity") {
    const OverlapSeries constant = series_of(std::vector<double>(40, 0.37));
    for (const SmoothingConfig config : {SmoothingConfig{0.8, 2}, SmoothingConfig{3.0, 9}}) {
        const OverlapSeries out = smooth(constant, config);
        REQUIRE(out.size() == constant.size());
        for (double v : out.values) CHECK(std::abs(v - 0.37) <= 1e-12);
    }
}

TEST_CASE("smoothing a unit impulse reproduces the kernel") {
    std::vector<double> values(41, 0.0);
    values[20] = 1.0;
    const OverlapSeries impulse = series_of(std::move(values));
    const SmoothingConfig config{1.5, 4};
    const OverlapSeries out = smooth(impulse, config);
    const auto kernel = gaussian_kernel(config.sigma, config.radius);
    for (int x = -config.radius; x <= config.radius; ++x) {
        CHECK(std::abs(out.values[static_cast<std::size_t>(20 + x)] -
                       kernel[static_cast<std::size_t>(x + config.radius)]) <= 1e-12);
    }
    CHECK(out.values[10] == 0.0);
}

TEST_CASE("smoothing moves a tent argmax by at most one step") {
    // Noiseless overlap tent centered mid-series.
    TimeSeries flat;
    flat.spacing = 1.0;
    flat.feature_names = {"x"};
    flat.values.assign(120, 0.0);
    EventSet set;
    set.events = {{60.0, 60.0}};
    const double width = window_duration(5, 1.0);
    const OverlapSeries tent = compute_overlap_series(flat, adjust_events(set, width), 5);

    const auto argmax = [](const std::vector<double>& v) {
        return static_cast<std::ptrdiff_t>(std::max_element(v.begin(), v.end()) - v.begin());
    };
    const auto before = argmax(tent.values);
    for (const SmoothingConfig config : {SmoothingConfig{0.5, 2}, SmoothingConfig{2.0, 6}}) {
        const auto after = argmax(smooth(tent, config).values);
        CHECK(std::abs(after - before) <= 1);
    }
}

TEST_CASE("smoothing preserves the mean and never raises the max") {
    Rng rng(17);
    const SmoothingConfig config{2.0, 4};
    std::vector<double> values(50 * config.radius);
    for (double& v : values) v = rng.uniform();
    const OverlapSeries noisy = series_of(std::move(values));
    const OverlapSeries out = smooth(noisy, config);

    const double mean_in =
        std::accumulate(noisy.values.begin(), noisy.values.end(), 0.0) / noisy.size();
    const double mean_out =
        std::accumulate(out.values.begin(), out.values.end(), 0.0) / out.size();
    CHECK(std::abs(mean_out - mean_in) <= 1e-3 * std::max(1.0, std::abs(mean_in)));

    const double max_in = *std::max_element(noisy.values.begin(), noisy.values.end());
    const double max_out = *std::max_element(out.values.begin(), out.values.end());
    CHECK(max_out <= max_in + 1e-12);
}

TEST_CASE("find_peaks basics") {
    SUBCASE("single interior peak") {
        const PeakList peaks = find_peaks(series_of({0.0, 1.0, 0.0}), 0.5);
        REQUIRE(peaks.size() == 1);
        CHECK(peaks.peaks[0].height == 1.0);
        // Window mid-time of index 1 with w=3, s=1.
        CHECK(peaks.peaks[0].time == 2.0);
    }
    SUBCASE("plateau reports its leftmost index") {
        const PeakList peaks = find_peaks(series_of({0.0, 1.0, 1.0, 0.0}), 0.5);
        REQUIRE(peaks.size() == 1);
        CHECK(peaks.peaks[0].time == 2.0);
    }
    SUBCASE("monotone series has no peaks") {
        CHECK(find_peaks(series_of({0.0, 0.3, 0.6, 0.9}), -10.0).empty());
        CHECK(find_peaks(series_of({0.9, 0.6, 0.3, 0.0}), -10.0).empty());
    }
    SUBCASE("threshold is inclusive") {
        CHECK(find_peaks(series_of({0.0, 0.5, 0.0}), 0.5).size() == 1);
        CHECK(find_peaks(series_of({0.0, 0.5, 0.0}), 0.5000001).empty());
    }
    SUBCASE("short series have no peaks") {
        CHECK(find_peaks(series_of({1.0, 0.0}), 0.0).empty());
    }
}

TEST_CASE("find_peaks shift and threshold monotonicity properties") {
    Rng rng(23);
    std::vector<double> values(200);
    for (double& v : values) v = rng.uniform();
    const OverlapSeries base = series_of(std::move(values));

    SUBCASE("constant offset with shifted threshold is invariant") {
        const double offset = 2.75;
        OverlapSeries shifted = base;
        for (double& v : shifted.values) v += offset;
        const PeakList a = find_peaks(base, 0.6);
        const PeakList b = find_peaks(shifted, 0.6 + offset);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a.peaks[i].time == b.peaks[i].time);
            CHECK(b.peaks[i].height == a.peaks[i].height + offset);
        }
    }
    SUBCASE("raising the threshold never adds peaks") {
        const PeakList low = find_peaks(base, 0.3);
        const PeakList high = find_peaks(base, 0.8);
        CHECK(high.size() <= low.size());
        for (const Peak& p : high.peaks) {
            bool found = false;
            for (const Peak& q : low.peaks) found = found || q.time == p.time;
            CHECK(found);
        }
    }
    SUBCASE("peak times strictly increase") {
        const PeakList peaks = find_peaks(base, 0.0);
        for (std::size_t i = 1; i < peaks.size(); ++i) {
            CHECK(peaks.peaks[i].time > peaks.peaks[i - 1].time);
        }
    }
}
