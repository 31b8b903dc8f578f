#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace evdet {

/// Deterministic random source. Wraps std::mt19937_64 (whose raw output
/// sequence is fixed by the standard) and derives doubles without the
/// standard distributions, so streams are identical across standard-library
/// implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n); n must be nonzero.
    std::size_t uniform_index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    /// Standard normal via Box-Muller, caching the spare draw.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        constexpr double two_pi = 6.283185307179586476925286766559;
        spare_ = mag * std::sin(two_pi * u2);
        has_spare_ = true;
        return mag * std::cos(two_pi * u2);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Fisher-Yates shuffle driven by Rng (std::shuffle's draw pattern is
/// implementation-defined).
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[rng.uniform_index(i)]);
    }
}

} // namespace evdet
