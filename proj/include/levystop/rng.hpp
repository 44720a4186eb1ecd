#pragma once

#include <cmath>
#include <cstdint>

namespace levystop {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// splitmix64 generator with counter-based stream derivation: stream(seed, i)
/// yields an independent, reproducible stream for sample index i, so serial
/// and parallel sweeps produce bit-identical results regardless of scheduling.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t s) : state(s) {}

    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(detail::mix64(seed) ^ detail::mix64(0x632be59bd9b4e019ULL + index));
    }

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1]; never 0, so -log is always finite.
    double u01() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(u01()) / rate; }

    /// Standard normal via Box-Muller, one spare cached per stream.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u = u01();
        const double v = u01();
        const double m = std::sqrt(-2.0 * std::log(u));
        spare_ = m * std::sin(6.283185307179586477 * v);
        has_spare_ = true;
        return m * std::cos(6.283185307179586477 * v);
    }

private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace levystop
