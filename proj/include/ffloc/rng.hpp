#pragma once

#include <cstdint>

#include "core.hpp"

namespace ffloc {

/// splitmix64; tiny, deterministic across platforms, good enough for sample
/// clouds and power-iteration restarts.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    /// uniform in [0,1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Cx unit_complex() {
        double phi = uniform(0.0, 2.0 * kPi);
        return Cx{std::cos(phi), std::sin(phi)};
    }
    /// Box-Muller
    double gaussian() {
        double u = uniform();
        double v = uniform();
        if (u < 1e-300) u = 1e-300;
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
    }

  private:
    std::uint64_t state_;
};

}  // namespace ffloc
