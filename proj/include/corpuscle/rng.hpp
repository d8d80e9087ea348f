#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "corpuscle/vec3.hpp"

namespace corpuscle {

// Deterministic sample-point generator; identical streams across platforms.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    Vec3 unit_vector() {
        const double u = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, 2.0 * 3.14159265358979323846);
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        return {s * std::cos(phi), s * std::sin(phi), u};
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace corpuscle
