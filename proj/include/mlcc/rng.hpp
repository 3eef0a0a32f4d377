#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mlcc {

// Deterministic random source used by the synthetic generator and the test
// suites. std::mt19937_64 has a standard-pinned output sequence; the uniform
// and normal transforms are written out explicitly instead of going through
// std::*_distribution (whose algorithms are implementation-defined), so one
// seed yields one sample stream on every build of this library.
class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1): top 53 bits of one engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller. Each pair of uniforms yields two
  // deviates; the mate is cached and handed out on the next call.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();  // log(0) guard
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mlcc
