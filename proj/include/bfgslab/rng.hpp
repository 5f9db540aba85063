#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "bfgslab/types.hpp"

namespace bfgslab {

/// splitmix64 output at stream position `index` of a master seed. This is the
/// fixed 64-bit mixing function behind every per-run seed, so batch results
/// are reproducible run by run regardless of execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic generator over a splitmix64 stream. Distribution mappings
/// are spelled out here instead of taken from <random>, whose real
/// distributions differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1): the top 53 bits of the stream.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller (second variate cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u = 1.0 - uniform01();  // (0, 1]
    const double r = std::sqrt(-2.0 * std::log(u));
    const double phi = 2.0 * std::numbers::pi * uniform01();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  Vector uniform_box(Index n, double lo, double hi) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x[i] = uniform(lo, hi);
    return x;
  }

  Vector unit_sphere(Index n) {
    Vector x(n);
    double norm = 0.0;
    do {
      for (Index i = 0; i < n; ++i) x[i] = normal();
      norm = x.norm();
    } while (norm < 1e-12);
    return x / norm;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bfgslab
