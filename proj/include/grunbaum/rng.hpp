#pragma once

// Deterministic random streams for the Monte Carlo oracles.
//
// Reproducibility contract: given the same seed, every sampler in the library
// produces the same values on every platform and for every worker-thread
// count.  That rests on three choices made here:
//   * mt19937_64, whose output sequence is pinned by the C++ standard;
//   * explicit uniform/normal transformations (no distribution objects, whose
//     algorithms are implementation-defined);
//   * per-block substreams derived with SplitMix64, so parallel reductions can
//     assign blocks to threads arbitrarily while the per-block draws and the
//     block summation order stay fixed.

#include <cstdint>
#include <random>

namespace grunbaum {

/// SplitMix64 mixer; used to derive well-separated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class RngStream {
 public:
  /// Substream `block` of the master seed.  Block 0 with seed s differs from
  /// block 0 with seed s+1 -- the mixer sees both inputs.
  RngStream(std::uint64_t seed, std::uint64_t block = 0)
      : engine_(splitmix64(seed ^ splitmix64(block + 0x632be59bd9b4e019ULL))) {}

  /// Uniform on [0,1): top 53 bits of one engine output.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0,1): rejects exact zeros (probability 2^-53 per draw).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  /// Uniform on [a,b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller.  Consumes two uniforms per pair and
  /// caches the second value, so the draw sequence is fixed.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_open();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925287 * u2;  // 2*pi*u2
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace grunbaum
