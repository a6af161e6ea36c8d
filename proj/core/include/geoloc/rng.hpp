#pragma once

#include <cstdint>
#include <random>

namespace geoloc {

// Deterministic random source used everywhere randomness is needed.
//
// Identity: std::mt19937_64 seeded directly with the 64-bit seed. All
// distributions below are hand-mapped from raw engine output (the standard
// library distribution objects are implementation-defined), so a given seed
// produces bit-identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1): top 53 bits of the engine output.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n) by rejection (unbiased).
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via the Marsaglia polar method.
  double normal();

  // Gamma(shape k > 0, scale theta > 0), Marsaglia-Tsang squeeze method;
  // shapes below 1 use the Gamma(k+1) boost with a U^(1/k) factor.
  double gamma(double shape_k, double scale_theta);

  // Derived stream for independent sub-tasks (documented: seed + index).
  static Rng derived(std::uint64_t seed, std::uint64_t index) { return Rng(seed + index); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace geoloc
