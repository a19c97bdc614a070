#pragma once

#include <cstdint>
#include <random>

namespace msc {

// One splitmix64 step; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed for an independent stream: splitmix64 mixing of (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// mt19937_64 with portable conversions (the standard distributions are not
// bit-reproducible across library implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace msc
