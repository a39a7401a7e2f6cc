#pragma once

#include <cstdint>

namespace wingwrap {

/// splitmix64 step (Steele/Lea/Flood). Used both as a stream generator and as
/// a mixing function so per-trial seeds are reproducible on any platform.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic seed for stream `index` derived from a master seed.
/// Pure function: identical across runs, platforms, and worker counts.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t s = master_seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ (index + 0x9E3779B97F4A7C15ull);
  return splitmix64(s);
}

/// Minimal counter-free generator over splitmix64 with portable uniforms.
/// std::uniform_real_distribution is implementation-defined, so trials roll
/// their own [0,1) mapping to keep sampled conditions byte-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

}  // namespace wingwrap
