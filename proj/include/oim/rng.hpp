#pragma once

#include <cstdint>
#include <vector>

namespace oim {

// splitmix64: tiny, portable, and good enough for sampling initial phases.
// Streams for (seed, index) pairs are derived so that sample k of a batch is
// the same no matter how the batch is partitioned across threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_double(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent stream for sample `index` under master `seed`.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix64(seed) + index * 0x9e3779b97f4a7c15ULL);
}

// Name recorded in output metadata so runs are attributable to a generator.
inline const char* rng_name() { return "splitmix64"; }

// n phases uniform on [0, 2*pi), drawn from stream (seed, index).
std::vector<double> sample_phases(std::uint64_t seed, std::uint64_t index,
                                  int n);

}  // namespace oim
