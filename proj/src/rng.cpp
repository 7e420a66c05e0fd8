#include "oim/rng.hpp"

#include <numbers>

namespace oim {

std::vector<double> sample_phases(std::uint64_t seed, std::uint64_t index,
                                  int n) {
  SplitMix64 gen = sample_stream(seed, index);
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (auto& t : theta) t = gen.next_double(0.0, 2.0 * std::numbers::pi);
  return theta;
}

}  // namespace oim
