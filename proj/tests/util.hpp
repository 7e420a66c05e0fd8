#pragma once

#include <cstdint>
#include <numbers>

#include "oim/ising.hpp"
#include "oim/rng.hpp"

namespace testutil {

// Dense symmetric instance with W uniform in [-1, 1].
inline oim::IsingInstance random_instance(int n, std::uint64_t seed) {
  oim::IsingInstance inst(n);
  oim::SplitMix64 gen(oim::mix64(seed ^ 0x5eedu));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      inst.set_coupling(i, j, gen.next_double(-1.0, 1.0));
  return inst;
}

inline std::vector<double> random_phases(int n, std::uint64_t seed) {
  oim::SplitMix64 gen(oim::mix64((seed << 1) ^ 0x9a5eULL));
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (auto& t : theta) t = gen.next_double(0.0, 2.0 * std::numbers::pi);
  return theta;
}

inline oim::IsingInstance two_node(double w01 = 1.0) {
  oim::IsingInstance inst(2);
  inst.set_coupling(0, 1, w01);
  return inst;
}

inline oim::IsingInstance triangle(double w) {
  oim::IsingInstance inst(3);
  inst.set_coupling(0, 1, w);
  inst.set_coupling(0, 2, w);
  inst.set_coupling(1, 2, w);
  return inst;
}

}  // namespace testutil
