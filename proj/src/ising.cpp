#include "oim/ising.hpp"

#include <stdexcept>

#include "oim/errors.hpp"

namespace oim {

void IsingInstance::set_coupling(int i, int j, double v) {
  if (i == j) throw std::invalid_argument("diagonal couplings must stay zero");
  w_[static_cast<std::size_t>(i) * n_ + j] = v;
  w_[static_cast<std::size_t>(j) * n_ + i] = v;
}

int IsingInstance::nonzero_pairs() const {
  int count = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (w(i, j) != 0.0) ++count;
  return count;
}

IsingInstance to_ising(const MaxCutGraph& g) {
  IsingInstance inst(g.n);
  for (const Edge& e : g.edges) inst.set_coupling(e.i, e.j, -e.w);
  return inst;
}

double ising_energy(const IsingInstance& inst, const SpinConfig& s) {
  if (static_cast<int>(s.size()) != inst.n())
    throw DimensionError("spin vector length does not match instance");
  double acc = 0.0;
  for (int i = 0; i < inst.n(); ++i)
    for (int j = i + 1; j < inst.n(); ++j)
      acc += inst.w(i, j) * s[static_cast<std::size_t>(i)] *
             s[static_cast<std::size_t>(j)];
  return -acc;
}

GroundStateResult brute_force_ground(const IsingInstance& inst) {
  const int n = inst.n();
  if (n > kEnumerationGuard)
    throw GuardError("brute force limited to N <= " +
                     std::to_string(kEnumerationGuard) + ", got N = " +
                     std::to_string(n));

  GroundStateResult result;
  const std::uint64_t total = std::uint64_t{1} << n;
  bool first = true;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const SpinConfig s = spins_from_index(idx, n);
    const double e = ising_energy(inst, s);
    if (first || e < result.min_energy) {
      result.min_energy = e;
      result.argmin.clear();
      result.argmin.push_back(s);
      first = false;
    } else if (e == result.min_energy) {
      result.argmin.push_back(s);
    }
  }
  return result;
}

std::uint64_t spin_index(const SpinConfig& s) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] < 0) idx |= std::uint64_t{1} << i;
  return idx;
}

SpinConfig spins_from_index(std::uint64_t idx, int n) {
  SpinConfig s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    s[static_cast<std::size_t>(i)] = (idx >> i) & 1 ? -1 : 1;
  return s;
}

std::string spins_to_string(const SpinConfig& s) {
  std::string out;
  out.reserve(s.size());
  for (int v : s) out.push_back(v > 0 ? '+' : '-');
  return out;
}

}  // namespace oim
