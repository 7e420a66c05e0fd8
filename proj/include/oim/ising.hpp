#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oim/graph.hpp"

namespace oim {

// Spin vector, every entry -1 or +1.
using SpinConfig = std::vector<int>;

// Symmetric couplings W_ij with zero diagonal, dense row-major storage.
// Symmetry holds by construction for every public mutation path.
class IsingInstance {
 public:
  IsingInstance() = default;
  explicit IsingInstance(int n)
      : n_(n), w_(static_cast<std::size_t>(n) * n, 0.0) {}

  int n() const { return n_; }

  double w(int i, int j) const {
    return w_[static_cast<std::size_t>(i) * n_ + j];
  }

  // Writes both (i,j) and (j,i); rejects the diagonal.
  void set_coupling(int i, int j, double v);

  // Number of unordered pairs i < j with nonzero coupling.
  int nonzero_pairs() const;

  // Debug back door for negative-control tests: perturbs a single entry
  // without mirroring, deliberately breaking the symmetry invariant.
  void tamper_asymmetric(int i, int j, double delta) {
    w_[static_cast<std::size_t>(i) * n_ + j] += delta;
  }

 private:
  int n_ = 0;
  std::vector<double> w_;
};

// Ising mapping of a Max-Cut graph: W_ij = -E_ij, symmetrized, zeros
// elsewhere.
IsingInstance to_ising(const MaxCutGraph& g);

// H(s) = -sum_{i<j} W_ij s_i s_j, each unordered pair counted once.
double ising_energy(const IsingInstance& inst, const SpinConfig& s);

struct GroundStateResult {
  double min_energy = 0.0;
  std::vector<SpinConfig> argmin;  // every config achieving min_energy
};

// 2^N enumeration guard shared by brute force and fixed-point listing.
inline constexpr int kEnumerationGuard = 20;

// Exact minimum of ising_energy over all 2^N configs with the complete
// argmin set (closed under global flip). Throws GuardError above N=20.
GroundStateResult brute_force_ground(const IsingInstance& inst);

// Spin <-> enumeration-id helpers. Bit i of the id is set iff s_i == -1,
// so id 0 is the all-up configuration.
std::uint64_t spin_index(const SpinConfig& s);
SpinConfig spins_from_index(std::uint64_t idx, int n);

// Compact text form, e.g. (+1,-1,+1) -> "+-+".
std::string spins_to_string(const SpinConfig& s);

}  // namespace oim
