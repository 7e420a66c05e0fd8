#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>

#include "oim/fixed_points.hpp"

namespace oim {

struct SweepRow {
  double ks_over_k = 0.0;
  std::uint64_t fp_id = 0;  // spin enumeration id, stable across ratios
  SpinConfig spins;
  double ising_energy = 0.0;
  double min_eig_hessian = 0.0;
  Classification classification = Classification::Degenerate;
  bool is_global_optimum = false;
};

struct SweepTable {
  double k = 1.0;
  std::vector<SweepRow> rows;  // grouped by ratio ascending, then fp_id
};

// For each ratio r (positive, strictly increasing) sets K_s = r*K,
// enumerates the spin fixed points, and records the stability margin
// (minimum Hessian eigenvalue) plus classification per point.
SweepTable ks_sweep(const IsingInstance& inst, double k,
                    const std::vector<double>& ratios,
                    const AnalysisConfig& cfg = {});

struct BasinStats {
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  // Keyed by reached spin string ("+-..."), or "nonbinary" /
  // "nonconverged". Counts sum to n_samples.
  std::map<std::string, std::uint64_t> counts;
  double ground_state_hit_rate = 0.0;
};

bool operator==(const BasinStats& a, const BasinStats& b);

// Monte-Carlo basin estimate: initial phases uniform on [0, 2*pi)^N from
// stream (seed, sample index), integrated, Newton-polished, then read out
// as spins. Bit-identical results for identical seeds regardless of the
// thread count.
BasinStats monte_carlo_basins(const IsingInstance& inst,
                              const OimParams& params,
                              std::uint64_t n_samples, std::uint64_t seed,
                              const IntegratorConfig& icfg = {},
                              const AnalysisConfig& cfg = {});

struct SolveResult {
  bool found_binary = false;
  SpinConfig spins;             // best binary outcome when found
  double ising_energy = 0.0;
  std::uint64_t n_binary = 0;   // starts that reached a binary point
  std::uint64_t n_starts = 0;
};

// Multistart dynamics; returns the binary outcome with minimum Ising
// energy (ties broken lexicographically, so the result is independent of
// scheduling). found_binary is false if no start binarized.
SolveResult solve(const IsingInstance& inst, const OimParams& params,
                  int n_starts, std::uint64_t seed,
                  const IntegratorConfig& icfg = {},
                  const AnalysisConfig& cfg = {});

// CSV: "ks_over_k,fp_id,spins,ising_energy,min_eig_H,classification,
// is_global_optimum".
void write_sweep_csv(
    const SweepTable& table, std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& metadata = {});

nlohmann::json sweep_to_json(const SweepTable& table);
nlohmann::json basins_to_json(const BasinStats& stats, const OimParams& params);

}  // namespace oim
