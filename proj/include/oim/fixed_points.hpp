#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "oim/stability.hpp"

namespace oim {

struct FixedPointRecord {
  PhaseState phases;                    // wrapped into [0, 2*pi)
  std::optional<SpinConfig> spins;      // empty when non-binary
  std::optional<std::uint64_t> spin_id; // enumeration id when binary
  double oim_energy = 0.0;
  std::optional<double> ising_energy;   // absent when non-binary
  StabilityReport report;
  bool is_global_optimum = false;       // vs brute force, when available
};

inline bool operator==(const FixedPointRecord& a, const FixedPointRecord& b) {
  return a.phases == b.phases && a.spins == b.spins && a.spin_id == b.spin_id &&
         a.oim_energy == b.oim_energy && a.ising_energy == b.ising_energy &&
         a.report == b.report && a.is_global_optimum == b.is_global_optimum;
}

struct InstanceSummary {
  int n = 0;
  int nonzero_pairs = 0;
};

// Records sorted by oim_energy ascending, then lexicographic phases,
// with no duplicates modulo 2*pi (within 1e-6 componentwise).
struct FixedPointCatalog {
  std::vector<FixedPointRecord> records;
  OimParams params;
  InstanceSummary instance;
  std::optional<double> ground_energy;  // brute-force oracle when N <= guard
};

// One record per binary phase state theta in {0, pi}^N, each verified
// ||f||_inf <= 1e-12 and classified. Throws GuardError above N=20.
FixedPointCatalog enumerate_spin_fixed_points(const IsingInstance& inst,
                                              const OimParams& params,
                                              const AnalysisConfig& cfg = {});

// Newton iteration theta <- theta - J(theta)^{-1} f(theta) until
// ||f||_inf <= tol. Returns the guess unchanged if it already meets tol.
// Throws SingularJacobianError (pivot below 1e-12 * ||J||_inf) or
// MaxIterationsError.
PhaseState refine_fixed_point(const IsingInstance& inst,
                              const OimParams& params, const PhaseState& guess,
                              double tol = 1e-12, int max_iters = 50);

// Integrates from n_starts seeded-uniform initial states, Newton-polishes
// each endpoint, deduplicates modulo 2*pi, classifies, and merges with the
// spin enumeration when N <= guard. Per-start failures are skipped, not
// fatal.
FixedPointCatalog harvest_from_trajectories(const IsingInstance& inst,
                                            const OimParams& params,
                                            int n_starts, std::uint64_t seed,
                                            const IntegratorConfig& icfg = {},
                                            const AnalysisConfig& cfg = {});

// JSON array of per-record objects (StabilityReport fields plus
// is_global_optimum). Reading back a written array reproduces the records
// bit-exactly.
nlohmann::json catalog_records_to_json(const FixedPointCatalog& cat);
std::vector<FixedPointRecord> catalog_records_from_json(
    const nlohmann::json& arr);

// CSV summary: "id,spins,oim_energy,ising_energy,min_eig_H,
// classification,is_global_optimum"; id is the catalog row index.
void write_catalog_csv(
    const FixedPointCatalog& cat, std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& metadata = {});

}  // namespace oim
