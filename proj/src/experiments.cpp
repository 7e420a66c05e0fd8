#include "oim/experiments.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "oim/errors.hpp"
#include "oim/fmt.hpp"
#include "oim/parallel.hpp"
#include "oim/rng.hpp"

namespace oim {

SweepTable ks_sweep(const IsingInstance& inst, double k,
                    const std::vector<double>& ratios,
                    const AnalysisConfig& cfg) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be > 0");
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!(ratios[i] > 0.0))
      throw std::invalid_argument("ratios must be positive");
    if (i > 0 && !(ratios[i] > ratios[i - 1]))
      throw std::invalid_argument("ratios must be strictly increasing");
  }
  if (inst.n() > kEnumerationGuard)
    throw GuardError("ks_sweep enumerates spin fixed points; N <= " +
                     std::to_string(kEnumerationGuard) + " required");

  SweepTable table;
  table.k = k;
  for (double ratio : ratios) {
    const OimParams params{k, ratio * k, 0.5};
    FixedPointCatalog cat = enumerate_spin_fixed_points(inst, params, cfg);
    std::vector<SweepRow> rows;
    rows.reserve(cat.records.size());
    for (const FixedPointRecord& rec : cat.records) {
      SweepRow row;
      row.ks_over_k = ratio;
      row.fp_id = *rec.spin_id;
      row.spins = *rec.spins;
      row.ising_energy = *rec.ising_energy;
      row.min_eig_hessian = rec.report.eigs_hessian.front();
      row.classification = rec.report.classification_hessian;
      row.is_global_optimum = rec.is_global_optimum;
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) {
                return a.fp_id < b.fp_id;
              });
    table.rows.insert(table.rows.end(), rows.begin(), rows.end());
  }
  return table;
}

namespace {

struct SampleOutcome {
  std::string key;
  std::optional<SpinConfig> spins;
};

SampleOutcome run_sample(const IsingInstance& inst, const OimParams& params,
                         std::uint64_t seed, std::uint64_t index,
                         const IntegratorConfig& icfg,
                         const AnalysisConfig& cfg) {
  SampleOutcome out;
  try {
    const PhaseState init = sample_phases(seed, index, inst.n());
    const Trajectory traj = integrate(params, inst, init, icfg);

    // The integrator stop tolerance is looser than the fixed-point
    // residual, so polish once before reading spins.
    PhaseState point = traj.states.back();
    bool polished = false;
    try {
      point = refine_fixed_point(inst, params, point);
      polished = true;
    } catch (const std::exception&) {
    }

    if (!traj.converged && !polished) {
      out.key = "nonconverged";
      return out;
    }
    const SpinReadout readout = phases_to_spins(point, cfg.bin_tol);
    if (readout.binary()) {
      out.spins = readout.spins;
      out.key = spins_to_string(*readout.spins);
    } else {
      out.key = "nonbinary";
    }
  } catch (const std::exception&) {
    out.key = "nonconverged";
  }
  return out;
}

}  // namespace

BasinStats monte_carlo_basins(const IsingInstance& inst,
                              const OimParams& params,
                              std::uint64_t n_samples, std::uint64_t seed,
                              const IntegratorConfig& icfg,
                              const AnalysisConfig& cfg) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (inst.n() > kEnumerationGuard)
    throw GuardError("hit-rate computation needs the brute-force oracle; "
                     "N <= " +
                     std::to_string(kEnumerationGuard) + " required");

  const GroundStateResult ground = brute_force_ground(inst);

  std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(n_samples));
  parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t i) {
    outcomes[i] = run_sample(inst, params, seed,
                             static_cast<std::uint64_t>(i), icfg, cfg);
  });

  BasinStats stats;
  stats.n_samples = n_samples;
  stats.seed = seed;
  std::uint64_t hits = 0;
  for (const SampleOutcome& o : outcomes) {
    ++stats.counts[o.key];
    if (o.spins && ising_energy(inst, *o.spins) == ground.min_energy) ++hits;
  }
  stats.ground_state_hit_rate =
      static_cast<double>(hits) / static_cast<double>(n_samples);
  return stats;
}

bool operator==(const BasinStats& a, const BasinStats& b) {
  return a.n_samples == b.n_samples && a.seed == b.seed &&
         a.counts == b.counts &&
         a.ground_state_hit_rate == b.ground_state_hit_rate;
}

SolveResult solve(const IsingInstance& inst, const OimParams& params,
                  int n_starts, std::uint64_t seed,
                  const IntegratorConfig& icfg, const AnalysisConfig& cfg) {
  if (n_starts < 1) throw std::invalid_argument("n_starts must be >= 1");

  std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(n_starts));
  parallel_for(static_cast<std::size_t>(n_starts), [&](std::size_t i) {
    outcomes[i] = run_sample(inst, params, seed,
                             static_cast<std::uint64_t>(i), icfg, cfg);
  });

  SolveResult result;
  result.n_starts = static_cast<std::uint64_t>(n_starts);
  for (const SampleOutcome& o : outcomes) {
    if (!o.spins) continue;
    ++result.n_binary;
    const double e = ising_energy(inst, *o.spins);
    const bool better =
        !result.found_binary || e < result.ising_energy ||
        (e == result.ising_energy && *o.spins < result.spins);
    if (better) {
      result.found_binary = true;
      result.spins = *o.spins;
      result.ising_energy = e;
    }
  }
  return result;
}

void write_sweep_csv(
    const SweepTable& table, std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& metadata) {
  for (const auto& [key, value] : metadata)
    out << "# " << key << '=' << value << '\n';
  out << "ks_over_k,fp_id,spins,ising_energy,min_eig_H,classification,"
         "is_global_optimum\n";
  for (const SweepRow& row : table.rows) {
    out << g17(row.ks_over_k) << ',' << row.fp_id << ','
        << spins_to_string(row.spins) << ',' << g17(row.ising_energy) << ','
        << g17(row.min_eig_hessian) << ',' << to_string(row.classification)
        << ',' << (row.is_global_optimum ? 1 : 0) << '\n';
  }
}

nlohmann::json sweep_to_json(const SweepTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : table.rows) {
    rows.push_back(nlohmann::json{
        {"ks_over_k", row.ks_over_k},
        {"fp_id", row.fp_id},
        {"spins", spins_to_string(row.spins)},
        {"ising_energy", row.ising_energy},
        {"min_eig_H", row.min_eig_hessian},
        {"classification", to_string(row.classification)},
        {"is_global_optimum", row.is_global_optimum}});
  }
  return nlohmann::json{{"k", table.k}, {"rows", std::move(rows)}};
}

nlohmann::json basins_to_json(const BasinStats& stats,
                              const OimParams& params) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [key, count] : stats.counts) counts[key] = count;
  return nlohmann::json{
      {"metadata",
       {{"seed", stats.seed},
        {"rng_name", rng_name()},
        {"n_samples", stats.n_samples},
        {"params",
         {{"k", params.k}, {"ks", params.ks}, {"alpha", params.alpha}}}}},
      {"counts", std::move(counts)},
      {"ground_state_hit_rate", stats.ground_state_hit_rate}};
}

}  // namespace oim
