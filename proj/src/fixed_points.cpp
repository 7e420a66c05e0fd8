#include "oim/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "oim/errors.hpp"
#include "oim/fmt.hpp"
#include "oim/parallel.hpp"
#include "oim/rng.hpp"

namespace oim {

namespace {

bool record_order(const FixedPointRecord& a, const FixedPointRecord& b) {
  if (a.oim_energy != b.oim_energy) return a.oim_energy < b.oim_energy;
  return std::lexicographical_compare(a.phases.begin(), a.phases.end(),
                                      b.phases.begin(), b.phases.end());
}

bool same_point_mod_2pi(const PhaseState& a, const PhaseState& b,
                        double tol = 1e-6) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (angular_distance(a[i], b[i]) > tol) return false;
  return true;
}

FixedPointRecord make_record(const IsingInstance& inst,
                             const OimParams& params, const PhaseState& theta,
                             const AnalysisConfig& cfg,
                             const std::optional<double>& ground_energy) {
  FixedPointRecord rec;
  rec.report = analyze_point(params, inst, theta, cfg);
  rec.phases = theta;
  rec.spins = rec.report.spins;
  if (rec.spins) rec.spin_id = spin_index(*rec.spins);
  rec.oim_energy = rec.report.energy;
  rec.ising_energy = rec.report.ising_energy;
  rec.is_global_optimum = ground_energy && rec.ising_energy &&
                          *rec.ising_energy == *ground_energy;
  return rec;
}

}  // namespace

FixedPointCatalog enumerate_spin_fixed_points(const IsingInstance& inst,
                                              const OimParams& params,
                                              const AnalysisConfig& cfg) {
  const int n = inst.n();
  if (n > kEnumerationGuard)
    throw GuardError("spin fixed-point enumeration limited to N <= " +
                     std::to_string(kEnumerationGuard) + ", got N = " +
                     std::to_string(n) + "; use trajectory harvesting");

  const GroundStateResult ground = brute_force_ground(inst);
  const std::uint64_t total = std::uint64_t{1} << n;

  FixedPointCatalog cat;
  cat.params = params;
  cat.instance = InstanceSummary{n, inst.nonzero_pairs()};
  cat.ground_energy = ground.min_energy;
  cat.records.resize(total);

  parallel_for(total, [&](std::size_t idx) {
    const SpinConfig spins =
        spins_from_index(static_cast<std::uint64_t>(idx), n);
    const PhaseState theta = binary_phases(spins);
    const double residual = inf_norm(velocity(params, inst, theta));
    if (residual > 1e-12)
      throw std::runtime_error("binary phase state failed fixed-point check: "
                               "||f||_inf = " +
                               g17(residual));
    cat.records[idx] =
        make_record(inst, params, theta, cfg, cat.ground_energy);
  });

  std::sort(cat.records.begin(), cat.records.end(), record_order);
  return cat;
}

PhaseState refine_fixed_point(const IsingInstance& inst,
                              const OimParams& params, const PhaseState& guess,
                              double tol, int max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  const int n = inst.n();

  PhaseState theta = guess;
  std::vector<double> f = velocity(params, inst, theta);
  double residual = inf_norm(f);
  if (!std::isfinite(residual))
    throw std::invalid_argument("guess has non-finite velocity");
  if (residual <= tol) return theta;  // already a root, zero Newton step

  for (int iter = 0; iter < max_iters; ++iter) {
    const SymmetricMatrix j = jacobian(params, inst, theta);
    Matrix a(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) a.at(r, c) = j(r, c);
    const double pivot_tol =
        1e-12 * std::max(j.inf_norm(), std::numeric_limits<double>::min());
    const std::vector<double> step = solve_linear(std::move(a), f, pivot_tol);
    for (int i = 0; i < n; ++i)
      theta[static_cast<std::size_t>(i)] -= step[static_cast<std::size_t>(i)];
    f = velocity(params, inst, theta);
    residual = inf_norm(f);
    if (residual <= tol) return theta;
  }
  throw MaxIterationsError("Newton refinement stalled at ||f||_inf = " +
                           g17(residual));
}

FixedPointCatalog harvest_from_trajectories(const IsingInstance& inst,
                                            const OimParams& params,
                                            int n_starts, std::uint64_t seed,
                                            const IntegratorConfig& icfg,
                                            const AnalysisConfig& cfg) {
  if (n_starts < 1) throw std::invalid_argument("n_starts must be >= 1");
  const int n = inst.n();

  FixedPointCatalog cat;
  if (n <= kEnumerationGuard) {
    cat = enumerate_spin_fixed_points(inst, params, cfg);
  } else {
    cat.params = params;
    cat.instance = InstanceSummary{n, inst.nonzero_pairs()};
  }

  std::vector<std::optional<FixedPointRecord>> harvested(
      static_cast<std::size_t>(n_starts));
  parallel_for(static_cast<std::size_t>(n_starts), [&](std::size_t i) {
    try {
      const PhaseState init =
          sample_phases(seed, static_cast<std::uint64_t>(i), n);
      const Trajectory traj = integrate(params, inst, init, icfg);
      const PhaseState polished =
          refine_fixed_point(inst, params, traj.states.back());
      const PhaseState wrapped = wrap_phases(polished);
      if (inf_norm(velocity(params, inst, wrapped)) > 1e-10) return;
      harvested[i] = make_record(inst, params, wrapped, cfg, cat.ground_energy);
    } catch (const std::exception&) {
      // per-start failure; the batch carries on
    }
  });

  for (const auto& rec : harvested) {
    if (!rec) continue;
    const bool duplicate =
        std::any_of(cat.records.begin(), cat.records.end(),
                    [&](const FixedPointRecord& existing) {
                      return same_point_mod_2pi(existing.phases, rec->phases);
                    });
    if (!duplicate) cat.records.push_back(*rec);
  }

  std::sort(cat.records.begin(), cat.records.end(), record_order);
  return cat;
}

nlohmann::json catalog_records_to_json(const FixedPointCatalog& cat) {
  nlohmann::json arr = nlohmann::json::array();
  for (const FixedPointRecord& rec : cat.records) {
    nlohmann::json obj;
    to_json(obj, rec.report);
    obj["is_global_optimum"] = rec.is_global_optimum;
    if (rec.spin_id) obj["spin_id"] = *rec.spin_id;
    arr.push_back(std::move(obj));
  }
  return arr;
}

std::vector<FixedPointRecord> catalog_records_from_json(
    const nlohmann::json& arr) {
  std::vector<FixedPointRecord> records;
  records.reserve(arr.size());
  for (const auto& obj : arr) {
    FixedPointRecord rec;
    from_json(obj, rec.report);
    rec.phases = rec.report.point;
    rec.spins = rec.report.spins;
    rec.oim_energy = rec.report.energy;
    rec.ising_energy = rec.report.ising_energy;
    rec.is_global_optimum = obj.at("is_global_optimum").get<bool>();
    if (obj.contains("spin_id"))
      rec.spin_id = obj.at("spin_id").get<std::uint64_t>();
    records.push_back(std::move(rec));
  }
  return records;
}

void write_catalog_csv(
    const FixedPointCatalog& cat, std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& metadata) {
  for (const auto& [key, value] : metadata)
    out << "# " << key << '=' << value << '\n';
  out << "id,spins,oim_energy,ising_energy,min_eig_H,classification,"
         "is_global_optimum\n";
  for (std::size_t row = 0; row < cat.records.size(); ++row) {
    const FixedPointRecord& rec = cat.records[row];
    out << row << ',' << (rec.spins ? spins_to_string(*rec.spins) : "nonbinary")
        << ',' << g17(rec.oim_energy) << ','
        << (rec.ising_energy ? g17(*rec.ising_energy) : "") << ','
        << g17(rec.report.eigs_hessian.front()) << ','
        << to_string(rec.report.classification_hessian) << ','
        << (rec.is_global_optimum ? 1 : 0) << '\n';
  }
}

}  // namespace oim
