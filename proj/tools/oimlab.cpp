// oimlab: phase-dynamics simulator and fixed-point stability analyzer for
// oscillator Ising machines, with Max-Cut solving on edge-list instances.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "oim/errors.hpp"
#include "oim/experiments.hpp"
#include "oim/fmt.hpp"
#include "oim/parallel.hpp"
#include "oim/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string graph_path;
  double k = 1.0;
  double ks = 1.0;
  double alpha = 0.5;
  double dt = 0.01;
  double t_max = 100.0;
  double stop_tol = 1e-8;
  double bin_tol = 0.1;
  double eigen_tol = 1e-8;
  int starts = 50;
  std::uint64_t seed = 0;
  std::vector<double> ratios;
  std::vector<double> init;
  std::string output;
  std::string format = "json";
  double debug_asymmetrize = 0.0;
};

oim::OimParams params_of(const RunConfig& cfg) {
  return {cfg.k, cfg.ks, cfg.alpha};
}

oim::IntegratorConfig integrator_of(const RunConfig& cfg) {
  oim::IntegratorConfig icfg;
  icfg.dt = cfg.dt;
  icfg.t_max = cfg.t_max;
  icfg.stop_tol = cfg.stop_tol;
  return icfg;
}

oim::AnalysisConfig analysis_of(const RunConfig& cfg) {
  return {cfg.bin_tol, cfg.eigen_tol};
}

std::vector<std::pair<std::string, std::string>> metadata_pairs(
    const RunConfig& cfg) {
  using oim::g17;
  return {{"k", g17(cfg.k)},
          {"ks", g17(cfg.ks)},
          {"alpha", g17(cfg.alpha)},
          {"dt", g17(cfg.dt)},
          {"t_max", g17(cfg.t_max)},
          {"stop_tol", g17(cfg.stop_tol)},
          {"bin_tol", g17(cfg.bin_tol)},
          {"eigen_tol", g17(cfg.eigen_tol)},
          {"starts", std::to_string(cfg.starts)},
          {"seed", std::to_string(cfg.seed)},
          {"rng", oim::rng_name()},
          {"threads", std::to_string(oim::max_threads())}};
}

nlohmann::json metadata_json(const RunConfig& cfg) {
  return nlohmann::json{{"k", cfg.k},
                        {"ks", cfg.ks},
                        {"alpha", cfg.alpha},
                        {"dt", cfg.dt},
                        {"t_max", cfg.t_max},
                        {"stop_tol", cfg.stop_tol},
                        {"bin_tol", cfg.bin_tol},
                        {"eigen_tol", cfg.eigen_tol},
                        {"starts", cfg.starts},
                        {"seed", cfg.seed},
                        {"rng", oim::rng_name()},
                        {"threads", oim::max_threads()}};
}

// Writes to --output when given, stdout otherwise.
void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw std::runtime_error("cannot write '" + cfg.output + "'");
  out << text;
}

oim::IsingInstance instance_of(const RunConfig& cfg,
                               const oim::MaxCutGraph& g) {
  oim::IsingInstance inst = oim::to_ising(g);
  if (cfg.debug_asymmetrize != 0.0 && inst.n() >= 2)
    inst.tamper_asymmetric(0, 1, cfg.debug_asymmetrize);
  return inst;
}

int cmd_info(const RunConfig& cfg) {
  const oim::MaxCutGraph g = oim::load_edge_list(cfg.graph_path);
  std::cout << "n=" << g.n << " m=" << g.edges.size() << '\n';
  if (g.edges.empty()) {
    std::cout << "no edges\n";
    return kExitOk;
  }
  double lo = g.edges.front().w, hi = g.edges.front().w;
  int w_pos = 0, w_neg = 0;
  for (const oim::Edge& e : g.edges) {
    lo = std::min(lo, e.w);
    hi = std::max(hi, e.w);
    if (-e.w > 0.0) ++w_pos;
    if (-e.w < 0.0) ++w_neg;
  }
  std::cout << "edge weights in [" << oim::g17(lo) << ", " << oim::g17(hi)
            << "]\n";
  std::cout << "couplings W = -E: " << w_pos << " positive, " << w_neg
            << " negative\n";
  return kExitOk;
}

int cmd_analyze(const RunConfig& cfg) {
  const oim::MaxCutGraph g = oim::load_edge_list(cfg.graph_path);
  const oim::IsingInstance inst = instance_of(cfg, g);

  oim::FixedPointCatalog cat;
  try {
    cat = oim::enumerate_spin_fixed_points(inst, params_of(cfg),
                                           analysis_of(cfg));
  } catch (const oim::GuardError& e) {
    std::cerr << "error: " << e.what()
              << "\nhint: use `oimlab solve` for instances beyond the "
                 "enumeration guard\n";
    return kExitUsage;
  }

  if (cfg.format == "csv") {
    std::ostringstream out;
    oim::write_catalog_csv(cat, out, metadata_pairs(cfg));
    emit(cfg, out.str());
  } else {
    nlohmann::json doc{
        {"metadata", metadata_json(cfg)},
        {"instance",
         {{"n", cat.instance.n},
          {"nonzero_couplings", cat.instance.nonzero_pairs}}},
        {"records", oim::catalog_records_to_json(cat)}};
    if (cat.ground_energy) doc["ground_energy"] = *cat.ground_energy;
    emit(cfg, doc.dump(2) + "\n");
  }

  for (const oim::FixedPointRecord& rec : cat.records) {
    if (!rec.report.agree) {
      std::cerr << "thesis violation: Jacobian and Hessian classifications "
                   "disagree at a fixed point\n";
      return kExitViolation;
    }
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const oim::MaxCutGraph g = oim::load_edge_list(cfg.graph_path);
  const oim::IsingInstance inst = instance_of(cfg, g);
  const oim::SweepTable table =
      oim::ks_sweep(inst, cfg.k, cfg.ratios, analysis_of(cfg));
  if (cfg.format == "json") {
    nlohmann::json doc = oim::sweep_to_json(table);
    doc["metadata"] = metadata_json(cfg);
    emit(cfg, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    oim::write_sweep_csv(table, out, metadata_pairs(cfg));
    emit(cfg, out.str());
  }
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg) {
  const oim::MaxCutGraph g = oim::load_edge_list(cfg.graph_path);
  const oim::IsingInstance inst = instance_of(cfg, g);
  const oim::SolveResult r = oim::solve(inst, params_of(cfg), cfg.starts,
                                        cfg.seed, integrator_of(cfg),
                                        analysis_of(cfg));
  if (cfg.format == "json") {
    nlohmann::json doc{{"metadata", metadata_json(cfg)},
                       {"found_binary", r.found_binary},
                       {"n_binary", r.n_binary},
                       {"n_starts", r.n_starts}};
    if (r.found_binary) {
      doc["spins"] = r.spins;
      doc["spins_string"] = oim::spins_to_string(r.spins);
      doc["ising_energy"] = r.ising_energy;
      doc["cut_value"] = oim::cut_value(g, r.spins);
    }
    emit(cfg, doc.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream out;
  if (!r.found_binary) {
    out << "no binary outcome reached (" << r.n_binary << '/' << r.n_starts
        << " starts binarized)\n";
  } else {
    out << "ising_energy=" << oim::g17(r.ising_energy) << '\n'
        << "spins=" << oim::spins_to_string(r.spins) << '\n'
        << "cut_value=" << oim::g17(oim::cut_value(g, r.spins)) << '\n'
        << "binary_outcomes=" << r.n_binary << '/' << r.n_starts << '\n';
  }
  emit(cfg, out.str());
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  const oim::MaxCutGraph g = oim::load_edge_list(cfg.graph_path);
  const oim::IsingInstance inst = instance_of(cfg, g);
  oim::PhaseState init;
  if (!cfg.init.empty()) {
    if (static_cast<int>(cfg.init.size()) != inst.n())
      throw std::invalid_argument("--init needs exactly N phases");
    init = cfg.init;
  } else {
    init = oim::sample_phases(cfg.seed, 0, inst.n());
  }
  const oim::Trajectory traj =
      oim::integrate(params_of(cfg), inst, init, integrator_of(cfg));
  std::ostringstream out;
  oim::write_trajectory_csv(traj, out, metadata_pairs(cfg));
  emit(cfg, out.str());
  return kExitOk;
}

// One pass/fail line per property; nonzero exit on any failure.
int cmd_verify(const RunConfig& cfg) {
  const oim::MaxCutGraph g = oim::load_edge_list(cfg.graph_path);
  const oim::IsingInstance inst = instance_of(cfg, g);
  const oim::OimParams p = params_of(cfg);
  const int n = inst.n();
  const int n_states = 20;

  auto states = [&](int count) {
    std::vector<oim::PhaseState> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
      out.push_back(oim::sample_phases(cfg.seed, static_cast<std::uint64_t>(i),
                                       n));
    return out;
  };

  bool all_ok = true;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ')';
    std::cout << '\n';
    if (!ok) all_ok = false;
  };
  auto run_property = [&](const char* name, auto&& property) {
    try {
      std::string detail;
      const bool ok = property(detail);
      report(name, ok, detail);
    } catch (const std::exception& e) {
      report(name, false, e.what());
    }
  };

  run_property("gradient-identity", [&](std::string& detail) {
    double max_fd = 0.0, max_two_f = 0.0;
    for (const auto& theta : states(n_states)) {
      const auto grad = oim::energy_gradient(p, inst, theta);
      const auto fd = oim::finite_difference_gradient(p, inst, theta, 1e-5);
      const auto f = oim::velocity(p, inst, theta);
      for (int i = 0; i < n; ++i) {
        max_fd = std::max(max_fd, std::abs(grad[i] - fd[i]));
        max_two_f = std::max(max_two_f, std::abs(grad[i] + 2.0 * f[i]));
      }
    }
    detail = "max |grad-fd| = " + oim::g17(max_fd) +
             ", max |grad+2f| = " + oim::g17(max_two_f);
    return max_fd <= 1e-6 && max_two_f <= 1e-12;
  });

  run_property("eq5-matrix-identity", [&](std::string& detail) {
    double max_resid = 0.0, max_fd = 0.0;
    for (const auto& theta : states(n_states)) {
      const oim::SymmetricMatrix h = oim::hessian(p, inst, theta);
      const oim::SymmetricMatrix j = oim::jacobian(p, inst, theta);
      max_resid = std::max(
          max_resid,
          oim::equivalence_report(p, inst, theta, cfg.eigen_tol)
              .max_abs_residual_matrix);
      const auto fd_h = oim::finite_difference_matrix(
          oim::FdKind::HessianOfEnergy, p, inst, theta, 1e-4);
      const auto fd_j = oim::finite_difference_matrix(
          oim::FdKind::JacobianOfVelocity, p, inst, theta, 1e-4);
      max_fd = std::max(max_fd, oim::max_abs_combination(h, -1.0, fd_h));
      max_fd = std::max(max_fd, oim::max_abs_combination(j, -1.0, fd_j));
    }
    detail = "max ||J_a + a H|| = " + oim::g17(max_resid) +
             ", max |analytic-fd| = " + oim::g17(max_fd);
    return max_resid <= 1e-12 && max_fd <= 1e-5;
  });

  run_property("eigenvalue-mirror", [&](std::string& detail) {
    double worst = 0.0;
    bool agree = true;
    for (const auto& theta : states(n_states)) {
      const oim::SymmetricMatrix h = oim::hessian(p, inst, theta);
      const auto spec_h = oim::eigenvalues_symmetric(h);
      if (spec_h.residual > 1e-8 * std::max(1.0, h.inf_norm())) return false;
      const auto rep = oim::equivalence_report(p, inst, theta, cfg.eigen_tol);
      worst = std::max(worst, rep.max_abs_residual_eigen /
                                  std::max(1.0, h.inf_norm()));
      agree = agree && rep.agree;
    }
    detail = "scaled mirror misfit = " + oim::g17(worst) +
             ", alpha = " + oim::g17(p.alpha);
    return worst <= 1e-8 && agree;
  });

  run_property("dissipation-monotonicity", [&](std::string& detail) {
    double worst_rise = 0.0;
    for (const auto& theta : states(5)) {
      const oim::Trajectory traj =
          oim::integrate(p, inst, theta, integrator_of(cfg));
      for (std::size_t k = 1; k < traj.energies.size(); ++k)
        worst_rise =
            std::max(worst_rise, traj.energies[k] - traj.energies[k - 1]);
      for (const auto& state : traj.states)
        if (oim::dissipation_rate(p, inst, state) > 0.0) return false;
    }
    detail = "worst energy rise per recorded step = " + oim::g17(worst_rise);
    return worst_rise <= 1e-9;
  });

  run_property("spin-energy-identity", [&](std::string& detail) {
    double worst = 0.0;
    auto check_config = [&](const oim::SpinConfig& s) {
      const double expected = 2.0 * p.k * oim::ising_energy(inst, s) -
                              static_cast<double>(n) * p.ks;
      const double actual = oim::energy(p, inst, oim::binary_phases(s));
      worst = std::max(worst, std::abs(actual - expected));
    };
    if (n <= 10) {
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx)
        check_config(oim::spins_from_index(idx, n));
    } else {
      oim::SplitMix64 gen(oim::mix64(cfg.seed));
      for (int i = 0; i < 256; ++i)
        check_config(oim::spins_from_index(gen.next(), n));
    }
    detail = "max |E - (2K H - N Ks)| = " + oim::g17(worst);
    return worst <= 1e-12;
  });

  return all_ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oscillator Ising machine phase dynamics, fixed-point "
               "stability analysis, and Max-Cut solving"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_common = [&](CLI::App* cmd, bool with_dynamics) {
    cmd->add_option("graph", cfg.graph_path, "edge-list instance file")
        ->required();
    cmd->add_option("--k", cfg.k, "coupling strength K")
        ->capture_default_str();
    cmd->add_option("--ks", cfg.ks, "second-harmonic injection strength K_s")
        ->capture_default_str();
    cmd->add_option("--alpha", cfg.alpha, "gradient-flow constant")
        ->capture_default_str();
    cmd->add_option("--bin-tol", cfg.bin_tol, "spin readout window, radians")
        ->capture_default_str();
    cmd->add_option("--eigen-tol", cfg.eigen_tol,
                    "relative eigenvalue tolerance")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--output", cfg.output, "write to file instead of stdout");
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    if (with_dynamics) {
      cmd->add_option("--dt", cfg.dt, "RK4 step size")->capture_default_str();
      cmd->add_option("--tmax", cfg.t_max, "integration horizon")
          ->capture_default_str();
      cmd->add_option("--stop-tol", cfg.stop_tol,
                      "early-stop velocity threshold")
          ->capture_default_str();
    }
    return cmd;
  };

  CLI::App* info = app.add_subcommand("info", "instance summary");
  info->add_option("graph", cfg.graph_path, "edge-list instance file")
      ->required();

  CLI::App* analyze = add_common(
      app.add_subcommand("analyze",
                         "enumerate and classify all 2^N spin fixed points"),
      false);

  CLI::App* sweep = add_common(
      app.add_subcommand("sweep", "stability across a range of Ks/K ratios"),
      false);
  sweep->add_option("--ratios", cfg.ratios, "Ks/K ratios, ascending")
      ->delimiter(',')
      ->required();

  CLI::App* solve = add_common(
      app.add_subcommand("solve", "multistart minimization of the Ising "
                                  "Hamiltonian"),
      true);
  solve->add_option("--starts", cfg.starts, "number of random starts")
      ->capture_default_str();

  CLI::App* verify = add_common(
      app.add_subcommand("verify", "property checks at seeded random states"),
      true);
  verify
      ->add_option("--debug-asymmetrize", cfg.debug_asymmetrize,
                   "perturb W[0][1] without mirroring (negative control)")
      ->capture_default_str();

  CLI::App* simulate = add_common(
      app.add_subcommand("simulate-trajectory",
                         "integrate one trajectory and export CSV"),
      true);
  simulate->add_option("--init", cfg.init, "initial phases (comma separated)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(info)) return cmd_info(cfg);
    if (app.got_subcommand(analyze)) return cmd_analyze(cfg);
    if (app.got_subcommand(sweep)) return cmd_sweep(cfg);
    if (app.got_subcommand(solve)) {
      if (cfg.starts < 1)
        throw std::invalid_argument("--starts must be >= 1");
      return cmd_solve(cfg);
    }
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(simulate)) return cmd_simulate(cfg);
  } catch (const oim::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const oim::GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
