#include "oim/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "oim/errors.hpp"
#include "oim/fmt.hpp"

namespace oim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_dims(const IsingInstance& inst, const PhaseState& theta,
                const char* op) {
  if (static_cast<int>(theta.size()) != inst.n())
    throw DimensionError(std::string(op) +
                         ": phase vector length does not match instance");
}

}  // namespace

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> velocity(const OimParams& p, const IsingInstance& inst,
                             const PhaseState& theta) {
  check_dims(inst, theta, "velocity");
  const int n = inst.n();
  std::vector<double> f(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double coupling = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      coupling += inst.w(i, j) * std::sin(theta[static_cast<std::size_t>(i)] -
                                          theta[static_cast<std::size_t>(j)]);
    }
    f[static_cast<std::size_t>(i)] =
        -p.k * coupling - p.ks * std::sin(2.0 * theta[static_cast<std::size_t>(i)]);
  }
  return f;
}

double energy(const OimParams& p, const IsingInstance& inst,
              const PhaseState& theta) {
  check_dims(inst, theta, "energy");
  const int n = inst.n();
  double pair_sum = 0.0;  // ordered sum, each unordered pair twice
  double harmonic_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      pair_sum += inst.w(i, j) * std::cos(theta[static_cast<std::size_t>(i)] -
                                          theta[static_cast<std::size_t>(j)]);
    }
    harmonic_sum += std::cos(2.0 * theta[static_cast<std::size_t>(i)]);
  }
  return -p.k * pair_sum - p.ks * harmonic_sum;
}

std::vector<double> energy_gradient(const OimParams& p,
                                    const IsingInstance& inst,
                                    const PhaseState& theta) {
  check_dims(inst, theta, "energy_gradient");
  const int n = inst.n();
  std::vector<double> grad(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double coupling = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      coupling += inst.w(i, j) * std::sin(theta[static_cast<std::size_t>(i)] -
                                          theta[static_cast<std::size_t>(j)]);
    }
    grad[static_cast<std::size_t>(i)] =
        2.0 * p.k * coupling +
        2.0 * p.ks * std::sin(2.0 * theta[static_cast<std::size_t>(i)]);
  }
  return grad;
}

double dissipation_rate(const OimParams& p, const IsingInstance& inst,
                        const PhaseState& theta) {
  const auto f = velocity(p, inst, theta);
  double sum = 0.0;
  for (double fi : f) sum += fi * fi;
  return -2.0 * sum;
}

Trajectory integrate(const OimParams& p, const IsingInstance& inst,
                     const PhaseState& init, const IntegratorConfig& cfg) {
  check_dims(inst, init, "integrate");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(cfg.t_max >= cfg.dt))
    throw std::invalid_argument("t_max must be >= dt");
  if (!(cfg.stop_tol > 0.0))
    throw std::invalid_argument("stop_tol must be > 0");
  if (cfg.record_stride < 1)
    throw std::invalid_argument("record_stride must be >= 1");

  const int n = inst.n();
  const long n_steps = static_cast<long>(std::floor(cfg.t_max / cfg.dt + 1e-9));

  Trajectory traj;
  PhaseState th = init;
  std::vector<double> scratch(static_cast<std::size_t>(n));
  long last_recorded = -1;

  auto record = [&](long step) {
    traj.times.push_back(static_cast<double>(step) * cfg.dt);
    traj.states.push_back(th);
    traj.energies.push_back(energy(p, inst, th));
    last_recorded = step;
  };

  for (long step = 0;; ++step) {
    for (double x : th)
      if (!std::isfinite(x))
        throw NonFiniteStateError(step, "non-finite phase component");
    const auto k1 = velocity(p, inst, th);
    const double fnorm = inf_norm(k1);
    if (!std::isfinite(fnorm))
      throw NonFiniteStateError(step, "non-finite velocity component");

    const bool stopped = fnorm < cfg.stop_tol;
    const bool at_horizon = step >= n_steps;
    if ((step % cfg.record_stride == 0 || stopped || at_horizon) &&
        last_recorded != step)
      record(step);
    if (stopped || at_horizon) {
      traj.converged = stopped;
      traj.final_velocity_norm = fnorm;
      break;
    }

    const double half = 0.5 * cfg.dt;
    for (int i = 0; i < n; ++i)
      scratch[static_cast<std::size_t>(i)] =
          th[static_cast<std::size_t>(i)] + half * k1[static_cast<std::size_t>(i)];
    const auto k2 = velocity(p, inst, scratch);
    for (int i = 0; i < n; ++i)
      scratch[static_cast<std::size_t>(i)] =
          th[static_cast<std::size_t>(i)] + half * k2[static_cast<std::size_t>(i)];
    const auto k3 = velocity(p, inst, scratch);
    for (int i = 0; i < n; ++i)
      scratch[static_cast<std::size_t>(i)] =
          th[static_cast<std::size_t>(i)] + cfg.dt * k3[static_cast<std::size_t>(i)];
    const auto k4 = velocity(p, inst, scratch);
    for (int i = 0; i < n; ++i)
      th[static_cast<std::size_t>(i)] +=
          cfg.dt / 6.0 *
          (k1[static_cast<std::size_t>(i)] + 2.0 * k2[static_cast<std::size_t>(i)] +
           2.0 * k3[static_cast<std::size_t>(i)] + k4[static_cast<std::size_t>(i)]);
  }
  return traj;
}

double wrap_phase(double theta) {
  double x = std::fmod(theta, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  if (x >= kTwoPi) x -= kTwoPi;
  return x;
}

PhaseState wrap_phases(const PhaseState& theta) {
  PhaseState out(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) out[i] = wrap_phase(theta[i]);
  return out;
}

double angular_distance(double a, double b) {
  double d = std::abs(wrap_phase(a) - wrap_phase(b));
  return std::min(d, kTwoPi - d);
}

SpinReadout phases_to_spins(const PhaseState& theta, double bin_tol) {
  if (!(bin_tol > 0.0 && bin_tol < std::numbers::pi / 4.0))
    throw std::invalid_argument("bin_tol must lie in (0, pi/4)");
  SpinReadout readout;
  SpinConfig spins(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double x = wrap_phase(theta[i]);
    const double dist_zero = std::min(x, kTwoPi - x);
    const double dist_pi = std::abs(x - std::numbers::pi);
    if (dist_zero <= bin_tol)
      spins[i] = 1;
    else if (dist_pi <= bin_tol)
      spins[i] = -1;
    else
      readout.offending.push_back(static_cast<int>(i));
  }
  if (readout.offending.empty()) readout.spins = std::move(spins);
  return readout;
}

PhaseState binary_phases(const SpinConfig& s) {
  PhaseState theta(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    theta[i] = s[i] > 0 ? 0.0 : std::numbers::pi;
  return theta;
}

void write_trajectory_csv(
    const Trajectory& traj, std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& metadata) {
  for (const auto& [key, value] : metadata)
    out << "# " << key << '=' << value << '\n';
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  out << 't';
  for (std::size_t i = 0; i < n; ++i) out << ",theta_" << i;
  out << ",energy\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << g17(traj.times[k]);
    for (double th : traj.states[k]) out << ',' << g17(th);
    out << ',' << g17(traj.energies[k]) << '\n';
  }
}

}  // namespace oim
