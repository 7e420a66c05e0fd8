#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oim/ising.hpp"

namespace oim {

// Oscillator phases in radians. Not normalized during integration; the
// dynamics are 2*pi-periodic and wrapping happens only at readout.
using PhaseState = std::vector<double>;

struct OimParams {
  double k = 1.0;      // coupling strength K, > 0
  double ks = 1.0;     // second-harmonic injection strength K_s, >= 0
  double alpha = 0.5;  // gradient-flow constant, > 0; 1/2 for the OIM
};

struct IntegratorConfig {
  double dt = 0.01;
  double t_max = 100.0;
  double stop_tol = 1e-8;  // early stop when ||f||_inf drops below
  int record_stride = 10;  // keep every k-th sample (plus the final state)
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseState> states;
  std::vector<double> energies;
  bool converged = false;
  double final_velocity_norm = 0.0;
};

// Phase velocities f_i = -K sum_{j != i} W_ij sin(theta_i - theta_j)
//                        - K_s sin(2 theta_i).
std::vector<double> velocity(const OimParams& p, const IsingInstance& inst,
                             const PhaseState& theta);

// E = -K sum_{i, j != i} W_ij cos(theta_i - theta_j)
//     - K_s sum_i cos(2 theta_i); ordered pair sum, so each unordered
// pair is counted twice.
double energy(const OimParams& p, const IsingInstance& inst,
              const PhaseState& theta);

// Analytic gradient of E. Written out independently of velocity(); the
// identity grad E = -2 f is a test target, not a definition.
std::vector<double> energy_gradient(const OimParams& p,
                                    const IsingInstance& inst,
                                    const PhaseState& theta);

// dE/dt along the flow: -2 sum_i f_i^2, always <= 0.
double dissipation_rate(const OimParams& p, const IsingInstance& inst,
                        const PhaseState& theta);

// Classical fixed-step RK4 from t=0 until t_max, stopping early once
// ||f||_inf < stop_tol. Records every record_stride-th step plus the
// final state. Throws NonFiniteStateError if the state blows up.
Trajectory integrate(const OimParams& p, const IsingInstance& inst,
                     const PhaseState& init, const IntegratorConfig& cfg);

// Spin readout of a phase state: +1 near 0, -1 near pi (after wrapping
// into [0, 2*pi)), within bin_tol. Phases outside both windows land in
// `offending` and leave `spins` empty.
struct SpinReadout {
  std::optional<SpinConfig> spins;
  std::vector<int> offending;
  bool binary() const { return spins.has_value(); }
};

// Requires bin_tol in (0, pi/4).
SpinReadout phases_to_spins(const PhaseState& theta, double bin_tol);

// Wrap into [0, 2*pi).
double wrap_phase(double theta);
PhaseState wrap_phases(const PhaseState& theta);

// Angular distance on the circle, in [0, pi].
double angular_distance(double a, double b);

// theta_i = 0 for s_i = +1, pi for s_i = -1.
PhaseState binary_phases(const SpinConfig& s);

double inf_norm(const std::vector<double>& v);

// CSV with header "t,theta_0,...,theta_{N-1},energy", 17 significant
// digits; optional "# key=value" metadata lines first.
void write_trajectory_csv(
    const Trajectory& traj, std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& metadata = {});

}  // namespace oim
