#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "oim/dynamics.hpp"
#include "oim/matrix.hpp"

#include "json.hpp"

namespace oim {

// Analytic Hessian of E: off-diagonal -2K W_ij cos(theta_i - theta_j),
// diagonal 2K sum_{j != i} W_ij cos(theta_i - theta_j)
//          + 4 K_s cos(2 theta_i).
SymmetricMatrix hessian(const OimParams& p, const IsingInstance& inst,
                        const PhaseState& theta);

// Analytic Jacobian of the velocity field, differentiated from f
// directly (never formed as -H/2, so the equivalence stays falsifiable):
// off-diagonal K W_ij cos(theta_i - theta_j), diagonal
// -K sum_{j != i} W_ij cos(theta_i - theta_j) - 2 K_s cos(2 theta_i).
// Entries (i,j) and (j,i) are computed from their own coupling entries;
// if they disagree (tampered couplings) this throws AsymmetryError.
SymmetricMatrix jacobian(const OimParams& p, const IsingInstance& inst,
                         const PhaseState& theta);

enum class FdKind { HessianOfEnergy, JacobianOfVelocity };

// Central finite differences, the oracle the analytic matrices are
// checked against. The Jacobian variant asserts asymmetry <= 1e-6
// before symmetrizing; the Hessian variant is symmetric by formula.
SymmetricMatrix finite_difference_matrix(FdKind kind, const OimParams& p,
                                         const IsingInstance& inst,
                                         const PhaseState& theta, double h);

// Central finite differences of E, step h; oracle for energy_gradient.
std::vector<double> finite_difference_gradient(const OimParams& p,
                                               const IsingInstance& inst,
                                               const PhaseState& theta,
                                               double h);

enum class MatrixKind { Hessian, Jacobian };

enum class Classification { AttractiveMinimum, Saddle, Maximum, Degenerate };

const char* to_string(Classification c);
Classification classification_from_string(const std::string& s);

// Second-derivative test. Hessian kind: all eigenvalues > tol is an
// attractive minimum, all < -tol a maximum, mixed a saddle; any
// eigenvalue within tol of zero is inconclusive (Degenerate). Jacobian
// kind mirrors the signs.
Classification classify(const EigenSpectrum& spec, MatrixKind kind,
                        double tol);

// Scale-aware spectrum tolerance: rel * max(1, ||m||_inf).
double spectrum_tolerance(const SymmetricMatrix& m, double rel = 1e-8);

struct EquivalenceReport {
  double max_abs_residual_matrix = 0.0;  // ||J_alpha + alpha * H||_max
  double max_abs_residual_eigen = 0.0;   // eigenvalue mirror misfit
  Classification jacobian_classification = Classification::Degenerate;
  Classification hessian_classification = Classification::Degenerate;
  bool agree = false;
};

// Builds J and H independently and checks the gradient-flow equivalence
// J_alpha = -alpha * H for the flow dtheta/dt = 2 alpha f (the OIM at
// alpha = 1/2). Eigenvalues are aligned ascending-J against
// descending-H.
EquivalenceReport equivalence_report(const OimParams& p,
                                     const IsingInstance& inst,
                                     const PhaseState& theta,
                                     double eigen_tol_rel = 1e-8);

// Per-point stability dossier, the JSON unit of the catalog export.
struct StabilityReport {
  PhaseState point;
  std::optional<SpinConfig> spins;
  double energy = 0.0;
  std::optional<double> ising_energy;
  std::vector<double> eigs_hessian;
  std::vector<double> eigs_jacobian;
  Classification classification_hessian = Classification::Degenerate;
  Classification classification_jacobian = Classification::Degenerate;
  double equivalence_residual_matrix = 0.0;
  double equivalence_residual_eigen = 0.0;
  bool agree = false;
};

bool operator==(const StabilityReport& a, const StabilityReport& b);

struct AnalysisConfig {
  double bin_tol = 0.1;      // spin readout window, radians
  double eigen_tol = 1e-8;   // relative spectrum tolerance factor
};

StabilityReport analyze_point(const OimParams& p, const IsingInstance& inst,
                              const PhaseState& theta,
                              const AnalysisConfig& cfg = {});

void to_json(nlohmann::json& j, const StabilityReport& r);
void from_json(const nlohmann::json& j, StabilityReport& r);

}  // namespace oim
