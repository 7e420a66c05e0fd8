#include "oim/stability.hpp"

#include <cmath>
#include <stdexcept>

#include "oim/errors.hpp"

namespace oim {

namespace {

void check_dims(const IsingInstance& inst, const PhaseState& theta,
                const char* op) {
  if (static_cast<int>(theta.size()) != inst.n())
    throw DimensionError(std::string(op) +
                         ": phase vector length does not match instance");
}

// cos(theta_i - theta_j) for i != j, mirrored exactly so both analytic
// matrices see bit-identical pair terms.
std::vector<double> pair_cosines(const PhaseState& theta) {
  const int n = static_cast<int>(theta.size());
  std::vector<double> c(static_cast<std::size_t>(n) * n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = std::cos(theta[static_cast<std::size_t>(i)] -
                                theta[static_cast<std::size_t>(j)]);
      c[static_cast<std::size_t>(i) * n + j] = v;
      c[static_cast<std::size_t>(j) * n + i] = v;
    }
  return c;
}

}  // namespace

SymmetricMatrix hessian(const OimParams& p, const IsingInstance& inst,
                        const PhaseState& theta) {
  check_dims(inst, theta, "hessian");
  const int n = inst.n();
  const auto c = pair_cosines(theta);
  SymmetricMatrix h(n);
  for (int i = 0; i < n; ++i) {
    double coupling = 0.0;
    for (int l = 0; l < n; ++l) {
      if (l == i) continue;
      coupling += inst.w(i, l) * c[static_cast<std::size_t>(i) * n + l];
    }
    h.set(i, i, 2.0 * p.k * coupling +
                    4.0 * p.ks *
                        std::cos(2.0 * theta[static_cast<std::size_t>(i)]));
    for (int j = i + 1; j < n; ++j)
      h.set(i, j, -2.0 * p.k * inst.w(i, j) *
                      c[static_cast<std::size_t>(i) * n + j]);
  }
  return h;
}

SymmetricMatrix jacobian(const OimParams& p, const IsingInstance& inst,
                         const PhaseState& theta) {
  check_dims(inst, theta, "jacobian");
  const int n = inst.n();
  const auto c = pair_cosines(theta);
  SymmetricMatrix j(n);
  double max_entry = 0.0;
  double max_asym = 0.0;
  for (int i = 0; i < n; ++i) {
    double coupling = 0.0;
    for (int l = 0; l < n; ++l) {
      if (l == i) continue;
      coupling += inst.w(i, l) * c[static_cast<std::size_t>(i) * n + l];
    }
    j.set(i, i, -(p.k * coupling) -
                    2.0 * p.ks *
                        std::cos(2.0 * theta[static_cast<std::size_t>(i)]));
    for (int q = i + 1; q < n; ++q) {
      // d f_i / d theta_q uses W(i,q); d f_q / d theta_i uses W(q,i).
      // Identical for honest couplings, so any gap flags tampering.
      const double upper =
          p.k * inst.w(i, q) * c[static_cast<std::size_t>(i) * n + q];
      const double lower =
          p.k * inst.w(q, i) * c[static_cast<std::size_t>(i) * n + q];
      max_asym = std::max(max_asym, std::abs(upper - lower));
      max_entry = std::max({max_entry, std::abs(upper), std::abs(lower)});
      j.set(i, q, upper);
    }
  }
  if (max_asym > 1e-12 * std::max(1.0, max_entry))
    throw AsymmetryError("velocity Jacobian is asymmetric: couplings violate "
                         "W_ij = W_ji");
  return j;
}

std::vector<double> finite_difference_gradient(const OimParams& p,
                                               const IsingInstance& inst,
                                               const PhaseState& theta,
                                               double h) {
  check_dims(inst, theta, "finite_difference_gradient");
  if (!(h > 0.0)) throw std::invalid_argument("fd step must be > 0");
  const int n = inst.n();
  std::vector<double> grad(static_cast<std::size_t>(n));
  PhaseState x = theta;
  for (int i = 0; i < n; ++i) {
    const double base = theta[static_cast<std::size_t>(i)];
    x[static_cast<std::size_t>(i)] = base + h;
    const double plus = energy(p, inst, x);
    x[static_cast<std::size_t>(i)] = base - h;
    const double minus = energy(p, inst, x);
    x[static_cast<std::size_t>(i)] = base;
    grad[static_cast<std::size_t>(i)] = (plus - minus) / (2.0 * h);
  }
  return grad;
}

SymmetricMatrix finite_difference_matrix(FdKind kind, const OimParams& p,
                                         const IsingInstance& inst,
                                         const PhaseState& theta, double h) {
  check_dims(inst, theta, "finite_difference_matrix");
  if (!(h > 0.0)) throw std::invalid_argument("fd step must be > 0");
  const int n = inst.n();

  if (kind == FdKind::HessianOfEnergy) {
    SymmetricMatrix out(n);
    const double e0 = energy(p, inst, theta);
    PhaseState x = theta;
    for (int i = 0; i < n; ++i) {
      const double bi = theta[static_cast<std::size_t>(i)];
      x[static_cast<std::size_t>(i)] = bi + h;
      const double plus = energy(p, inst, x);
      x[static_cast<std::size_t>(i)] = bi - h;
      const double minus = energy(p, inst, x);
      x[static_cast<std::size_t>(i)] = bi;
      out.set(i, i, (plus - 2.0 * e0 + minus) / (h * h));
      for (int j = i + 1; j < n; ++j) {
        const double bj = theta[static_cast<std::size_t>(j)];
        double quad = 0.0;
        for (int si : {+1, -1}) {
          for (int sj : {+1, -1}) {
            x[static_cast<std::size_t>(i)] = bi + si * h;
            x[static_cast<std::size_t>(j)] = bj + sj * h;
            quad += si * sj * energy(p, inst, x);
          }
        }
        x[static_cast<std::size_t>(i)] = bi;
        x[static_cast<std::size_t>(j)] = bj;
        out.set(i, j, quad / (4.0 * h * h));
      }
    }
    return out;
  }

  // Jacobian of f by central first differences, one column per phase.
  Matrix general(n);
  PhaseState x = theta;
  for (int j = 0; j < n; ++j) {
    const double bj = theta[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(j)] = bj + h;
    const auto plus = velocity(p, inst, x);
    x[static_cast<std::size_t>(j)] = bj - h;
    const auto minus = velocity(p, inst, x);
    x[static_cast<std::size_t>(j)] = bj;
    for (int i = 0; i < n; ++i)
      general.at(i, j) = (plus[static_cast<std::size_t>(i)] -
                          minus[static_cast<std::size_t>(i)]) /
                         (2.0 * h);
  }
  const double asym = general.max_asymmetry();
  if (asym > 1e-6)
    throw AsymmetryError("finite-difference Jacobian asymmetry " +
                         std::to_string(asym) + " exceeds 1e-6");
  SymmetricMatrix out(n);
  for (int i = 0; i < n; ++i) {
    out.set(i, i, general.at(i, i));
    for (int j = i + 1; j < n; ++j)
      out.set(i, j, 0.5 * (general.at(i, j) + general.at(j, i)));
  }
  return out;
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::AttractiveMinimum:
      return "AttractiveMinimum";
    case Classification::Saddle:
      return "Saddle";
    case Classification::Maximum:
      return "Maximum";
    case Classification::Degenerate:
      return "Degenerate";
  }
  return "Degenerate";
}

Classification classification_from_string(const std::string& s) {
  if (s == "AttractiveMinimum") return Classification::AttractiveMinimum;
  if (s == "Saddle") return Classification::Saddle;
  if (s == "Maximum") return Classification::Maximum;
  if (s == "Degenerate") return Classification::Degenerate;
  throw std::invalid_argument("unknown classification '" + s + "'");
}

Classification classify(const EigenSpectrum& spec, MatrixKind kind,
                        double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  bool any_zero = false;
  bool any_pos = false;
  bool any_neg = false;
  for (double lambda : spec.values) {
    if (std::abs(lambda) <= tol)
      any_zero = true;
    else if (lambda > 0.0)
      any_pos = true;
    else
      any_neg = true;
  }
  if (any_zero) return Classification::Degenerate;
  const bool all_pos = any_pos && !any_neg;
  const bool all_neg = any_neg && !any_pos;
  if (kind == MatrixKind::Hessian) {
    if (all_pos) return Classification::AttractiveMinimum;
    if (all_neg) return Classification::Maximum;
    return Classification::Saddle;
  }
  // Jacobian signs mirror the Hessian test.
  if (all_neg) return Classification::AttractiveMinimum;
  if (all_pos) return Classification::Maximum;
  return Classification::Saddle;
}

double spectrum_tolerance(const SymmetricMatrix& m, double rel) {
  return rel * std::max(1.0, m.inf_norm());
}

namespace {

SymmetricMatrix scaled(const SymmetricMatrix& m, double factor) {
  SymmetricMatrix out(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = i; j < m.n(); ++j) out.set(i, j, factor * m(i, j));
  return out;
}

}  // namespace

EquivalenceReport equivalence_report(const OimParams& p,
                                     const IsingInstance& inst,
                                     const PhaseState& theta,
                                     double eigen_tol_rel) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  const SymmetricMatrix h = hessian(p, inst, theta);
  // The gradient flow dtheta/dt = -alpha grad E realized as 2*alpha*f.
  const SymmetricMatrix j_alpha = scaled(jacobian(p, inst, theta), 2.0 * p.alpha);

  EquivalenceReport rep;
  rep.max_abs_residual_matrix = max_abs_combination(j_alpha, p.alpha, h);

  const EigenSpectrum spec_h = eigenvalues_symmetric(h);
  const EigenSpectrum spec_j = eigenvalues_symmetric(j_alpha);
  const int n = inst.n();
  double eig_resid = 0.0;
  for (int k = 0; k < n; ++k)
    eig_resid = std::max(
        eig_resid,
        std::abs(spec_j.values[static_cast<std::size_t>(k)] +
                 p.alpha *
                     spec_h.values[static_cast<std::size_t>(n - 1 - k)]));
  rep.max_abs_residual_eigen = eig_resid;

  rep.hessian_classification =
      classify(spec_h, MatrixKind::Hessian, spectrum_tolerance(h, eigen_tol_rel));
  rep.jacobian_classification =
      classify(spec_j, MatrixKind::Jacobian,
               spectrum_tolerance(j_alpha, eigen_tol_rel));
  rep.agree = rep.hessian_classification == rep.jacobian_classification;
  return rep;
}

StabilityReport analyze_point(const OimParams& p, const IsingInstance& inst,
                              const PhaseState& theta,
                              const AnalysisConfig& cfg) {
  StabilityReport r;
  r.point = theta;
  r.energy = energy(p, inst, theta);

  const SpinReadout readout = phases_to_spins(theta, cfg.bin_tol);
  if (readout.binary()) {
    r.spins = readout.spins;
    r.ising_energy = ising_energy(inst, *readout.spins);
  }

  const SymmetricMatrix h = hessian(p, inst, theta);
  const SymmetricMatrix j_alpha =
      scaled(jacobian(p, inst, theta), 2.0 * p.alpha);
  const EigenSpectrum spec_h = eigenvalues_symmetric(h);
  const EigenSpectrum spec_j = eigenvalues_symmetric(j_alpha);
  r.eigs_hessian = spec_h.values;
  r.eigs_jacobian = spec_j.values;
  r.classification_hessian = classify(
      spec_h, MatrixKind::Hessian, spectrum_tolerance(h, cfg.eigen_tol));
  r.classification_jacobian =
      classify(spec_j, MatrixKind::Jacobian,
               spectrum_tolerance(j_alpha, cfg.eigen_tol));
  r.equivalence_residual_matrix = max_abs_combination(j_alpha, p.alpha, h);
  double eig_resid = 0.0;
  const int n = inst.n();
  for (int k = 0; k < n; ++k)
    eig_resid = std::max(
        eig_resid,
        std::abs(spec_j.values[static_cast<std::size_t>(k)] +
                 p.alpha *
                     spec_h.values[static_cast<std::size_t>(n - 1 - k)]));
  r.equivalence_residual_eigen = eig_resid;
  r.agree = r.classification_hessian == r.classification_jacobian;
  return r;
}

bool operator==(const StabilityReport& a, const StabilityReport& b) {
  return a.point == b.point && a.spins == b.spins && a.energy == b.energy &&
         a.ising_energy == b.ising_energy &&
         a.eigs_hessian == b.eigs_hessian &&
         a.eigs_jacobian == b.eigs_jacobian &&
         a.classification_hessian == b.classification_hessian &&
         a.classification_jacobian == b.classification_jacobian &&
         a.equivalence_residual_matrix == b.equivalence_residual_matrix &&
         a.equivalence_residual_eigen == b.equivalence_residual_eigen &&
         a.agree == b.agree;
}

void to_json(nlohmann::json& j, const StabilityReport& r) {
  j = nlohmann::json{
      {"point", r.point},
      {"energy", r.energy},
      {"eigs_hessian", r.eigs_hessian},
      {"eigs_jacobian", r.eigs_jacobian},
      {"classification_hessian", to_string(r.classification_hessian)},
      {"classification_jacobian", to_string(r.classification_jacobian)},
      {"equivalence_residual_matrix", r.equivalence_residual_matrix},
      {"equivalence_residual_eigen", r.equivalence_residual_eigen},
      {"agree", r.agree}};
  if (r.spins) j["spins"] = *r.spins;
  if (r.ising_energy) j["ising_energy"] = *r.ising_energy;
}

void from_json(const nlohmann::json& j, StabilityReport& r) {
  r.point = j.at("point").get<PhaseState>();
  r.energy = j.at("energy").get<double>();
  r.eigs_hessian = j.at("eigs_hessian").get<std::vector<double>>();
  r.eigs_jacobian = j.at("eigs_jacobian").get<std::vector<double>>();
  r.classification_hessian =
      classification_from_string(j.at("classification_hessian"));
  r.classification_jacobian =
      classification_from_string(j.at("classification_jacobian"));
  r.equivalence_residual_matrix =
      j.at("equivalence_residual_matrix").get<double>();
  r.equivalence_residual_eigen =
      j.at("equivalence_residual_eigen").get<double>();
  r.agree = j.at("agree").get<bool>();
  r.spins.reset();
  r.ising_energy.reset();
  if (j.contains("spins")) r.spins = j.at("spins").get<SpinConfig>();
  if (j.contains("ising_energy"))
    r.ising_energy = j.at("ising_energy").get<double>();
}

}  // namespace oim
