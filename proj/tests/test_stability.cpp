#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oim/errors.hpp"
#include "oim/stability.hpp"
#include "util.hpp"

using namespace oim;
using std::numbers::pi;

namespace {

void check_matrix(const SymmetricMatrix& m,
                  const std::vector<std::vector<double>>& expected,
                  double tol) {
  REQUIRE(m.n() == static_cast<int>(expected.size()));
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j)
      CHECK(std::abs(m(i, j) - expected[i][j]) <= tol);
}

double max_diff(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return max_abs_combination(a, -1.0, b);
}

}  // namespace

TEST_SUITE("stability") {

TEST_CASE("hessian hand values") {
  const IsingInstance inst = testutil::two_node(1.0);
  check_matrix(hessian({1.0, 1.0, 0.5}, inst, {0.0, 0.0}),
               {{6.0, -2.0}, {-2.0, 6.0}}, 1e-14);
  check_matrix(hessian({1.0, 1.0, 0.5}, inst, {0.0, pi}),
               {{2.0, 2.0}, {2.0, 2.0}}, 1e-14);
  check_matrix(hessian({1.0, 2.0, 0.5}, inst, {0.0, pi}),
               {{6.0, 2.0}, {2.0, 6.0}}, 1e-14);
  check_matrix(hessian({1.0, 1.0, 0.5}, IsingInstance(1), {0.0}), {{4.0}},
               1e-14);
}

TEST_CASE("jacobian hand values") {
  const IsingInstance inst = testutil::two_node(1.0);
  check_matrix(jacobian({1.0, 1.0, 0.5}, inst, {0.0, 0.0}),
               {{-3.0, 1.0}, {1.0, -3.0}}, 1e-14);
  check_matrix(jacobian({1.0, 1.0, 0.5}, IsingInstance(1), {pi / 2.0}),
               {{2.0}}, 1e-14);
}

TEST_CASE("J + H/2 vanishes identically") {
  SplitMix64 gen(555);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(gen.next() % 9);
    const IsingInstance inst = testutil::random_instance(n, gen.next());
    const double choices[] = {0.5, 1.0, 2.0};
    const OimParams p{choices[gen.next() % 3], choices[gen.next() % 3], 0.5};
    const PhaseState theta = testutil::random_phases(n, gen.next());
    const SymmetricMatrix j = jacobian(p, inst, theta);
    const SymmetricMatrix h = hessian(p, inst, theta);
    CHECK(max_abs_combination(j, 0.5, h) <= 1e-12);
  }
}

TEST_CASE("analytic matrices agree with finite differences") {
  SplitMix64 gen(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(gen.next() % 6);
    const IsingInstance inst = testutil::random_instance(n, gen.next());
    const OimParams p{1.0, 1.0, 0.5};
    const PhaseState theta = testutil::random_phases(n, gen.next());
    const auto fd_h = finite_difference_matrix(FdKind::HessianOfEnergy, p,
                                               inst, theta, 1e-4);
    const auto fd_j = finite_difference_matrix(FdKind::JacobianOfVelocity, p,
                                               inst, theta, 1e-4);
    CHECK(max_diff(hessian(p, inst, theta), fd_h) <= 1e-5);
    CHECK(max_diff(jacobian(p, inst, theta), fd_j) <= 1e-5);
  }
}

TEST_CASE("finite differences of constant dynamics are zero") {
  const IsingInstance inst(3);  // no couplings
  const OimParams p{1.0, 0.0, 0.5};
  const PhaseState theta{0.3, 1.1, -0.4};
  const auto fd_h =
      finite_difference_matrix(FdKind::HessianOfEnergy, p, inst, theta, 1e-4);
  const auto fd_j = finite_difference_matrix(FdKind::JacobianOfVelocity, p,
                                             inst, theta, 1e-4);
  CHECK(fd_h.max_abs() <= 1e-8);
  CHECK(fd_j.max_abs() <= 1e-8);
}

TEST_CASE("eigenvalues_symmetric on closed-form cases") {
  SymmetricMatrix a(2);
  a.set(0, 0, 6.0);
  a.set(1, 1, 6.0);
  a.set(0, 1, -2.0);
  EigenSpectrum s = eigenvalues_symmetric(a);
  CHECK(s.values[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(s.values[1] == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(s.residual <= 1e-8 * std::max(1.0, a.inf_norm()));

  SymmetricMatrix b(2);
  b.set(0, 0, 2.0);
  b.set(1, 1, 2.0);
  b.set(0, 1, 2.0);
  s = eigenvalues_symmetric(b);
  CHECK(std::abs(s.values[0]) <= 1e-14);
  CHECK(s.values[1] == doctest::Approx(4.0).epsilon(1e-14));

  SymmetricMatrix eye(3);
  for (int i = 0; i < 3; ++i) eye.set(i, i, 1.0);
  s = eigenvalues_symmetric(eye);
  for (double v : s.values) CHECK(v == 1.0);
  CHECK(s.residual == 0.0);
}

TEST_CASE("eigensolver certifies residual and trace on random input") {
  SplitMix64 gen(31415);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(gen.next() % 11);
    SymmetricMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a.set(i, j, gen.next_double(-5.0, 5.0));
    const EigenSpectrum s = eigenvalues_symmetric(a);
    REQUIRE(static_cast<int>(s.values.size()) == n);
    CHECK(s.residual <= 1e-8 * std::max(1.0, a.inf_norm()));
    double trace = 0.0, sum = 0.0;
    for (int i = 0; i < n; ++i) trace += a(i, i);
    for (double v : s.values) sum += v;
    CHECK(std::abs(sum - trace) <= 1e-8 * std::max(1.0, std::abs(trace)));
    for (std::size_t k = 1; k < s.values.size(); ++k)
      CHECK(s.values[k] >= s.values[k - 1]);
  }
}

TEST_CASE("classify implements the second-derivative test") {
  auto spec = [](std::vector<double> v) {
    EigenSpectrum s;
    s.values = std::move(v);
    return s;
  };
  const double tol = 1e-8;
  CHECK(classify(spec({4.0, 8.0}), MatrixKind::Hessian, tol) ==
        Classification::AttractiveMinimum);
  CHECK(classify(spec({-2.0, 2.0}), MatrixKind::Hessian, tol) ==
        Classification::Saddle);
  CHECK(classify(spec({0.0, 4.0}), MatrixKind::Hessian, tol) ==
        Classification::Degenerate);
  CHECK(classify(spec({-4.0, -1.0}), MatrixKind::Hessian, tol) ==
        Classification::Maximum);

  // Jacobian signs mirror.
  CHECK(classify(spec({-4.0, -2.0}), MatrixKind::Jacobian, tol) ==
        Classification::AttractiveMinimum);
  CHECK(classify(spec({-1.0, 3.0}), MatrixKind::Jacobian, tol) ==
        Classification::Saddle);
  CHECK(classify(spec({1.0, 2.0}), MatrixKind::Jacobian, tol) ==
        Classification::Maximum);
  CHECK(classify(spec({1e-12, 2.0}), MatrixKind::Jacobian, tol) ==
        Classification::Degenerate);

  CHECK_THROWS_AS(classify(spec({1.0}), MatrixKind::Hessian, 0.0),
                  std::invalid_argument);
}

TEST_CASE("equivalence report on the two-node instance") {
  const IsingInstance inst = testutil::two_node(1.0);

  SUBCASE("global minimum at alpha = 1/2") {
    const EquivalenceReport rep =
        equivalence_report({1.0, 1.0, 0.5}, inst, {0.0, 0.0});
    CHECK(rep.max_abs_residual_matrix <= 1e-12);
    CHECK(rep.max_abs_residual_eigen <= 1e-8 * 8.0);
    CHECK(rep.hessian_classification == Classification::AttractiveMinimum);
    CHECK(rep.jacobian_classification == Classification::AttractiveMinimum);
    CHECK(rep.agree);
  }
  SUBCASE("alpha = 1/4 halves the Jacobian spectrum") {
    const OimParams p{1.0, 1.0, 0.25};
    const SymmetricMatrix h = hessian(p, inst, {0.0, 0.0});
    const EigenSpectrum spec_h = eigenvalues_symmetric(h);
    CHECK(spec_h.values[0] == doctest::Approx(4.0));
    CHECK(spec_h.values[1] == doctest::Approx(8.0));

    const EquivalenceReport rep = equivalence_report(p, inst, {0.0, 0.0});
    CHECK(rep.max_abs_residual_matrix <= 1e-12);
    CHECK(rep.agree);

    // lambda_J = {-2, -1} against lambda_H = {4, 8}.
    SymmetricMatrix j_scaled(2);
    const SymmetricMatrix j = jacobian(p, inst, {0.0, 0.0});
    for (int i = 0; i < 2; ++i)
      for (int q = i; q < 2; ++q) j_scaled.set(i, q, 2.0 * p.alpha * j(i, q));
    const EigenSpectrum spec_j = eigenvalues_symmetric(j_scaled);
    CHECK(spec_j.values[0] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(spec_j.values[1] == doctest::Approx(-1.0).epsilon(1e-14));
  }
  SUBCASE("suboptimal point is a saddle by both tests at Ks = 0.5") {
    const EquivalenceReport rep =
        equivalence_report({1.0, 0.5, 0.5}, inst, {0.0, pi});
    CHECK(rep.hessian_classification == Classification::Saddle);
    CHECK(rep.jacobian_classification == Classification::Saddle);
    CHECK(rep.agree);
  }
}

TEST_CASE("eigenvalue mirror across random instances and alphas") {
  SplitMix64 gen(2718);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(gen.next() % 9);
    const IsingInstance inst = testutil::random_instance(n, gen.next());
    const double choices[] = {0.5, 1.0, 2.0};
    const double alphas[] = {0.25, 0.5, 1.0};
    const OimParams p{choices[gen.next() % 3], choices[gen.next() % 3],
                      alphas[gen.next() % 3]};
    const PhaseState theta = testutil::random_phases(n, gen.next());
    const SymmetricMatrix h = hessian(p, inst, theta);
    const EquivalenceReport rep = equivalence_report(p, inst, theta);
    CHECK(rep.max_abs_residual_matrix <= 1e-12);
    CHECK(rep.max_abs_residual_eigen <= 1e-8 * std::max(1.0, h.inf_norm()));
    CHECK(rep.agree);
  }
}

TEST_CASE("tampered couplings are caught, not absorbed") {
  IsingInstance inst = testutil::two_node(1.0);
  inst.tamper_asymmetric(0, 1, 0.1);
  const OimParams p{1.0, 1.0, 0.5};
  const PhaseState theta{0.7, -0.3};
  CHECK_THROWS_AS(jacobian(p, inst, theta), AsymmetryError);
  CHECK_THROWS_AS(
      finite_difference_matrix(FdKind::JacobianOfVelocity, p, inst, theta,
                               1e-4),
      AsymmetryError);
}

TEST_CASE("analyze_point produces a coherent JSON round-trip") {
  const IsingInstance inst = testutil::two_node(1.0);
  const OimParams p{1.0, 2.0, 0.5};
  const StabilityReport rep = analyze_point(p, inst, {0.0, pi});
  REQUIRE(rep.spins.has_value());
  CHECK(*rep.spins == SpinConfig{1, -1});
  CHECK(rep.ising_energy == 1.0);
  CHECK(rep.energy == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(rep.classification_hessian == Classification::AttractiveMinimum);
  CHECK(rep.agree);

  nlohmann::json j;
  to_json(j, rep);
  const StabilityReport back = j.get<StabilityReport>();
  CHECK(back == rep);
}

}  // TEST_SUITE
