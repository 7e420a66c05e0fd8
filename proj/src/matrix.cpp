#include "oim/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oim/errors.hpp"

namespace oim {

namespace {

double row_major_max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double Matrix::max_abs() const { return row_major_max_abs(a_); }

double Matrix::inf_norm() const {
  double norm = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += std::abs(at(i, j));
    norm = std::max(norm, row);
  }
  return norm;
}

double Matrix::max_asymmetry() const {
  double asym = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      asym = std::max(asym, std::abs(at(i, j) - at(j, i)));
  return asym;
}

double SymmetricMatrix::max_abs() const { return row_major_max_abs(a_); }

double SymmetricMatrix::inf_norm() const {
  double norm = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    norm = std::max(norm, row);
  }
  return norm;
}

double SymmetricMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (double x : a_) sum += x * x;
  return std::sqrt(sum);
}

double max_abs_combination(const SymmetricMatrix& a, double scale,
                           const SymmetricMatrix& b) {
  if (a.n() != b.n())
    throw DimensionError("matrix dimensions disagree in combination");
  double m = 0.0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      m = std::max(m, std::abs(a(i, j) + scale * b(i, j)));
  return m;
}

namespace {

double off_diagonal_mass(const std::vector<double>& a, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) sum += a[static_cast<std::size_t>(i) * n + j] *
                         a[static_cast<std::size_t>(i) * n + j];
  return std::sqrt(sum);
}

}  // namespace

EigenSpectrum eigenvalues_symmetric(const SymmetricMatrix& m) {
  const int n = m.n();
  EigenSpectrum spec;
  if (n == 0) return spec;

  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = m(i, j);
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

  auto A = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * n + j];
  };
  auto V = [&](int i, int j) -> double& {
    return v[static_cast<std::size_t>(i) * n + j];
  };

  const double target = 1e-12 * m.frobenius_norm();
  const int max_sweeps = 100;
  bool converged = off_diagonal_mass(a, n) <= target;

  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        const double app = A(p, p);
        const double aqq = A(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        A(p, p) = app - t * apq;
        A(q, q) = aqq + t * apq;
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = A(r, p);
            const double arq = A(r, q);
            A(r, p) = A(p, r) = arp - s * (arq + tau * arp);
            A(r, q) = A(q, r) = arq + s * (arp - tau * arq);
          }
          const double vrp = V(r, p);
          const double vrq = V(r, q);
          V(r, p) = vrp - s * (vrq + tau * vrp);
          V(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
    converged = off_diagonal_mass(a, n) <= target;
  }

  if (!converged)
    throw EigenConvergenceError(
        "Jacobi eigensolver did not converge in 100 sweeps");

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return A(x, x) < A(y, y); });

  spec.values.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) spec.values[static_cast<std::size_t>(k)] = A(order[k], order[k]);

  // Certify against the original matrix, not the rotated copy.
  double residual = 0.0;
  for (int k = 0; k < n; ++k) {
    const int col = order[k];
    const double lambda = spec.values[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += m(i, j) * V(j, col);
      residual = std::max(residual, std::abs(acc - lambda * V(i, col)));
    }
  }
  spec.residual = residual;
  return spec;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b,
                                 double pivot_tol) {
  const int n = a.n();
  if (static_cast<int>(b.size()) != n)
    throw DimensionError("rhs length does not match matrix dimension");

  for (int col = 0; col < n; ++col) {
    int pivot_row = col;
    double pivot_mag = std::abs(a.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double mag = std::abs(a.at(r, col));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (pivot_mag < pivot_tol)
      throw SingularJacobianError("pivot magnitude below threshold");
    if (pivot_row != col) {
      for (int j = 0; j < n; ++j)
        std::swap(a.at(col, j), a.at(pivot_row, j));
      std::swap(b[static_cast<std::size_t>(col)],
                b[static_cast<std::size_t>(pivot_row)]);
    }
    const double pivot = a.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double factor = a.at(r, col) / pivot;
      if (factor == 0.0) continue;
      a.at(r, col) = 0.0;
      for (int j = col + 1; j < n; ++j) a.at(r, j) -= factor * a.at(col, j);
      b[static_cast<std::size_t>(r)] -= factor * b[static_cast<std::size_t>(col)];
    }
  }

  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double acc = b[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) acc -= a.at(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = acc / a.at(i, i);
  }
  return x;
}

}  // namespace oim
