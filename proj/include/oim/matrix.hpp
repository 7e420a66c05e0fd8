#pragma once

#include <cstddef>
#include <vector>

namespace oim {

// Dense square matrix, row-major. Used for the general (possibly
// asymmetric) intermediates: finite-difference Jacobians, Newton solves.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  int n() const { return n_; }
  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  double max_abs() const;
  // Induced infinity norm (max absolute row sum).
  double inf_norm() const;
  // max_{i,j} |a_ij - a_ji|
  double max_asymmetry() const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// Symmetric dense matrix; set() writes both (i,j) and (j,i) so instances
// are symmetric by construction, bit-exactly.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int n)
      : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  int n() const { return n_; }

  void set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * n_ + j] = v;
    a_[static_cast<std::size_t>(j) * n_ + i] = v;
  }

  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  double max_abs() const;
  double inf_norm() const;
  double frobenius_norm() const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// max_{i,j} |a_ij + scale * b_ij|
double max_abs_combination(const SymmetricMatrix& a, double scale,
                           const SymmetricMatrix& b);

struct EigenSpectrum {
  std::vector<double> values;  // ascending
  double residual = 0.0;       // max over eigenpairs of ||A v - lambda v||_inf
};

// Full real spectrum of a symmetric matrix via cyclic Jacobi rotations.
// Converges when the off-diagonal Frobenius mass drops below
// 1e-12 * ||m||_F; throws EigenConvergenceError after 100 sweeps.
// The residual is certified against the original matrix.
EigenSpectrum eigenvalues_symmetric(const SymmetricMatrix& m);

// Solves A x = b by LU with partial pivoting. A pivot with magnitude
// below pivot_tol trips SingularJacobianError (near-singular system).
std::vector<double> solve_linear(Matrix a, std::vector<double> b,
                                 double pivot_tol);

}  // namespace oim
