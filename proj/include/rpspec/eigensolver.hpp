#pragma once

#include <Eigen/Sparse>
#include <vector>

namespace rpspec {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct EigenResult {
  std::vector<double> values;     // ascending
  std::vector<double> residuals;  // ||A v - lambda v|| for unit v
  bool dense{false};
};

/// Lowest `count` eigenvalues of a symmetric positive semidefinite matrix.
/// Dense solve up to `dense_limit` unknowns, otherwise shift-invert Lanczos
/// (shift -1) with full reorthogonalization, locking and an inertia check
/// that no eigenvalue below the largest returned one was skipped.
EigenResult lowest_eigenvalues(const SparseMatrix& A, int count, double tol = 1e-8,
                               int dense_limit = 4000);

/// Number of eigenvalues of A strictly below mu (Sylvester inertia of A - mu I).
int count_below(const SparseMatrix& A, double mu);

}  // namespace rpspec
