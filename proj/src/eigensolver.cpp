#include "rpspec/eigensolver.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rpspec {

namespace {

double residual(const SparseMatrix& A, const Eigen::VectorXd& v, double lambda) {
  return (A * v - lambda * v).norm() / v.norm();
}

EigenResult dense_solve(const SparseMatrix& A, int count) {
  const Eigen::MatrixXd D = Eigen::MatrixXd(A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver: dense solve failed");
  EigenResult r;
  r.dense = true;
  for (int i = 0; i < count; ++i) {
    r.values.push_back(es.eigenvalues()(i));
    r.residuals.push_back(residual(A, es.eigenvectors().col(i), es.eigenvalues()(i)));
  }
  return r;
}

void orthogonalize(Eigen::VectorXd& w, const std::vector<Eigen::VectorXd>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) w -= q.dot(w) * q;
}

}  // namespace

int count_below(const SparseMatrix& A, double mu) {
  SparseMatrix B = A;
  for (int i = 0; i < B.rows(); ++i) B.coeffRef(i, i) -= mu;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(B);
  if (ldlt.info() != Eigen::Success) throw std::runtime_error("eigensolver: inertia factorization failed");
  const Eigen::VectorXd d = ldlt.vectorD();
  return static_cast<int>((d.array() < 0.0).count());
}

EigenResult lowest_eigenvalues(const SparseMatrix& A, int count, double tol, int dense_limit) {
  const int n = static_cast<int>(A.rows());
  if (count < 1 || count > n) throw std::invalid_argument("eigensolver: count out of range");
  if (n <= dense_limit) return dense_solve(A, count);

  SparseMatrix B = A;
  for (int i = 0; i < n; ++i) B.coeffRef(i, i) += 1.0;
  Eigen::SimplicialLDLT<SparseMatrix> solver(B);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver: factorization failed");

  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> locked;
  std::vector<double> locked_vals, locked_res;

  for (int round = 0; round < 12; ++round) {
    const int need = count - static_cast<int>(locked.size());
    const int m = std::min(n - static_cast<int>(locked.size()), std::max(2 * need + 40, 60));
    std::vector<Eigen::VectorXd> Q;
    Eigen::VectorXd q(n);
    for (int i = 0; i < n; ++i) q(i) = gauss(rng);
    orthogonalize(q, locked);
    q.normalize();
    std::vector<double> alpha, beta;
    Q.push_back(q);
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd w = solver.solve(Q[j]);
      alpha.push_back(Q[j].dot(w));
      orthogonalize(w, locked);
      orthogonalize(w, Q);
      const double b = w.norm();
      if (j + 1 == m || b < 1e-13) break;
      beta.push_back(b);
      Q.push_back(w / b);
    }
    const int k = static_cast<int>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd sub = Eigen::Map<Eigen::VectorXd>(beta.data(), k - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    // largest Ritz values of the inverse are the smallest eigenvalues of A
    for (int i = k - 1; i >= 0; --i) {
      const double theta = es.eigenvalues()(i);
      if (theta <= 0.0) break;
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      for (int j = 0; j < k; ++j) v += es.eigenvectors()(j, i) * Q[j];
      orthogonalize(v, locked);
      const double nv = v.norm();
      if (nv < 0.5) continue;
      v /= nv;
      const double lam = v.dot(A * v);
      const double res = residual(A, v, lam);
      if (res <= tol * std::max(1.0, std::abs(lam))) {
        locked.push_back(v);
        locked_vals.push_back(lam);
        locked_res.push_back(res);
      }
    }
    if (static_cast<int>(locked.size()) < count) continue;
    std::vector<int> idx(locked.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return locked_vals[a] < locked_vals[b]; });
    const double top = locked_vals[idx[count - 1]];
    const int below = count_below(A, top + 1e-9 * std::max(1.0, top));
    int have = 0;
    for (double v : locked_vals)
      if (v < top + 1e-9 * std::max(1.0, top)) ++have;
    if (below > have) continue;  // a copy of a multiple eigenvalue is still missing
    EigenResult r;
    for (int i = 0; i < count; ++i) {
      r.values.push_back(locked_vals[idx[i]]);
      r.residuals.push_back(locked_res[idx[i]]);
    }
    return r;
  }
  throw std::runtime_error("eigensolver: Lanczos did not converge");
}

}  // namespace rpspec
