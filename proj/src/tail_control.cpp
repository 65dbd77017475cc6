#include "rpspec/tail_control.hpp"

#include <cmath>
#include <stdexcept>

namespace rpspec {

namespace {

void check(const DomainParams& p, const TailPolicy& policy) {
  if (!(p.alpha < 3.0))
    throw std::domain_error("tail: alpha >= 3, embedding not compact; no finite truncation depth");
  if (!(policy.c > 0.0)) throw std::invalid_argument("tail: policy constant c must be positive");
}

}  // namespace

double poincare_bound(const DomainParams& p, int M, const TailPolicy& policy) {
  check(p, policy);
  if (M < 0) throw std::out_of_range("tail: M must be nonnegative");
  return policy.c * std::pow(p.C, (3.0 - p.alpha) * M);
}

double tail_area(const DomainParams& p, int M) {
  if (M < 0) throw std::out_of_range("tail: M must be nonnegative");
  const double q = std::pow(p.C, 2.0 * (1.0 + p.alpha));
  return std::pow(p.C, 2.0 + 4.0 * M) / (1.0 - std::pow(p.C, 4)) +
         p.k * q * std::pow(q, M) / (1.0 - q);
}

TailDepth min_M_for_lambda(const DomainParams& p, double lambda, const TailPolicy& policy) {
  check(p, policy);
  if (!(lambda > 0.0)) throw std::invalid_argument("tail: lambda must be positive");
  TailDepth t;
  t.threshold = std::log(policy.c * policy.c * lambda) / (2.0 * (3.0 - p.alpha) * std::log(1.0 / p.C));
  int M = static_cast<int>(std::floor(t.threshold)) + 1;
  if (M < 1) M = 1;
  // settle rounding at integer thresholds with the defining inequality
  auto ok = [&](int m) {
    const double K = poincare_bound(p, m, policy);
    return 1.0 / (K * K) > lambda;
  };
  while (M > 1 && ok(M - 1)) --M;
  while (!ok(M)) ++M;
  t.M = M;
  t.tail_area = tail_area(p, M);
  const double expo = 2.0 / (3.0 - p.alpha);
  t.scaled_tail = t.tail_area * std::pow(lambda, expo);
  const double q = std::pow(p.C, 2.0 * (1.0 + p.alpha));
  const double kmax = p.C * p.C / (1.0 - std::pow(p.C, 4)) + p.k * q / (1.0 - q);
  t.tail_bound = kmax * std::pow(policy.c * policy.c * lambda, -expo);
  if (!(t.tail_area <= t.tail_bound * (1.0 + 1e-12)))
    throw std::logic_error("tail: |T_2M| exceeds its a priori bound");
  return t;
}

}  // namespace rpspec
