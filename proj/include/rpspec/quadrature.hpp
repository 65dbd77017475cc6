#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rpspec {

/// Adaptive Gauss-Kronrod (15-point) on [a, b], relative tolerance tol.
/// Boost compares the error of the reference rule with a tolerance scaled by
/// (b - a)/2, so the integral is mapped to [-1, 1] first; otherwise short
/// intervals refine to max_depth.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12, unsigned max_depth = 15) {
  if (a == b) return 0.0;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto g = [&](double u) { return half * f(mid + half * u); };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, -1.0, 1.0, max_depth, tol);
}

/// Composite 16-point Gauss-Legendre with `panels` equal panels.
template <class F>
double integrate_fixed(F&& f, double a, double b, int panels) {
  const double w = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * w;
    sum += boost::math::quadrature::gauss<double, 16>::integrate(f, lo, lo + w);
  }
  return sum;
}

}  // namespace rpspec
