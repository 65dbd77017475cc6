#include "rpspec/rectangle_spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace rpspec {

using std::numbers::pi;

const char* to_string(Bc1d bc) {
  switch (bc) {
    case Bc1d::DD: return "DD";
    case Bc1d::DN: return "DN";
    case Bc1d::ND: return "ND";
    case Bc1d::NN: return "NN";
  }
  return "?";
}

Bc1d bc1d_from_string(const std::string& s) {
  if (s == "DD") return Bc1d::DD;
  if (s == "DN") return Bc1d::DN;
  if (s == "ND") return Bc1d::ND;
  if (s == "NN") return Bc1d::NN;
  throw std::invalid_argument("rectangle: unknown boundary pair '" + s + "'");
}

int first_index(Bc1d bc) { return bc == Bc1d::DD ? 1 : 0; }

double eigen_1d(Bc1d bc, double a, int m) {
  if (!(a > 0.0)) throw std::invalid_argument("rectangle: half-width must be positive");
  if (m < first_index(bc))
    throw std::domain_error(std::string("rectangle: index ") + std::to_string(m) +
                            " below range for " + to_string(bc));
  const double mm = static_cast<double>(m);
  switch (bc) {
    case Bc1d::DD:
    case Bc1d::NN:
      return mm * mm * pi * pi / (4.0 * a * a);
    case Bc1d::DN:
    case Bc1d::ND: {
      const double o = 2.0 * mm + 1.0;
      return o * o * pi * pi / (16.0 * a * a);
    }
  }
  return 0.0;
}

Count count_1d_below(Bc1d bc, double a, double r) {
  if (r <= 0.0) return 0;
  const int m0 = first_index(bc);
  // initial guess from the continuous inverse, then exact fix-ups
  const double s = std::sqrt(r);
  double guess = 0.0;
  if (bc == Bc1d::DN || bc == Bc1d::ND)
    guess = (4.0 * a * s / pi - 1.0) / 2.0;
  else
    guess = 2.0 * a * s / pi;
  long long last = static_cast<long long>(std::floor(guess));
  if (last < m0 - 1) last = m0 - 1;
  while (last >= m0 && !(eigen_1d(bc, a, static_cast<int>(last)) < r)) --last;
  while (eigen_1d(bc, a, static_cast<int>(last + 1)) < r) ++last;
  return static_cast<Count>(last - m0 + 1);
}

double RectangleSpec::eigenvalue(int m, int n) const {
  return eigen_1d(bc_x, a, m) + eigen_1d(bc_y, b, n);
}

Count count_exact(const RectangleSpec& spec, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("rectangle: lambda must be nonnegative");
  if (!(spec.a > 0.0 && spec.b > 0.0))
    throw std::invalid_argument("rectangle: half-widths must be positive");
  const double thr = count_threshold(lambda);
  const int m0 = first_index(spec.bc_x);
  const int n0 = first_index(spec.bc_y);
  Count total = 0;
  for (int m = m0;; ++m) {
    const double mu = eigen_1d(spec.bc_x, spec.a, m);
    if (!(mu + eigen_1d(spec.bc_y, spec.b, n0) < thr)) break;
    // column count, checked with the same sum the enumeration would use
    Count c = count_1d_below(spec.bc_y, spec.b, thr - mu);
    long long last = n0 + c - 1;
    while (last >= n0 && !(mu + eigen_1d(spec.bc_y, spec.b, static_cast<int>(last)) < thr))
      --last;
    while (mu + eigen_1d(spec.bc_y, spec.b, static_cast<int>(last + 1)) < thr) ++last;
    total += static_cast<Count>(last - n0 + 1);
  }
  return total;
}

namespace {

Bc1d fold(Bc1d bc) { return bc == Bc1d::ND ? Bc1d::DN : bc; }

// boundary coefficient c so that the estimate is ab*lambda/pi + c*sqrt(lambda)/pi
bool boundary_coeff(Bc1d x, Bc1d y, double a, double b, double& out) {
  if (x == Bc1d::NN && y == Bc1d::NN) { out = 2.0 * (a + b); return true; }
  if (x == Bc1d::DD && y == Bc1d::DD) { out = 0.0; return true; }
  if (x == Bc1d::NN && y == Bc1d::DN) { out = 2.0 * b + a; return true; }
  if (x == Bc1d::DN && y == Bc1d::DD) { out = b; return true; }
  if (x == Bc1d::DD && y == Bc1d::NN) { out = 2.0 * a; return true; }
  if (x == Bc1d::NN && y == Bc1d::DD) { out = 2.0 * b; return true; }
  return false;
}

double boundary_weight(Bc1d bc) {
  switch (fold(bc)) {
    case Bc1d::NN: return 0.5;
    case Bc1d::DD: return -0.5;
    default: return 0.0;
  }
}

}  // namespace

double count_leading_estimate(const RectangleSpec& spec, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("rectangle: lambda must be positive");
  const Bc1d x = fold(spec.bc_x);
  const Bc1d y = fold(spec.bc_y);
  double c = 0.0;
  if (!boundary_coeff(x, y, spec.a, spec.b, c) && !boundary_coeff(y, x, spec.b, spec.a, c))
    throw std::invalid_argument(
        std::string("rectangle: no leading estimate for (") + to_string(spec.bc_x) + ", " +
        to_string(spec.bc_y) +
        "); supported: (NN,NN), (DD,DD), (NN,DN), (DN,DD), (DD,NN), (NN,DD) and their "
        "axis swaps");
  return spec.a * spec.b * lambda / pi + c * std::sqrt(lambda) / pi;
}

double count_two_term_estimate(const RectangleSpec& spec, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("rectangle: lambda must be nonnegative");
  const double e = boundary_weight(spec.bc_x) * 2.0 * spec.b +
                   boundary_weight(spec.bc_y) * 2.0 * spec.a;
  return spec.a * spec.b * lambda / pi + e * std::sqrt(lambda) / pi;
}

}  // namespace rpspec
