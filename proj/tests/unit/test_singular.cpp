#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rpspec/singular_sequence.hpp"

using namespace rpspec;

namespace {

constexpr double kPi = std::numbers::pi;

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("profile shape") {
  const RpDomain d = RpDomain::geometric(0.5, 4.0, 0.25, 32);
  for (int j = 1; j <= 8; ++j) {
    const RampProfile f = build_profile(d, j);
    const Piece& room = d.piece(2 * j + 1);
    CHECK(f.value(0.5 * (room.x_lo + room.x_hi)) == 1.0);
    CHECK(f.value(d.piece(2 * j).x_lo) == doctest::Approx(0.0));
    CHECK(f.value(d.piece(4 * j).x_hi) == doctest::Approx(0.0));
    CHECK(f.value(d.piece(2 * j - 1).x_lo) == 0.0);
    // sampled maximum of |phi'| over the rising ramp
    double mx = 0.0;
    for (int i = 0; i <= 1000; ++i)
      mx = std::max(mx, std::abs(f.derivative(f.up_lo + (f.up_hi - f.up_lo) * i / 1000.0)));
    const double expect = kPi / 2 * std::pow(0.5, -2.0 * j);
    CHECK(std::abs(mx - expect) <= 0.1 * expect);
    CHECK(mx <= f.max_derivative_up() * (1 + 1e-12));
  }
  CHECK_THROWS_AS((void)build_profile(d, 9), std::invalid_argument);
}

TEST_CASE("norm bounds") {
  const RpDomain d = RpDomain::geometric(0.5, 4.0, 0.25, 32);
  double lo = 1e300, hi = 0.0;
  for (int j = 2; j <= 8; ++j) {
    const RayleighReport r = rayleigh_report(d, j);
    const double plateau = d.area_upto(4 * j - 1) - d.area_upto(2 * j);
    CHECK(r.norm_phi * r.norm_phi >= plateau * (1 - 1e-12));
    CHECK(r.rayleigh == doctest::Approx(r.norm_phi_prime / r.norm_phi).epsilon(1e-14));
    const double s = r.norm_phi / std::pow(0.5, 2.0 * j);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(lo > 0.1);
  CHECK(hi < 10.0);
}

TEST_CASE("Rayleigh quotient decays at rate C^(alpha-3) for alpha > 3") {
  const RpDomain d = RpDomain::geometric(0.5, 4.0, 0.25, 32);
  std::vector<double> js, logs;
  double prev = 1e300;
  for (int j = 3; j <= 8; ++j) {
    const RayleighReport r = rayleigh_report(d, j);
    CHECK(r.rayleigh < prev);
    if (j > 3) CHECK(r.rayleigh / prev == doctest::Approx(0.5).epsilon(0.05));
    prev = r.rayleigh;
    js.push_back(j);
    logs.push_back(std::log(r.rayleigh));
  }
  CHECK(fit_slope(js, logs) == doctest::Approx(-std::log(2.0)).epsilon(0.05));
}

TEST_CASE("Rayleigh quotient grows for alpha < 3") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 32);
  double prev = 0.0;
  for (int j = 2; j <= 8; ++j) {
    const double r = rayleigh_report(d, j).rayleigh;
    CHECK(r > prev);
    prev = r;
  }
}
