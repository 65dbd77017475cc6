#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rpspec/rectangle_spectrum.hpp"

using namespace rpspec;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Bc1d kAll[] = {Bc1d::DD, Bc1d::DN, Bc1d::ND, Bc1d::NN};

std::vector<double> spectrum(const RectangleSpec& r, int mmax) {
  std::vector<double> v;
  for (int m = first_index(r.bc_x); m <= mmax; ++m)
    for (int n = first_index(r.bc_y); n <= mmax; ++n) v.push_back(r.eigenvalue(m, n));
  std::sort(v.begin(), v.end());
  return v;
}

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("one-dimensional eigenvalues") {
  CHECK(eigen_1d(Bc1d::DD, 0.5, 1) == doctest::Approx(kPi * kPi));
  CHECK(eigen_1d(Bc1d::NN, 0.7, 0) == 0.0);
  CHECK(eigen_1d(Bc1d::DN, 0.5, 0) == doctest::Approx(kPi * kPi / 4));
  CHECK_THROWS_AS((void)eigen_1d(Bc1d::DD, 0.5, 0), std::domain_error);
  CHECK_THROWS_AS((void)eigen_1d(Bc1d::NN, 0.5, -1), std::domain_error);
  for (int m = 0; m < 20; ++m) CHECK(eigen_1d(Bc1d::DN, 0.3, m) == eigen_1d(Bc1d::ND, 0.3, m));
}

TEST_CASE("exact counts on the unit square") {
  const RectangleSpec dd{0.5, 0.5, Bc1d::DD, Bc1d::DD};
  const RectangleSpec nn{0.5, 0.5, Bc1d::NN, Bc1d::NN};
  CHECK(count_exact(dd, 20.0) == 1);
  CHECK(count_exact(nn, 10.0) == 3);
  CHECK(count_exact(nn, 1e-9) == 1);
  CHECK(count_exact(RectangleSpec{0.013, 2.7, Bc1d::NN, Bc1d::NN}, 1e-9) == 1);
  // ties are excluded: 2 pi^2 is the first DD eigenvalue
  CHECK(count_exact(dd, 2 * kPi * kPi) == 0);
}

TEST_CASE("count_1d agrees with the eigenvalue list") {
  for (Bc1d bc : kAll)
    for (double r : {0.0, 1.0, 9.0, 50.0, 1234.5}) {
      Count n = 0;
      for (int m = first_index(bc); eigen_1d(bc, 0.37, m) < r; ++m) ++n;
      CHECK(count_1d_below(bc, 0.37, r) == n);
    }
}

TEST_CASE("leading estimates") {
  const RectangleSpec nn{0.5, 0.5, Bc1d::NN, Bc1d::NN};
  const RectangleSpec dd{0.3, 0.2, Bc1d::DD, Bc1d::DD};
  const double lam = 12345.6;
  CHECK(count_leading_estimate(nn, lam) ==
        doctest::Approx(lam / (4 * kPi) + 2 * std::sqrt(lam) / kPi));
  CHECK(count_leading_estimate(dd, lam) == doctest::Approx(0.06 * lam / kPi));
  CHECK_THROWS_AS((void)count_leading_estimate({0.5, 0.5, Bc1d::DN, Bc1d::DN}, lam),
                  std::invalid_argument);
  for (double l = 1e4; l <= 1e7; l *= 1.77) {
    for (const auto& s : {nn, RectangleSpec{0.5, 0.5, Bc1d::DD, Bc1d::DD}}) {
      const double d = std::abs(count_exact(s, l) - count_leading_estimate(s, l)) / std::sqrt(l);
      CHECK(d < 0.5);
    }
  }
}

TEST_CASE("counts are monotone in lambda") {
  const RectangleSpec r{0.41, 0.17, Bc1d::DN, Bc1d::NN};
  Count prev = 0;
  for (double l = 1.0; l < 1e6; l *= 1.13) {
    const Count c = count_exact(r, l);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("boundary-condition ordering") {
  for (double l = 10.0; l < 1e6; l *= 1.9) {
    const Count dd = count_exact({0.4, 0.15, Bc1d::DD, Bc1d::DD}, l);
    const Count nn = count_exact({0.4, 0.15, Bc1d::NN, Bc1d::NN}, l);
    for (Bc1d x : kAll)
      for (Bc1d y : kAll) {
        const Count c = count_exact({0.4, 0.15, x, y}, l);
        CHECK(dd <= c);
        CHECK(c <= nn);
      }
  }
}

TEST_CASE("Filonov interlacing on rectangles") {
  for (auto [a, b] : {std::pair{0.5, 0.5}, std::pair{0.5, 0.13}, std::pair{1.3, 0.4}}) {
    const auto N = spectrum({a, b, Bc1d::NN, Bc1d::NN}, 60);
    const auto D = spectrum({a, b, Bc1d::DD, Bc1d::DD}, 60);
    for (int n = 1; n <= 200; ++n) CHECK(N[n] <= D[n - 1]);
  }
}

TEST_CASE("scaling") {
  const RectangleSpec r{0.31, 0.12, Bc1d::ND, Bc1d::DD};
  for (double t : {0.5, 2.0, 3.7})
    for (double l : {100.0, 5e3, 2.2e5})
      CHECK(count_exact(r.scaled(t), l) == count_exact(r, t * t * l));
}

TEST_CASE("remainder beyond the two-term estimate decays relative to sqrt(lambda)") {
  // average |exact - estimate| / sqrt(lambda) over each decade
  for (const auto& s : {RectangleSpec{0.5, 0.5, Bc1d::NN, Bc1d::NN},
                        RectangleSpec{0.5, 0.31, Bc1d::DD, Bc1d::DN},
                        RectangleSpec{0.45, 0.2, Bc1d::DD, Bc1d::DD}}) {
    std::vector<double> x, y;
    for (double dec = 1e3; dec < 1e7; dec *= 10) {
      double sum = 0.0;
      int n = 0;
      for (double l = dec; l < 10 * dec; l *= 1.0379, ++n)
        sum += std::abs(count_exact(s, l) - count_two_term_estimate(s, l)) / std::sqrt(l);
      x.push_back(dec);
      y.push_back(sum / n);
    }
    CHECK(loglog_slope(x, y) < 0.0);
  }
}

TEST_CASE("leading estimate carries a constant sqrt(lambda) offset on NN squares") {
  // the leading estimate adds 2(a+b) sqrt(lambda)/pi where the lattice gives (a+b)
  const RectangleSpec nn{0.5, 0.5, Bc1d::NN, Bc1d::NN};
  double sum = 0.0;
  int n = 0;
  for (double l = 1e6; l < 1e7; l *= 1.0517, ++n)
    sum += (count_leading_estimate(nn, l) - count_exact(nn, l)) / std::sqrt(l);
  CHECK(sum / n == doctest::Approx(1.0 / kPi).epsilon(0.02));
}
