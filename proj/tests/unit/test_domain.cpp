#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "rpspec/domain.hpp"

using namespace rpspec;

TEST_CASE("geometric family piece sizes") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 4);
  REQUIRE(d.size() == 4);
  CHECK(d.piece(1).width() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.piece(3).width() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(d.piece(2).height() == doctest::Approx(1.0 / 64).epsilon(1e-15));
  // k C^(i alpha) at i = 4 is (1/4)(1/2)^8
  CHECK(d.piece(4).height() == doctest::Approx(1.0 / 1024).epsilon(1e-15));
  CHECK(d.delta(4) == doctest::Approx(1.0 / 1024).epsilon(1e-15));
  CHECK(d.piece(1).kind == PieceKind::room);
  CHECK(d.piece(2).kind == PieceKind::passage);
}

TEST_CASE("x intervals are cumulative widths from the origin") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 2);
  CHECK(d.piece(1).x_lo == 0.0);
  CHECK(d.piece(1).x_hi == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.piece(2).x_lo == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.piece(2).x_hi == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("constraint violations name the inequality") {
  try {
    (void)RpDomain::geometric(0.5, 2.0, 4.0, 4);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("k < C^(3-2*alpha)") != std::string::npos);
  }
  CHECK_THROWS_AS((void)RpDomain::geometric(1.5, 2.0, 0.1, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)RpDomain::geometric(0.5, 1.0, 0.1, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)RpDomain::geometric(0.5, 2.0, 0.1, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)RpDomain::from_sequences({1.0, 0.5, 0.5}, {0.0, 0.6, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("total area closed form") {
  for (double k : {0.01, 0.25, 1.0}) {
    const RpDomain d = RpDomain::geometric(0.5, 2.0, k, 2);
    CHECK(d.total_area() == doctest::Approx(4.0 / 15.0 + k / 63.0).epsilon(1e-14));
  }
}

TEST_CASE("area_upto, tail_area and total_area identities") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 20);
  CHECK(d.area_upto(0) == 0.0);
  CHECK(d.tail_area(0) == doctest::Approx(d.total_area()).epsilon(1e-15));
  double prev = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const double a = d.area_upto(n);
    // increments fall below one ulp of the total after about a dozen pieces
    if (n <= 12) CHECK(a > prev);
    CHECK(a >= prev);
    prev = a;
    CHECK(a == doctest::Approx(d.area_upto_summed(n)).epsilon(1e-14));
  }
  for (int M = 0; M <= 10; ++M)
    CHECK(d.area_upto(2 * M) + d.tail_area(M) == doctest::Approx(d.total_area()).epsilon(1e-14));
}

TEST_CASE("tail area decays like C^(4M)") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 2);
  double prev = d.tail_area(0), lo = 1e300, hi = 0.0;
  for (int M = 1; M <= 20; ++M) {
    const double t = d.tail_area(M);
    CHECK(t < prev);
    prev = t;
    if (M >= 5) {
      const double r = t / std::pow(0.5, 4 * M);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 1.01);
}

TEST_CASE("piece intervals partition [0, length]") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 16);
  double x = 0.0, total = 0.0;
  for (const Piece& p : d.pieces()) {
    CHECK(std::abs(p.x_lo - x) <= 1e-13);
    CHECK(std::abs((p.x_hi - p.x_lo) - p.width()) <= 1e-13);
    x = p.x_hi;
    total += p.width();
  }
  CHECK(std::abs(d.length() - total) <= 1e-13);
  for (int i = 2; i <= 16; i += 2) {
    CHECK(d.piece(i).height() < d.piece(i - 1).height());
    if (i < 16) CHECK(d.piece(i).height() < d.piece(i + 1).height());
  }
}

TEST_CASE("contains") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 4);
  CHECK(d.contains({0.25, 0.0}));
  // above the passage at room height
  CHECK_FALSE(d.contains({0.6, 0.2}));
  // shared boundary inside the passage opening
  CHECK(d.contains({0.5, 0.0}));
  CHECK(d.contains({0.75, 0.0}));
  // on the room wall outside the opening
  CHECK_FALSE(d.contains({0.5, 0.1}));
  CHECK_FALSE(d.contains({0.25, 0.25}));
  CHECK_FALSE(d.contains({-0.01, 0.0}));
}

TEST_CASE("general sequences and JSON round trip") {
  const RpDomain d = RpDomain::from_sequences({1.0, 0.5, 0.5, 0.25, 0.25}, {0, 0.25, 0, 0.125, 0});
  CHECK_FALSE(d.is_geometric());
  CHECK(d.area_upto(5) == doctest::Approx(1.0 + 0.125 + 0.25 + 0.03125 + 0.0625));
  const RpDomain r = domain_from_json(to_json(d));
  REQUIRE(r.size() == d.size());
  for (int i = 1; i <= d.size(); ++i) {
    CHECK(r.piece(i).x_lo == d.piece(i).x_lo);
    CHECK(r.piece(i).half_height == d.piece(i).half_height);
  }
  const RpDomain g = RpDomain::geometric(0.5, 2.0, 0.25, 6);
  CHECK(to_json(domain_from_json(to_json(g))) == to_json(g));
}
