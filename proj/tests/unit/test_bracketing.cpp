#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "rpspec/bracketing.hpp"
#include "rpspec/tail_control.hpp"

using namespace rpspec;

namespace {

constexpr double kPi = std::numbers::pi;

const DomainParams kP{0.5, 2.0, 1.0 / 16, 2};

}  // namespace

TEST_CASE("room partitions tile the room") {
  for (const DomainParams& p : {kP, DomainParams{0.5, 2.5, 1.0 / 32, 2}, DomainParams{1.0 / 3, 2.0, 1.0 / 27, 2}}) {
    for (int j = 3; j <= 15; j += 2) {
      const RoomPartition r = room_partition(p, j);
      REQUIRE(r.regions.size() == 5);
      CHECK(r.regions_area() == doctest::Approx(std::pow(p.C, 2 * j)).epsilon(1e-13));
    }
    const RoomPartition f = first_room_partition(p);
    REQUIRE(f.regions.size() == 3);
    CHECK(f.regions_area() == doctest::Approx(p.C * p.C).epsilon(1e-13));
  }
}

TEST_CASE("room lower count equals the literal index families") {
  CHECK(room_lower_count(kP, 3, 1e5) == oracle::room_lower_literal(0.5, 2.0, 1.0 / 16, 3, 1e5));
  for (int j : {3, 5, 7})
    for (double l : {3.3e3, 4.1e4, 2.7e5, 1.9e6})
      CHECK(room_lower_count(kP, j, l) == oracle::room_lower_literal(0.5, 2.0, 1.0 / 16, j, l));
  const DomainParams q{1.0 / 3, 2.0, 1.0 / 27, 2};
  for (double l : {5.1e4, 8.8e5})
    CHECK(room_lower_count(q, 3, l) == oracle::room_lower_literal(q.C, q.alpha, q.k, 3, l));
}

TEST_CASE("first room and passages equal the literal index families") {
  for (double l : {77.7, 1.3e3, 4.1e4, 2.7e5, 1.9e6}) {
    CHECK(first_room_lower_count(kP, l) == oracle::first_room_lower_literal(0.5, 2.0, 1.0 / 16, l));
    for (int j : {2, 4, 6}) {
      const PieceCounts c = passage_counts(kP, j, l);
      CHECK(c.lower == oracle::passage_lower_literal(0.5, 2.0, 1.0 / 16, j, l));
      CHECK(c.upper == oracle::passage_upper_literal(0.5, 2.0, 1.0 / 16, j, l));
    }
  }
}

TEST_CASE("index errors") {
  CHECK_THROWS_AS((void)room_lower_count(kP, 4, 1e3), std::domain_error);
  CHECK_THROWS_AS((void)room_lower_count(kP, 1, 1e3), std::domain_error);
  CHECK_THROWS_AS((void)passage_counts(kP, 3, 1e3), std::domain_error);
  CHECK_THROWS_AS((void)assemble_bounds(kP, BoundaryCondition::neumann, 0, 1e3), std::out_of_range);
}

TEST_CASE("room bounds are ordered and the upper bound is the NN square") {
  for (double l = 1e2; l < 1e7; l *= 3.1)
    for (int j : {3, 5, 7}) {
      CHECK(room_lower_count(kP, j, l) <= room_upper_count(kP, j, l));
      const double a = std::pow(0.5, j) / 2;
      CHECK(room_upper_count(kP, j, l) == count_exact({a, a, Bc1d::NN, Bc1d::NN}, l));
    }
  // below the first nonzero NN eigenvalue pi^2 / C^(2j) only the zero mode counts
  CHECK(room_upper_count(kP, 3, 0.99 * kPi * kPi * 64) == 1);
  CHECK(room_upper_count(kP, 3, 1.01 * kPi * kPi * 64) == 3);
}

TEST_CASE("room upper bound approaches C^(2j) lambda/4pi + 2 C^j sqrt(lambda)/pi") {
  // the exact lattice second term of an NN square is half the displayed one
  const int j = 3;
  const double cj = std::pow(0.5, j);
  for (double l : {2.3e6, 5.9e6, 9.7e6}) {
    const double excess = (room_upper_count(kP, j, l) - cj * cj * l / (4 * kPi)) / std::sqrt(l);
    CHECK(excess > 0.0);
    CHECK(excess <= 2 * cj / kPi);
    CHECK(excess == doctest::Approx(cj / kPi).epsilon(0.05));
  }
}

TEST_CASE("passage upper minus lower is the m = 0 column") {
  for (int j : {2, 4})
    for (double l : {1234.567, 9.87e4, 3.21e6}) {
      const PieceCounts c = passage_counts(kP, j, l);
      const double b = kP.k * std::pow(kP.C, kP.alpha * j) / 2;
      CHECK(c.upper - c.lower == 1 + static_cast<Count>(std::floor(2 * b * std::sqrt(l) / kPi)));
    }
  const PieceCounts low = passage_counts(kP, 2, 1.0);
  CHECK(low.lower == 0);
  CHECK(low.upper == 1);
}

TEST_CASE("Dirichlet piece counts") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 1.0 / 16, 8);
  for (double l = 1e2; l < 1e7; l *= 2.9)
    for (const Piece& p : d.pieces()) {
      const PieceCounts c = dirichlet_piece_counts(p, l);
      CHECK(c.lower <= c.upper);
      CHECK(c.lower == count_exact({p.width() / 2, p.half_height, Bc1d::DD, Bc1d::DD}, l));
    }
  // first room upper: (2m+1)^2 pi^2/16a^2 + n^2 pi^2/4b^2, m >= 0, n >= 1
  for (double l : {3.3e3, 7.7e5})
    CHECK(dirichlet_piece_counts(d.piece(1), l).upper ==
          oracle::count_family(oracle::dnx_ny_family(0.25, 0.25), 0, 1, l));
}

TEST_CASE("assembled bounds are ordered and Dirichlet sits below Neumann") {
  for (int i = 0; i < 50; ++i) {
    const double l = std::pow(10.0, 2.0 + 5.0 * (i + 0.5) / 50);
    const int M = min_M_for_lambda(kP, l).M;
    const BracketReport n = assemble_bounds(kP, BoundaryCondition::neumann, M, l);
    const BracketReport dr = assemble_bounds(kP, BoundaryCondition::dirichlet, M, l);
    CHECK(n.lower_count <= n.upper_count);
    CHECK(dr.lower_count <= dr.upper_count);
    CHECK(dr.lower_count <= n.lower_count);
    CHECK(dr.upper_count <= n.upper_count);
    const BracketReport nf =
        assemble_bounds(kP, BoundaryCondition::neumann, M, l, ReportScope::omega_full);
    CHECK(nf.lower_count == n.lower_count + 1);
    CHECK(nf.upper_count == n.upper_count + 1);
  }
}

TEST_CASE("normalized second terms follow their definition") {
  const double l = 4.4e5;
  const BracketReport r = assemble_bounds(kP, BoundaryCondition::neumann, 3, l);
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 1.0 / 16, 6);
  CHECK(r.area == doctest::Approx(d.area_upto(6)).epsilon(1e-14));
  CHECK(r.weyl == doctest::Approx(r.area * l / (4 * kPi)).epsilon(1e-14));
  CHECK(r.normalized_lower ==
        doctest::Approx((r.lower_count - r.weyl) / (std::sqrt(l) / kPi)).epsilon(1e-12));
  Count lo = 0, hi = 0;
  for (const auto& p : r.pieces) lo += p.lower, hi += p.upper;
  CHECK(lo == r.lower_count);
  CHECK(hi == r.upper_count);
}

TEST_CASE("second-term constants") {
  const SecondTermConstants c = second_term_constants(kP);
  CHECK(c.C2 - c.C1 == doctest::Approx(1.0 / 120).epsilon(1e-13));
  CHECK(c.C1 == doctest::Approx(1.25 / 0.75 - 1.0 / 240).epsilon(1e-13));
  CHECK(c.CD_upper == doctest::Approx(0.5 * 1.25 / 1.5 + (1.0 / 16) / 15).epsilon(1e-13));
  double e1 = 1e300, e2 = 1e300, ed = 1e300;
  for (int M = 1; M <= 30; ++M) {
    const SecondTermConstants f = second_term_constants(kP, M);
    const double d1 = std::abs(f.C1 - c.C1), d2 = std::abs(f.C2 - c.C2),
                 dd = std::abs(f.CD_upper - c.CD_upper);
    CHECK(d1 <= e1);
    CHECK(d2 <= e2);
    CHECK(dd <= ed);
    e1 = d1, e2 = d2, ed = dd;
  }
  CHECK(e1 < 1e-12);
  CHECK(e2 < 1e-12);
  CHECK(ed < 1e-12);
}
