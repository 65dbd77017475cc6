#include <cmath>
#include <numbers>
#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "rpspec/fd_oracle.hpp"

using namespace rpspec;

namespace {

constexpr double kPi = std::numbers::pi;

RpDomain unit_square() { return RpDomain::from_sequences({1.0}, {0.0}); }

double fd_value(const RpDomain& d, int n, BoundaryCondition bc, int index) {
  const GridDomain g = rasterize_pieces(d, 1, n);
  return fd_eigenvalues(g, bc, index + 1).eigenvalues[index];
}

}  // namespace

TEST_CASE("unit square Neumann spectrum converges at second order") {
  const RpDomain d = unit_square();
  const double e1 = std::abs(fd_value(d, 16, BoundaryCondition::neumann, 1) - kPi * kPi);
  const double e2 = std::abs(fd_value(d, 32, BoundaryCondition::neumann, 1) - kPi * kPi);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 1.8);
  CHECK(order <= 2.2);
  const FdSpectrum s = fd_eigenvalues(rasterize_pieces(d, 1, 24), BoundaryCondition::neumann, 3);
  CHECK(s.eigenvalues[0] <= 1e-10);
  for (double r : s.residuals) CHECK(r <= 1e-8 * 100);
}

TEST_CASE("unit square Dirichlet spectrum") {
  const RpDomain d = unit_square();
  const double e1 = std::abs(fd_value(d, 16, BoundaryCondition::dirichlet, 0) - 2 * kPi * kPi);
  const double e2 = std::abs(fd_value(d, 32, BoundaryCondition::dirichlet, 0) - 2 * kPi * kPi);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(e2 < 0.05);
  // Filonov on the square: lambda^N_2 <= lambda^D_1
  CHECK(fd_value(d, 32, BoundaryCondition::neumann, 1) <= fd_value(d, 32, BoundaryCondition::dirichlet, 0));
}

TEST_CASE("strict rasterization is grid exact") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 4);
  const GridDomain g = rasterize(d, 1, 128);
  const double area = d.area_upto(2);
  CHECK(static_cast<double>(g.size()) == area * 128 * 128);
  CHECK(g.size() == 4160);
  CHECK(rasterize(d, 1, 256).size() == 4 * g.size());
  CHECK(g.area() == doctest::Approx(area).epsilon(1e-14));
  const auto cells = g.active_cells();
  CHECK(std::set<std::array<long long, 2>>(cells.begin(), cells.end()).size() == g.size());
  try {
    (void)rasterize(d, 1, 64);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("half_height") != std::string::npos);
  }
  const RpDomain irr = RpDomain::geometric(1.0 / std::sqrt(3.0), 2.0, 0.25, 2);
  CHECK_THROWS_AS((void)rasterize(irr, 1, 1024), std::invalid_argument);
}

TEST_CASE("aligned grids cover the truncation and keep a one-dimensional Neumann kernel") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 4);
  const GridDomain g = rasterize(d, 2, 32, GridMode::aligned);
  CHECK(g.area() == doctest::Approx(d.area_upto(4)).epsilon(1e-13));
  const SparseMatrix A = fd_operator(g, BoundaryCondition::neumann);
  const FdSpectrum s = fd_eigenvalues(g, BoundaryCondition::neumann, 2);
  // cells of width 1/2048 put |A| near 1e7, so the dense zero eigenvalue carries ~eps |A|
  CHECK(s.eigenvalues[0] <= 1e-8);
  CHECK(fd_eigenvalues(rasterize(d, 1, 128), BoundaryCondition::neumann, 1).eigenvalues[0] <= 1e-10);
  CHECK(count_below(A, 0.5 * s.eigenvalues[1]) == 1);
}

TEST_CASE("Lanczos agrees with the dense solver") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 4);
  const SparseMatrix A = fd_operator(rasterize(d, 2, 32, GridMode::aligned), BoundaryCondition::dirichlet);
  const EigenResult dense = lowest_eigenvalues(A, 8, 1e-8, 100000);
  const EigenResult lanczos = lowest_eigenvalues(A, 8, 1e-10, 10);
  CHECK(dense.dense);
  CHECK_FALSE(lanczos.dense);
  for (int i = 0; i < 8; ++i) {
    CHECK(lanczos.values[i] == doctest::Approx(dense.values[i]).epsilon(1e-9));
    CHECK(lanczos.residuals[i] <= 1e-10 * std::max(1.0, lanczos.values[i]));
  }
  CHECK(count_below(A, 0.5 * (dense.values[3] + dense.values[4])) == 4);
}

TEST_CASE("Richardson extrapolation and the sandwich on the first room and passage") {
  const DomainParams p{0.5, 2.0, 0.25, 2};
  const SandwichReport r = sandwich_check(p, 1, {}, 8, {32, 64, 128});
  CHECK(r.rows.size() == 2 * (30 - r.skipped.size()));
  CHECK(r.skipped.empty());
  CHECK(r.all_ok());
  CHECK(r.monotone_ok);
  for (const auto& f : r.filonov) CHECK(f.ok);
  CHECK_THROWS_AS((void)sandwich_check(p, 3, {}), std::invalid_argument);
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 2);
  CHECK_THROWS_AS((void)fd_extrapolate(d, 2, BoundaryCondition::neumann, 3, {32, 48}),
                  std::invalid_argument);
}

TEST_CASE("generic lambdas and CSV layout") {
  const auto ls = generic_lambdas(100.0, 30);
  REQUIRE(ls.size() == 30);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    CHECK(ls[i] > 0.0);
    CHECK(ls[i] <= 100.0);
    if (i) CHECK(ls[i] > ls[i - 1]);
  }
  const RpDomain d = unit_square();
  const FdExtrapolation x = fd_extrapolate(d, 1, BoundaryCondition::neumann, 3, {8, 16, 32});
  const std::string csv = fd_csv({x});
  CHECK(csv.rfind("bc,index,eigenvalue,grid_n,extrapolated\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 4);
  CHECK(x.value[1] == doctest::Approx(kPi * kPi).epsilon(1e-4));
}
