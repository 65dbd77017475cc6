#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "rpspec/skeleton_operator.hpp"

using namespace rpspec;

namespace {

constexpr double kPi = std::numbers::pi;

RpDomain small_domain() {
  return RpDomain::from_sequences({1.0, 0.5, 0.5, 0.25, 0.25}, {0, 0.25, 0, 0.125, 0});
}

int find_edge(const DomainSkeleton& sk, EdgeGroup g) {
  for (const auto& e : sk.edges())
    if (e.group() == g) return e.id;
  throw std::logic_error("test: no edge of the requested group");
}

}  // namespace

TEST_CASE("inner products") {
  SkeletonEdge pass = SkeletonEdge::g1(EdgeGroup::G1_passage, 0.0, 0.5, 0.125, 2);
  pass.id = 0;
  const SkeletonSpace sp({pass});
  const auto one = SkeletonFunction::constant(sp.edges(), 1.0);
  CHECK(l2_inner(sp, one, one) == doctest::Approx(0.125 * 0.5).epsilon(1e-15));
  CHECK(h1_inner(sp, one, one) == doctest::Approx(0.125 * 0.5).epsilon(1e-15));

  const auto edges = build_room_skeleton(1.0, 0.25, 0.25);
  const SkeletonSpace rs(edges);
  std::vector<std::vector<double>> co(edges.size(), std::vector<double>{0.0});
  int g2 = -1;
  for (const auto& e : edges)
    if (e.group() == EdgeGroup::G2_diagonal) {
      g2 = e.id;
      break;
    }
  co[g2] = {0.0, 1.0};
  const auto sig = SkeletonFunction::polynomial(edges, co);
  const double L = edges[g2].length();
  CHECK(l2_inner(rs, sig, sig) == doctest::Approx(std::pow(L, 4) / 4).epsilon(1e-13));
  CHECK(h1_inner(rs, sig, sig) >= l2_inner(rs, sig, sig));
  CHECK(h1_inner(rs, sig, sig) - l2_inner(rs, sig, sig) == doctest::Approx(L * L).epsilon(1e-13));
  CHECK_THROWS_AS((void)l2_inner(sp, one, sig), std::invalid_argument);
}

TEST_CASE("assembly preconditions") {
  const auto edges = build_room_skeleton(1.0, 0.25, 0.25);
  for (const auto& e : edges) {
    if (e.singular())
      CHECK_THROWS_AS((void)assemble_sl(e, 64), std::invalid_argument);
    else
      CHECK_THROWS_AS((void)assemble_sl(e, 4), std::invalid_argument);
  }
}

TEST_CASE("discrete operator is symmetric, nonnegative, and kills constants") {
  const DomainSkeleton sk(small_domain());
  for (int id : sk.regular_edges()) {
    const WeightedSlSystem sys = assemble_sl(sk.edge(id), 64);
    std::vector<double> u(sys.n), v(sys.n), one(sys.n, 1.0);
    for (int i = 0; i < sys.n; ++i) {
      u[i] = std::sin(1.0 + 0.37 * i);
      v[i] = std::cos(0.2 * i * i);
    }
    const double uhv = sys.weighted_inner(u, sys.apply(v));
    const double hu_v = sys.weighted_inner(sys.apply(u), v);
    CHECK(std::abs(uhv - hu_v) <= 1e-12 * std::max(1.0, std::abs(uhv)));
    CHECK(sys.weighted_inner(u, sys.apply(u)) >= 0.0);
    for (double r : sys.apply(one)) CHECK(r == 0.0);
    const auto ev = sl_eigenvalues(sys, 6);
    CHECK(std::abs(ev[0]) <= 1e-10);
    for (double x : ev) CHECK(x >= -1e-10);
    const auto dense = sl_eigenvalues_dense(sys, 6);
    for (int m = 1; m < 6; ++m) CHECK(ev[m] == doctest::Approx(dense[m]).epsilon(1e-9));
  }
}

TEST_CASE("G1 edges converge to (m pi/L)^2 at second order") {
  const SkeletonEdge e = SkeletonEdge::g1(EdgeGroup::G1_passage, 0.0, 0.37, 0.05, 2);
  const double L = e.length();
  for (int m = 1; m <= 4; ++m) {
    const double exact = std::pow(m * kPi / L, 2);
    const double e1 = std::abs(sl_eigenvalues(assemble_sl(e, 128), 6)[m] - exact);
    const double e2 = std::abs(sl_eigenvalues(assemble_sl(e, 256), 6)[m] - exact);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
  }
}

TEST_CASE("G2 edges: Richardson values are self-consistent and match Bessel zeros") {
  const auto edges = build_room_skeleton(1.0, 0.25, 0.25);
  const SkeletonEdge* g2 = nullptr;
  for (const auto& e : edges)
    if (e.group() == EdgeGroup::G2_diagonal) g2 = &e;
  REQUIRE(g2 != nullptr);
  const SlRichardson r = sl_richardson(*g2, 512, 6);
  const double L = g2->length();
  for (int m = 1; m < 6; ++m) {
    CHECK(r.spread[m] <= 1e-6 * r.value[m]);
    const double z = oracle::bessel_j1_zero(m);
    CHECK(r.value[m] == doctest::Approx(2 * z * z / (L * L)).epsilon(1e-7));
  }
}

TEST_CASE("resolvent") {
  const DomainSkeleton sk(small_domain());
  const int id = find_edge(sk, EdgeGroup::G2_diagonal);
  const WeightedSlSystem sys = assemble_sl(sk.edge(id), 50);
  std::vector<double> f(sys.n), one(sys.n, 1.0);
  for (int i = 0; i < sys.n; ++i) f[i] = std::exp(-0.1 * i) + 0.3 * std::sin(i);
  const auto u = resolvent_apply(sys, f);
  const auto ku = sys.apply(u);
  for (int i = 0; i < sys.n; ++i) CHECK(ku[i] + u[i] == doctest::Approx(f[i]).epsilon(1e-10));
  for (double x : resolvent_apply(sys, one)) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
  for (double c : {-2.0, 0.0, 3.5}) CHECK(singular_resolvent_apply(c) == c);
}

TEST_CASE("T0 and its adjoint") {
  const DomainSkeleton sk(small_domain());
  const SkeletonSpace sp(sk.edges());
  const auto one = SkeletonFunction::constant(sk.edges(), 1.0);
  for (Point2 p : {Point2{0.3, 0.1}, Point2{1.2, 0.01}, Point2{1.01, 0.1}, Point2{1.74, -0.1}})
    CHECK(apply_T0(sk, one, p) == 1.0);
  std::vector<int> all;
  for (const auto& e : sk.edges()) all.push_back(e.id);
  CHECK(t0_star_t0_defect(sk, sp, one, all) <= 1e-8);
  // singular edges: mean value of g over the region
  const auto back = apply_T0_star(sk, sp, [](Point2) { return 1.0; });
  for (int id : sk.singular_edges()) CHECK(back[id].constant == doctest::Approx(1.0).epsilon(1e-9));
  // F = sigma on a G1 edge
  std::vector<std::vector<double>> co(sk.edges().size(), std::vector<double>{0.0});
  const int g1 = find_edge(sk, EdgeGroup::G1_passage);
  co[g1] = {0.0, 1.0};
  const auto F = SkeletonFunction::polynomial(sk.edges(), co);
  CHECK(t0_star_t0_defect(sk, sp, F, {g1}) <= 1e-8);
}

TEST_CASE("isometry for constants and cubics") {
  const DomainSkeleton sk(small_domain());
  const SkeletonSpace sp(sk.edges());
  std::vector<int> all;
  for (const auto& e : sk.edges()) all.push_back(e.id);
  const auto c = SkeletonFunction::constant(sk.edges(), 2.0);
  const IsometryReport rc = check_isometry(sk, sp, c, all);
  CHECK(rc.l2_defect <= 1e-8);
  CHECK(rc.h1_rhs == 0.0);
  CHECK(rc.h1_lhs == 0.0);
  std::vector<std::vector<double>> co(sk.edges().size());
  for (const auto& e : sk.edges()) co[e.id] = {0.3, 1.1, -0.7, 2.0};
  const auto F = SkeletonFunction::polynomial(sk.edges(), co);
  const IsometryReport r = check_isometry(sk, sp, F, sk.regular_edges());
  CHECK(r.l2_defect <= 1e-6);
  CHECK(r.h1_defect <= 1e-6);
}

TEST_CASE("zero modes") {
  const RpDomain d = RpDomain::geometric(0.5, 2.0, 0.25, 20);
  const DomainSkeleton sk(d);
  const auto modes = zero_modes(sk, 10);
  REQUIRE(modes.size() == 10);
  std::set<int> ids;
  for (const auto& z : modes) {
    ids.insert(z.edge);
    CHECK(z.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(z.area == doctest::Approx(sk.edge(z.edge).region_area()));
    // constant on its preimage, zero elsewhere
    const SkeletonEdge& e = sk.edge(z.edge);
    for (double a : {0.2, 0.5, 0.8})
      for (double b : {-0.5, 0.5}) {
        const double sigma = a * e.length();
        const Point2 p = e.fiber_point(sigma, b * e.fiber_halflength(sigma));
        CHECK(z(sk, p) == z.value);
        for (const auto& other : modes)
          if (other.edge != z.edge) CHECK(other(sk, p) == 0.0);
      }
  }
  CHECK(ids.size() == 10);
  CHECK_THROWS_AS((void)zero_modes(sk, 100000), std::invalid_argument);
}

TEST_CASE("T1 diagnostic is small for functions of sigma") {
  const DomainSkeleton sk(small_domain());
  const int g1 = find_edge(sk, EdgeGroup::G1_passage);
  const double x0 = sk.edge(g1).wall_x();
  const T1Diagnostic t = t1_projection_defect(
      sk, g1, [&](Point2 p) { return std::cos(p.x - x0); },
      [&](Point2 p) { return Point2{-std::sin(p.x - x0), 0.0}; }, 64);
  CHECK(t.rel_defect <= 1e-3);
  CHECK(t.nodal.size() == 65);
}
