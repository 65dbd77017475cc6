#include "rpspec/skeleton_operator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rpspec/quadrature.hpp"

namespace rpspec {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

using Gauss16 = boost::math::quadrature::gauss<double, 16>;

// panel boundaries covering [0, L]: breaks of both operands, refined to at least `min_panels`
std::vector<double> panels_for(double L, const EdgeFunction& a, const EdgeFunction& b,
                               int min_panels = 8) {
  std::vector<double> p{0.0, L};
  for (const auto* ef : {&a, &b})
    for (double x : ef->breaks)
      if (x > 0.0 && x < L) p.push_back(x);
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  while (static_cast<int>(p.size()) - 1 < min_panels) {
    std::vector<double> q;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      q.push_back(p[i]);
      q.push_back(0.5 * (p[i] + p[i + 1]));
    }
    q.push_back(p.back());
    p.swap(q);
  }
  return p;
}

template <class F>
double integrate_panels(F&& f, const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) s += Gauss16::integrate(f, p[i], p[i + 1]);
  return s;
}

void check_sizes(const SkeletonSpace& sp, const SkeletonFunction& f, const SkeletonFunction& g) {
  if (f.size() != sp.edges().size() || g.size() != sp.edges().size())
    throw std::invalid_argument("operator: function does not match the edge structure");
}

// fiber integral of h(point) * J over s in [-l, l], split at the skeleton
template <class H>
double fiber_integral(const SkeletonEdge& e, double sigma, H&& h) {
  const double l = e.fiber_halflength(sigma);
  if (l <= 0.0) return 0.0;
  auto f = [&](double s) { return h(e.fiber_point(sigma, s), s) * e.jacobian(sigma, s); };
  return integrate(f, -l, 0.0, 1e-12, 15) + integrate(f, 0.0, l, 1e-12, 15);
}

// solves a symmetric tridiagonal system with diagonal d and off-diagonal o
std::vector<double> solve_tridiagonal(std::vector<double> d, std::vector<double> o,
                                      std::vector<double> r) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = o[i - 1] / d[i - 1];
    d[i] -= w * o[i - 1];
    r[i] -= w * r[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = r[n - 1] / d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (r[i] - o[i] * x[i + 1]) / d[i];
  return x;
}

}  // namespace

SkeletonFunction SkeletonFunction::constant(const std::vector<SkeletonEdge>& edges, double c) {
  std::vector<EdgeFunction> parts(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    parts[i].constant = c;
    if (!edges[i].singular()) {
      parts[i].f = [c](double) { return c; };
      parts[i].df = [](double) { return 0.0; };
    }
  }
  return SkeletonFunction(std::move(parts));
}

SkeletonFunction SkeletonFunction::polynomial(const std::vector<SkeletonEdge>& edges,
                                              const std::vector<std::vector<double>>& coeffs) {
  if (coeffs.size() != edges.size())
    throw std::invalid_argument("operator: one coefficient list per edge expected");
  std::vector<EdgeFunction> parts(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::vector<double> c = coeffs[i];
    parts[i].constant = c.empty() ? 0.0 : c[0];
    if (edges[i].singular()) continue;
    parts[i].f = [c](double x) {
      double v = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
      return v;
    };
    parts[i].df = [c](double x) {
      double v = 0.0;
      for (std::size_t k = c.size(); k-- > 1;) v = v * x + k * c[k];
      return v;
    };
  }
  return SkeletonFunction(std::move(parts));
}

SkeletonFunction SkeletonFunction::grid(const std::vector<SkeletonEdge>& edges, int edge,
                                        const std::vector<double>& nodal) {
  if (edges.at(edge).singular())
    throw std::invalid_argument("operator: grid functions live on regular edges");
  if (nodal.size() < 2) throw std::invalid_argument("operator: need at least two nodal values");
  SkeletonFunction out = constant(edges, 0.0);
  const double L = edges[edge].length();
  const int n = static_cast<int>(nodal.size()) - 1;
  const double dx = L / n;
  auto cell = [n, dx](double s) { return std::clamp(static_cast<int>(s / dx), 0, n - 1); };
  EdgeFunction ef;
  ef.f = [=](double s) {
    const int i = cell(s);
    const double t = (s - i * dx) / dx;
    return (1.0 - t) * nodal[i] + t * nodal[i + 1];
  };
  ef.df = [=](double s) {
    const int i = cell(s);
    return (nodal[i + 1] - nodal[i]) / dx;
  };
  for (int i = 0; i <= n; ++i) ef.breaks.push_back(i * dx);
  out[edge] = ef;
  return out;
}

SkeletonSpace::SkeletonSpace(std::vector<SkeletonEdge> edges) : edges_(std::move(edges)) {
  mass_.resize(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const SkeletonEdge& e = edges_[i];
    if (e.singular())
      mass_[i] = integrate([&](double s) { return e.alpha(s); }, 0.0, e.length(), 1e-12, 15);
    else
      mass_[i] = integrate([&](double s) { return e.alpha_closed(s); }, 0.0, e.length());
  }
}

double l2_inner(const SkeletonSpace& sp, const SkeletonFunction& f, const SkeletonFunction& g) {
  check_sizes(sp, f, g);
  double sum = 0.0;
  for (const SkeletonEdge& e : sp.edges()) {
    const EdgeFunction& a = f[e.id];
    const EdgeFunction& b = g[e.id];
    if (e.singular()) {
      sum += a.constant * b.constant * sp.mass(e.id);
      continue;
    }
    auto integrand = [&](double s) { return a.value(s) * b.value(s) * e.alpha_closed(s); };
    sum += integrate_panels(integrand, panels_for(e.length(), a, b));
  }
  return sum;
}

double h1_inner(const SkeletonSpace& sp, const SkeletonFunction& f, const SkeletonFunction& g) {
  double sum = l2_inner(sp, f, g);
  for (const SkeletonEdge& e : sp.edges()) {
    if (e.singular()) continue;
    const EdgeFunction& a = f[e.id];
    const EdgeFunction& b = g[e.id];
    if (!a.df || !b.df) throw std::invalid_argument("operator: h1_inner needs derivatives");
    auto integrand = [&](double s) { return a.df(s) * b.df(s) * e.weights(s).beta; };
    sum += integrate_panels(integrand, panels_for(e.length(), a, b));
  }
  return sum;
}

std::vector<double> WeightedSlSystem::apply_stiffness(const std::vector<double>& u) const {
  std::vector<double> r(n, 0.0);
  for (int j = 0; j + 1 < n; ++j) {
    const double flux = stiffness[j] * (u[j + 1] - u[j]);
    r[j] -= flux;
    r[j + 1] += flux;
  }
  return r;
}

std::vector<double> WeightedSlSystem::apply(const std::vector<double>& u) const {
  std::vector<double> r = apply_stiffness(u);
  for (int i = 0; i < n; ++i) r[i] /= mass[i];
  return r;
}

double WeightedSlSystem::weighted_inner(const std::vector<double>& u,
                                        const std::vector<double>& v) const {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += mass[i] * u[i] * v[i];
  return s;
}

std::vector<double> WeightedSlSystem::nodes() const {
  std::vector<double> x(n);
  const double dx = length / n;
  for (int i = 0; i < n; ++i) x[i] = (i + 0.5) * dx;
  return x;
}

WeightedSlSystem assemble_sl(const SkeletonEdge& edge, int n) {
  if (edge.singular())
    throw std::invalid_argument("operator: operator is zero on singular edges");
  if (n < 8) throw std::invalid_argument("operator: need at least 8 cells");
  WeightedSlSystem sys;
  sys.edge = edge.id;
  sys.group = edge.group();
  sys.length = edge.length();
  sys.n = n;
  const double dx = sys.length / n;
  sys.mass.resize(n);
  sys.stiffness.resize(n - 1);
  for (int i = 0; i < n; ++i) sys.mass[i] = edge.alpha_closed((i + 0.5) * dx) * dx;
  for (int j = 1; j < n; ++j) sys.stiffness[j - 1] = edge.weights(j * dx).beta / dx;
  return sys;
}

namespace {

// number of eigenvalues of K - lambda M below zero; the pivots d_i = k_i + t_i
// with t_i = k_{i-1} t_{i-1} / d_{i-1} - lambda m_i avoid the cancellation of
// the plain LDL recurrence, so small eigenvalues keep their relative accuracy
int sl_count_below(const WeightedSlSystem& sys, double lambda) {
  int neg = 0;
  double t = -lambda * sys.mass[0];
  for (int i = 0;; ++i) {
    const double k = i + 1 < sys.n ? sys.stiffness[i] : 0.0;
    double d = k + t;
    if (d < 0.0) ++neg;
    if (i + 1 == sys.n) break;
    if (d == 0.0) d = -1e-300;
    t = k * t / d - lambda * sys.mass[i + 1];
  }
  return neg;
}

}  // namespace

std::vector<double> sl_eigenvalues(const WeightedSlSystem& sys, int count) {
  const int n = sys.n;
  const int m = std::min(count, n);
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    double k = 0.0;
    if (i > 0) k += sys.stiffness[i - 1];
    if (i + 1 < n) k += sys.stiffness[i];
    bound = std::max(bound, 2.0 * k / sys.mass[i]);
  }
  bound = 2.0 * bound + 1.0;
  std::vector<double> out(m);
  for (int j = 0; j < m; ++j) {
    double lo = j > 0 ? out[j - 1] : -bound, hi = bound;
    for (int it = 0; it < 2200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi || std::max(std::abs(lo), std::abs(hi)) < 1e-200) break;
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(lo), std::abs(hi)))
        break;
      if (sl_count_below(sys, mid) > j)
        hi = mid;
      else
        lo = mid;
    }
    out[j] = 0.5 * (lo + hi);
  }
  return out;
}

std::vector<double> sl_eigenvalues_dense(const WeightedSlSystem& sys, int count) {
  const int n = sys.n;
  Eigen::VectorXd diag(n), sub(n - 1);
  for (int i = 0; i < n; ++i) {
    double k = 0.0;
    if (i > 0) k += sys.stiffness[i - 1];
    if (i + 1 < n) k += sys.stiffness[i];
    diag(i) = k / sys.mass[i];
  }
  for (int i = 0; i + 1 < n; ++i)
    sub(i) = -sys.stiffness[i] / std::sqrt(sys.mass[i] * sys.mass[i + 1]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("operator: tridiagonal eigensolve failed");
  const int m = std::min(count, n);
  return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + m);
}

SlRichardson sl_richardson(const SkeletonEdge& edge, int n0, int count) {
  const auto a = sl_eigenvalues(assemble_sl(edge, n0), count);
  const auto b = sl_eigenvalues(assemble_sl(edge, 2 * n0), count);
  const auto c = sl_eigenvalues(assemble_sl(edge, 4 * n0), count);
  SlRichardson r;
  for (int i = 0; i < count; ++i) {
    const double r1 = (4.0 * b[i] - a[i]) / 3.0;
    const double r2 = (4.0 * c[i] - b[i]) / 3.0;
    r.value.push_back(r2);
    r.spread.push_back(std::abs(r2 - r1));
  }
  return r;
}

std::vector<double> resolvent_apply(const WeightedSlSystem& sys, const std::vector<double>& f) {
  if (static_cast<int>(f.size()) != sys.n) throw std::invalid_argument("operator: size mismatch");
  std::vector<double> d(sys.n), o(sys.n - 1), r(sys.n);
  for (int i = 0; i < sys.n; ++i) {
    double k = 0.0;
    if (i > 0) k += sys.stiffness[i - 1];
    if (i + 1 < sys.n) k += sys.stiffness[i];
    d[i] = k + sys.mass[i];
    r[i] = sys.mass[i] * f[i];
  }
  for (int i = 0; i + 1 < sys.n; ++i) o[i] = -sys.stiffness[i];
  return solve_tridiagonal(std::move(d), std::move(o), std::move(r));
}

double singular_resolvent_apply(double c) { return c; }

double apply_T0(const DomainSkeleton& sk, const SkeletonFunction& F, Point2 p) {
  const TauCoords t = sk.locate(p);
  return F[t.edge].value(t.sigma);
}

SkeletonFunction apply_T0_star(const DomainSkeleton& sk, const SkeletonSpace& sp, FieldFn g) {
  std::vector<int> all(sk.edges().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return apply_T0_star(sk, sp, std::move(g), all);
}

SkeletonFunction apply_T0_star(const DomainSkeleton& sk, const SkeletonSpace& sp, FieldFn g,
                               const std::vector<int>& edge_ids) {
  const auto& edges = sk.edges();
  std::vector<EdgeFunction> parts(edges.size());
  for (int id : edge_ids) {
    const SkeletonEdge& e = edges.at(id);
    if (e.singular()) {
      auto inner = [&](double sigma) {
        return fiber_integral(e, sigma, [&](Point2 p, double) { return g(p); });
      };
      parts[e.id].constant = integrate(inner, 0.0, e.length(), 1e-11, 15) / sp.mass(e.id);
      continue;
    }
    const SkeletonEdge ec = e;
    parts[e.id].f = [ec, g](double sigma) {
      const double a = ec.alpha_closed(sigma);
      if (a <= 0.0) return g(ec.point(sigma));
      return fiber_integral(ec, sigma, [&](Point2 p, double) { return g(p); }) / a;
    };
    parts[e.id].breaks = {0.0, e.length()};
  }
  return SkeletonFunction(std::move(parts));
}

namespace {

// Cartesian integral of h(p, clearance) over the region box of a regular edge,
// where clearance is the distance from p to the box boundary and to any line
// where tau changes formula; G2 boxes are split along that anti-diagonal
template <class H>
double box_integral(const SkeletonEdge& e, H&& h) {
  const Box b = e.region_box();
  auto edge_dist = [&](Point2 p) {
    return std::min({p.x - b.x_lo, b.x_hi - p.x, p.y - b.y_lo, b.y_hi - p.y});
  };
  if (e.group() != EdgeGroup::G2_diagonal) {
    auto outer = [&](double y) {
      auto inner = [&](double x) { return h(Point2{x, y}, edge_dist({x, y})); };
      return integrate_fixed(inner, b.x_lo, b.x_hi, 8);
    };
    return integrate_fixed(outer, b.y_lo, b.y_hi, 4);
  }
  const CornerGeometry& g = e.chart();
  auto outer = [&](double yc) {
    const double kink = 0.5 * g.h - yc;  // chart x of the diagonal at this height
    auto inner = [&](double xc) {
      const Point2 p = e.from_chart({xc, yc});
      const double dk = std::abs(xc - kink) / kSqrt2;
      return h(p, std::min(edge_dist(p), dk));
    };
    if (kink > 0.0 && kink < g.bx())
      return integrate_fixed(inner, 0.0, kink, 4) + integrate_fixed(inner, kink, g.bx(), 4);
    return integrate_fixed(inner, 0.0, g.bx(), 8);
  };
  return integrate_fixed(outer, 0.5 * g.delta, 0.5 * g.h, 8);
}

}  // namespace

IsometryReport check_isometry(const DomainSkeleton& sk, const SkeletonSpace& sp,
                              const SkeletonFunction& F, const std::vector<int>& edge_ids) {
  IsometryReport r;
  for (int id : edge_ids) {
    const SkeletonEdge& e = sk.edge(id);
    const EdgeFunction& ef = F[id];
    if (e.singular()) {
      auto inner = [&](double sigma) {
        return fiber_integral(e, sigma, [&](Point2, double) { return ef.constant * ef.constant; });
      };
      r.l2_lhs += integrate(inner, 0.0, e.length(), 1e-12, 15);
      r.l2_rhs += ef.constant * ef.constant * sp.mass(id);
      continue;
    }
    const Box b = e.region_box();
    const double max_step = 1e-3 * std::min(b.x_hi - b.x_lo, b.y_hi - b.y_lo);
    auto T0F = [&](Point2 p) { return apply_T0(sk, F, p); };
    r.l2_lhs += box_integral(e, [&](Point2 p, double) {
      const double v = T0F(p);
      return v * v;
    });
    r.h1_lhs += box_integral(e, [&](Point2 p, double clearance) {
      // fourth-order central differences that stay on one side of every kink
      const double step = std::min(max_step, 0.25 * clearance);
      auto diff = [&](double dx, double dy) {
        auto at = [&](double k) { return T0F({p.x + k * dx, p.y + k * dy}); };
        return (8.0 * (at(1.0) - at(-1.0)) - (at(2.0) - at(-2.0))) / (12.0 * step);
      };
      const double gx = diff(step, 0.0);
      const double gy = diff(0.0, step);
      return gx * gx + gy * gy;
    });
    auto l2 = [&](double s) { return ef.value(s) * ef.value(s) * e.alpha_closed(s); };
    auto h1 = [&](double s) { return ef.df(s) * ef.df(s) * e.weights(s).beta; };
    const auto panels = panels_for(e.length(), ef, ef);
    r.l2_rhs += integrate_panels(l2, panels);
    r.h1_rhs += integrate_panels(h1, panels);
  }
  r.l2_defect = std::abs(r.l2_lhs - r.l2_rhs);
  r.h1_defect = std::abs(r.h1_lhs - r.h1_rhs);
  return r;
}

double t0_star_t0_defect(const DomainSkeleton& sk, const SkeletonSpace& sp,
                         const SkeletonFunction& F, const std::vector<int>& edge_ids,
                         int samples) {
  const SkeletonFunction back =
      apply_T0_star(sk, sp, [&](Point2 p) { return apply_T0(sk, F, p); }, edge_ids);
  double worst = 0.0;
  for (int id : edge_ids) {
    const SkeletonEdge& e = sk.edge(id);
    if (e.singular()) {
      worst = std::max(worst, std::abs(back[id].constant - F[id].constant));
      continue;
    }
    for (int k = 0; k < samples; ++k) {
      const double sigma = (k + 0.5) / samples * e.length();
      worst = std::max(worst, std::abs(back[id].value(sigma) - F[id].value(sigma)));
    }
  }
  return worst;
}

double ZeroMode::operator()(const DomainSkeleton& sk, Point2 p) const {
  return sk.locate(p).edge == edge ? value : 0.0;
}

std::vector<ZeroMode> zero_modes(const DomainSkeleton& sk, int n) {
  std::vector<int> ids = sk.singular_edges();
  if (static_cast<int>(ids.size()) < n) {
    for (int r : sk.regular_edges()) ids.push_back(r);
  }
  if (n < 0 || n > static_cast<int>(ids.size()))
    throw std::invalid_argument("operator: only " + std::to_string(ids.size()) +
                                " edges available for zero modes");
  std::vector<ZeroMode> out;
  for (int i = 0; i < n; ++i) {
    ZeroMode z;
    z.edge = ids[i];
    z.area = sk.edge(ids[i]).region_area();
    z.value = 1.0 / std::sqrt(z.area);
    out.push_back(z);
  }
  return out;
}

Point2 sigma_gradient(const SkeletonEdge& e, double, double s) {
  switch (e.group()) {
    case EdgeGroup::G1_room:
    case EdgeGroup::G1_passage:
      return {1.0, 0.0};
    case EdgeGroup::G2_diagonal:
      if (s < 0.0) return {0.0, -kSqrt2 * e.y_dir()};
      return {kSqrt2 * e.x_dir(), 0.0};
    default:
      throw std::invalid_argument("operator: sigma gradient requested on a singular edge");
  }
}

T1Diagnostic t1_projection_defect(const DomainSkeleton& sk, int edge, FieldFn g,
                                  std::function<Point2(Point2)> grad_g, int n) {
  const SkeletonEdge& e = sk.edge(edge);
  if (e.singular()) throw std::invalid_argument("operator: T1 diagnostic needs a regular edge");
  if (n < 2) throw std::invalid_argument("operator: need at least 2 elements");
  const double L = e.length();
  const double dx = L / n;
  std::vector<double> d(n + 1, 0.0), o(n, 0.0), rhs(n + 1, 0.0);
  auto G1 = [&](double sigma) {
    return fiber_integral(e, sigma, [&](Point2 p, double) { return g(p); });
  };
  auto G2 = [&](double sigma) {
    return fiber_integral(e, sigma, [&](Point2 p, double s) {
      const Point2 gg = grad_g(p);
      const Point2 gs = sigma_gradient(e, sigma, s);
      return gg.x * gs.x + gg.y * gs.y;
    });
  };
  for (int k = 0; k < n; ++k) {
    const double a = k * dx, b = a + dx;
    auto w = [&](double s, int which) {  // P1 shape functions on [a, b]
      return which == 0 ? (b - s) / dx : (s - a) / dx;
    };
    const double dw[2] = {-1.0 / dx, 1.0 / dx};
    for (int i = 0; i < 2; ++i) {
      for (int j = i; j < 2; ++j) {
        const double v = Gauss16::integrate(
            [&](double s) {
              return e.weights(s).beta * dw[i] * dw[j] + e.alpha_closed(s) * w(s, i) * w(s, j);
            },
            a, b);
        if (i == j)
          d[k + i] += v;
        else
          o[k] += v;
      }
      rhs[k + i] += Gauss16::integrate(
          [&](double s) { return w(s, i) * G1(s) + dw[i] * G2(s); }, a, b);
    }
  }
  T1Diagnostic out;
  out.nodal = solve_tridiagonal(d, o, rhs);
  const std::vector<double> u = out.nodal;
  auto proj = [&](double sigma) {
    const int k = std::clamp(static_cast<int>(sigma / dx), 0, n - 1);
    const double t = (sigma - k * dx) / dx;
    return (1.0 - t) * u[k] + t * u[k + 1];
  };
  double num = 0.0, den = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = k * dx, b = a + dx;
    num += Gauss16::integrate(
        [&](double sigma) {
          const double ps = proj(sigma);
          return fiber_integral(e, sigma, [&](Point2 p, double) {
            const double r = ps - g(p);
            return r * r;
          });
        },
        a, b);
    den += Gauss16::integrate(
        [&](double sigma) {
          return fiber_integral(e, sigma, [&](Point2 p, double) { return g(p) * g(p); });
        },
        a, b);
  }
  out.rel_defect = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return out;
}

nlohmann::json to_json(const IsometryReport& r) {
  return {{"l2_lhs", r.l2_lhs}, {"l2_rhs", r.l2_rhs}, {"l2_defect", r.l2_defect},
          {"h1_lhs", r.h1_lhs}, {"h1_rhs", r.h1_rhs}, {"h1_defect", r.h1_defect}};
}

}  // namespace rpspec
