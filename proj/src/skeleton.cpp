#include "rpspec/skeleton.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rpspec/quadrature.hpp"

namespace rpspec {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double arclength_unchecked(double t0, const CornerGeometry& g) {
  return 0.25 * (g.h - g.delta) *
         (t0 * std::sqrt(t0 * t0 + 1.0) + std::asinh(t0) - kSqrt2 - std::asinh(1.0));
}

// fiber integral of 1/J on the corner side, truncated eps away from the corner;
// the substitution s = l - e^u removes the 1/(l - s) growth
template <class InvJ>
double truncated_corner_integral(InvJ&& inv_j, double l, double eps) {
  if (eps >= l) return 0.0;
  auto f = [&](double u) {
    const double d = std::exp(u);
    return inv_j(l - d) * d;
  };
  return integrate(f, std::log(eps), std::log(l), 1e-12);
}

}  // namespace

double CornerGeometry::ex() const { return parabola_x_intercept(*this); }

void CornerGeometry::validate() const {
  if (!(h > 0.0)) throw std::invalid_argument("skeleton: room height must be positive");
  if (!(delta >= 0.0 && delta < h))
    throw std::invalid_argument("skeleton: need 0 <= delta < h, got delta=" +
                                std::to_string(delta) + ", h=" + std::to_string(h));
}

double parabola_y(double x0, const CornerGeometry& g) {
  return -x0 * x0 / (g.h - g.delta) + 0.25 * (g.h + g.delta);
}

double parabola_x_intercept(const CornerGeometry& g) {
  return 0.5 * std::sqrt(g.h * g.h - g.delta * g.delta);
}

double arclength(double t0, const CornerGeometry& g) {
  if (t0 < 1.0) throw std::domain_error("skeleton: arclength needs t0 >= 1");
  return arclength_unchecked(t0, g);
}

double t0_from_arclength(double sigma, const CornerGeometry& g) {
  if (sigma <= 0.0) return 1.0;
  const double w = g.h - g.delta;
  double t = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double f = arclength_unchecked(t, g) - sigma;
    const double df = 0.5 * w * std::sqrt(1.0 + t * t);
    const double step = f / df;
    t -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, t)) break;
  }
  return t;
}

double parabolic_edge_length(const CornerGeometry& g) {
  const double h = g.h, d = g.delta;
  return kSqrt2 / 4.0 * std::sqrt(h * (h + d)) - kSqrt2 / 4.0 * (h - d) +
         (h - d) / 4.0 * (std::asinh(std::sqrt((h + d) / (h - d))) - std::asinh(1.0));
}

TauLocal tau_parabolic(double x, double y, const CornerGeometry& g) {
  if (!(x > 0.0)) throw std::domain_error("skeleton: tau_parabolic needs x > 0");
  const double q = (0.5 * g.delta - y) / x;
  TauLocal t;
  t.t0 = q + std::sqrt(q * q + 1.0);
  t.s = -(t.t0 * t.t0 + 1.0) * (x - 0.5 * (g.h - g.delta) * t.t0) / (2.0 * t.t0);
  t.sigma = arclength_unchecked(t.t0, g);
  return t;
}

JacobianValue jacobian_inv(double x, double y, const CornerGeometry& g) {
  const double a = g.delta - 2.0 * y;
  const double rho = std::sqrt(a * a + 4.0 * x * x);
  const double den = rho - g.delta + 2.0 * y;
  if (rho == 0.0 || den <= 0.0) return {0.0, true};
  return {kSqrt2 * (g.h - g.delta) * std::sqrt(rho) / std::pow(den, 1.5), false};
}

JacobianValue jacobian_inv_polar(double r, double theta, const CornerGeometry& g) {
  const double one_minus = 1.0 - std::sin(theta);
  if (r <= 0.0 || one_minus <= 0.0) return {0.0, true};
  return {(g.h - g.delta) / (kSqrt2 * r * std::pow(one_minus, 1.5)), false};
}

const char* to_string(EdgeGroup g) {
  switch (g) {
    case EdgeGroup::G1_room: return "G1_room";
    case EdgeGroup::G1_passage: return "G1_passage";
    case EdgeGroup::G2_diagonal: return "G2_diagonal";
    case EdgeGroup::G3_parabolic: return "G3_parabolic";
    case EdgeGroup::G3_segment: return "G3_segment";
  }
  return "?";
}

SkeletonEdge SkeletonEdge::g1(EdgeGroup group, double x_start, double length, double height,
                              int piece) {
  if (group != EdgeGroup::G1_room && group != EdgeGroup::G1_passage)
    throw std::invalid_argument("skeleton: g1() builds Group 1 edges only");
  if (!(length > 0.0 && height > 0.0))
    throw std::invalid_argument("skeleton: Group 1 edge needs positive length and height");
  SkeletonEdge e;
  e.group_ = group;
  e.wall_x_ = x_start;
  e.length_ = length;
  e.height_ = height;
  e.piece = piece;
  return e;
}

SkeletonEdge SkeletonEdge::corner_edge(EdgeGroup group, const CornerGeometry& g, double wall_x,
                                       int x_dir, int y_dir, int piece) {
  g.validate();
  SkeletonEdge e;
  e.group_ = group;
  e.geom_ = g;
  e.wall_x_ = wall_x;
  e.x_dir_ = x_dir >= 0 ? 1 : -1;
  e.y_dir_ = y_dir >= 0 ? 1 : -1;
  e.height_ = g.h;
  e.piece = piece;
  switch (group) {
    case EdgeGroup::G2_diagonal:
      e.length_ = (g.h - g.delta) / kSqrt2;
      break;
    case EdgeGroup::G3_parabolic:
      if (g.delta <= 0.0) throw std::invalid_argument("skeleton: parabolic edge needs delta > 0");
      e.length_ = parabolic_edge_length(g);
      break;
    case EdgeGroup::G3_segment:
      if (g.delta <= 0.0) throw std::invalid_argument("skeleton: corner segment needs delta > 0");
      e.length_ = g.ex();
      e.y_dir_ = 1;
      break;
    default:
      throw std::invalid_argument("skeleton: corner_edge builds Group 2/3 edges only");
  }
  return e;
}

Point2 SkeletonEdge::to_chart(Point2 p) const {
  return {x_dir_ * (p.x - wall_x_), y_dir_ * p.y};
}

Point2 SkeletonEdge::from_chart(Point2 q) const {
  return {wall_x_ + x_dir_ * q.x, y_dir_ * q.y};
}

Point2 SkeletonEdge::point(double sigma) const { return fiber_point(sigma, 0.0); }

double SkeletonEdge::fiber_halflength(double sigma) const {
  const auto& g = geom_;
  switch (group_) {
    case EdgeGroup::G1_room:
    case EdgeGroup::G1_passage:
      return 0.5 * height_;
    case EdgeGroup::G2_diagonal:
      return sigma / kSqrt2;
    case EdgeGroup::G3_parabolic: {
      const double t = t0_from_arclength(sigma, g);
      return 0.25 * (g.h - g.delta) * (1.0 + t * t);
    }
    case EdgeGroup::G3_segment:
      return std::sqrt(sigma * sigma + 0.25 * g.delta * g.delta);
  }
  return 0.0;
}

Point2 SkeletonEdge::fiber_point(double sigma, double s) const {
  const auto& g = geom_;
  switch (group_) {
    case EdgeGroup::G1_room:
    case EdgeGroup::G1_passage:
      return {wall_x_ + sigma, s};
    case EdgeGroup::G2_diagonal: {
      const double c = sigma / kSqrt2;
      if (s <= 0.0) return from_chart({c + s, 0.5 * g.h - c});
      return from_chart({c, 0.5 * g.h - c + s});
    }
    case EdgeGroup::G3_parabolic: {
      const double t = t0_from_arclength(sigma, g);
      const double x0 = 0.5 * (g.h - g.delta) * t;
      const double y0 = parabola_y(x0, g);
      if (s < 0.0) return from_chart({x0, y0 - s});
      const double l = 0.25 * (g.h - g.delta) * (1.0 + t * t);
      return from_chart({x0 + s * (0.0 - x0) / l, y0 + s * (0.5 * g.delta - y0) / l});
    }
    case EdgeGroup::G3_segment: {
      const double l = fiber_halflength(sigma);
      const double cy = s >= 0.0 ? 0.5 * g.delta : -0.5 * g.delta;
      const double a = std::abs(s) / l;
      return from_chart({sigma * (1.0 - a), a * cy});
    }
  }
  return {};
}

double SkeletonEdge::jacobian(double sigma, double s) const {
  const auto& g = geom_;
  switch (group_) {
    case EdgeGroup::G1_room:
    case EdgeGroup::G1_passage:
      return 1.0;
    case EdgeGroup::G2_diagonal:
      return 1.0 / kSqrt2;
    case EdgeGroup::G3_parabolic: {
      const double t = t0_from_arclength(sigma, g);
      const double w = 1.0 + t * t;
      if (s < 0.0) return 1.0 / std::sqrt(w);
      const double l = 0.25 * (g.h - g.delta) * w;
      // distance to the corner times the turning rate of the fiber direction
      return (l - s) * 4.0 / ((g.h - g.delta) * std::pow(w, 1.5));
    }
    case EdgeGroup::G3_segment: {
      const double l = fiber_halflength(sigma);
      return (l - std::abs(s)) * 0.5 * g.delta / (l * l);
    }
  }
  return 0.0;
}

double SkeletonEdge::alpha_closed(double sigma) const {
  const auto& g = geom_;
  switch (group_) {
    case EdgeGroup::G1_room:
    case EdgeGroup::G1_passage:
      return height_;
    case EdgeGroup::G2_diagonal:
      return sigma;
    case EdgeGroup::G3_parabolic: {
      const double t = t0_from_arclength(sigma, g);
      return 0.375 * (g.h - g.delta) * std::sqrt(1.0 + t * t);
    }
    case EdgeGroup::G3_segment:
      return 0.5 * g.delta;
  }
  return 0.0;
}

double SkeletonEdge::alpha(double sigma) const {
  if (!singular()) return alpha_closed(sigma);
  const double l = fiber_halflength(sigma);
  if (group_ == EdgeGroup::G3_parabolic) {
    // corner side through the Cartesian Jacobian of the chart, wall side by J
    auto corner = [&](double s) {
      const Point2 q = to_chart(fiber_point(sigma, s));
      const JacobianValue ji = jacobian_inv(q.x, q.y, geom_);
      return ji.infinite ? 0.0 : 1.0 / ji.value;
    };
    auto wall = [&](double s) { return jacobian(sigma, s); };
    return integrate(corner, 0.0, l) + integrate(wall, -l, 0.0);
  }
  auto f = [&](double s) { return jacobian(sigma, s); };
  return integrate(f, -l, 0.0) + integrate(f, 0.0, l);
}

double SkeletonEdge::alpha_quadrature(double sigma, int panels) const {
  const double l = fiber_halflength(sigma);
  if (group_ == EdgeGroup::G3_parabolic) {
    auto corner = [&](double s) {
      const Point2 q = to_chart(fiber_point(sigma, s));
      const JacobianValue ji = jacobian_inv(q.x, q.y, geom_);
      return ji.infinite ? 0.0 : 1.0 / ji.value;
    };
    auto wall = [&](double s) { return jacobian(sigma, s); };
    return integrate_fixed(corner, 0.0, l, panels) + integrate_fixed(wall, -l, 0.0, panels);
  }
  auto f = [&](double s) { return jacobian(sigma, s); };
  return integrate_fixed(f, -l, 0.0, panels) + integrate_fixed(f, 0.0, l, panels);
}

WeightValue SkeletonEdge::weights(double sigma, std::optional<double> eps) const {
  WeightValue w;
  switch (group_) {
    case EdgeGroup::G1_room:
    case EdgeGroup::G1_passage:
      w.alpha = w.beta = height_;
      return w;
    case EdgeGroup::G2_diagonal:
      w.alpha = sigma;
      w.beta = 2.0 * sigma;
      return w;
    default:
      break;
  }
  if (!eps) throw std::invalid_argument("skeleton: beta on a Group 3 edge needs a truncation eps");
  if (!(*eps > 0.0)) throw std::invalid_argument("skeleton: truncation eps must be positive");
  w.alpha = alpha(sigma);
  w.divergent = true;
  const double l = fiber_halflength(sigma);
  if (group_ == EdgeGroup::G3_parabolic) {
    auto inv_j = [&](double s) {
      const Point2 q = to_chart(fiber_point(sigma, s));
      return jacobian_inv(q.x, q.y, geom_).value;
    };
    auto wall = [&](double s) { return 1.0 / jacobian(sigma, s); };
    w.beta = truncated_corner_integral(inv_j, l, *eps) + integrate(wall, -l, 0.0);
  } else {
    auto up = [&](double s) { return 1.0 / jacobian(sigma, s); };
    auto down = [&](double s) { return 1.0 / jacobian(sigma, -s); };
    w.beta = truncated_corner_integral(up, l, *eps) + truncated_corner_integral(down, l, *eps);
  }
  return w;
}

double SkeletonEdge::region_area() const {
  const auto& g = geom_;
  switch (group_) {
    case EdgeGroup::G1_room:
    case EdgeGroup::G1_passage:
      return length_ * height_;
    case EdgeGroup::G2_diagonal:
      return g.bx() * g.bx();
    case EdgeGroup::G3_parabolic: {
      // corner fan between AB, the arc and EA plus the strip above the arc
      const double ex = g.ex();
      return 0.5 * g.bx() * g.delta + 0.5 * (ex - g.bx()) * g.h - 0.25 * ex * g.delta;
    }
    case EdgeGroup::G3_segment:
      return 0.5 * g.ex() * g.delta;
  }
  return 0.0;
}

Box SkeletonEdge::region_box() const {
  if (group_ == EdgeGroup::G1_room || group_ == EdgeGroup::G1_passage)
    return {wall_x_, wall_x_ + length_, -0.5 * height_, 0.5 * height_};
  if (group_ == EdgeGroup::G2_diagonal) {
    const Point2 a = from_chart({0.0, 0.5 * geom_.delta});
    const Point2 b = from_chart({geom_.bx(), 0.5 * geom_.h});
    return {std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)};
  }
  throw std::logic_error("skeleton: Group 3 regions are not boxes");
}

namespace {

RoomSideEdges add_side(std::vector<SkeletonEdge>& out, double h, double delta, double wall_x,
                       int x_dir, int piece) {
  RoomSideEdges ids;
  const CornerGeometry g{h, delta};
  for (int k = 0; k < 2; ++k) {
    ids.diag[k] = static_cast<int>(out.size());
    out.push_back(SkeletonEdge::corner_edge(EdgeGroup::G2_diagonal, g, wall_x, x_dir,
                                            k == 0 ? 1 : -1, piece));
  }
  if (delta > 0.0) {
    for (int k = 0; k < 2; ++k) {
      ids.parabola[k] = static_cast<int>(out.size());
      out.push_back(SkeletonEdge::corner_edge(EdgeGroup::G3_parabolic, g, wall_x, x_dir,
                                              k == 0 ? 1 : -1, piece));
    }
    ids.segment = static_cast<int>(out.size());
    out.push_back(SkeletonEdge::corner_edge(EdgeGroup::G3_segment, g, wall_x, x_dir, 1, piece));
  }
  return ids;
}

double side_extent(double h, double delta) {
  return delta > 0.0 ? parabola_x_intercept({h, delta}) : 0.5 * h;
}

// appends a room's edges; returns the centre edge id or -1
int add_room(std::vector<SkeletonEdge>& out, double h, double dl, double dr, double x0, int piece,
             RoomSideEdges& left, RoomSideEdges& right) {
  CornerGeometry{h, dl}.validate();
  CornerGeometry{h, dr}.validate();
  const double el = side_extent(h, dl);
  const double er = side_extent(h, dr);
  const double centre = h - el - er;
  if (centre < -1e-14 * h)
    throw std::invalid_argument("skeleton: corner regions overlap in room of side " +
                                std::to_string(h) + " (E_left + E_right > h)");
  left = add_side(out, h, dl, x0, 1, piece);
  int c = -1;
  if (centre > 1e-14 * h) {
    c = static_cast<int>(out.size());
    out.push_back(SkeletonEdge::g1(EdgeGroup::G1_room, x0 + el, centre, h, piece));
  }
  right = add_side(out, h, dr, x0 + h, -1, piece);
  return c;
}

}  // namespace

std::vector<SkeletonEdge> build_room_skeleton(double h, double delta_left, double delta_right,
                                              double x0, int piece) {
  std::vector<SkeletonEdge> out;
  RoomSideEdges l, r;
  add_room(out, h, delta_left, delta_right, x0, piece, l, r);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

DomainSkeleton::DomainSkeleton(const RpDomain& domain) : domain_(domain) {
  const auto pieces = domain_.pieces();
  const int n = static_cast<int>(pieces.size());
  piece_room_.assign(n + 1, -1);
  passage_edge_.assign(n + 1, -1);
  for (int i = 1; i <= n; ++i) {
    const Piece& pc = pieces[i - 1];
    if (pc.kind == PieceKind::passage) {
      passage_edge_[i] = static_cast<int>(edges_.size());
      edges_.push_back(
          SkeletonEdge::g1(EdgeGroup::G1_passage, pc.x_lo, pc.width(), pc.height(), i));
      continue;
    }
    RoomEntry r;
    r.piece = i;
    r.x0 = pc.x_lo;
    r.h = pc.width();
    r.delta_left = i > 1 ? pieces[i - 2].height() : 0.0;
    r.delta_right = i < n ? pieces[i].height() : 0.0;
    r.centre = add_room(edges_, r.h, r.delta_left, r.delta_right, r.x0, i, r.left, r.right);
    piece_room_[i] = static_cast<int>(rooms_.size());
    rooms_.push_back(r);
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) edges_[i].id = static_cast<int>(i);
}

std::vector<int> DomainSkeleton::regular_edges() const {
  std::vector<int> v;
  for (const auto& e : edges_)
    if (!e.singular()) v.push_back(e.id);
  return v;
}

std::vector<int> DomainSkeleton::singular_edges() const {
  std::vector<int> v;
  for (const auto& e : edges_)
    if (e.singular()) v.push_back(e.id);
  return v;
}

TauCoords DomainSkeleton::locate_side(const RoomSideEdges& side, double delta, double h,
                                      double xc, double y) const {
  const int k = y >= 0.0 ? 0 : 1;
  const double ya = std::abs(y);
  const CornerGeometry g{h, delta};
  auto diagonal = [&]() -> TauCoords {
    const double s = xc + ya - 0.5 * h;
    const double sigma = s < 0.0 ? kSqrt2 * (0.5 * h - ya) : kSqrt2 * xc;
    return {side.diag[k], sigma, s};
  };
  if (delta <= 0.0) return diagonal();
  if (ya >= 0.5 * delta && xc <= g.bx()) return diagonal();
  if (xc >= g.bx() && ya >= parabola_y(xc, g)) {
    const double t0 = 2.0 * xc / (h - delta);
    return {side.parabola[k], arclength_unchecked(t0, g), -(ya - parabola_y(xc, g))};
  }
  const double ex = g.ex();
  if (ya * ex > 0.5 * delta * (ex - xc)) {
    const TauLocal t = tau_parabolic(xc, ya, g);
    return {side.parabola[k], t.sigma, t.s};
  }
  const double sigma = xc * 0.5 * delta / (0.5 * delta - ya);
  const double dist = std::hypot(sigma - xc, ya);
  return {side.segment, sigma, y >= 0.0 ? dist : -dist};
}

TauCoords DomainSkeleton::locate(Point2 p) const {
  const auto pieces = domain_.pieces();
  for (const Piece& pc : pieces) {
    if (p.x < pc.x_lo || p.x > pc.x_hi || std::abs(p.y) > pc.half_height) continue;
    if (pc.kind == PieceKind::passage) return {passage_edge_[pc.index], p.x - pc.x_lo, p.y};
    const RoomEntry& r = rooms_[piece_room_[pc.index]];
    const double xl = p.x - r.x0;
    const double el = side_extent(r.h, r.delta_left);
    const double er = side_extent(r.h, r.delta_right);
    if (xl <= el) return locate_side(r.left, r.delta_left, r.h, xl, p.y);
    if (xl >= r.h - er) return locate_side(r.right, r.delta_right, r.h, r.h - xl, p.y);
    return {r.centre, xl - el, p.y};
  }
  throw std::out_of_range("skeleton: point outside the domain");
}

nlohmann::json skeleton_to_json(const std::vector<SkeletonEdge>& edges, int samples) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : edges) {
    nlohmann::json je;
    je["id"] = e.id;
    je["piece"] = e.piece;
    je["group"] = to_string(e.group());
    je["length"] = e.length();
    je["singular"] = e.singular();
    je["region_area"] = e.region_area();
    nlohmann::json poly = nlohmann::json::array();
    nlohmann::json sig = nlohmann::json::array();
    nlohmann::json al = nlohmann::json::array();
    nlohmann::json be = nlohmann::json::array();
    for (int i = 0; i < samples; ++i) {
      const double s = e.length() * i / (samples - 1);
      const Point2 q = e.point(s);
      poly.push_back({q.x, q.y});
      sig.push_back(s);
      al.push_back(e.alpha(s));
      if (!e.singular()) be.push_back(e.weights(s).beta);
    }
    je["polyline"] = poly;
    je["sigma"] = sig;
    je["alpha"] = al;
    if (e.singular())
      je["beta"] = "divergent";
    else
      je["beta"] = be;
    out.push_back(je);
  }
  return out;
}

}  // namespace rpspec
