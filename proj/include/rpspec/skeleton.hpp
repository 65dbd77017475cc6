#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rpspec/domain.hpp"

namespace rpspec {

/// Local chart around one re-entrant corner: the room wall is x = 0, the room
/// extends to x > 0, the corner A sits at (0, delta/2) and the top wall at
/// y = h/2. delta = 0 stands for a closed room end (no corner).
struct CornerGeometry {
  double h{1.0};
  double delta{0.25};

  double bx() const { return (h - delta) / 2.0; }  // end of the diagonal, B = (bx, delta/2)
  double ex() const;                                // parabola x-intercept E
  void validate() const;
};

/// Parabolic edge y0 = -x0^2/(h-delta) + (h+delta)/4.
double parabola_y(double x0, const CornerGeometry& g);
/// sqrt(h^2 - delta^2)/2.
double parabola_x_intercept(const CornerGeometry& g);
/// Arc length along the parabola from B to the point with t0 = 2 x0/(h-delta).
double arclength(double t0, const CornerGeometry& g);
/// Inverse of arclength (Newton on the monotone closed form).
double t0_from_arclength(double sigma, const CornerGeometry& g);
/// Length |BE| of the parabolic edge.
double parabolic_edge_length(const CornerGeometry& g);

struct TauLocal {
  double sigma{0.0};
  double s{0.0};
  double t0{0.0};
};

/// (sigma, s) for a point between the corner and the parabolic edge. s > 0 on
/// the corner side. Throws std::domain_error for x <= 0.
TauLocal tau_parabolic(double x, double y, const CornerGeometry& g);

struct JacobianValue {
  double value{0.0};
  bool infinite{false};
};

/// |d(sigma,s)/d(x,y)| = 1/J in Cartesian form; infinite at the corner.
JacobianValue jacobian_inv(double x, double y, const CornerGeometry& g);
/// Same quantity with x = r cos(theta), y = delta/2 - r sin(theta).
JacobianValue jacobian_inv_polar(double r, double theta, const CornerGeometry& g);

enum class EdgeGroup { G1_room, G1_passage, G2_diagonal, G3_parabolic, G3_segment };

const char* to_string(EdgeGroup g);

struct WeightValue {
  double alpha{0.0};
  double beta{0.0};
  bool divergent{false};  // beta is a truncated value of a divergent integral
};

struct Box {
  double x_lo{0.0}, x_hi{0.0}, y_lo{0.0}, y_hi{0.0};
  double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
};

/// One skeleton edge with its parametrization by arc length sigma in
/// [0, length] and its fibers s in [-l(sigma), l(sigma)].
///
/// G2 and G3 edges live in a corner chart: x_chart = x_dir * (X - wall_x),
/// y_chart = y_dir * Y. G1 edges use sigma = X - wall_x, s = Y.
class SkeletonEdge {
 public:
  static SkeletonEdge g1(EdgeGroup group, double x_start, double length, double height, int piece);
  static SkeletonEdge corner_edge(EdgeGroup group, const CornerGeometry& g, double wall_x,
                                  int x_dir, int y_dir, int piece);

  int id{-1};
  int piece{0};  // 1-based piece index in the owning domain (0 when standalone)

  EdgeGroup group() const { return group_; }
  bool singular() const {
    return group_ == EdgeGroup::G3_parabolic || group_ == EdgeGroup::G3_segment;
  }
  double length() const { return length_; }
  const CornerGeometry& chart() const { return geom_; }
  double height() const { return height_; }  // G1 strip height (h or delta)
  double wall_x() const { return wall_x_; }
  int x_dir() const { return x_dir_; }
  int y_dir() const { return y_dir_; }

  Point2 point(double sigma) const;
  double fiber_halflength(double sigma) const;
  /// Point at signed fiber distance s from point(sigma).
  Point2 fiber_point(double sigma, double s) const;
  /// J = |d(x,y)/d(sigma,s)| = 1/|grad tau| from the fiber geometry.
  double jacobian(double sigma, double s) const;

  /// alpha(sigma): closed form on G1/G2, adaptive fiber quadrature on G3.
  double alpha(double sigma) const;
  /// Fiber quadrature of J with a fixed composite Gauss rule.
  double alpha_quadrature(double sigma, int panels) const;
  /// Closed-form alpha where one is known (all groups).
  double alpha_closed(double sigma) const;
  /// alpha and beta; G3 requires eps (distance from the corner at which the
  /// fiber integral of |grad tau| is truncated) and flags the divergence.
  WeightValue weights(double sigma, std::optional<double> eps = std::nullopt) const;

  /// |tau^{-1}(e)| from the region geometry.
  double region_area() const;
  /// Axis-aligned region for G1 and G2 edges (global coordinates).
  Box region_box() const;

  Point2 to_chart(Point2 p) const;
  Point2 from_chart(Point2 q) const;

 private:
  EdgeGroup group_{EdgeGroup::G1_room};
  CornerGeometry geom_{};
  double height_{0.0};
  double wall_x_{0.0};
  int x_dir_{1};
  int y_dir_{1};
  double length_{0.0};
};

/// Edge ids attached to one side of a room (-1 where absent).
struct RoomSideEdges {
  int diag[2]{-1, -1};      // upper, lower
  int parabola[2]{-1, -1};  // upper, lower
  int segment{-1};
};

/// Edges of one room with walls at x0 and x0 + h. delta = 0 marks a closed end.
/// Throws std::invalid_argument if a delta is negative or >= h, or if the
/// two corner regions would overlap.
std::vector<SkeletonEdge> build_room_skeleton(double h, double delta_left, double delta_right,
                                              double x0 = 0.0, int piece = 0);

struct TauCoords {
  int edge{-1};
  double sigma{0.0};
  double s{0.0};
};

class DomainSkeleton {
 public:
  explicit DomainSkeleton(const RpDomain& domain);

  const RpDomain& domain() const { return domain_; }
  const std::vector<SkeletonEdge>& edges() const { return edges_; }
  const SkeletonEdge& edge(int id) const { return edges_.at(id); }
  std::vector<int> regular_edges() const;
  std::vector<int> singular_edges() const;

  /// tau in (edge, sigma, s) form. Throws std::out_of_range outside the domain.
  TauCoords locate(Point2 p) const;

 private:
  struct RoomEntry {
    int piece{1};
    double x0{0.0};
    double h{0.0};
    double delta_left{0.0};
    double delta_right{0.0};
    RoomSideEdges left, right;
    int centre{-1};
  };

  TauCoords locate_side(const RoomSideEdges& side, double delta, double h, double xc,
                        double y) const;

  RpDomain domain_;
  std::vector<SkeletonEdge> edges_;
  std::vector<RoomEntry> rooms_;
  std::vector<int> piece_room_;     // piece index -> rooms_ slot or -1
  std::vector<int> passage_edge_;   // piece index -> edge id for passages or -1
};

nlohmann::json skeleton_to_json(const std::vector<SkeletonEdge>& edges, int samples = 17);

}  // namespace rpspec
