#pragma once

#include <functional>
#include <vector>

#include "json.hpp"
#include "rpspec/skeleton.hpp"

namespace rpspec {

using ScalarFn = std::function<double(double)>;
using FieldFn = std::function<double(Point2)>;

/// Function on one edge: a callable in sigma on regular edges, one number on
/// singular edges. `breaks` are panel boundaries used for quadrature (kinks of
/// piecewise-defined data must appear there).
struct EdgeFunction {
  double constant{0.0};
  ScalarFn f;
  ScalarFn df;
  std::vector<double> breaks;

  double value(double sigma) const { return f ? f(sigma) : constant; }
};

/// Element of the weighted space over a list of skeleton edges (indexed by id).
class SkeletonFunction {
 public:
  SkeletonFunction() = default;
  explicit SkeletonFunction(std::vector<EdgeFunction> parts) : parts_(std::move(parts)) {}

  static SkeletonFunction constant(const std::vector<SkeletonEdge>& edges, double c);
  /// Polynomial coeffs[e] (ascending powers of sigma) on regular edges, the
  /// constant term on singular edges.
  static SkeletonFunction polynomial(const std::vector<SkeletonEdge>& edges,
                                     const std::vector<std::vector<double>>& coeffs);
  /// Piecewise-linear interpolant of nodal values on a uniform grid of one edge;
  /// other edges are zero.
  static SkeletonFunction grid(const std::vector<SkeletonEdge>& edges, int edge,
                               const std::vector<double>& nodal);

  std::size_t size() const { return parts_.size(); }
  const EdgeFunction& operator[](std::size_t e) const { return parts_.at(e); }
  EdgeFunction& operator[](std::size_t e) { return parts_.at(e); }

 private:
  std::vector<EdgeFunction> parts_;
};

/// Edge list plus the cached alpha-masses of singular edges.
class SkeletonSpace {
 public:
  explicit SkeletonSpace(std::vector<SkeletonEdge> edges);

  const std::vector<SkeletonEdge>& edges() const { return edges_; }
  /// int_e alpha dsigma (quadrature, cached once).
  double mass(int e) const { return mass_.at(e); }

 private:
  std::vector<SkeletonEdge> edges_;
  std::vector<double> mass_;
};

double l2_inner(const SkeletonSpace& sp, const SkeletonFunction& f, const SkeletonFunction& g);
double h1_inner(const SkeletonSpace& sp, const SkeletonFunction& f, const SkeletonFunction& g);

/// Finite-volume discretization of -(1/alpha)(beta u')' on one regular edge:
/// n cells, beta at faces, alpha at cell midpoints, no flux at both ends.
struct WeightedSlSystem {
  int edge{-1};
  EdgeGroup group{EdgeGroup::G1_room};
  double length{0.0};
  int n{0};
  std::vector<double> mass;       // alpha(mid) * dx per cell
  std::vector<double> stiffness;  // beta(face)/dx for the n-1 interior faces

  /// (K u)_i for the stiffness matrix.
  std::vector<double> apply_stiffness(const std::vector<double>& u) const;
  /// Discrete H_Gamma u = M^{-1} K u.
  std::vector<double> apply(const std::vector<double>& u) const;
  double weighted_inner(const std::vector<double>& u, const std::vector<double>& v) const;
  /// Cell midpoints.
  std::vector<double> nodes() const;
};

WeightedSlSystem assemble_sl(const SkeletonEdge& edge, int n);
/// Lowest eigenvalues of M^{-1}K by Sturm bisection (high relative accuracy).
std::vector<double> sl_eigenvalues(const WeightedSlSystem& sys, int count);
/// Same through a dense tridiagonal eigensolve (absolute accuracy eps*|K|).
std::vector<double> sl_eigenvalues_dense(const WeightedSlSystem& sys, int count);

/// Richardson value (4 lambda_2n - lambda_n)/3 from the sequence n, 2n, 4n and
/// the spread between the two extrapolants.
struct SlRichardson {
  std::vector<double> value;
  std::vector<double> spread;
};
SlRichardson sl_richardson(const SkeletonEdge& edge, int n0, int count);

/// (H_Gamma + I)^{-1} on a regular edge for cell data f.
std::vector<double> resolvent_apply(const WeightedSlSystem& sys, const std::vector<double>& f);
/// The singular-edge block of (H_Gamma + I)^{-1}: H_Gamma vanishes there, so the
/// block maps the constant c to c.
double singular_resolvent_apply(double c);

/// T0 F = F o tau at a point of the domain.
double apply_T0(const DomainSkeleton& sk, const SkeletonFunction& F, Point2 p);
/// T0* g by fiber quadrature (regular edges) or region mean (singular edges).
SkeletonFunction apply_T0_star(const DomainSkeleton& sk, const SkeletonSpace& sp, FieldFn g);
/// Same restricted to `edge_ids`; other edges are left zero.
SkeletonFunction apply_T0_star(const DomainSkeleton& sk, const SkeletonSpace& sp, FieldFn g,
                               const std::vector<int>& edge_ids);

struct IsometryReport {
  double l2_lhs{0.0}, l2_rhs{0.0}, l2_defect{0.0};
  double h1_lhs{0.0}, h1_rhs{0.0}, h1_defect{0.0};
};

/// Compares ||T0 F|| on the regions of `edge_ids` (Cartesian quadrature through
/// locate) with ||F|| in the weighted space, and the gradient energy of F o tau
/// with sum int |F'|^2 beta. Singular edges enter through their (sigma,s) chart.
IsometryReport check_isometry(const DomainSkeleton& sk, const SkeletonSpace& sp,
                              const SkeletonFunction& F, const std::vector<int>& edge_ids);

/// max over sampled sigma of |T0* T0 F - F| on the given edges.
double t0_star_t0_defect(const DomainSkeleton& sk, const SkeletonSpace& sp,
                         const SkeletonFunction& F, const std::vector<int>& edge_ids,
                         int samples = 9);

/// Normalized indicator of tau^{-1}(e).
struct ZeroMode {
  int edge{-1};
  double value{0.0};  // 1/sqrt(|tau^{-1}(e)|)
  double area{0.0};

  double operator()(const DomainSkeleton& sk, Point2 p) const;
  double norm_squared() const { return value * value * area; }
};

/// n modes from distinct singular edges (falling back to regular edges when
/// there are fewer singular ones). Throws if n exceeds the edge count.
std::vector<ZeroMode> zero_modes(const DomainSkeleton& sk, int n);

/// Gradient of sigma in global coordinates on a regular edge region.
Point2 sigma_gradient(const SkeletonEdge& e, double sigma, double s);

/// Diagnostic for T1 T1* - I on one regular edge: T1* g is the P1 finite
/// element solution on n elements of the H1-adjoint equation; returns
/// ||T1 T1* g - g|| / ||g|| over the edge region (L2, fiber quadrature).
struct T1Diagnostic {
  double rel_defect{0.0};
  std::vector<double> nodal;  // T1* g at the n+1 nodes
};
T1Diagnostic t1_projection_defect(const DomainSkeleton& sk, int edge, FieldFn g,
                                  std::function<Point2(Point2)> grad_g, int n);

nlohmann::json to_json(const IsometryReport& r);

}  // namespace rpspec
