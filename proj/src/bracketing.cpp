#include "rpspec/bracketing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rpspec {

const char* to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::neumann ? "neumann" : "dirichlet";
}

BoundaryCondition boundary_condition_from_string(const std::string& s) {
  if (s == "neumann" || s == "N") return BoundaryCondition::neumann;
  if (s == "dirichlet" || s == "D") return BoundaryCondition::dirichlet;
  throw std::invalid_argument("bracketing: unknown boundary condition '" + s + "'");
}

double RoomPartition::regions_area() const {
  double s = 0.0;
  for (const auto& r : regions) s += r.area();
  return s;
}

namespace {

void require_odd(int j, int min_j) {
  if (j % 2 == 0 || j < min_j)
    throw std::domain_error("bracketing: room index must be odd and >= " +
                            std::to_string(min_j) + ", got " + std::to_string(j));
}

}  // namespace

RoomPartition room_partition(const DomainParams& p, int j) {
  require_odd(j, 3);
  const double a = p.h(j) / 2.0;
  const double d_left = p.k * std::pow(p.C, p.alpha * (j - 1));
  const double d_right = p.k * std::pow(p.C, p.alpha * (j + 1));
  const double b_outer = (p.h(j) - d_left) / 4.0;
  const double b_step = (d_left - d_right) / 4.0;
  const double b_mid = d_right / 2.0;
  RoomPartition part;
  part.j = j;
  part.room_area = p.h(j) * p.h(j);
  part.regions = {
      {a, b_outer, Bc1d::NN, Bc1d::DN},  // I
      {a, b_step, Bc1d::DN, Bc1d::DD},   // II
      {a, b_mid, Bc1d::DD, Bc1d::DD},    // III
      {a, b_step, Bc1d::DN, Bc1d::DD},   // IV
      {a, b_outer, Bc1d::NN, Bc1d::DN},  // V
  };
  return part;
}

RoomPartition first_room_partition(const DomainParams& p) {
  const double a = p.C / 2.0;
  const double d = p.k * std::pow(p.C, 2.0 * p.alpha);
  RoomPartition part;
  part.j = 1;
  part.room_area = p.C * p.C;
  part.regions = {
      {a, (p.C - d) / 4.0, Bc1d::NN, Bc1d::DN},  // I
      {a, d / 2.0, Bc1d::DN, Bc1d::DD},          // II
      {a, (p.C - d) / 4.0, Bc1d::NN, Bc1d::DN},  // III
  };
  return part;
}

Count room_lower_count(const DomainParams& p, int j, double lambda) {
  Count n = 0;
  for (const auto& r : room_partition(p, j).regions) n += count_exact(r, lambda);
  return n;
}

Count room_upper_count(const DomainParams& p, int j, double lambda) {
  require_odd(j, 1);
  const double a = p.h(j) / 2.0;
  return count_exact({a, a, Bc1d::NN, Bc1d::NN}, lambda);
}

Count first_room_lower_count(const DomainParams& p, double lambda) {
  Count n = 0;
  for (const auto& r : first_room_partition(p).regions) n += count_exact(r, lambda);
  return n;
}

PieceCounts passage_counts(const DomainParams& p, int j, double lambda) {
  if (j % 2 != 0 || j < 2)
    throw std::domain_error("bracketing: passage index must be even, got " + std::to_string(j));
  const double a = p.h(j) / 2.0;
  const double b = p.delta(j) / 2.0;
  return {count_exact({a, b, Bc1d::DD, Bc1d::NN}, lambda),
          count_exact({a, b, Bc1d::NN, Bc1d::NN}, lambda)};
}

PieceCounts dirichlet_piece_counts(const Piece& piece, double lambda) {
  const double a = piece.width() / 2.0;
  const double b = piece.half_height;
  PieceCounts c;
  c.lower = count_exact({a, b, Bc1d::DD, Bc1d::DD}, lambda);
  // the first room keeps its three outer walls Dirichlet; every other piece
  // only its horizontal walls
  if (piece.index == 1)
    c.upper = count_exact({a, b, Bc1d::DN, Bc1d::DD}, lambda);
  else
    c.upper = count_exact({a, b, Bc1d::NN, Bc1d::DD}, lambda);
  return c;
}

BracketReport assemble_bounds(const DomainParams& p, BoundaryCondition bc, int M, double lambda,
                              ReportScope scope) {
  if (M < 1) throw std::out_of_range("bracketing: M must be >= 1, got " + std::to_string(M));
  if (!(lambda > 0.0)) throw std::invalid_argument("bracketing: lambda must be positive");
  const RpDomain dom = RpDomain::geometric(p.C, p.alpha, p.k, 2 * M);

  BracketReport r;
  r.bc = bc;
  r.scope = scope;
  r.lambda = lambda;
  r.M = M;
  r.pieces.reserve(2 * M);
  for (const Piece& pc : dom.pieces()) {
    PieceBracket b{pc.index, 0, 0};
    if (bc == BoundaryCondition::neumann) {
      if (pc.kind == PieceKind::passage) {
        const PieceCounts c = passage_counts(p, pc.index, lambda);
        b.lower = c.lower;
        b.upper = c.upper;
      } else {
        b.lower = pc.index == 1 ? first_room_lower_count(p, lambda)
                                : room_lower_count(p, pc.index, lambda);
        b.upper = room_upper_count(p, pc.index, lambda);
      }
    } else {
      const PieceCounts c = dirichlet_piece_counts(pc, lambda);
      b.lower = c.lower;
      b.upper = c.upper;
    }
    r.lower_count += b.lower;
    r.upper_count += b.upper;
    r.pieces.push_back(b);
  }

  r.area = dom.area_upto(2 * M);
  if (scope == ReportScope::omega_full) {
    // with M deep enough the tail adds at most its constant mode
    r.area = dom.total_area();
    if (bc == BoundaryCondition::neumann) r.lower_count += 1;
    r.upper_count += 1;
  }
  r.weyl = r.area * lambda / (4.0 * std::numbers::pi);
  const double scale = std::sqrt(lambda) / std::numbers::pi;
  r.normalized_lower = (static_cast<double>(r.lower_count) - r.weyl) / scale;
  r.normalized_upper = (static_cast<double>(r.upper_count) - r.weyl) / scale;
  return r;
}

SecondTermConstants second_term_constants(const DomainParams& p) {
  const double C = p.C;
  const double c2a = std::pow(C, 2.0 * p.alpha);
  const double rooms = (2.0 * C + C * C) / (1.0 - C * C);
  const double pass = p.k * c2a / (1.0 - c2a);
  SecondTermConstants s;
  s.C1 = rooms - pass;
  s.C2 = rooms + pass;
  s.CD_upper = C * (C * C + 1.0) / (2.0 * (1.0 - C * C)) + p.k / (std::pow(C, -2.0 * p.alpha) - 1.0);
  if (!(s.C1 > 0.0))
    throw std::logic_error("bracketing: C1 <= 0 for these parameters; k < C^(3-2 alpha) violated?");
  return s;
}

SecondTermConstants second_term_constants(const DomainParams& p, int M) {
  if (M < 1) throw std::out_of_range("bracketing: M must be >= 1");
  const double C = p.C;
  const double c2a = std::pow(C, 2.0 * p.alpha);
  const double rooms =
      (2.0 * C + C * C - 2.0 * std::pow(C, 2 * M + 1) - std::pow(C, 2 * M + 2)) / (1.0 - C * C);
  SecondTermConstants s;
  s.C1 = rooms - 0.5 * p.k *
                     (2.0 * c2a - std::pow(C, 2.0 * p.alpha * M) -
                      std::pow(C, 2.0 * p.alpha * (M + 1))) /
                     (1.0 - c2a);
  s.C2 = rooms + p.k * (c2a - std::pow(C, 2.0 * p.alpha * (1 + M))) / (1.0 - c2a);
  s.CD_upper = C * (1.0 - std::pow(C, 2 * M)) / (1.0 - C * C) - C / 2.0 +
               p.k * c2a * (1.0 - std::pow(C, 2.0 * p.alpha * M)) / (1.0 - c2a);
  return s;
}

}  // namespace rpspec
