#pragma once

#include <string>
#include <vector>

#include "rpspec/domain.hpp"
#include "rpspec/rectangle_spectrum.hpp"

namespace rpspec {

enum class BoundaryCondition { neumann, dirichlet };
enum class ReportScope { omega_2M, omega_full };

const char* to_string(BoundaryCondition bc);
BoundaryCondition boundary_condition_from_string(const std::string& s);

/// Sub-rectangles of a room used for the lower Neumann count. Generic rooms
/// have five regions (I..V, top to bottom), the first room three.
struct RoomPartition {
  int j{1};
  double room_area{0.0};
  std::vector<RectangleSpec> regions;

  double regions_area() const;
};

RoomPartition room_partition(const DomainParams& p, int j);
RoomPartition first_room_partition(const DomainParams& p);

struct PieceCounts {
  Count lower{0};
  Count upper{0};
};

Count room_lower_count(const DomainParams& p, int j, double lambda);
Count room_upper_count(const DomainParams& p, int j, double lambda);
Count first_room_lower_count(const DomainParams& p, double lambda);
PieceCounts passage_counts(const DomainParams& p, int j, double lambda);
PieceCounts dirichlet_piece_counts(const Piece& piece, double lambda);

struct PieceBracket {
  int index{0};
  Count lower{0};
  Count upper{0};
};

struct BracketReport {
  BoundaryCondition bc{BoundaryCondition::neumann};
  ReportScope scope{ReportScope::omega_2M};
  double lambda{0.0};
  int M{1};
  Count lower_count{0};
  Count upper_count{0};
  double area{0.0};  // |Omega_2M| or |Omega| according to scope
  double weyl{0.0};
  double normalized_lower{0.0};
  double normalized_upper{0.0};
  std::vector<PieceBracket> pieces;
};

BracketReport assemble_bounds(const DomainParams& p, BoundaryCondition bc, int M, double lambda,
                              ReportScope scope = ReportScope::omega_2M);

struct SecondTermConstants {
  double C1{0.0};        // Neumann lower coefficient
  double C2{0.0};        // Neumann upper coefficient
  double CD_upper{0.0};  // Dirichlet upper coefficient
};

/// Limit constants (M empty) or the finite-M coefficients of the Omega_2M bounds.
SecondTermConstants second_term_constants(const DomainParams& p);
SecondTermConstants second_term_constants(const DomainParams& p, int M);

}  // namespace rpspec
