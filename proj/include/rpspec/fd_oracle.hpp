#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "rpspec/bracketing.hpp"
#include "rpspec/domain.hpp"
#include "rpspec/eigensolver.hpp"

namespace rpspec {

/// strict: every piece coordinate must sit on the uniform grid of spacing
/// 1/n_per_unit (error otherwise). aligned: the uniform lines are augmented by
/// the piece boundary lines, giving a conforming tensor grid on each piece.
enum class GridMode { strict, aligned };

struct GridCell {
  double x_lo{0.0}, x_hi{0.0}, y_lo{0.0}, y_hi{0.0};
  int piece{1};

  double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
  double cx() const { return 0.5 * (x_lo + x_hi); }
  double cy() const { return 0.5 * (y_lo + y_hi); }
};

/// Face shared by two cells; `dist` is the distance between their centres.
struct InteriorFace {
  int a{0}, b{0};
  double length{0.0};
  double dist{0.0};
};

/// Face on the true boundary; `dist` is centre-to-face distance.
struct BoundaryFace {
  int cell{0};
  double length{0.0};
  double dist{0.0};
};

struct GridDomain {
  int n_per_unit{0};
  double spacing{0.0};
  GridMode mode{GridMode::strict};
  int n_pieces{0};
  std::vector<GridCell> cells;
  std::vector<InteriorFace> faces;
  std::vector<BoundaryFace> boundary;

  std::size_t size() const { return cells.size(); }
  double area() const;
  /// Integer cell coordinates (x_lo, y_lo) * n_per_unit; strict grids only.
  std::vector<std::array<long long, 2>> active_cells() const;
};

/// Grid for the first `pieces` pieces of the domain.
GridDomain rasterize_pieces(const RpDomain& domain, int pieces, int n_per_unit,
                            GridMode mode = GridMode::strict);
/// Grid for the truncation to 2M pieces.
GridDomain rasterize(const RpDomain& domain, int M, int n_per_unit,
                     GridMode mode = GridMode::strict);

/// Symmetrized five-point operator M^{-1/2} K M^{-1/2} (M = cell areas).
SparseMatrix fd_operator(const GridDomain& grid, BoundaryCondition bc);

struct FdSpectrum {
  BoundaryCondition bc{BoundaryCondition::neumann};
  std::vector<double> eigenvalues;
  std::vector<double> residuals;
  int n_per_unit{0};
  std::size_t cells{0};
};

FdSpectrum fd_eigenvalues(const GridDomain& grid, BoundaryCondition bc, int count);

/// Richardson extrapolation from three levels n, 2n, 4n assuming O(spacing^2):
/// value is the extrapolant of the two finest levels, error the difference
/// of the two extrapolants.
struct FdExtrapolation {
  BoundaryCondition bc{BoundaryCondition::neumann};
  std::vector<int> levels;
  std::vector<FdSpectrum> spectra;
  std::vector<double> value;
  std::vector<double> error;
};

FdExtrapolation fd_extrapolate(const RpDomain& domain, int pieces, BoundaryCondition bc,
                               int count, const std::vector<int>& levels,
                               GridMode mode = GridMode::aligned);

/// CSV rows bc,index,eigenvalue,grid_n,extrapolated for every level and the
/// extrapolated values (grid_n = 0).
std::string fd_csv(const std::vector<FdExtrapolation>& runs);

struct SandwichRow {
  BoundaryCondition bc{BoundaryCondition::neumann};
  double lambda{0.0};
  Count lower{0};
  Count upper{0};
  int fd_count_lo{0};  // eigenvalues below lambda counting error bars against
  int fd_count_hi{0};  // eigenvalues below lambda counting error bars in favour
  bool ok{false};
};

struct FilonovRow {
  int n{0};
  double neumann_next{0.0};  // lambda^N_{n+1}
  double dirichlet{0.0};     // lambda^D_n
  double tolerance{0.0};
  bool ok{false};
};

struct SandwichReport {
  DomainParams params{};
  int M{0};
  int count{0};
  std::vector<int> levels;
  FdExtrapolation neumann, dirichlet;
  std::vector<SandwichRow> rows;
  std::vector<FilonovRow> filonov;
  std::vector<double> skipped;  // lambdas above the resolvable range
  std::vector<std::string> warnings;
  bool monotone_ok{true};       // N_D <= N_N at every tested lambda
  bool all_ok() const;
};

/// Bracketing bounds (scope omega_2M) against FD counts for each lambda and
/// Filonov interlacing for n = 1 .. count-1. Lambdas with
/// lambda * spacing^2 > 0.1 on the finest level, or above the last computed
/// eigenvalue, are skipped with a warning. An empty list stands for 30 generic
/// lambdas below the last resolved Neumann eigenvalue.
SandwichReport sandwich_check(const DomainParams& params, int M, const std::vector<double>& lambdas,
                              int count = 20, const std::vector<int>& levels = {64, 128, 256});

/// count generic test lambdas spread over (0, top]: irrational multiples that
/// avoid ties with closed-form eigenvalues.
std::vector<double> generic_lambdas(double top, int count);

nlohmann::json to_json(const SandwichReport& r);

}  // namespace rpspec
