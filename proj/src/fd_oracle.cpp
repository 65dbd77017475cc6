#include "rpspec/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rpspec {

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool on_grid(double v, int n) {
  const double t = v * n;
  return std::abs(t - std::round(t)) <= 1e-9 * std::max(1.0, std::abs(t));
}

// sorted, merged coordinate lines: endpoints, uniform lines strictly inside,
// and extra lines strictly inside
std::vector<double> lines(double lo, double hi, int n, const std::vector<double>& extra) {
  std::vector<double> v{lo, hi};
  const double s = 1.0 / n;
  const long long k0 = static_cast<long long>(std::floor(lo * n)) - 1;
  const long long k1 = static_cast<long long>(std::ceil(hi * n)) + 1;
  for (long long k = k0; k <= k1; ++k) {
    const double x = k * s;
    if (x > lo && x < hi) v.push_back(x);
  }
  for (double x : extra)
    if (x > lo && x < hi) v.push_back(x);
  std::sort(v.begin(), v.end());
  const double tol = 1e-12 * std::max(1.0, hi - lo) + 1e-9 * s;
  std::vector<double> out;
  for (double x : v) {
    if (!out.empty() && x - out.back() <= tol) {
      if (x == hi) out.back() = hi;
      continue;
    }
    out.push_back(x);
  }
  return out;
}

struct PieceGrid {
  std::vector<double> xs, ys;
  int base{0};
  int nx() const { return static_cast<int>(xs.size()) - 1; }
  int ny() const { return static_cast<int>(ys.size()) - 1; }
  int cell(int ix, int iy) const { return base + ix * ny() + iy; }
};

int find_row(const PieceGrid& g, double y_lo) {
  const auto it = std::lower_bound(g.ys.begin(), g.ys.end(), y_lo - 1e-12);
  if (it == g.ys.end() || std::abs(*it - y_lo) > 1e-12) return -1;
  return static_cast<int>(it - g.ys.begin());
}

}  // namespace

double GridDomain::area() const {
  double a = 0.0;
  for (const auto& c : cells) a += c.area();
  return a;
}

std::vector<std::array<long long, 2>> GridDomain::active_cells() const {
  if (mode != GridMode::strict) throw std::logic_error("fd: integer cells need a strict grid");
  std::vector<std::array<long long, 2>> out;
  out.reserve(cells.size());
  for (const auto& c : cells)
    out.push_back({std::llround(c.x_lo * n_per_unit), std::llround(c.y_lo * n_per_unit)});
  return out;
}

GridDomain rasterize_pieces(const RpDomain& domain, int pieces, int n_per_unit, GridMode mode) {
  if (n_per_unit < 1) throw std::invalid_argument("fd: n_per_unit must be positive");
  if (pieces < 1 || pieces > domain.size())
    throw std::invalid_argument("fd: piece count " + std::to_string(pieces) + " outside 1.." +
                                std::to_string(domain.size()));
  const auto& all = domain.pieces();
  if (mode == GridMode::strict) {
    for (int i = 0; i < pieces; ++i) {
      const Piece& p = all[i];
      const double coords[3] = {p.x_lo, p.x_hi, p.half_height};
      const char* names[3] = {"x_lo", "x_hi", "half_height"};
      for (int c = 0; c < 3; ++c)
        if (!on_grid(coords[c], n_per_unit))
          throw std::invalid_argument("fd: piece " + std::to_string(p.index) + " " + names[c] +
                                      " = " + fmt_num(coords[c]) +
                                      " is not a multiple of 1/" + std::to_string(n_per_unit));
    }
  }

  GridDomain g;
  g.n_per_unit = n_per_unit;
  g.spacing = 1.0 / n_per_unit;
  g.mode = mode;
  g.n_pieces = pieces;
  std::vector<PieceGrid> pg(pieces);
  for (int i = 0; i < pieces; ++i) {
    const Piece& p = all[i];
    // every half-height appears on every piece so that shared walls conform
    std::vector<double> extra;
    for (int j = 0; j < pieces; ++j) {
      extra.push_back(all[j].half_height);
      extra.push_back(-all[j].half_height);
    }
    pg[i].xs = lines(p.x_lo, p.x_hi, n_per_unit, {});
    pg[i].ys = lines(-p.half_height, p.half_height, n_per_unit, extra);
    pg[i].base = static_cast<int>(g.cells.size());
    for (int ix = 0; ix < pg[i].nx(); ++ix)
      for (int iy = 0; iy < pg[i].ny(); ++iy)
        g.cells.push_back({pg[i].xs[ix], pg[i].xs[ix + 1], pg[i].ys[iy], pg[i].ys[iy + 1], p.index});
  }

  for (int i = 0; i < pieces; ++i) {
    const PieceGrid& q = pg[i];
    for (int ix = 0; ix < q.nx(); ++ix)
      for (int iy = 0; iy < q.ny(); ++iy) {
        const GridCell& c = g.cells[q.cell(ix, iy)];
        const double w = c.x_hi - c.x_lo, h = c.y_hi - c.y_lo;
        if (ix + 1 < q.nx()) {
          const GridCell& d = g.cells[q.cell(ix + 1, iy)];
          g.faces.push_back({q.cell(ix, iy), q.cell(ix + 1, iy), h, d.cx() - c.cx()});
        }
        if (iy + 1 < q.ny()) {
          const GridCell& d = g.cells[q.cell(ix, iy + 1)];
          g.faces.push_back({q.cell(ix, iy), q.cell(ix, iy + 1), w, d.cy() - c.cy()});
        }
        if (iy == 0) g.boundary.push_back({q.cell(ix, iy), w, 0.5 * h});
        if (iy + 1 == q.ny()) g.boundary.push_back({q.cell(ix, iy), w, 0.5 * h});
      }
    // vertical piece walls: faces inside a neighbour's opening are interior
    for (int side = 0; side < 2; ++side) {
      const int ix = side == 0 ? 0 : q.nx() - 1;
      const int j = side == 0 ? i - 1 : i + 1;
      for (int iy = 0; iy < q.ny(); ++iy) {
        const int a = q.cell(ix, iy);
        const GridCell& c = g.cells[a];
        const double h = c.y_hi - c.y_lo;
        const bool open = j >= 0 && j < pieces && std::abs(c.cy()) < all[j].half_height;
        if (!open) {
          g.boundary.push_back({a, h, 0.5 * (c.x_hi - c.x_lo)});
          continue;
        }
        if (side == 1) continue;  // recorded from the right-hand piece
        const PieceGrid& r = pg[j];
        const int row = find_row(r, c.y_lo);
        if (row < 0 || row >= r.ny() || std::abs(r.ys[row + 1] - c.y_hi) > 1e-12)
          throw std::logic_error("fd: nonconforming interface between pieces " +
                                 std::to_string(j + 1) + " and " + std::to_string(i + 1));
        const int b = r.cell(r.nx() - 1, row);
        g.faces.push_back({b, a, h, c.cx() - g.cells[b].cx()});
      }
    }
  }
  return g;
}

GridDomain rasterize(const RpDomain& domain, int M, int n_per_unit, GridMode mode) {
  if (M < 1) throw std::invalid_argument("fd: M must be >= 1");
  return rasterize_pieces(domain, 2 * M, n_per_unit, mode);
}

SparseMatrix fd_operator(const GridDomain& grid, BoundaryCondition bc) {
  const int n = static_cast<int>(grid.size());
  std::vector<double> diag(n, 0.0), scale(n);
  for (int i = 0; i < n; ++i) scale[i] = 1.0 / std::sqrt(grid.cells[i].area());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(2 * grid.faces.size() + n);
  for (const auto& f : grid.faces) {
    const double w = f.length / f.dist;
    diag[f.a] += w;
    diag[f.b] += w;
    const double off = -w * scale[f.a] * scale[f.b];
    t.emplace_back(f.a, f.b, off);
    t.emplace_back(f.b, f.a, off);
  }
  if (bc == BoundaryCondition::dirichlet)
    for (const auto& f : grid.boundary) diag[f.cell] += f.length / f.dist;
  for (int i = 0; i < n; ++i) t.emplace_back(i, i, diag[i] * scale[i] * scale[i]);
  SparseMatrix A(n, n);
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

FdSpectrum fd_eigenvalues(const GridDomain& grid, BoundaryCondition bc, int count) {
  if (count < 1 || static_cast<std::size_t>(count) > grid.size())
    throw std::invalid_argument("fd: count must lie in 1..cell count");
  const SparseMatrix A = fd_operator(grid, bc);
  const EigenResult r = lowest_eigenvalues(A, count);
  FdSpectrum s;
  s.bc = bc;
  s.eigenvalues = r.values;
  s.residuals = r.residuals;
  s.n_per_unit = grid.n_per_unit;
  s.cells = grid.size();
  // the Neumann constant mode is computed to roundoff; report it as nonnegative
  for (double& v : s.eigenvalues) v = std::max(v, 0.0);
  return s;
}

FdExtrapolation fd_extrapolate(const RpDomain& domain, int pieces, BoundaryCondition bc,
                               int count, const std::vector<int>& levels, GridMode mode) {
  if (levels.size() < 2) throw std::invalid_argument("fd: extrapolation needs >= 2 levels");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] != 2 * levels[i - 1])
      throw std::invalid_argument("fd: levels must double successively");
  FdExtrapolation x;
  x.bc = bc;
  x.levels = levels;
  for (int n : levels)
    x.spectra.push_back(fd_eigenvalues(rasterize_pieces(domain, pieces, n, mode), bc, count));
  const std::size_t L = levels.size();
  auto rich = [&](std::size_t fine, int i) {
    return (4.0 * x.spectra[fine].eigenvalues[i] - x.spectra[fine - 1].eigenvalues[i]) / 3.0;
  };
  for (int i = 0; i < count; ++i) {
    const double r1 = rich(L - 1, i);
    const double r0 = L >= 3 ? rich(L - 2, i) : x.spectra[L - 1].eigenvalues[i];
    x.value.push_back(r1);
    x.error.push_back(std::abs(r1 - r0));
  }
  return x;
}

std::string fd_csv(const std::vector<FdExtrapolation>& runs) {
  std::ostringstream os;
  os.precision(17);
  os << "bc,index,eigenvalue,grid_n,extrapolated\n";
  for (const auto& r : runs) {
    for (const auto& s : r.spectra)
      for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        os << to_string(r.bc) << ',' << i + 1 << ',' << s.eigenvalues[i] << ',' << s.n_per_unit
           << ",0\n";
    for (std::size_t i = 0; i < r.value.size(); ++i)
      os << to_string(r.bc) << ',' << i + 1 << ',' << r.value[i] << ",0,1\n";
  }
  return os.str();
}

bool SandwichReport::all_ok() const {
  if (!monotone_ok) return false;
  for (const auto& r : rows)
    if (!r.ok) return false;
  for (const auto& f : filonov)
    if (!f.ok) return false;
  return true;
}

std::vector<double> generic_lambdas(double top, int count) {
  if (!(top > 0.0) || count < 1) throw std::invalid_argument("fd: need top > 0 and count >= 1");
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(top * (i + phi) / count);
  return v;
}

SandwichReport sandwich_check(const DomainParams& params, int M, const std::vector<double>& lambdas,
                              int count, const std::vector<int>& levels) {
  if (M < 1 || M > 2) throw std::invalid_argument("fd: sandwich_check supports M = 1 or 2");
  if (count < 2) throw std::invalid_argument("fd: sandwich_check needs count >= 2");
  const RpDomain domain = RpDomain::geometric(params.C, params.alpha, params.k, 2 * M);
  SandwichReport rep;
  rep.params = params;
  rep.M = M;
  rep.count = count;
  rep.levels = levels;
  rep.neumann = fd_extrapolate(domain, 2 * M, BoundaryCondition::neumann, count, levels);
  rep.dirichlet = fd_extrapolate(domain, 2 * M, BoundaryCondition::dirichlet, count, levels);

  const double fine = 1.0 / levels.back();
  const auto& nv = rep.neumann.value;
  const auto& ne = rep.neumann.error;
  const double complete = nv.back() - ne.back();  // both counts are complete below this
  const std::vector<double> tested = lambdas.empty() ? generic_lambdas(complete, 30) : lambdas;
  for (double lam : tested) {
    if (lam * fine * fine > 0.1 || !(lam < complete)) {
      rep.skipped.push_back(lam);
      rep.warnings.push_back("lambda " + fmt_num(lam) + " skipped: outside the resolved range");
      continue;
    }
    int nd_hi = 0;
    int nn_lo = 0;
    for (const FdExtrapolation* x : {&rep.neumann, &rep.dirichlet}) {
      const BracketReport b = assemble_bounds(params, x->bc, M, lam);
      SandwichRow row;
      row.bc = x->bc;
      row.lambda = lam;
      row.lower = b.lower_count;
      row.upper = b.upper_count;
      for (std::size_t i = 0; i < x->value.size(); ++i) {
        if (x->value[i] + x->error[i] < lam) ++row.fd_count_lo;
        if (x->value[i] - x->error[i] < lam) ++row.fd_count_hi;
      }
      row.ok = row.lower <= row.fd_count_hi && row.fd_count_lo <= row.upper;
      if (x->bc == BoundaryCondition::neumann) nn_lo = row.fd_count_hi;
      else nd_hi = row.fd_count_lo;
      rep.rows.push_back(row);
    }
    if (nd_hi > nn_lo) rep.monotone_ok = false;
  }
  for (int n = 1; n < count; ++n) {
    FilonovRow f;
    f.n = n;
    f.neumann_next = nv[n];
    f.dirichlet = rep.dirichlet.value[n - 1];
    f.tolerance = ne[n] + rep.dirichlet.error[n - 1];
    f.ok = f.neumann_next <= f.dirichlet + f.tolerance;
    rep.filonov.push_back(f);
  }
  return rep;
}

nlohmann::json to_json(const SandwichReport& r) {
  nlohmann::json j;
  j["params"] = {{"C", r.params.C}, {"alpha", r.params.alpha}, {"k", r.params.k}};
  j["M"] = r.M;
  j["count"] = r.count;
  j["levels"] = r.levels;
  for (const FdExtrapolation* x : {&r.neumann, &r.dirichlet})
    j["extrapolated"][to_string(x->bc)] = {{"value", x->value}, {"error", x->error}};
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"bc", to_string(row.bc)},
                         {"lambda", row.lambda},
                         {"lower", row.lower},
                         {"upper", row.upper},
                         {"fd_count_lo", row.fd_count_lo},
                         {"fd_count_hi", row.fd_count_hi},
                         {"ok", row.ok}});
  j["filonov"] = nlohmann::json::array();
  for (const auto& f : r.filonov)
    j["filonov"].push_back({{"n", f.n},
                            {"neumann_next", f.neumann_next},
                            {"dirichlet", f.dirichlet},
                            {"tolerance", f.tolerance},
                            {"ok", f.ok}});
  j["skipped"] = r.skipped;
  j["warnings"] = r.warnings;
  j["monotone_ok"] = r.monotone_ok;
  j["all_ok"] = r.all_ok();
  return j;
}

}  // namespace rpspec
