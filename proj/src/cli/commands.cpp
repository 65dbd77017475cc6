#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rpspec/bracketing.hpp"
#include "rpspec/cli.hpp"
#include "rpspec/fd_oracle.hpp"
#include "rpspec/parallel.hpp"
#include "rpspec/plot.hpp"
#include "rpspec/quadrature.hpp"
#include "rpspec/singular_sequence.hpp"
#include "rpspec/skeleton.hpp"
#include "rpspec/skeleton_operator.hpp"
#include "rpspec/tail_control.hpp"

namespace rpspec {

namespace {

using nlohmann::json;

std::string fd(double v) { return format_double(v); }

DomainParams params_of(const ExperimentConfig& cfg, int n_pieces) {
  return RpDomain::geometric(cfg.C, cfg.alpha, cfg.k, n_pieces).geometric_params();
}

std::vector<double> sweep(const ExperimentConfig& cfg) {
  const int n = cfg.points.value_or(40);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    v[i] = cfg.log_spacing ? std::exp(std::log(cfg.lmin) + t * (std::log(cfg.lmax) - std::log(cfg.lmin)))
                           : cfg.lmin + t * (cfg.lmax - cfg.lmin);
  }
  return v;
}

int depth_for(const ExperimentConfig& cfg, const DomainParams& p, double lambda) {
  return cfg.M > 0 ? cfg.M : min_M_for_lambda(p, lambda, TailPolicy{cfg.c}).M;
}

json bracket_json(const BracketReport& r) {
  json j{{"bc", to_string(r.bc)},
         {"scope", r.scope == ReportScope::omega_2M ? "omega_2M" : "omega_full"},
         {"lambda", r.lambda},
         {"M", r.M},
         {"lower_count", r.lower_count},
         {"upper_count", r.upper_count},
         {"area", r.area},
         {"weyl", r.weyl},
         {"normalized_lower", r.normalized_lower},
         {"normalized_upper", r.normalized_upper}};
  j["pieces"] = json::array();
  for (const auto& p : r.pieces)
    j["pieces"].push_back({{"index", p.index}, {"lower", p.lower}, {"upper", p.upper}});
  return j;
}

void add_plot(RunResult& res, const ExperimentConfig& cfg, const std::vector<Series>& series,
              const std::string& header, const std::string& title, const std::string& xl,
              const std::string& yl, bool log_x) {
  res.files.push_back({cfg.out + ".dat", gnuplot_dat(series, header)});
  if (cfg.svg) res.files.push_back({cfg.out + ".svg", svg_plot(series, title, xl, yl, log_x)});
}

RunResult run_asymptotics(const ExperimentConfig& cfg) {
  const DomainParams p = params_of(cfg, 2);
  const BoundaryCondition bc = boundary_condition_from_string(cfg.bc);
  const auto lambdas = sweep(cfg);
  const int n = static_cast<int>(lambdas.size());
  std::vector<BracketReport> reps(n);
  std::vector<SecondTermConstants> refs(n);
  parallel_for(n, [&](int i) {
    const int M = depth_for(cfg, p, lambdas[i]);
    reps[i] = assemble_bounds(p, bc, M, lambdas[i]);
    refs[i] = second_term_constants(p, M);
  });
  RunResult res;
  std::ostringstream csv;
  csv << "lambda,M,bc,lower,upper,weyl,norm_lower,norm_upper,ref_lower,ref_upper\n";
  Series lo{"norm_lower", {}, {}}, up{"norm_upper", {}, {}}, rl{"ref_lower", {}, {}},
      ru{"ref_upper", {}, {}};
  bool ordered = true;
  double outside = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& r = reps[i];
    const bool neu = bc == BoundaryCondition::neumann;
    const double ref_lo = neu ? refs[i].C1 : 0.0;
    const double ref_up = neu ? refs[i].C2 : refs[i].CD_upper;
    csv << fd(r.lambda) << ',' << r.M << ',' << to_string(bc) << ',' << r.lower_count << ',' << r.upper_count << ','
        << fd(r.weyl) << ',' << fd(r.normalized_lower) << ',' << fd(r.normalized_upper) << ','
        << fd(ref_lo) << ',' << fd(ref_up) << '\n';
    for (auto* s : {&lo, &up, &rl, &ru}) s->x.push_back(r.lambda);
    lo.y.push_back(r.normalized_lower);
    up.y.push_back(r.normalized_upper);
    rl.y.push_back(ref_lo);
    ru.y.push_back(ref_up);
    ordered = ordered && r.lower_count <= r.upper_count;
    const double mn = std::min(r.normalized_lower, r.normalized_upper);
    const double mx = std::max(r.normalized_lower, r.normalized_upper);
    outside = std::max({outside, ref_lo - mn, mx - ref_up});
  }
  res.files.push_back({cfg.out + ".csv", csv.str()});
  add_plot(res, cfg, {lo, up, rl, ru}, "lambda normalized_second_term", "Normalized second term",
           "lambda", "(N - Weyl)/sqrt(lambda)", true);
  res.report.checks.push_back(Check::at_least("bounds_ordered", ordered ? 1.0 : 0.0, 1.0));
  res.report.checks.push_back(Check::at_most("band", outside, tolerance(cfg, "band"),
                                             "largest excursion outside the reference constants"));
  try {
    const auto lim = second_term_constants(p);
    res.report.metrics["C1"] = lim.C1;
    res.report.metrics["C2"] = lim.C2;
    res.report.metrics["CD_upper"] = lim.CD_upper;
  } catch (const std::logic_error& e) {
    res.report.metrics["limit_constants"] = e.what();
  }
  return res;
}

RunResult run_brackets(const ExperimentConfig& cfg) {
  const DomainParams p = params_of(cfg, 2);
  const BoundaryCondition bc = boundary_condition_from_string(cfg.bc);
  const int M = depth_for(cfg, p, cfg.lambda);
  const BracketReport r = assemble_bounds(p, bc, M, cfg.lambda);
  RunResult res;
  std::ostringstream csv;
  csv << "piece,lower,upper\n";
  for (const auto& pc : r.pieces) csv << pc.index << ',' << pc.lower << ',' << pc.upper << '\n';
  res.files.push_back({cfg.out + ".csv", csv.str()});
  res.files.push_back({cfg.out + ".json", bracket_json(r).dump(2) + "\n"});
  res.report.checks.push_back(Check::at_most("bounds_ordered",
                                             static_cast<double>(r.lower_count - r.upper_count), 0.0,
                                             "lower - upper"));
  res.report.metrics["lower_count"] = r.lower_count;
  res.report.metrics["upper_count"] = r.upper_count;
  res.report.metrics["M"] = M;
  return res;
}

RunResult run_tail(const ExperimentConfig& cfg) {
  const DomainParams p = params_of(cfg, 2);
  const auto lambdas = sweep(cfg);
  RunResult res;
  std::ostringstream csv;
  csv << "lambda,M,threshold,poincare_bound,tail_area,scaled_tail,tail_bound\n";
  Series m{"M", {}, {}}, sc{"scaled_tail", {}, {}};
  double ratio = 0.0;
  int prev_M = 0;
  bool monotone = true;
  for (double lam : lambdas) {
    const TailDepth t = min_M_for_lambda(p, lam, TailPolicy{cfg.c});
    csv << fd(lam) << ',' << t.M << ',' << fd(t.threshold) << ','
        << fd(poincare_bound(p, t.M, TailPolicy{cfg.c})) << ',' << fd(t.tail_area) << ','
        << fd(t.scaled_tail) << ',' << fd(t.tail_bound) << '\n';
    m.x.push_back(lam);
    m.y.push_back(t.M);
    sc.x.push_back(lam);
    sc.y.push_back(t.scaled_tail);
    ratio = std::max(ratio, t.tail_area / t.tail_bound);
    monotone = monotone && t.M >= prev_M;
    prev_M = t.M;
  }
  res.files.push_back({cfg.out + ".csv", csv.str()});
  add_plot(res, cfg, {m, sc}, "lambda value", "Tail depth", "lambda", "M, |T|lambda^(2/(3-alpha))",
           true);
  res.report.checks.push_back(Check::at_most("bound_ratio", ratio, tolerance(cfg, "bound_ratio"),
                                             "max tail_area / tail_bound"));
  res.report.checks.push_back(Check::at_least("M_monotone", monotone ? 1.0 : 0.0, 1.0));
  return res;
}

RunResult run_essential(const ExperimentConfig& cfg) {
  const RpDomain d = RpDomain::geometric(cfg.C, cfg.alpha, cfg.k, 4 * cfg.jmax);
  RunResult res;
  std::ostringstream csv;
  csv << "j,norm_phi,norm_phi_prime,rayleigh,plateau_area\n";
  Series s{"log rayleigh", {}, {}};
  const double expected = (cfg.alpha - 3.0) * std::log(cfg.C);
  // quotients follow the sign of the predicted slope: decreasing for alpha > 3
  bool monotone = true;
  double prev = 0.0;
  for (int j = cfg.jmin; j <= cfg.jmax; ++j) {
    const RayleighReport r = rayleigh_report(d, j);
    csv << j << ',' << fd(r.norm_phi) << ',' << fd(r.norm_phi_prime) << ',' << fd(r.rayleigh) << ','
        << fd(r.plateau_area) << '\n';
    s.x.push_back(j);
    s.y.push_back(std::log(r.rayleigh));
    if (j > cfg.jmin && !(expected < 0.0 ? r.rayleigh < prev : r.rayleigh > prev)) monotone = false;
    prev = r.rayleigh;
  }
  res.files.push_back({cfg.out + ".csv", csv.str()});
  add_plot(res, cfg, {s}, "j log_rayleigh", "Singular sequence", "j", "log Rayleigh quotient", false);
  res.report.metrics["expected_slope"] = expected;
  if (s.x.size() >= 2) {
    const double nx = static_cast<double>(s.x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < s.x.size(); ++i) { mx += s.x[i] / nx; my += s.y[i] / nx; }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      sxy += (s.x[i] - mx) * (s.y[i] - my);
      sxx += (s.x[i] - mx) * (s.x[i] - mx);
    }
    const double slope = sxy / sxx;
    res.report.metrics["fitted_slope"] = slope;
    const double err = expected != 0.0 ? std::abs(slope / expected - 1.0) : std::abs(slope);
    res.report.checks.push_back(Check::at_most("slope_rel", err, tolerance(cfg, "slope_rel"),
                                               "fitted " + fd(slope) + " vs " + fd(expected)));
  }
  res.report.checks.push_back(Check::at_least("rayleigh_monotone", monotone ? 1.0 : 0.0, 1.0));
  return res;
}

std::vector<SkeletonEdge> edges_of(const ExperimentConfig& cfg, double& area) {
  if (cfg.h) {
    area = *cfg.h * *cfg.h;
    return build_room_skeleton(*cfg.h, cfg.delta, cfg.delta);
  }
  const RpDomain d = RpDomain::geometric(cfg.C, cfg.alpha, cfg.k, cfg.pieces);
  area = d.area_upto_summed(cfg.pieces);
  return DomainSkeleton(d).edges();
}

RunResult run_skeleton(const ExperimentConfig& cfg) {
  double area = 0.0;
  const auto edges = edges_of(cfg, area);
  RunResult res;
  json j;
  if (cfg.h)
    j["source"] = {{"h", *cfg.h}, {"delta", cfg.delta}};
  else
    j["source"] = {{"C", cfg.C}, {"alpha", cfg.alpha}, {"k", cfg.k}, {"pieces", cfg.pieces}};
  j["edges"] = skeleton_to_json(edges);
  res.files.push_back({cfg.out + ".json", j.dump(2) + "\n"});
  std::vector<Series> polys;
  double coarea = 0.0, region_sum = 0.0;
  for (const auto& e : edges) {
    Series s{std::string(to_string(e.group())) + " " + std::to_string(e.id), {}, {}};
    for (int i = 0; i <= 32; ++i) {
      const Point2 q = e.point(e.length() * i / 32.0);
      s.x.push_back(q.x);
      s.y.push_back(q.y);
    }
    polys.push_back(std::move(s));
    const double mass = integrate([&](double sg) { return e.alpha(sg); }, 0.0, e.length(), 1e-12);
    coarea = std::max(coarea, std::abs(mass - e.region_area()));
    region_sum += e.region_area();
  }
  add_plot(res, cfg, polys, "x y", "Skeleton", "x", "y", false);
  const double tol = tolerance(cfg, "coarea");
  res.report.checks.push_back(Check::at_most("coarea", coarea, tol,
                                             "max |int alpha dsigma - region area|"));
  res.report.checks.push_back(Check::at_most("area_partition", std::abs(region_sum - area), tol,
                                             "|sum of region areas - area|"));
  res.report.metrics["edges"] = edges.size();
  return res;
}

double closed_form(const SkeletonEdge& e, int index) {
  if (index == 0) return 0.0;
  if (e.group() == EdgeGroup::G2_diagonal) {
    const double z = boost::math::cyl_bessel_j_zero(1.0, index);
    return 2.0 * z * z / (e.length() * e.length());
  }
  const double m = index * std::numbers::pi / e.length();
  return m * m;
}

RunResult run_sl_spectrum(const ExperimentConfig& cfg) {
  double area = 0.0;
  const auto edges = edges_of(cfg, area);
  const int count = cfg.count.value_or(6);
  const int n = static_cast<int>(edges.size());
  std::vector<SlRichardson> rich(n);
  parallel_for(n, [&](int i) {
    if (!edges[i].singular()) rich[i] = sl_richardson(edges[i], cfg.n, count);
  });
  RunResult res;
  std::ostringstream csv;
  // value is the Richardson extrapolant over n, 2n, 4n, reported with n_grid = 0
  csv << "edge_id,group,eigen_index,value,n_grid,spread,closed_form\n";
  double kernel = 0.0, spread = 0.0, closed = 0.0, minimum = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& e = edges[i];
    if (e.singular()) {
      // the operator vanishes on singular edges: the constant is the only mode
      csv << e.id << ',' << to_string(e.group()) << ",0,0,0,0,0\n";
      continue;
    }
    for (int m = 0; m < count; ++m) {
      const double v = rich[i].value[m];
      const double exact = closed_form(e, m);
      csv << e.id << ',' << to_string(e.group()) << ',' << m << ',' << fd(v) << ",0,"
          << fd(rich[i].spread[m]) << ',' << fd(exact) << '\n';
      if (m == 0) kernel = std::max(kernel, std::abs(v));
      minimum = std::min(minimum, v);
      spread = std::max(spread, rich[i].spread[m] / std::max(1.0, std::abs(v)));
      closed = std::max(closed, std::abs(v - exact) / std::max(1.0, exact));
    }
  }
  res.files.push_back({cfg.out + ".csv", csv.str()});
  const double ktol = tolerance(cfg, "kernel");
  res.report.checks.push_back(Check::at_most("kernel", kernel, ktol, "max |lambda_0|"));
  res.report.checks.push_back(Check::at_least("nonnegative", minimum, -ktol));
  res.report.checks.push_back(Check::at_most("richardson", spread, tolerance(cfg, "richardson"),
                                             "max relative Richardson spread"));
  res.report.metrics["closed_form_rel_error"] = closed;
  return res;
}

RunResult run_oracle(const ExperimentConfig& cfg) {
  const int M = cfg.M > 0 ? cfg.M : 2;
  const DomainParams p = params_of(cfg, 2 * M);
  const int count = cfg.count.value_or(20);
  std::vector<double> lambdas;
  SandwichReport rep = sandwich_check(p, M, {}, count, cfg.grids);
  if (cfg.points && *cfg.points != 30) {
    const double top = rep.neumann.value.back() - rep.neumann.error.back();
    rep = sandwich_check(p, M, generic_lambdas(top, *cfg.points), count, cfg.grids);
  }
  RunResult res;
  res.files.push_back({cfg.out + ".csv", fd_csv({rep.neumann, rep.dirichlet})});
  res.files.push_back({cfg.out + ".json", to_json(rep).dump(2) + "\n"});
  int bad_rows = 0, bad_filonov = 0;
  for (const auto& r : rep.rows) bad_rows += !r.ok;
  for (const auto& f : rep.filonov) bad_filonov += !f.ok;
  double residual = 0.0;
  for (const auto* x : {&rep.neumann, &rep.dirichlet})
    for (const auto& s : x->spectra)
      for (double r : s.residuals) residual = std::max(residual, r);
  res.report.checks.push_back(Check::at_most("sandwich_failures", bad_rows, 0.0));
  res.report.checks.push_back(Check::at_most("filonov_failures", bad_filonov, 0.0));
  res.report.checks.push_back(Check::at_least("dirichlet_below_neumann", rep.monotone_ok, 1.0));
  res.report.checks.push_back(Check::at_most("skipped_lambdas", rep.skipped.size(), 0.0));
  res.report.checks.push_back(Check::at_most("residual", residual, tolerance(cfg, "residual")));
  return res;
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
  validate(cfg);
  RunResult res;
  if (cfg.command == "asymptotics") res = run_asymptotics(cfg);
  else if (cfg.command == "brackets") res = run_brackets(cfg);
  else if (cfg.command == "tail") res = run_tail(cfg);
  else if (cfg.command == "essential") res = run_essential(cfg);
  else if (cfg.command == "skeleton") res = run_skeleton(cfg);
  else if (cfg.command == "sl-spectrum") res = run_sl_spectrum(cfg);
  else res = run_oracle(cfg);
  res.report.command = cfg.command;
  res.files.push_back({cfg.out + ".report.json", to_json(res.report).dump(2) + "\n"});
  return res;
}

}  // namespace rpspec
