#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rpspec/bracketing.hpp"
#include "rpspec/cli.hpp"
#include "rpspec/domain.hpp"

namespace rpspec {

std::optional<ExperimentConfig> parse_command_line(int argc, const char* const* argv) {
  ExperimentConfig cfg;
  CLI::App app{"Spectral experiments on rooms-and-passages domains"};
  app.set_help_flag("--help", "print help and exit");
  app.set_config("--config", "", "key=value configuration file (flags take precedence)");
  app.require_subcommand(1);
  std::vector<std::string> tol_args;
  std::string spacing = "log";
  std::optional<int> points, count;
  std::optional<double> h;

  app.add_option("--C", cfg.C, "room ratio C in (0,1)");
  app.add_option("--alpha", cfg.alpha, "passage exponent alpha > 1");
  app.add_option("--k", cfg.k, "passage prefactor k");
  app.add_option("--lmin", cfg.lmin, "smallest lambda of a sweep");
  app.add_option("--lmax", cfg.lmax, "largest lambda of a sweep");
  app.add_option("--points", points, "number of sweep points");
  app.add_option("--spacing", spacing, "sweep spacing")->check(CLI::IsMember({"log", "linear"}));
  app.add_option("--out", cfg.out, "output path prefix");
  app.add_option("--c", cfg.c, "tail policy constant c");
  app.add_option("--grids", cfg.grids, "oracle grid levels per unit length")->delimiter(',');
  app.add_option("--M", cfg.M, "truncation depth (0: automatic)");
  app.add_option("--lambda", cfg.lambda, "spectral parameter for single-lambda commands");
  app.add_option("--h", h, "room side (single-room skeleton mode)");
  app.add_option("--delta", cfg.delta, "passage width at both room walls (single-room mode)");
  app.add_option("--bc", cfg.bc, "boundary condition: neumann|dirichlet");
  app.add_option("--count", count, "number of eigenvalues");
  app.add_option("--n", cfg.n, "coarsest cell count for edge operators");
  app.add_option("--jmin", cfg.jmin, "first singular-sequence index");
  app.add_option("--jmax", cfg.jmax, "last singular-sequence index");
  app.add_option("--pieces", cfg.pieces, "number of domain pieces for skeleton commands");
  app.add_flag("--svg", cfg.svg, "also write an SVG plot");
  app.add_option("--tol", tol_args, "tolerance override NAME=VALUE (repeatable)");

  const std::map<std::string, std::string> help{
      {"asymptotics", "normalized second-term sweep of the bracketing bounds"},
      {"brackets", "bracketing report at one lambda"},
      {"tail", "tail depth M(lambda) table"},
      {"essential", "singular-sequence Rayleigh quotients"},
      {"skeleton", "skeleton geometry and weights"},
      {"sl-spectrum", "per-edge weighted Sturm-Liouville eigenvalues"},
      {"oracle", "finite-difference spectra and sandwich report"}};
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->fallthrough();
    sub->callback([&cfg, name]() { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.points = points;
  cfg.count = count;
  cfg.h = h;
  cfg.log_spacing = spacing == "log";
  for (const auto& t : tol_args) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("config: --tol expects NAME=VALUE, got '" + t + "'");
    try {
      std::size_t used = 0;
      const std::string v = t.substr(eq + 1);
      cfg.tol[t.substr(0, eq)] = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw ConfigError("config: --tol value is not a number in '" + t + "'");
    }
  }
  return cfg;
}

std::map<std::string, double> default_tolerances(const std::string& command) {
  if (command == "asymptotics") return {{"band", 0.2}};
  if (command == "tail") return {{"bound_ratio", 1.0}};
  if (command == "essential") return {{"slope_rel", 0.05}};
  if (command == "skeleton") return {{"coarea", 1e-8}};
  if (command == "sl-spectrum") return {{"richardson", 1e-6}, {"kernel", 1e-8}};
  if (command == "oracle") return {{"residual", 1e-8}};
  return {};
}

double tolerance(const ExperimentConfig& cfg, const std::string& name) {
  const auto defaults = default_tolerances(cfg.command);
  if (!defaults.count(name))
    throw ConfigError("config: command '" + cfg.command + "' has no tolerance named '" + name + "'");
  const auto it = cfg.tol.find(name);
  return it != cfg.tol.end() ? it->second : defaults.at(name);
}

void validate(const ExperimentConfig& cfg) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end())
    throw ConfigError("config: unknown command '" + cfg.command + "'");
  const auto defaults = default_tolerances(cfg.command);
  for (const auto& [name, value] : cfg.tol) {
    if (!defaults.count(name)) {
      std::string known;
      for (const auto& d : defaults) known += (known.empty() ? "" : ", ") + d.first;
      throw ConfigError("config: unknown tolerance '" + name + "' for " + cfg.command +
                        " (known: " + (known.empty() ? "none" : known) + ")");
    }
    if (!(value >= 0.0)) throw ConfigError("config: tolerance '" + name + "' must be >= 0");
  }
  const bool room_mode =
      cfg.h && (cfg.command == "skeleton" || cfg.command == "sl-spectrum");
  if (room_mode) {
    if (!(*cfg.h > 0.0)) throw ConfigError("config: --h must be positive");
    if (!(cfg.delta >= 0.0 && cfg.delta < *cfg.h))
      throw ConfigError("config: need 0 <= delta < h");
  } else {
    try {
      RpDomain::geometric(cfg.C, cfg.alpha, cfg.k, 2);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (cfg.command == "asymptotics" || cfg.command == "tail") {
    const int points = cfg.points.value_or(40);
    if (points < 1) throw ConfigError("config: points must be >= 1 (empty sweep)");
    if (!(cfg.lmin > 0.0)) throw ConfigError("config: lmin must be positive");
    if (!(cfg.lmax >= cfg.lmin)) throw ConfigError("config: need lmax >= lmin");
    if (cfg.M < 0) throw ConfigError("config: M must be >= 0");
    if (!(cfg.c > 0.0)) throw ConfigError("config: tail constant c must be positive");
  }
  if (cfg.command == "asymptotics" || cfg.command == "brackets") {
    try {
      boundary_condition_from_string(cfg.bc);
    } catch (const std::exception&) {
      throw ConfigError("config: --bc must be neumann or dirichlet, got '" + cfg.bc + "'");
    }
  }
  if (cfg.command == "brackets") {
    if (!(cfg.lambda > 0.0)) throw ConfigError("config: lambda must be positive");
    if (cfg.M < 0) throw ConfigError("config: M must be >= 0");
  }
  if (cfg.command == "essential" && !(cfg.jmin >= 1 && cfg.jmax >= cfg.jmin))
    throw ConfigError("config: need 1 <= jmin <= jmax");
  if ((cfg.command == "skeleton" || cfg.command == "sl-spectrum") && !room_mode &&
      (cfg.pieces < 2 || cfg.pieces % 2 != 0))
    throw ConfigError("config: pieces must be even and >= 2");
  if (cfg.command == "sl-spectrum") {
    if (cfg.n < 8) throw ConfigError("config: n must be >= 8");
    const int count = cfg.count.value_or(6);
    if (count < 1 || count > cfg.n) throw ConfigError("config: count must lie in 1..n");
  }
  if (cfg.command == "oracle") {
    if (cfg.M < 0 || cfg.M > 2) throw ConfigError("config: oracle supports M = 1 or 2");
    if (cfg.grids.size() < 2) throw ConfigError("config: oracle needs >= 2 grid levels");
    for (std::size_t i = 0; i < cfg.grids.size(); ++i) {
      if (cfg.grids[i] < 1) throw ConfigError("config: grid levels must be positive");
      if (i > 0 && cfg.grids[i] != 2 * cfg.grids[i - 1])
        throw ConfigError("config: grid levels must double successively");
    }
    if (cfg.count.value_or(20) < 2) throw ConfigError("config: count must be >= 2");
    if (cfg.points && *cfg.points < 1) throw ConfigError("config: points must be >= 1");
  }
}

void write_outputs(const std::vector<OutputFile>& files) {
  std::vector<std::string> written;
  try {
    for (const auto& f : files) {
      const std::filesystem::path path(f.path);
      if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
      const std::string tmp = f.path + ".tmp";
      {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("output: cannot open " + tmp);
        os << f.content;
        if (!os) throw std::runtime_error("output: write failed for " + tmp);
      }
      std::filesystem::rename(tmp, f.path);
      written.push_back(f.path);
    }
  } catch (...) {
    for (const auto& f : files) std::remove((f.path + ".tmp").c_str());
    for (const auto& w : written) std::remove(w.c_str());
    throw;
  }
}

int cli_main(int argc, const char* const* argv) {
  std::optional<ExperimentConfig> cfg;
  try {
    cfg = parse_command_line(argc, argv);
    if (!cfg) return 0;
    validate(*cfg);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  RunResult result;
  try {
    result = run(*cfg);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << cfg->command << " failed: " << e.what() << '\n';
    return 1;
  }
  try {
    write_outputs(result.files);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cout << summary_text(result.report);
  for (const auto& f : result.files) std::cout << "wrote " << f.path << '\n';
  return result.report.exit_code();
}

}  // namespace rpspec
