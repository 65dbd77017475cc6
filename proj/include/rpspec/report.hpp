#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace rpspec {

/// Shortest text that reads back as the same double.
std::string format_double(double v);

/// One invariant check: passes when `value` relates to `tolerance` as stated
/// by `relation` ("<=" or ">=").
struct Check {
  std::string name;
  double value{0.0};
  double tolerance{0.0};
  std::string relation{"<="};
  bool passed{false};
  std::string detail;

  static Check at_most(std::string name, double value, double tolerance, std::string detail = {});
  static Check at_least(std::string name, double value, double tolerance, std::string detail = {});
};

struct Report {
  std::string command;
  std::vector<Check> checks;
  nlohmann::json metrics = nlohmann::json::object();

  bool all_passed() const;
  /// 0 when every check passed, 1 otherwise.
  int exit_code() const { return all_passed() ? 0 : 1; }
};

/// One PASS/FAIL line per check plus a closing tally.
std::string summary_text(const Report& r);
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

}  // namespace rpspec
