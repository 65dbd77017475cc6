#include "rpspec/report.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace rpspec {

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  for (int prec = 6; prec <= 17; ++prec) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    if (prec == 17 || std::strtod(os.str().c_str(), nullptr) == v) return os.str();
  }
  return {};
}

Check Check::at_most(std::string name, double value, double tolerance, std::string detail) {
  return {std::move(name), value, tolerance, "<=", value <= tolerance, std::move(detail)};
}

Check Check::at_least(std::string name, double value, double tolerance, std::string detail) {
  return {std::move(name), value, tolerance, ">=", value >= tolerance, std::move(detail)};
}

bool Report::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string summary_text(const Report& r) {
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : r.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << r.command << '.' << c.name << ": "
       << format_double(c.value) << ' ' << c.relation << ' ' << format_double(c.tolerance);
    if (!c.detail.empty()) os << "  (" << c.detail << ')';
    os << '\n';
    if (!c.passed) ++failed;
  }
  os << r.command << ": " << r.checks.size() - failed << '/' << r.checks.size()
     << " checks passed\n";
  return os.str();
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name},
                           {"value", c.value},
                           {"tolerance", c.tolerance},
                           {"relation", c.relation},
                           {"passed", c.passed},
                           {"detail", c.detail}});
  j["metrics"] = r.metrics;
  j["all_passed"] = r.all_passed();
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), c.at("value").get<double>(),
                        c.at("tolerance").get<double>(), c.at("relation").get<std::string>(),
                        c.at("passed").get<bool>(), c.at("detail").get<std::string>()});
  r.metrics = j.value("metrics", nlohmann::json::object());
  return r;
}

}  // namespace rpspec
