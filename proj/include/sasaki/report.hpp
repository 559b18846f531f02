#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sasaki/calibration.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/residual.hpp"

namespace sasaki {

/// Suite identifiers in execution order.
inline const std::vector<std::string>& suite_order() {
  static const std::vector<std::string> order{"axioms",         "field-calculus", "h-connection",
                                              "foliated-chart", "curvature",      "theorems"};
  return order;
}

inline bool is_known_suite(const std::string& s) {
  for (const auto& k : suite_order())
    if (k == s) return true;
  return false;
}

struct RunConfig {
  int n = 1;
  std::uint64_t seed = 42;
  int samples = 256;
  double fd_step = 1e-4;
  Tolerances tol;
  std::vector<std::string> suites;  ///< empty means all
  std::optional<std::string> report_path;
  std::string format = "text";
  unsigned workers = 1;

  /// Throws DomainError on any invalid field; nothing is computed first.
  void validate() const {
    if (n < 1) throw DomainError("n must be >= 1");
    if (samples < 1) throw DomainError("samples must be positive");
    if (!(fd_step > 0.0) || !std::isfinite(fd_step)) throw DomainError("fd-step must be positive");
    tol.validate();
    for (const auto& s : suites)
      if (!is_known_suite(s)) throw DomainError("unknown suite: " + s);
    if (format != "text" && format != "json") throw DomainError("format must be text or json");
    if (workers < 1) throw DomainError("workers must be >= 1");
  }

  /// Requested suites in canonical order, duplicates removed.
  std::vector<std::string> selected_suites() const {
    std::vector<std::string> out;
    for (const auto& s : suite_order()) {
      bool want = suites.empty();
      for (const auto& r : suites) want = want || r == s;
      if (want) out.push_back(s);
    }
    return out;
  }
};

struct CheckResult {
  std::string name;
  std::string paper_ref;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// A finding where the measured model disagrees with, or pins down, a
/// printed statement.
struct Adjudication {
  std::string topic;
  std::string finding;

  friend bool operator==(const Adjudication&, const Adjudication&) = default;
};

struct Calibration {
  CalibrationRecord record;
  std::map<std::string, double> measured;
  std::vector<Adjudication> adjudications;
};

inline bool operator==(const Calibration& a, const Calibration& b) {
  const auto& x = a.record;
  const auto& y = b.record;
  return x.multiplication == y.multiplication && x.sign_phi == y.sign_phi &&
         x.sectional_sign == y.sectional_sign &&
         x.bracket_defect_right == y.bracket_defect_right &&
         x.bracket_defect_left == y.bracket_defect_left &&
         x.reeb_defect_minus == y.reeb_defect_minus && x.reeb_defect_plus == y.reeb_defect_plus &&
         x.sectional_defect_plus == y.sectional_defect_plus &&
         x.sectional_defect_minus == y.sectional_defect_minus && a.measured == b.measured &&
         a.adjudications == b.adjudications;
}

struct Summary {
  int total = 0;
  int passed = 0;
  int failed = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct SuiteReport {
  RunConfig config;
  Calibration calibration;
  std::vector<CheckResult> checks;
  Summary summary;
  std::map<std::string, double> timing;  ///< seconds per suite; excluded from determinism

  void recount() {
    summary = {};
    for (const auto& c : checks) {
      ++summary.total;
      (c.pass ? summary.passed : summary.failed)++;
    }
  }
};

// JSON --------------------------------------------------------------------

namespace detail {

inline void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

/// Serializes with sorted keys and 17 significant digits for every float.
inline void write_json(std::ostream& os, const nlohmann::json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << nlohmann::json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], indent, depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

inline double number_or_inf(const nlohmann::json& j) {
  return j.is_null() ? INFINITY : j.get<double>();
}

}  // namespace detail

inline nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["fd_step"] = c.fd_step;
  j["tol_closed"] = c.tol.closed;
  j["tol_fd"] = c.tol.fd;
  j["tol_deep"] = c.tol.deep;
  j["suites"] = c.selected_suites();
  return j;
}

inline nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json j;
  j["config"] = config_to_json(r.config);

  const auto& rec = r.calibration.record;
  nlohmann::json cal;
  cal["quaternion_multiplication"] = name(rec.multiplication);
  cal["sign_phi"] = rec.sign_phi;
  cal["sectional_sign"] = rec.sectional_sign;
  cal["defects"] = {{"bracket_right", rec.bracket_defect_right},
                    {"bracket_left", rec.bracket_defect_left},
                    {"reeb_sign_minus", rec.reeb_defect_minus},
                    {"reeb_sign_plus", rec.reeb_defect_plus},
                    {"sectional_sign_plus", rec.sectional_defect_plus},
                    {"sectional_sign_minus", rec.sectional_defect_minus}};
  cal["measured"] = nlohmann::json::object();
  for (const auto& [k, v] : r.calibration.measured) cal["measured"][k] = v;
  cal["adjudications"] = nlohmann::json::array();
  for (const auto& a : r.calibration.adjudications)
    cal["adjudications"].push_back({{"topic", a.topic}, {"finding", a.finding}});
  j["calibration"] = cal;

  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name},
                           {"paper_ref", c.paper_ref},
                           {"residual", c.residual},
                           {"threshold", c.threshold},
                           {"pass", c.pass}});
  j["summary"] = {{"total", r.summary.total},
                  {"passed", r.summary.passed},
                  {"failed", r.summary.failed}};
  j["timing"] = nlohmann::json::object();
  for (const auto& [k, v] : r.timing) j["timing"][k] = v;
  return j;
}

/// Inverse of to_json for everything the JSON carries (report_path, format
/// and workers are not part of the document).
inline SuiteReport from_json(const nlohmann::json& j) {
  SuiteReport r;
  const auto& c = j.at("config");
  r.config.n = c.at("n").get<int>();
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.config.samples = c.at("samples").get<int>();
  r.config.fd_step = c.at("fd_step").get<double>();
  r.config.tol.closed = c.at("tol_closed").get<double>();
  r.config.tol.fd = c.at("tol_fd").get<double>();
  r.config.tol.deep = c.at("tol_deep").get<double>();
  r.config.suites = c.at("suites").get<std::vector<std::string>>();

  const auto& cal = j.at("calibration");
  auto& rec = r.calibration.record;
  rec.multiplication = cal.at("quaternion_multiplication").get<std::string>() == "left"
                           ? Multiplication::left
                           : Multiplication::right;
  rec.sign_phi = cal.at("sign_phi").get<double>();
  rec.sectional_sign = cal.at("sectional_sign").get<double>();
  const auto& d = cal.at("defects");
  rec.bracket_defect_right = detail::number_or_inf(d.at("bracket_right"));
  rec.bracket_defect_left = detail::number_or_inf(d.at("bracket_left"));
  rec.reeb_defect_minus = detail::number_or_inf(d.at("reeb_sign_minus"));
  rec.reeb_defect_plus = detail::number_or_inf(d.at("reeb_sign_plus"));
  rec.sectional_defect_plus = detail::number_or_inf(d.at("sectional_sign_plus"));
  rec.sectional_defect_minus = detail::number_or_inf(d.at("sectional_sign_minus"));
  for (const auto& [k, v] : cal.at("measured").items())
    r.calibration.measured[k] = detail::number_or_inf(v);
  for (const auto& a : cal.at("adjudications"))
    r.calibration.adjudications.push_back(
        {a.at("topic").get<std::string>(), a.at("finding").get<std::string>()});

  for (const auto& cj : j.at("checks"))
    r.checks.push_back({cj.at("name").get<std::string>(), cj.at("paper_ref").get<std::string>(),
                        detail::number_or_inf(cj.at("residual")),
                        detail::number_or_inf(cj.at("threshold")), cj.at("pass").get<bool>()});
  const auto& s = j.at("summary");
  r.summary = {s.at("total").get<int>(), s.at("passed").get<int>(), s.at("failed").get<int>()};
  for (const auto& [k, v] : j.at("timing").items()) r.timing[k] = v.get<double>();
  return r;
}

inline std::string dump_json(const nlohmann::json& j) {
  std::ostringstream os;
  detail::write_json(os, j, 2, 0);
  os << "\n";
  return os.str();
}

inline std::string emit_json(const SuiteReport& r) { return dump_json(to_json(r)); }

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// One "PASS/FAIL name residual threshold paper_ref" line per check, then the
/// calibration record and the summary.
inline std::string emit_text(const SuiteReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << ' ' << format_double(c.residual) << ' '
       << format_double(c.threshold) << ' ' << c.paper_ref << '\n';
  }
  const auto& rec = r.calibration.record;
  os << "calibration: quaternion_multiplication=" << name(rec.multiplication)
     << " sign_phi=" << format_double(rec.sign_phi)
     << " sectional_sign=" << format_double(rec.sectional_sign) << '\n';
  for (const auto& [k, v] : r.calibration.measured)
    os << "measured: " << k << '=' << format_double(v) << '\n';
  for (const auto& a : r.calibration.adjudications)
    os << "adjudication: " << a.topic << ": " << a.finding << '\n';
  os << "summary: total=" << r.summary.total << " passed=" << r.summary.passed
     << " failed=" << r.summary.failed << '\n';
  return os.str();
}

}  // namespace sasaki
