// Acceptance run: one PASS/FAIL line per criterion at n = 1 and n = 2,
// 256 samples, default tolerances. Bounds below are fixed here, independent
// of the per-check thresholds in the report.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "sasaki/report.hpp"
#include "sasaki/suites.hpp"

using namespace sasaki;

namespace {

struct Bound {
  std::string check;
  double limit;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Bound> bounds;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1, "structure identities",
       {{"axioms.phi_squared", 1e-8}, {"axioms.metric_compatibility", 1e-8},
        {"axioms.omega_equals_d_eta", 1e-8}, {"axioms.reeb_covariant_derivative", 1e-8},
        {"axioms.three_sasakian_relations", 1e-8}, {"axioms.reeb_brackets", 1e-8},
        {"axioms.phi_reeb_kernel", 1e-8}, {"axioms.reeb_orthonormal", 1e-8},
        {"axioms.sasaki_condition", 1e-8}}},
      {2, "foliated chart components",
       {{"chart.levi_civita_components", 1e-6}, {"chart.block_metric", 1e-6},
        {"chart.bracket_horizontal", 1e-6}, {"chart.bracket_reeb", 1e-6},
        {"chart.bundle_like", 1e-6}, {"chart.reeb_christoffel", 1e-6},
        {"chart.hconnection_components", 1e-6}}},
      {3, "H-connection",
       {{"hconn.projection_oracle", 1e-7}, {"hconn.metric_compatibility", 1e-8},
        {"hconn.torsion_horizontal", 1e-8}, {"hconn.torsion_horizontal_reeb", 1e-8},
        {"hconn.torsion_reeb_pairs", 1e-8}, {"hconn.bracket_identity", 1e-8},
        {"hconn.phi_parallel", 1e-8}}},
      {4, "curvature route equivalence", {{"curv.route_equivalence", 1e-6}}},
      {5, "curvature identity families",
       {{"curv.rbar_antisymmetry", 1e-6}, {"curv.rbar_bianchi", 1e-6},
        {"curv.rbar_pair_symmetry", 1e-6}, {"curv.rbar_phi_invariance", 1e-6},
        {"curv.r0_antisymmetry", 1e-9}, {"curv.r0_bianchi", 1e-9},
        {"curv.r0_pair_symmetry", 1e-9}, {"curv.r0_phi_invariance", 1e-9},
        {"curv.corollary_quad", 1e-6}}},
      {6, "Ricci traces",
       {{"curv.ricci_bar", 1e-5}, {"curv.ricci_levi_civita", 1e-5}}},
      {7, "constant holomorphic sectional curvature",
       {{"thm.holomorphic_spread", 1e-6}, {"thm.holomorphic_value", 1e-5},
        {"curv.r0_trace_coefficient", 1e-8}, {"thm.holomorphic_trace_consistency", 1e-5}}},
      {8, "Rbar = 4 R_0 on H", {{"curv.rbar_equals_4r0", 1e-6}}},
      {9, "sectional relation",
       {{"thm.sectional_relation_horizontal", 1e-5}, {"thm.sectional_relation_sweep", 1e-5}}},
  };
  return c;
}

const CheckResult* find(const SuiteReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

struct Line {
  bool pass = true;
  double worst_ratio = 0.0;
  std::string worst;
  std::string note;
};

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void fold(Line& l, const std::string& label, double value, double limit) {
  const double ratio = std::isfinite(value) ? value / limit : INFINITY;
  if (!(value <= limit)) l.pass = false;
  if (!(ratio <= l.worst_ratio)) {
    l.worst_ratio = ratio;
    l.worst = label + "=" + format_double(value) + " (bound " + short_number(limit) + ")";
  }
}

void print(int id, const std::string& title, const Line& l) {
  std::printf("%s criterion %d %s: worst %s%s%s\n", l.pass ? "PASS" : "FAIL", id, title.c_str(),
              l.worst.c_str(), l.note.empty() ? "" : "; ", l.note.c_str());
}

std::string checks_section(const SuiteReport& r) { return dump_json(to_json(r)["checks"]); }

}  // namespace

int main() {
  std::map<int, SuiteReport> runs;
  try {
    for (int n : {1, 2}) {
      RunConfig cfg;
      cfg.n = n;
      runs[n] = execute(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "acceptance run aborted: " << e.what() << '\n';
    return 3;
  }

  bool all = true;
  for (const auto& c : criteria()) {
    Line l;
    for (const auto& [n, r] : runs) {
      for (const auto& b : c.bounds) {
        const CheckResult* res = find(r, b.check);
        const std::string label = b.check + "@n=" + std::to_string(n);
        if (res == nullptr) {
          l.pass = false;
          l.note += "missing " + label + " ";
          continue;
        }
        fold(l, label, res->residual, b.limit);
      }
      if (c.id == 6) {
        const double s = r.calibration.measured.at("ricci_bar_coefficient");
        fold(l, "ricci_bar_coefficient@n=" + std::to_string(n),
             std::abs(s - (4.0 * n + 8.0)), 1e-5);
      }
      if (c.id == 7) {
        const auto& m = r.calibration.measured;
        fold(l, "|H-4|@n=" + std::to_string(n),
             std::abs(m.at("holomorphic_sectional_curvature") - 4.0), 1e-5);
        fold(l, "|c-(n+2)|@n=" + std::to_string(n),
             std::abs(m.at("r0_trace_coefficient") - (n + 2.0)), 1e-8);
        bool recorded = false;
        for (const auto& a : r.calibration.adjudications)
          recorded = recorded || (a.topic == "holomorphic constant" &&
                                  a.finding.find("NOT reproduced") != std::string::npos);
        if (!recorded) {
          l.pass = false;
          l.note = "holomorphic-constant adjudication missing";
        }
      }
      if (c.id == 9 && r.calibration.record.sectional_sign == 0.0) {
        l.pass = false;
        l.note = "calibration record missing";
      }
    }
    if (c.id == 9 && l.pass)
      l.note = "sectional_sign=" + format_double(runs.at(1).calibration.record.sectional_sign);
    print(c.id, c.title, l);
    all = all && l.pass;
  }

  // Determinism: repeat n = 1, once more single-threaded and once with 3 workers.
  Line det;
  try {
    RunConfig cfg;
    const std::string base = checks_section(runs.at(1));
    const bool same = checks_section(execute(cfg)) == base;
    cfg.workers = 3;
    const bool same_workers = checks_section(execute(cfg)) == base;
    det.pass = same && same_workers;
    det.worst = std::string("repeat ") + (same ? "identical" : "DIFFERS") + ", workers=3 " +
                (same_workers ? "identical" : "DIFFERS");
  } catch (const std::exception& e) {
    det.pass = false;
    det.worst = std::string("aborted: ") + e.what();
  }
  print(10, "determinism of checks section", det);
  all = all && det.pass;

  for (const auto& [n, r] : runs)
    std::printf("n=%d: %d checks, %d passed, %d failed\n", n, r.summary.total, r.summary.passed,
                r.summary.failed);
  return all ? 0 : 1;
}
