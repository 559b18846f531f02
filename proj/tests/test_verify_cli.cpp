#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sasaki/cli.hpp"

using namespace sasaki;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "verify");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

nlohmann::json without_timing(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  j.erase("timing");
  return j;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("verify_cli_" + name);
}

}  // namespace

TEST(VerifyCli, AxiomsSuitePassesWithText) {
  const Outcome o = run({"--suite", "axioms", "--samples", "16"});
  EXPECT_EQ(o.code, kAllPass) << o.err;
  EXPECT_NE(o.out.find("PASS axioms.phi_squared "), std::string::npos);
  EXPECT_NE(o.out.find("calibration: quaternion_multiplication=right sign_phi=-1"), std::string::npos);
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
}

TEST(VerifyCli, TextLineFormat) {
  const Outcome o = run({"--suite", "axioms", "--samples", "4"});
  std::istringstream lines(o.out);
  std::string line;
  int checks = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("PASS ", 0) != 0 && line.rfind("FAIL ", 0) != 0) continue;
    std::istringstream f(line);
    std::string verdict, name, residual, threshold, ref;
    f >> verdict >> name >> residual >> threshold;
    std::getline(f, ref);
    EXPECT_FALSE(name.empty());
    EXPECT_NO_THROW((void)std::stod(residual));
    EXPECT_GT(std::stod(threshold), 0.0);
    EXPECT_GT(ref.size(), 1u);
    ++checks;
  }
  EXPECT_EQ(checks, 13);
}

TEST(VerifyCli, UsageErrors) {
  EXPECT_EQ(run({"--suite", "nonsense"}).code, kUsage);
  EXPECT_EQ(run({"--n", "0"}).code, kUsage);
  EXPECT_EQ(run({"--samples", "0"}).code, kUsage);
  EXPECT_EQ(run({"--fd-step", "-1"}).code, kUsage);
  EXPECT_EQ(run({"--format", "xml"}).code, kUsage);
  EXPECT_EQ(run({"--bogus"}).code, kUsage);
  EXPECT_EQ(run({"--n", "abc"}).code, kUsage);
  // tol_closed <= tol_fd <= tol_deep; a lone tight tol_deep breaks the order.
  const Outcome o = run({"--tol-deep", "1e-12"});
  EXPECT_EQ(o.code, kUsage);
  EXPECT_TRUE(o.out.empty());
}

TEST(VerifyCli, HelpExitsCleanly) {
  const Outcome o = run({"--help"});
  EXPECT_EQ(o.code, kAllPass);
  EXPECT_NE(o.out.find("--tol-deep"), std::string::npos);
}

TEST(VerifyCli, UnwritableReportPathIsRuntimeError) {
  const Outcome o = run({"--suite", "axioms", "--samples", "2", "--report", "/nonexistent-dir/r.json"});
  EXPECT_EQ(o.code, kRuntime);
  EXPECT_NE(o.err.find("/nonexistent-dir/r.json"), std::string::npos);
}

TEST(VerifyCli, ForcedFailureNamesRicciChecks) {
  const Outcome o = run({"--suite", "curvature", "--samples", "8", "--format", "json", "--tol-closed",
                         "1e-17", "--tol-fd", "1e-17", "--tol-deep", "1e-17"});
  EXPECT_EQ(o.code, kCheckFailures);
  const SuiteReport r = from_json(nlohmann::json::parse(o.out));
  int failed = 0;
  bool ricci_failed = false;
  for (const auto& c : r.checks) {
    failed += c.pass ? 0 : 1;
    if (c.name == "curv.ricci_bar" || c.name == "curv.ricci_levi_civita") ricci_failed = ricci_failed || !c.pass;
  }
  EXPECT_TRUE(ricci_failed);
  EXPECT_EQ(r.summary.failed, failed);
  EXPECT_EQ(r.summary.total, static_cast<int>(r.checks.size()));
  EXPECT_EQ(r.summary.passed + r.summary.failed, r.summary.total);
}

TEST(VerifyCli, JsonSchemaAndRoundTrip) {
  const Outcome o = run({"--suite", "axioms", "--suite", "h-connection", "--samples", "4", "--format", "json"});
  ASSERT_EQ(o.code, kAllPass) << o.err;
  const nlohmann::json j = nlohmann::json::parse(o.out);
  for (const char* k : {"config", "calibration", "checks", "summary", "timing"}) EXPECT_TRUE(j.contains(k)) << k;
  for (const auto& c : j["checks"]) {
    for (const char* k : {"name", "paper_ref", "residual", "threshold", "pass"}) EXPECT_TRUE(c.contains(k));
    EXPECT_FALSE(c["paper_ref"].get<std::string>().empty());
  }
  EXPECT_EQ(j["config"]["suites"], nlohmann::json({"axioms", "h-connection"}));

  const SuiteReport r = from_json(j);
  EXPECT_EQ(emit_json(r), o.out);
  EXPECT_EQ(r.checks.front().name, "axioms.structure_matrices");
  EXPECT_EQ(r.calibration.record.multiplication, Multiplication::right);
}

TEST(VerifyCli, NumbersUseSeventeenDigitsAndSortedKeys) {
  const Outcome o = run({"--suite", "axioms", "--samples", "2", "--format", "json", "--tol-closed", "0.1",
                         "--tol-fd", "0.1", "--tol-deep", "0.1"});
  EXPECT_NE(o.out.find("\"tol_closed\": 0.10000000000000001"), std::string::npos);
  EXPECT_LT(o.out.find("\"calibration\""), o.out.find("\"checks\""));
  EXPECT_LT(o.out.find("\"checks\""), o.out.find("\"config\""));
  EXPECT_LT(o.out.find("\"summary\""), o.out.find("\"timing\""));
}

TEST(VerifyCli, ReportFileIsByteIdenticalAcrossRunsAndWorkers) {
  const auto a = temp_file("a.json"), b = temp_file("b.json"), c = temp_file("c.json");
  const std::vector<std::string> base = {"--suite", "axioms", "--samples", "32", "--format", "json", "--report"};
  auto with = [&](const std::filesystem::path& p, const std::string& workers) {
    std::vector<std::string> v = base;
    v.push_back(p.string());
    v.push_back("--workers");
    v.push_back(workers);
    return run(v);
  };
  const Outcome oa = with(a, "1");
  EXPECT_EQ(oa.code, kAllPass);
  EXPECT_EQ(oa.out.rfind("summary: total=13 passed=13 failed=0", 0), 0u);
  with(b, "1");
  with(c, "4");
  const std::string ja = slurp(a), jb = slurp(b), jc = slurp(c);
  ASSERT_FALSE(ja.empty());
  EXPECT_EQ(without_timing(ja).dump(), without_timing(jb).dump());
  EXPECT_EQ(without_timing(ja).dump(), without_timing(jc).dump());
  EXPECT_EQ(dump_json(nlohmann::json::parse(ja)["checks"]), dump_json(nlohmann::json::parse(jc)["checks"]));
  for (const auto& p : {a, b, c}) std::filesystem::remove(p);
}

TEST(VerifyCli, FullSuiteReportsDocumentedFailures) {
  const Outcome o = run({"--samples", "4", "--format", "json"});
  EXPECT_EQ(o.code, kCheckFailures);
  const SuiteReport r = from_json(nlohmann::json::parse(o.out));
  ASSERT_FALSE(r.checks.empty());
  EXPECT_EQ(r.checks.front().name.rfind("axioms.", 0), 0u);
  EXPECT_EQ(r.checks.back().name.rfind("thm.", 0), 0u);
  EXPECT_EQ(r.calibration.adjudications.size(), 4u);
  for (const auto& c : r.checks)
    if (!c.pass) {
      const bool known = c.name == "curv.route_equivalence" || c.name == "curv.expansion_reeb_kernel" ||
                         c.name == "curv.expansion_antisymmetry" || c.name == "curv.rbar_phi_invariance" ||
                         c.name == "curv.r0_phi_invariance";
      EXPECT_TRUE(known) << c.name;
    }
}

TEST(VerifyCli, ExecutableExitCodes) {
  const std::string exe = VERIFY_EXE;
  auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status(exe + " --suite axioms --samples 4"), 0);
  EXPECT_EQ(status(exe + " --suite nope"), 2);
  EXPECT_EQ(status(exe + " --suite axioms --samples 2 --report /nonexistent-dir/x.txt"), 3);
}
