#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "sasaki/report.hpp"
#include "sasaki/suites.hpp"

namespace sasaki {

enum ExitCode : int { kAllPass = 0, kCheckFailures = 1, kUsage = 2, kRuntime = 3 };

/// Renders the report in the configured format.
inline std::string render(const SuiteReport& r, const std::string& format) {
  return format == "json" ? emit_json(r) : emit_text(r);
}

/// Writes to `path`; throws Error when the file cannot be written.
inline void write_report(const std::string& text, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open report path for writing: " + path);
  f << text;
  f.flush();
  if (!f) throw Error("failed writing report to: " + path);
}

/// The `verify` command. Report goes to `--report` if given, else to `out`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string report_path;
  CLI::App app{"Numerical verification of 3-Sasakian and H-connection identities on S^(4n+3)"};
  app.add_option("--n", cfg.n, "quaternionic dimension, sphere S^(4n+3)");
  app.add_option("--seed", cfg.seed, "64-bit RNG seed");
  app.add_option("--samples", cfg.samples, "samples per check");
  app.add_option("--fd-step", cfg.fd_step, "finite-difference step");
  app.add_option("--tol-closed", cfg.tol.closed, "closed-form tolerance tier");
  app.add_option("--tol-fd", cfg.tol.fd, "finite-difference tolerance tier");
  app.add_option("--tol-deep", cfg.tol.deep, "deep (traced) tolerance tier");
  app.add_option("--suite", cfg.suites, "suite to run (repeatable); default all");
  app.add_option("--report", report_path, "write the report to this file");
  app.add_option("--format", cfg.format, "text or json");
  app.add_option("--workers", cfg.workers, "threads per check; results do not depend on it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAllPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  if (!report_path.empty()) cfg.report_path = report_path;

  try {
    cfg.validate();
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  SuiteReport report;
  try {
    report = execute(cfg);
  } catch (const CheckError& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntime;
  } catch (const Error& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntime;
  }

  const std::string text = render(report, cfg.format);
  if (cfg.report_path) {
    try {
      write_report(text, *cfg.report_path);
    } catch (const Error& e) {
      err << "runtime error: " << e.what() << '\n';
      return kRuntime;
    }
    out << "summary: total=" << report.summary.total << " passed=" << report.summary.passed
        << " failed=" << report.summary.failed << '\n';
  } else {
    out << text;
  }
  return report.summary.failed == 0 ? kAllPass : kCheckFailures;
}

}  // namespace sasaki
