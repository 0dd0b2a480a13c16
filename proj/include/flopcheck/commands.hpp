#pragma once

#include "flopcheck/config.hpp"
#include "flopcheck/verify.hpp"

#include <functional>
#include <string>
#include <vector>

namespace flopcheck {

struct Check {
  std::string name;
  bool pass = false;
  std::string measured;
  std::string tolerance;
  double seconds = 0;
  /// Reported but not part of the overall status.
  bool informational = false;
  std::string detail;
};

struct Report {
  std::string command;
  Config config;
  std::vector<Check> checks;
  Json extra = Json::object();

  bool pass() const;
  Json to_json() const;
  /// One line per check.
  std::string summary() const;
};

/// Exact suites for cohomology, characteristic classes, FM and (rank <= 2) the I-function.
Report cmd_sanity(const Config& cfg);
/// 𝕌 extraction and the commutativity residual at every configured z.
Report cmd_verify(const Config& cfg);
/// what: gamma, fm-matrix, ifunction, u-matrix. Files go to cfg.out.
Report cmd_dump(const std::string& what, const Config& cfg);

/// Outcome of one convention at one z.
struct ConventionResult {
  std::string name;
  Real residual;
  UMatrix u;
};

/// Tries the configured route first; if it fails, scans convention_set(r).
struct MainResult {
  std::string recorded;
  /// Empty when the configured route passed outright.
  std::vector<ConventionResult> scan;
  ConventionResult chosen;
  int passing = 0;
};
MainResult commutes_under_convention(FlopNumerics& fn, const PsiSamples& s, const PathSpec& route, double tol);

}  // namespace flopcheck
