#pragma once

#include "flopcheck/quantum.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flopcheck {

/// Piecewise-linear q-path; log q starts at log_q0 and is continued along it.
struct PathSpec {
  std::string id;
  std::vector<BigC> waypoints;
  BigC log_q0;
};

/// Waypoints from (re, im) pairs; log q starts on the principal branch.
PathSpec make_path(const std::string& id, const std::vector<std::pair<double, double>>& pts);
/// 0.4 -> 0.4+1.2i -> 2.5+1.2i -> 2.5.
PathSpec default_path();
/// upper, lower, rotated-upper, rotated-lower, loop0, loop-inf, null-loop; throws ConfigError otherwise.
PathSpec named_path(const std::string& name);
/// Square loop based at 0.4 around q = σ only.
PathSpec sigma_loop(int sigma);
/// Follows a, then b; b must start where a ends. The log branch of a is kept.
PathSpec concatenate(const PathSpec& a, const PathSpec& b);
/// Throws ConfigError if a segment passes within 0.1 of 0 or σ.
void validate_path(const PathSpec& path, int sigma);
/// Continued log q at the last waypoint.
BigC continued_log(const PathSpec& path);
PathSpec reversed(const PathSpec& path);

struct TransportResult {
  CMatrix value;
  BigC q;
  BigC log_q;
  int steps = 0;
  int max_terms = 0;
};

/// Solves z q (1 - σq) dG/dq = (A0 + q A1) G along the path by Taylor steps of at most a
/// third of the distance to the nearest singular point, summing each step until the
/// terms fall below 10^{-(digits-10)} relative to the running value.
TransportResult transport(const JetSystem& sys, const BigC& z0, const CMatrix& g0, const PathSpec& path);
TransportResult transport_jets(const JetSystem& sys, const BigC& z0, const CVector& g0, const PathSpec& path);

/// Evaluators for both sides of the flop at one z.
struct FlopNumerics {
  JetSystem sys, sys_prime;
  IEvaluator ev, ev_prime;
  FlopNumerics(int r, const BigC& z0);
  int r() const { return sys.r; }
  const BigC& z() const { return ev.z(); }

  /// Keyed by path id.
  std::map<std::string, struct UMatrix> u_cache;
  std::map<std::string, CMatrix> monodromy_cache;
};

struct UMatrix {
  int r = 0;
  BigC z0;
  std::string convention;
  PathSpec path;
  CMatrix matrix;
  /// stability, intertwining, xi_intertwining
  std::map<std::string, Real> residuals;
  /// base, terminal, prime
  std::map<std::string, Real> conditions;
  Real det_abs;
};

/// 𝕌 = C'(q1) cont[C](q1)^{-1}, with a stability re-extraction at 1.4 q1 and an
/// intertwining re-check at (1.2 + 0.15i) q1.
UMatrix extract_u(FlopNumerics& fn, const PathSpec& path);

/// Left monodromy C(end) C(start)^{-1} of the solution frame along a closed loop.
CMatrix monodromy(FlopNumerics& fn, const PathSpec& loop);
/// Numerical rank with relative pivot threshold.
int numeric_rank(const CMatrix& m, const Real& rel_tol);

struct Convention {
  std::string name;
  PathSpec path;
  /// Right factors: M0^{m0} then Minf^{minf}, taken at the base point.
  int m0 = 0;
  int minf = 0;
};

/// The default route, its reflection, and compositions with the q = 0 and q = ∞
/// monodromies; for even r also the half-turn routes past q = σ.
std::vector<Convention> convention_set(int r);
UMatrix extract_with_convention(FlopNumerics& fn, const Convention& c);

}  // namespace flopcheck
