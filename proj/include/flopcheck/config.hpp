#pragma once

#include "flopcheck/continuation.hpp"
#include "flopcheck/serialize.hpp"

#include <string>
#include <vector>

namespace flopcheck {

struct Tolerances {
  double transport = 1e-30;
  double null_loop = 1e-25;
  double loop0 = 1e-20;
  double stability = 1e-12;
  double intertwining = 1e-12;
  double xi = 1e-10;
  double det = 1e-10;
  double drift = 1e-40;
  double commutativity = 1e-8;
};

struct Config {
  int rank = 1;
  unsigned digits = kDefaultDigits;
  int order = 24;
  /// Evaluation points for z, as decimal strings; log z is taken on the principal branch.
  std::vector<std::string> z{"1", "2"};
  /// A named route or inline JSON waypoints.
  std::string path = "default";
  Tolerances tol;
  std::string out = "flopcheck-out";
  /// Model for `dump gamma`.
  std::string space = "Proj(2)";
  /// Test hook: "relation" swaps in a corrupted local-model presentation.
  std::string fault;
};

/// Overrides fields present in j; unknown keys are a ConfigError.
void apply_json(Config& cfg, const Json& j);
void apply_file(Config& cfg, const std::string& path);
/// FLOPCHECK_DIGITS.
void apply_env(Config& cfg);
/// rank 1..2 (3 with sanity_only), digits >= 40, order >= 1, at least one z.
void validate(const Config& cfg, bool sanity_only);

Json to_json(const Config& cfg);
/// FNV-1a 64 of the canonical config JSON, as 16 hex digits.
std::string config_hash(const Config& cfg);

PathSpec resolve_path(const Config& cfg);
std::vector<BigC> z_points(const Config& cfg);
/// Proj(r), LocalP(r), LocalP'(r), BlowupW(r), or A x B of those.
Ring parse_space(const std::string& text);

}  // namespace flopcheck
