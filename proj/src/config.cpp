#include "flopcheck/config.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>

namespace flopcheck {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

void apply_tolerances(Tolerances& t, const Json& j) {
  for (const auto& [k, v] : j.items()) {
    double x = v.is_string() ? std::stod(v.get<std::string>()) : v.get<double>();
    if (k == "transport") t.transport = x;
    else if (k == "null_loop") t.null_loop = x;
    else if (k == "loop0") t.loop0 = x;
    else if (k == "stability") t.stability = x;
    else if (k == "intertwining") t.intertwining = x;
    else if (k == "xi") t.xi = x;
    else if (k == "det") t.det = x;
    else if (k == "drift") t.drift = x;
    else if (k == "commutativity") t.commutativity = x;
    else throw ConfigError("unknown tolerance '" + k + "'");
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

void apply_json(Config& cfg, const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [k, v] : j.items()) {
      if (k == "schema") {
        if (v.get<std::string>() != kSchema) throw ConfigError("unsupported schema " + v.get<std::string>());
      } else if (k == "rank" || k == "r") {
        cfg.rank = v.get<int>();
      } else if (k == "digits") {
        cfg.digits = v.get<unsigned>();
      } else if (k == "order") {
        cfg.order = v.get<int>();
      } else if (k == "z") {
        cfg.z.clear();
        for (const auto& x : v) cfg.z.push_back(x.is_string() ? x.get<std::string>() : x.dump());
      } else if (k == "path") {
        cfg.path = v.is_string() ? v.get<std::string>() : v.dump();
      } else if (k == "tolerances") {
        apply_tolerances(cfg.tol, v);
      } else if (k == "out") {
        cfg.out = v.get<std::string>();
      } else if (k == "space") {
        cfg.space = v.get<std::string>();
      } else {
        throw ConfigError("unknown config key '" + k + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

void apply_file(Config& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  apply_json(cfg, j);
}

void apply_env(Config& cfg) {
  const char* d = std::getenv("FLOPCHECK_DIGITS");
  if (!d || !*d) return;
  char* end = nullptr;
  long v = std::strtol(d, &end, 10);
  if (*end != '\0' || v <= 0) throw ConfigError(std::string("FLOPCHECK_DIGITS is not a positive integer: ") + d);
  cfg.digits = static_cast<unsigned>(v);
}

void validate(const Config& cfg, bool sanity_only) {
  int max_rank = sanity_only ? 3 : 2;
  if (cfg.rank < 1 || cfg.rank > max_rank)
    throw ConfigError("rank must be in 1.." + std::to_string(max_rank) + (sanity_only ? "" : " (3 is sanity-only)"));
  if (cfg.digits < 40) throw ConfigError("digits must be at least 40");
  if (cfg.order < 1) throw ConfigError("order must be at least 1");
  if (cfg.z.empty()) throw ConfigError("need at least one z point");
  if (!cfg.fault.empty() && cfg.fault != "relation") throw ConfigError("unknown fault '" + cfg.fault + "'");
}

Json to_json(const Config& cfg) {
  Json tol{{"transport", format_double(cfg.tol.transport)},
           {"null_loop", format_double(cfg.tol.null_loop)},
           {"loop0", format_double(cfg.tol.loop0)},
           {"stability", format_double(cfg.tol.stability)},
           {"intertwining", format_double(cfg.tol.intertwining)},
           {"xi", format_double(cfg.tol.xi)},
           {"det", format_double(cfg.tol.det)},
           {"drift", format_double(cfg.tol.drift)},
           {"commutativity", format_double(cfg.tol.commutativity)}};
  Json j{{"schema", kSchema}, {"rank", cfg.rank}, {"digits", cfg.digits}, {"order", cfg.order},
         {"z", cfg.z},        {"path", cfg.path}, {"tolerances", tol},    {"space", cfg.space}};
  if (!cfg.fault.empty()) j["fault"] = cfg.fault;
  return j;
}

std::string config_hash(const Config& cfg) {
  std::string text = to_json(cfg).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PathSpec resolve_path(const Config& cfg) {
  std::string p = trim(cfg.path);
  if (!p.empty() && (p[0] == '[' || p[0] == '{')) {
    try {
      return path_from_json(Json::parse(p));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("bad path JSON: ") + e.what());
    }
  }
  return named_path(p);
}

std::vector<BigC> z_points(const Config& cfg) {
  std::vector<BigC> out;
  for (const auto& s : cfg.z) {
    BigC z;
    try {
      std::string t = trim(s);
      z = bigc_from_json(!t.empty() && (t[0] == '{' || t[0] == '[') ? Json::parse(t) : Json(t));
    } catch (const std::exception&) {
      throw ConfigError("bad z point '" + s + "'");
    }
    if (is_zero(z)) throw ConfigError("z points must be nonzero");
    out.push_back(z);
  }
  return out;
}

Ring parse_space(const std::string& text) {
  std::string t = trim(text);
  for (const char* sep : {"×", " x "}) {
    size_t k = t.find(sep);
    if (k != std::string::npos) return product(parse_space(t.substr(0, k)), parse_space(t.substr(k + std::string(sep).size())));
  }
  static const std::regex one(R"(^(Proj|LocalP|LocalP'|LocalP′|LocalPprime|BlowupW)\((\d+)\)$)");
  std::smatch m;
  if (!std::regex_match(t, m, one)) throw ConfigError("unknown space '" + text + "'");
  int r = std::stoi(m[2]);
  if (r < 1 || r > 3) throw ConfigError("space rank must be 1..3");
  std::string name = m[1];
  if (name == "Proj") return proj_space(r);
  if (name == "LocalP") return local_model(r);
  if (name == "BlowupW") return blowup(r);
  return local_model_prime(r);
}

}  // namespace flopcheck
