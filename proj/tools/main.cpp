#include "flopcheck/commands.hpp"
#include "flopcheck/errors.hpp"
#include "flopcheck/serialize.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

// Flag values; unset options leave file/env settings alone.
struct Flags {
  std::string config_file;
  std::optional<int> rank;
  std::optional<unsigned> digits;
  std::optional<int> order;
  std::vector<std::string> z;
  std::optional<std::string> path, out, space, fault;
  std::optional<double> tol_transport, tol_null_loop, tol_loop0, tol_stability, tol_intertwining, tol_xi,
      tol_det, tol_drift, tol_commutativity;
  bool json = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_file, "JSON config file")->check(CLI::ExistingFile);
  app->add_option("--rank", f.rank, "flop rank r");
  app->add_option("--digits", f.digits, "working decimal digits");
  app->add_option("--order", f.order, "minimum q-truncation order D");
  app->add_option("--z", f.z, "evaluation points for z")->delimiter(',');
  app->add_option("--path", f.path, "named route or JSON waypoint list");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--space", f.space, "model for dump gamma, e.g. Proj(2) or 'Proj(1) x Proj(2)'");
  app->add_option("--tol-transport", f.tol_transport);
  app->add_option("--tol-null-loop", f.tol_null_loop);
  app->add_option("--tol-loop0", f.tol_loop0);
  app->add_option("--tol-stability", f.tol_stability);
  app->add_option("--tol-intertwining", f.tol_intertwining);
  app->add_option("--tol-xi", f.tol_xi);
  app->add_option("--tol-det", f.tol_det);
  app->add_option("--tol-drift", f.tol_drift);
  app->add_option("--tol-commutativity", f.tol_commutativity);
  app->add_flag("--json", f.json, "print the JSON report instead of the summary");
  app->add_option("--inject-fault", f.fault)->group("");
}

flopcheck::Config resolve(const Flags& f) {
  flopcheck::Config cfg;
  if (!f.config_file.empty()) flopcheck::apply_file(cfg, f.config_file);
  flopcheck::apply_env(cfg);
  auto set = [](auto& dst, const auto& src) {
    if (src) dst = *src;
  };
  set(cfg.rank, f.rank);
  set(cfg.digits, f.digits);
  set(cfg.order, f.order);
  if (!f.z.empty()) cfg.z = f.z;
  set(cfg.path, f.path);
  set(cfg.out, f.out);
  set(cfg.space, f.space);
  set(cfg.fault, f.fault);
  set(cfg.tol.transport, f.tol_transport);
  set(cfg.tol.null_loop, f.tol_null_loop);
  set(cfg.tol.loop0, f.tol_loop0);
  set(cfg.tol.stability, f.tol_stability);
  set(cfg.tol.intertwining, f.tol_intertwining);
  set(cfg.tol.xi, f.tol_xi);
  set(cfg.tol.det, f.tol_det);
  set(cfg.tol.drift, f.tol_drift);
  set(cfg.tol.commutativity, f.tol_commutativity);
  return cfg;
}

int finish(const flopcheck::Report& rep, bool json) {
  namespace fs = std::filesystem;
  const std::string name = "report-" + rep.command.substr(0, rep.command.find(' ')) + ".json";
  const fs::path p = fs::path(rep.config.out) / name;
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << flopcheck::dump(rep.to_json());
  if (json) {
    std::cout << flopcheck::dump(rep.to_json());
  } else {
    std::cout << rep.summary() << "report: " << p.string() << "\n";
  }
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flopcheck: flop commutativity checks on the projective local model"};
  app.require_subcommand(1);
  Flags flags;
  CLI::App* sanity = app.add_subcommand("sanity", "exact cohomology, class, FM and I-function suites");
  CLI::App* verify = app.add_subcommand("verify", "extract U and test commutativity");
  CLI::App* dump = app.add_subcommand("dump", "write JSON artifacts");
  std::string what;
  dump->add_option("what", what, "gamma | fm-matrix | ifunction | u-matrix")
      ->required()
      ->check(CLI::IsMember({"gamma", "fm-matrix", "ifunction", "u-matrix"}));
  for (CLI::App* sub : {sanity, verify, dump}) add_common(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    flopcheck::Config cfg = resolve(flags);
    if (sanity->parsed()) return finish(flopcheck::cmd_sanity(cfg), flags.json);
    if (verify->parsed()) return finish(flopcheck::cmd_verify(cfg), flags.json);
    return finish(flopcheck::cmd_dump(what, cfg), flags.json);
  } catch (const flopcheck::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
