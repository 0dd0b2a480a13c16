#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  fs::path log = fs::temp_directory_path() / "flopcheck-cli-test.log";
  std::string cmd = std::string(FLOPCHECK_CLI) + " " + args + " > " + log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("flopcheck-cli-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("sanity exit codes") {
  fs::path out = scratch("sanity");
  Run ok = cli("sanity --rank 1 --out " + out.string());
  CHECK(ok.code == 0);
  auto report = nlohmann::json::parse(slurp(out / "report-sanity.json"));
  CHECK(report["schema"] == "flopcheck/1");
  CHECK(report["status"] == "pass");
  CHECK(report["config_hash"].get<std::string>().size() == 16);

  Run bad = cli("sanity --inject-fault relation --out " + out.string());
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL  cohomology.relations.p ") != std::string::npos);

  CHECK(cli("sanity --rank 3 --out " + out.string()).code == 0);
  CHECK(cli("sanity --rank 4").code == 2);
  CHECK(cli("sanity --digits 20").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("verify --rank 3").code == 2);
  CHECK(cli("verify --path '[[0.4, 0], [-1, 0]]'").code == 2);
}

TEST_CASE("config file, env and flags") {
  fs::path out = scratch("config");
  fs::create_directories(out);
  std::ofstream(out / "cfg.json") << R"({"rank": 2, "digits": 50})";
  Run r = cli("sanity --json --config " + (out / "cfg.json").string() + " --digits 45 --out " + out.string());
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["config"]["rank"] == 2);
  CHECK(j["config"]["digits"] == 45);
  Run e = cli("sanity --json --config " + (out / "cfg.json").string() + " --out " + out.string());
  CHECK(nlohmann::json::parse(e.out)["config"]["digits"] == 50);
  std::ofstream(out / "bad.json") << R"({"rank": 2, "colour": "blue"})";
  CHECK(cli("sanity --config " + (out / "bad.json").string()).code == 2);
}

TEST_CASE("dump gamma") {
  fs::path out = scratch("gamma");
  REQUIRE(cli("dump gamma --space 'Proj(2)' --out " + out.string()).code == 0);
  auto j = nlohmann::json::parse(slurp(out / "gamma.json"));
  CHECK(j["schema"] == "flopcheck/1");
  CHECK(j["text"] == "(1/1)*1 + (-3/1*γ)*h + (9/2*γ^2 + 3/2*ζ2)*h^2");
  CHECK(cli("dump gamma --space 'Grass(2,4)' --out " + out.string()).code == 2);
  CHECK(cli("dump everything").code == 2);
}

TEST_CASE("exact dumps are byte-identical across runs") {
  fs::path a = scratch("dump-a"), b = scratch("dump-b");
  for (const char* what : {"fm-matrix", "ifunction", "gamma"}) {
    REQUIRE(cli(std::string("dump ") + what + " --out " + a.string()).code == 0);
    REQUIRE(cli(std::string("dump ") + what + " --out " + b.string()).code == 0);
  }
  for (const char* f : {"fm-matrix.json", "ifunction.json", "gamma.json"}) CHECK(slurp(a / f) == slurp(b / f));
  auto fm = nlohmann::json::parse(slurp(a / "fm-matrix.json"));
  CHECK(fm["matrix"].size() == 6);
  CHECK((fm["lattice_det"] == "1/1" || fm["lattice_det"] == "-1/1"));
}

TEST_CASE("u-matrix dumps are deterministic") {
  fs::path a = scratch("u-a"), b = scratch("u-b");
  REQUIRE(cli("dump u-matrix --z 1 --out " + a.string()).code == 0);
  REQUIRE(cli("dump u-matrix --z 1 --out " + b.string()).code == 0);
  CHECK(slurp(a / "u-matrix_z1.json") == slurp(b / "u-matrix_z1.json"));
}

TEST_CASE("verify at rank 1") {
  fs::path out = scratch("verify");
  Run r = cli("verify --rank 1 --out " + out.string());
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(slurp(out / "report-verify.json"));
  CHECK(j["extra"]["recorded_convention"] == "lower");
  Run strict = cli("verify --rank 1 --z 1 --tol-commutativity 1e-80 --out " + out.string());
  CHECK(strict.code == 1);
}
