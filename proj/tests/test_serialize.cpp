#include <doctest.h>

#include "flopcheck/charclass.hpp"
#include "flopcheck/config.hpp"
#include "flopcheck/quantum.hpp"
#include "flopcheck/serialize.hpp"

using namespace flopcheck;

TEST_CASE("rational and symbolic scalars round trip") {
  for (const Rat& x : {Rat(0), Rat(-7), Rat(9, 2), Rat(-1, 3)}) CHECK(rat_from_json(to_json(x)) == x);
  CHECK(to_json(Rat(1)).get<std::string>() == "1/1");
  SymScalar s = Rat(9, 2) * SymScalar::euler_gamma() * SymScalar::euler_gamma() + Rat(3, 2) * SymScalar::zeta(2);
  CHECK(sym_from_json(to_json(s)) == s);
  CHECK_THROWS_AS(rat_from_json(Json("1/0")), Error);
}

TEST_CASE("complex numbers keep their digits") {
  ScopedDigits d(60);
  BigC z(pi_value(), -euler_gamma());
  BigC back = bigc_from_json(to_json(z));
  CHECK(abs(back - z) < pow(Real(10), -55));
  CHECK(bigc_from_json(Json("2.5")) == BigC(Real("2.5")));
}

TEST_CASE("classes round trip and carry their ring") {
  Ring P = local_model(2);
  SymClass g = gamma_class(tangent_bundle(P));
  Json j = to_json(g);
  CHECK(j["ring"] == P->label());
  CHECK(sym_class_from_json(j, P) == g);
  CHECK_THROWS_AS(sym_class_from_json(j, local_model(1)), RingMismatch);
  RatClass td = todd(tangent_bundle(P));
  CHECK(rat_class_from_json(to_json(td), P) == td);
}

TEST_CASE("exact artifacts are byte-deterministic") {
  CHECK(dump(fm_matrix_json(FlopData(1))) == dump(fm_matrix_json(FlopData(1))));
  CHECK(dump(to_json(i_function_extremal(local_model(1), 6))) ==
        dump(to_json(i_function_extremal(local_model(1), 6))));
  Json fm = fm_matrix_json(FlopData(1));
  CHECK(fm["schema"] == kSchema);
  CHECK(fm["matrix"].size() == 6);
}

TEST_CASE("paths round trip") {
  PathSpec p = named_path("rotated-lower");
  PathSpec q = path_from_json(to_json(p));
  REQUIRE(q.waypoints.size() == p.waypoints.size());
  for (size_t i = 0; i < p.waypoints.size(); ++i) CHECK(q.waypoints[i] == p.waypoints[i]);
  CHECK(q.log_q0 == p.log_q0);
}

TEST_CASE("config precedence and validation") {
  Config cfg;
  apply_json(cfg, Json::parse(R"({"rank": 2, "digits": 80, "z": ["1", 3], "tolerances": {"commutativity": 1e-9}})"));
  CHECK(cfg.rank == 2);
  CHECK(cfg.digits == 80);
  CHECK(cfg.z == std::vector<std::string>{"1", "3"});
  CHECK(cfg.tol.commutativity == doctest::Approx(1e-9));
  CHECK_THROWS_AS(apply_json(cfg, Json::parse(R"({"rnak": 2})")), ConfigError);

  setenv("FLOPCHECK_DIGITS", "70", 1);
  apply_env(cfg);
  unsetenv("FLOPCHECK_DIGITS");
  CHECK(cfg.digits == 70);

  Config bad;
  bad.digits = 30;
  CHECK_THROWS_AS(validate(bad, false), ConfigError);
  bad = Config{};
  bad.rank = 3;
  CHECK_THROWS_AS(validate(bad, false), ConfigError);
  CHECK_NOTHROW(validate(bad, true));
}

TEST_CASE("config hash is stable and sensitive") {
  Config a, b;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.order = 48;
  CHECK(config_hash(a) != config_hash(b));
  Config c;
  apply_json(c, to_json(a));
  CHECK(config_hash(c) == config_hash(a));
}

TEST_CASE("space parsing") {
  CHECK(parse_space("Proj(2)")->size() == 3);
  CHECK(parse_space("Proj(1) x Proj(2)")->size() == 6);
  CHECK(parse_space("Proj(1)×Proj(1)")->size() == 4);
  CHECK(parse_space("LocalP(1)")->size() == 6);
  CHECK_THROWS_AS(parse_space("Grass(2,4)"), ConfigError);
}
