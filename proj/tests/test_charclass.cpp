#include <doctest.h>

#include "flopcheck/charclass.hpp"

using namespace flopcheck;

namespace {

RatClass gen(const Ring& R, int g) { return RatClass::generator(R, g); }

RootBundle line(const Ring& R, const RatClass& x) { return RootBundle{R, {{x, 1}}}; }

SymClass sym(const RatClass& a) { return cast_class<SymScalar>(a); }

}  // namespace

TEST_CASE("chern character of line bundles") {
  Ring P1 = proj_space(1);
  CHECK(chern_character(RootBundle{P1, {{RatClass::zero(P1), 1}}}) == RatClass::one(P1));
  CHECK(chern_character(line(P1, gen(P1, 0))) == RatClass::one(P1) + gen(P1, 0));
  Ring P = local_model(1);
  RatClass h = gen(P, 0), xi = gen(P, 1);
  RatClass expected = RatClass::one(P) + xi + RatClass(P, Rat(1, 2) * power(xi, 2).coeffs) +
                      RatClass(P, Rat(1, 3) * mul(h, power(xi, 2)).coeffs);
  CHECK(chern_character(line(P, xi)) == expected);
  // ch is multiplicative on line bundles
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      RatClass x = RatClass(P, Rat(a) * h.coeffs) + RatClass(P, Rat(b) * xi.coeffs);
      CHECK(chern_character(line(P, x + xi)) == mul(chern_character(line(P, x)), chern_character(line(P, xi))));
    }
  }
}

TEST_CASE("todd classes") {
  Ring P1 = proj_space(1), P2 = proj_space(2);
  CHECK(todd(trivial_bundle(P2)) == RatClass::one(P2));
  CHECK(todd(tangent_bundle(P1)) == RatClass::one(P1) + gen(P1, 0));
  RatClass h = gen(P2, 0);
  CHECK(todd(tangent_bundle(P2)) == RatClass::one(P2) + RatClass(P2, Rat(3, 2) * h.coeffs) + power(h, 2));
}

TEST_CASE("hirzebruch riemann roch on projective spaces") {
  for (int r = 1; r <= 3; ++r) {
    Ring Pr = proj_space(r);
    RatClass td = todd(tangent_bundle(Pr));
    for (int k = -r; k <= 6; ++k) {
      RatClass ch = chern_character(line(Pr, RatClass(Pr, Rat(k) * gen(Pr, 0).coeffs)));
      // number of degree-k monomials in r+1 variables (zero for -r <= k < 0)
      Rat expected = k >= 0 ? Rat(binomial(k + r, r)) : Rat(0);
      CHECK(integrate(mul(ch, td)) == expected);
    }
  }
}

TEST_CASE("newton identities recover power sums") {
  for (int r = 1; r <= 3; ++r) {
    for (const Ring& R : {local_model(r), blowup(r)}) {
      RootBundle T = tangent_bundle(R);
      auto p = newton_power_sums(chern_classes(T));
      for (int k = 1; k <= R->dim(); ++k) {
        RatClass direct = RatClass::zero(R);
        for (const auto& [x, m] : T.roots) direct += RatClass(R, Rat(m) * power(x, k).coeffs);
        CHECK(p[k - 1] == direct);
      }
    }
  }
}

TEST_CASE("gamma classes") {
  SymScalar g = SymScalar::euler_gamma(), z2 = SymScalar::zeta(2);
  Ring P1 = proj_space(1), P2 = proj_space(2);
  CHECK(gamma_class(trivial_bundle(P2)) == SymClass::one(P2));
  CHECK(gamma_class(tangent_bundle(P1)) == SymClass::one(P1) + (SymScalar(-2L) * g) * sym(gen(P1, 0)));
  SymScalar c2 = (Rat(9, 2) * g * g) + (Rat(3, 2) * z2);
  RatClass h = gen(P2, 0);
  CHECK(gamma_class(tangent_bundle(P2)) ==
        SymClass::one(P2) + (SymScalar(-3L) * g) * sym(h) + c2 * sym(power(h, 2)));
}

TEST_CASE("kunneth multiplicativity") {
  for (auto [a, b] : {std::pair{1, 1}, std::pair{1, 2}}) {
    Ring A = proj_space(a), B = proj_space(b);
    Ring AB = product(A, B);
    RingMap pa = projection(AB, 0), pb = projection(AB, 1);
    RootBundle T = tangent_bundle(AB);
    CHECK(gamma_class(T) == mul(pullback(pa, gamma_class(tangent_bundle(A))),
                                pullback(pb, gamma_class(tangent_bundle(B)))));
    CHECK(todd(T) == mul(pa.pullback(todd(tangent_bundle(A))), pb.pullback(todd(tangent_bundle(B)))));
    CHECK(chern_total(T) ==
          mul(pa.pullback(chern_total(tangent_bundle(A))), pb.pullback(chern_total(tangent_bundle(B)))));
  }
}

TEST_CASE("first chern classes and crepancy") {
  for (int r = 1; r <= 3; ++r) {
    Ring P = local_model(r);
    CHECK(c1(tangent_bundle(P)) == RatClass(P, Rat(r + 2) * gen(P, 1).coeffs));
    CHECK(homogeneous_part(chern_total(tangent_bundle(P)), 2) == c1(tangent_bundle(P)));
    RingMap p = blowdown(r);
    Ring W = p.target();
    RatClass E = gen(W, 2) - gen(W, 0) - gen(W, 1);
    CHECK(c1(tangent_bundle(W)) == p.pullback(c1(tangent_bundle(P))) - RatClass(W, Rat(r) * E.coeffs));
  }
}

TEST_CASE("unit inverse") {
  Ring P = local_model(2);
  RatClass u = todd(tangent_bundle(P));
  CHECK(mul(u, unit_inverse(u)) == RatClass::one(P));
}
