#include <doctest.h>

#include "flopcheck/quantum.hpp"

using namespace flopcheck;

namespace {
Real tol(int d) { return pow(Real(10), -d); }

RatMatrix block_diag(const RatMatrix& x, int copies) {
  const Eigen::Index n = x.rows();
  RatMatrix out = RatMatrix::Zero(n * copies, n * copies);
  for (int k = 0; k < copies; ++k) out.block(k * n, k * n, n, n) = x;
  return out;
}
}  // namespace

TEST_CASE("leading terms of the I-function") {
  Ring P = local_model(1);
  ISeries s = i_function_extremal(P, 4);
  CHECK(s.coeffs[0] == ZClass{{0, RatClass::one(P)}});
  RatClass h = RatClass::generator(P, 0), xi = RatClass::generator(P, 1);
  RatClass a = power(xi - h, 2);
  // (ξ-h)^2 (z^{-2} - 2h z^{-3})
  ZClass expected{{-2, a}, {-3, RatClass(P, Rat(-2) * mul(h, a).coeffs)}};
  ZClass got = s.coeffs[1];
  for (auto it = got.begin(); it != got.end();) it = is_zero(it->second) ? got.erase(it) : std::next(it);
  CHECK(got == expected);
  CHECK(is_homogeneous(s));
  CHECK_THROWS_AS(i_function_extremal(P, 0), Error);
}

TEST_CASE("quantum differential operator annihilates the I-function") {
  for (int r = 1; r <= 2; ++r) {
    ISeries s = i_function_extremal(local_model(r), 24);
    CHECK(is_homogeneous(s));
    CHECK(qde_operator_check(s).pass);
    CHECK(jet_closure_check(s).pass);
    for (const RatClass& c : mirror_map_check(s)) CHECK(is_zero(c));
    ISeries bad = s;
    for (auto& [e, c] : bad.coeffs[3]) c = -c;
    SeriesCheck res = qde_operator_check(bad);
    CHECK_FALSE(res.pass);
    CHECK(res.failing_order == 3);
  }
}

TEST_CASE("xi multiplication commutes with the jet system") {
  for (int r = 1; r <= 2; ++r) {
    JetSystem sys = make_jet_system(local_model(r));
    RatMatrix X = block_diag(sys.xi_mat, r + 1);
    CHECK(sys.a0 * X == X * sys.a0);
    CHECK(sys.a1 * X == X * sys.a1);
  }
}

TEST_CASE("numeric coefficients match the exact series") {
  ScopedDigits d(60);
  for (int r = 1; r <= 2; ++r) {
    Ring P = local_model(r);
    IEvaluator ev(make_jet_system(P), BigC(2));
    auto exact = numeric_coefficients(i_function_extremal(P, 24), BigC(2));
    for (int k = 0; k <= 24; ++k) CHECK(inf_norm(CVector(ev.coefficient(k) - exact[k])) < tol(50));
  }
}

TEST_CASE("solution frames") {
  ScopedDigits d(60);
  for (int r = 1; r <= 2; ++r) {
    Ring P = local_model(r);
    IEvaluator ev(make_jet_system(P), BigC(1));
    BigC q0(Real("1e-30"));
    Frame f = solution_frame(ev, q0, log(q0), true);
    CHECK(max_abs_entry(f.matrix - CMatrix::Identity(P->size(), P->size())) < tol(25));

    // column (0,0) is the I-function itself
    BigC q(Real("0.05"));
    Frame g = solution_frame(ev, q, log(q));
    auto exact = numeric_coefficients(i_function_extremal(P, 48), BigC(1));
    CVector direct = CVector::Constant(P->size(), BigC(0));
    BigC qd(1);
    for (const auto& c : exact) {
      direct += qd * c;
      qd *= q;
    }
    direct = ev.prefactor(ev.h(), log(q)) * direct;
    CHECK(inf_norm(CVector(g.matrix.col(0) - direct)) < tol(55));

    for (const char* s : {"0.4", "-0.3", "0.2"}) {
      BigC qs(Real(s), Real("0.1"));
      CHECK(abs(determinant(solution_frame(ev, qs, log(qs)).matrix)) > tol(20));
    }
  }
  IEvaluator ev(make_jet_system(local_model(1)), BigC(1));
  BigC q(Real("0.4"));
  Frame f = solution_frame(ev, q, log(q));
  MESSAGE("r=1 frame condition number at q=0.4: " << format_real(f.condition));
  CHECK(f.condition < Real(1e6));
}
