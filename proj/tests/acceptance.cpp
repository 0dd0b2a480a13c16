// One PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.
#include "flopcheck/commands.hpp"
#include "flopcheck/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace flopcheck;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

std::string sci(const Real& x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", static_cast<double>(x));
  return buf;
}

Real ten(int e) { return pow(Real(10), e); }

int failures = 0;

void criterion(int n, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > budget_s) o.require(false, "over time budget");
  if (!o.pass) ++failures;
  std::printf("%s  criterion %d: %s  %.2fs/%gs%s\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), s, budget_s,
              o.note.str().c_str());
  std::fflush(stdout);
}

RatClass gen(const Ring& R, int g) { return RatClass::generator(R, g); }

}  // namespace

int main() {
  set_working_digits(60);

  criterion(1, "HRR on Proj(r), r<=3, -r<=k<=6", 1, [](Outcome& o) {
    for (int r = 1; r <= 3; ++r) {
      Ring P = proj_space(r);
      RatClass td = todd(tangent_bundle(P));
      for (int k = -r; k <= 6; ++k) {
        Rat chi = integrate(mul(chern_character(KClass::line(P, k)), td));
        Rat want = k >= 0 ? Rat(binomial(k + r, r)) : Rat(0);
        o.require(chi == want, "r=" + std::to_string(r) + " k=" + std::to_string(k));
      }
    }
  });

  criterion(2, "intersection numbers, adjunction, graph images, crepancy", 5, [](Outcome& o) {
    for (int r = 1; r <= 3; ++r) {
      Ring P = local_model(r);
      for (int i = 0; i <= r; ++i)
        o.require(integrate(mul(power(gen(P, 0), i), power(gen(P, 1), 2 * r + 1 - i))) == Rat(binomial(2 * r - i, r - i)),
                  "intersection r=" + std::to_string(r));
    }
    for (int r = 1; r <= 2; ++r) {
      RingMap p = blowdown(r);
      const int n = p.source()->size();
      o.require(p.push_matrix() * p.matrix() == RatMatrix::Identity(n, n), "p_* p^* = id");
      Ring W = p.target();
      RatClass E = gen(W, 2) - gen(W, 0) - gen(W, 1);
      o.require(c1(tangent_bundle(W)) == p.pullback(c1(tangent_bundle(p.source()))) - RatClass(W, Rat(r) * E.coeffs),
                "crepancy r=" + std::to_string(r));
    }
    FlopData fd(1);
    o.require(graph_correspondence(fd, gen(fd.P, 0)) == gen(fd.Pp, 1) - gen(fd.Pp, 0), "image of h");
    o.require(graph_correspondence(fd, gen(fd.P, 1)) == gen(fd.Pp, 1), "image of xi");
  });

  criterion(3, "FM unit, rank, Euler pairing, unimodularity, r=1,2", 30, [](Outcome& o) {
    for (int r = 1; r <= 2; ++r) {
      FlopData fd(r);
      o.require(fm_transform(fd, RatClass::one(fd.P)) == RatClass::one(fd.Pp), "unit");
      auto lb = basis_line_bundles(fd.P);
      std::vector<RatClass> img;
      for (const auto& e : lb) {
        img.push_back(fm_apply(fd, e).image);
        o.require(img.back().coeffs[0] == chern_character(e).coeffs[0], "rank");
      }
      for (size_t i = 0; i < lb.size(); ++i)
        for (size_t j = 0; j < lb.size(); ++j)
          o.require(euler_pairing(lb[i], lb[j]) == euler_pairing_ch(img[i], img[j]), "Euler pairing");
      RatMatrix K = fm_lattice_matrix(fd);
      for (Eigen::Index i = 0; i < K.rows(); ++i)
        for (Eigen::Index j = 0; j < K.cols(); ++j) o.require(denominator(K(i, j)) == 1, "integral lattice matrix");
      Rat det = determinant(K);
      o.require(det == 1 || det == -1, "det");
      o.note << " r=" << r << ":det=" << format_rat(det);
    }
  });

  criterion(4, "Gamma classes of Proj(1), Proj(2) and Kunneth", 5, [](Outcome& o) {
    SymScalar g = SymScalar::euler_gamma();
    Ring P1 = proj_space(1), P2 = proj_space(2);
    SymClass h1 = cast_class<SymScalar>(gen(P1, 0)), h2 = cast_class<SymScalar>(gen(P2, 0));
    o.require(gamma_class(tangent_bundle(P1)) == SymClass::one(P1) + (SymScalar(-2L) * g) * h1, "Proj(1)");
    o.require(gamma_class(tangent_bundle(P2)) ==
                  SymClass::one(P2) + (SymScalar(-3L) * g) * h2 + (Rat(9, 2) * g * g + Rat(3, 2) * SymScalar::zeta(2)) * mul(h2, h2),
              "Proj(2)");
    for (auto [a, b] : {std::pair{1, 1}, std::pair{1, 2}}) {
      Ring A = proj_space(a), B = proj_space(b), AB = product(A, B);
      o.require(gamma_class(tangent_bundle(AB)) == mul(pullback(projection(AB, 0), gamma_class(tangent_bundle(A))),
                                                       pullback(projection(AB, 1), gamma_class(tangent_bundle(B)))),
                "Kunneth " + AB->label());
    }
  });

  criterion(5, "QDE annihilates the I-function through q^24, mirror map trivial, r=1,2", 60, [](Outcome& o) {
    for (int r = 1; r <= 2; ++r) {
      ISeries s = i_function_extremal(local_model(r), 24);
      o.require(qde_operator_check(s).pass, "QDE r=" + std::to_string(r));
      for (const auto& x : mirror_map_check(s)) o.require(is_zero(x), "mirror map r=" + std::to_string(r));
    }
  });

  criterion(6, "transport vs series, null loop, loop around q=0, r=1,2", 120, [](Outcome& o) {
    for (int r = 1; r <= 2; ++r) {
      FlopNumerics fn(r, BigC(1));
      BigC a(Real("0.2")), b(Real("0.5"));
      PathSpec disk{"disk", {a, BigC(Real("0.35"), Real("0.1")), b}, log(a)};
      CVector moved = transport_jets(fn.sys, fn.z(), fn.ev.jets(a, log(a)), disk).value.col(0);
      CVector direct = fn.ev.jets(b, log(b));
      Real t = inf_norm(CVector(moved - direct)) / inf_norm(direct);
      const int n = fn.sys.n();
      Real nl = max_abs_entry(monodromy(fn, named_path("null-loop")) - CMatrix::Identity(n, n));
      CMatrix want = fn.ev.prefactor(fn.ev.h(), BigC(Real(0), 2 * pi_value()));
      Real l0 = max_abs_entry(monodromy(fn, named_path("loop0")) - want);
      o.require(t < ten(-30), "transport");
      o.require(nl < ten(-25), "null loop");
      o.require(l0 < ten(-20), "loop0");
      o.note << " r=" << r << ":" << sci(t) << "/" << sci(nl) << "/" << sci(l0);
    }
  });

  criterion(7, "U stability, xi-intertwining, det, precision-doubling drift, r=1,2", 300, [](Outcome& o) {
    for (int r = 1; r <= 2; ++r) {
      const std::string route = r == 1 ? "lower" : "rotated-lower";
      CMatrix u60;
      {
        ScopedDigits d(60);
        FlopNumerics fn(r, BigC(1));
        UMatrix u = extract_u(fn, named_path(route));
        o.require(u.residuals.at("stability") < ten(-12), "stability");
        o.require(u.residuals.at("xi_intertwining") < ten(-10), "xi");
        o.require(u.det_abs > ten(-10), "det");
        o.note << " r=" << r << ":" << sci(u.residuals.at("stability")) << "/" << sci(u.residuals.at("xi_intertwining"))
               << "/|det|=" << sci(u.det_abs);
        u60 = u.matrix;
      }
      ScopedDigits d(120);
      FlopNumerics fn(r, BigC(1));
      Real drift = max_abs_entry(extract_u(fn, named_path(route)).matrix - u60);
      o.require(drift < ten(-40), "drift");
      o.note << "/drift=" << sci(drift);
    }
  });

  criterion(8, "commutativity at z0 in {1,2}, r=1,2, single passing convention", 630, [](Outcome& o) {
    for (int r = 1; r <= 2; ++r) {
      ScopedDigits d(60);
      FlopData fd(r);
      auto t0 = std::chrono::steady_clock::now();
      std::string seen;
      for (int z : {1, 2}) {
        FlopNumerics fn(r, BigC(z));
        PsiSamples s = sample_psi(fd, BigC(z), log(BigC(z)));
        MainResult m = commutes_under_convention(fn, s, default_path(), 1e-8);
        o.require(m.passing == 1 && m.chosen.residual < Real(1e-8), "r=" + std::to_string(r) + " z=" + std::to_string(z));
        if (!seen.empty()) o.require(seen == m.recorded, "convention differs between z values");
        seen = m.recorded;
        std::printf("      r=%d z0=%d:", r, z);
        for (const auto& c : m.scan) std::printf(" %s=%s", c.name.c_str(), sci(c.residual).c_str());
        std::printf("  -> %s (%s)\n", m.recorded.empty() ? "none" : m.recorded.c_str(), sci(m.chosen.residual).c_str());
      }
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      o.require(s < (r == 1 ? 30 : 600), "time budget r=" + std::to_string(r));
      o.note << " r=" << r << ":" << seen << " " << std::fixed << std::setprecision(1) << s << "s";
    }
  });

  return failures == 0 ? 0 : 1;
}
