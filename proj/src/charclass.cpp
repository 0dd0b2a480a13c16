#include "flopcheck/charclass.hpp"

namespace flopcheck {

namespace {

RatClass gen(const Ring& R, int g) { return RatClass::generator(R, g); }

void append_roots(RootBundle& into, const RootBundle& from, const RingMap& f) {
  for (const auto& [x, m] : from.roots) into.roots.emplace_back(f.pullback(x), m);
}

}  // namespace

RootBundle trivial_bundle(const Ring& ring) { return RootBundle{ring, {}}; }

RootBundle tangent_bundle(const Ring& R) {
  const long n = R->r() + 1;
  switch (R->kind()) {
    case RingKind::Proj:
      return RootBundle{R, {{gen(R, 0), n}}};
    case RingKind::LocalP:
    case RingKind::LocalPPrime: {
      RatClass h = gen(R, 0), xi = gen(R, 1);
      return RootBundle{R, {{h, n}, {xi, 1}, {xi - h, n}}};
    }
    case RingKind::Blowup: {
      RatClass h1 = gen(R, 0), h2 = gen(R, 1), z = gen(R, 2);
      return RootBundle{R, {{h1, n}, {h2, n}, {z, 1}, {z - h1 - h2, 1}}};
    }
    case RingKind::Product: {
      RootBundle out{R, {}};
      for (int side = 0; side < 2; ++side) append_roots(out, tangent_bundle(R->factors()[side]), projection(R, side));
      return out;
    }
  }
  throw Error("unknown ring kind");
}

RatClass unit_inverse(const RatClass& u) {
  RatClass n = u - RatClass::one(u.ring);
  if (n.coeffs[0] != 0) throw Error("unit_inverse needs degree-0 part 1");
  std::vector<Rat> geo(u.ring->dim() + 1);
  for (size_t k = 0; k < geo.size(); ++k) geo[k] = (k % 2) ? -1 : 1;
  return power_series(n, geo);
}

RatClass chern_total(const RootBundle& b) {
  RatClass c = RatClass::one(b.ring);
  for (const auto& [x, m] : b.roots) c = mul(c, power(RatClass::one(b.ring) + x, static_cast<int>(m)));
  return c;
}

std::vector<RatClass> chern_classes(const RootBundle& b) {
  RatClass c = chern_total(b);
  std::vector<RatClass> out;
  for (int k = 0; k <= b.ring->dim(); ++k) out.push_back(homogeneous_part(c, 2 * k));
  return out;
}

std::vector<RatClass> newton_power_sums(const std::vector<RatClass>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<RatClass> p(n + 1, RatClass::zero(c[0].ring));
  for (int k = 1; k <= n; ++k) {
    // p_k = (-1)^{k-1} k c_k + sum_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i}
    RatClass acc(c[0].ring, Rat((k % 2) ? k : -k) * c[k].coeffs);
    for (int i = 1; i < k; ++i) {
      RatClass t = mul(c[i], p[k - i]);
      if (i % 2) acc += t;
      else acc -= t;
    }
    p[k] = acc;
  }
  return {p.begin() + 1, p.end()};
}

RatClass chern_character(const RootBundle& b) {
  RatClass ch = RatClass::zero(b.ring);
  // Trivial summands are not listed, so ch counts only the listed roots.
  for (const auto& [x, m] : b.roots) ch += RatClass(b.ring, Rat(m) * exp_class(x).coeffs);
  return ch;
}

RatClass todd(const RootBundle& b) {
  auto td = todd_series(b.ring->dim());
  RatClass out = RatClass::one(b.ring);
  for (const auto& [x, m] : b.roots) out = mul(out, power(power_series(x, td), static_cast<int>(m)));
  return out;
}

SymClass gamma_class(const RootBundle& b, int max_zeta) {
  const int n = b.ring->dim();
  auto p = newton_power_sums(chern_classes(b));
  SymClass expo = SymScalar(-1L) * SymScalar::euler_gamma() * cast_class<SymScalar>(p[0]);
  for (int k = 2; k <= n; ++k) {
    SymScalar coef = SymScalar::zeta(k, max_zeta) * Rat((k % 2) ? -1 : 1, k);
    expo += coef * cast_class<SymScalar>(p[k - 1]);
  }
  return exp_class(expo);
}

RatClass c1(const RootBundle& b) {
  RatClass out = RatClass::zero(b.ring);
  for (const auto& [x, m] : b.roots) out += RatClass(b.ring, Rat(m) * x.coeffs);
  return out;
}

}  // namespace flopcheck
