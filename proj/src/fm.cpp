#include "flopcheck/fm.hpp"

namespace flopcheck {

KClass KClass::line(const Ring& ring, int a, int b) {
  if (ring->kind() == RingKind::Proj && b != 0) throw Error("Proj has no Ξ divisor");
  KClass k{ring, {}};
  k.terms[{a, b}] = 1;
  return k;
}

KClass& KClass::operator+=(const KClass& o) {
  if (!same_ring(ring, o.ring)) throw RingMismatch("KClass rings differ");
  for (const auto& [ab, m] : o.terms) {
    long& slot = terms[ab];
    slot += m;
    if (slot == 0) terms.erase(ab);
  }
  return *this;
}

KClass operator*(long m, KClass a) {
  if (m == 0) a.terms.clear();
  for (auto& [ab, c] : a.terms) c *= m;
  return a;
}

std::vector<KClass> basis_line_bundles(const Ring& local) {
  std::vector<KClass> out;
  for (int i = 0; i < local->size(); ++i) {
    const Exps& e = local->monomial(i);
    out.push_back(KClass::line(local, e[0], e.size() > 1 ? e[1] : 0));
  }
  return out;
}

RatClass chern_character(const KClass& e) {
  const Ring& R = e.ring;
  RatClass out = RatClass::zero(R);
  for (const auto& [ab, m] : e.terms) {
    RatClass x(R, Rat(ab.first) * RatClass::generator(R, 0).coeffs);
    if (ab.second != 0) x += RatClass(R, Rat(ab.second) * RatClass::generator(R, 1).coeffs);
    out += RatClass(R, Rat(m) * exp_class(x).coeffs);
  }
  return out;
}

RatClass dual(const RatClass& ch) {
  RatClass out = ch;
  for (int i = 0; i < ch.ring->size(); ++i)
    if (ch.ring->weight(i) % 2) out.coeffs[i] = -out.coeffs[i];
  return out;
}

Rat euler_pairing_ch(const RatClass& ch_e, const RatClass& ch_f) {
  ch_e.check(ch_f);
  Rat chi = integrate(mul(mul(dual(ch_e), ch_f), todd(tangent_bundle(ch_e.ring))));
  if (denominator(chi) != 1) throw Error("non-integral Euler pairing " + format_rat(chi));
  return chi;
}

Rat euler_pairing(const KClass& e, const KClass& f) {
  return euler_pairing_ch(chern_character(e), chern_character(f));
}

FlopData::FlopData(int rank)
    : r(rank),
      P(local_model(rank)),
      Pp(local_model_prime(rank)),
      W(blowup(rank)),
      p(blowdown(rank)),
      pp(blowdown_prime(rank)),
      td_W(todd(tangent_bundle(p.target()))),
      td_Pp_inv(unit_inverse(todd(tangent_bundle(pp.source())))) {
  const int n = P->size();
  fm = RatMatrix::Zero(n, n);
  graph = RatMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    RatClass b = RatClass::basis_element(P, j);
    RatClass up = p.pullback(b);
    graph.col(j) = pp.pushforward(up).coeffs;
    fm.col(j) = mul(td_Pp_inv, pp.pushforward(mul(up, td_W))).coeffs;
  }
}

RatClass fm_transform(const FlopData& fd, const RatClass& alpha) {
  if (!same_ring(alpha.ring, fd.P)) throw RingMismatch("fm_transform expects a class on " + fd.P->label());
  return RatClass(fd.Pp, fd.fm * alpha.coeffs);
}

RatClass graph_correspondence(const FlopData& fd, const RatClass& alpha) {
  if (!same_ring(alpha.ring, fd.P)) throw RingMismatch("graph correspondence expects a class on " + fd.P->label());
  return RatClass(fd.Pp, fd.graph * alpha.coeffs);
}

FMResult fm_apply(const FlopData& fd, const KClass& e) {
  return FMResult{e, fm_transform(fd, chern_character(e)), &fd.fm};
}

RatMatrix fm_lattice_matrix(const FlopData& fd) {
  const int n = fd.P->size();
  RatMatrix ch(n, n), chp(n, n);
  auto lb = basis_line_bundles(fd.P);
  auto lbp = basis_line_bundles(fd.Pp);
  for (int k = 0; k < n; ++k) {
    ch.col(k) = chern_character(lb[k]).coeffs;
    chp.col(k) = chern_character(lbp[k]).coeffs;
  }
  return inverse(chp) * fd.fm * ch;
}

}  // namespace flopcheck
