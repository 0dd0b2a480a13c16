#include "flopcheck/givental.hpp"

namespace flopcheck {

void GiventalElement::add(const Rat& zpow, int logpow, const SymClass& c) {
  if (!same_ring(ring, c.ring)) throw RingMismatch("Givental term in the wrong ring");
  if (is_zero(c)) return;
  Key key{zpow, logpow};
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
    return;
  }
  it->second += c;
  if (is_zero(it->second)) terms.erase(it);
}

GiventalElement& GiventalElement::operator+=(const GiventalElement& o) {
  for (const auto& [key, c] : o.terms) add(key.first, key.second, c);
  return *this;
}

GiventalElement operator*(const SymScalar& s, const GiventalElement& a) {
  GiventalElement out = GiventalElement::zero(a.ring);
  for (const auto& [key, c] : a.terms) out.add(key.first, key.second, s * c);
  return out;
}

GiventalElement apply_z_rho(const GiventalElement& g, int sign) {
  GiventalElement out = GiventalElement::zero(g.ring);
  SymClass c1s = cast_class<SymScalar>(c1(tangent_bundle(g.ring)));
  for (const auto& [key, c] : g.terms) {
    SymClass t = c;
    for (int k = 0; k <= g.ring->dim() && !is_zero(t); ++k) {
      out.add(key.first, key.second + k, t);
      t = SymScalar(Rat(sign, k + 1)) * mul(c1s, t);
    }
  }
  return out;
}

GiventalElement apply_z_minus_mu(const GiventalElement& g) {
  GiventalElement out = GiventalElement::zero(g.ring);
  const int dim = g.ring->dim();
  for (const auto& [key, c] : g.terms) {
    for (int p = 0; p <= dim; ++p) {
      SymClass part = homogeneous_part(c, 2 * p);
      out.add(key.first + Rat(dim - 2 * p, 2), key.second, part);
    }
  }
  return out;
}

SymClass gamma_twisted(const RatClass& ch) {
  SymClass twisted = cast_class<SymScalar>(ch);
  SymScalar two_pi_i = SymScalar(2L) * SymScalar::pi() * SymScalar::i();
  for (int i = 0; i < ch.ring->size(); ++i)
    twisted.coeffs[i] = two_pi_i.pow(ch.ring->weight(i)) * twisted.coeffs[i];
  return mul(gamma_class(tangent_bundle(ch.ring)), twisted);
}

GiventalElement psi_ch(const RatClass& ch) {
  GiventalElement g = GiventalElement::zero(ch.ring);
  g.add(Rat(0), 0, gamma_twisted(ch));
  return apply_z_minus_mu(apply_z_rho(g));
}

GiventalElement psi(const KClass& e) { return psi_ch(chern_character(e)); }

NumClass eval_class(const SymClass& c) {
  CVector v(c.coeffs.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = eval_sym(c.coeffs[k]);
  return NumClass(c.ring, v);
}

CVector eval_givental(const GiventalElement& g, const BigC& z0, const BigC& log_z0) {
  if (is_zero(z0)) throw BranchInconsistency("z0 must be nonzero");
  Real slack = abs(z0) * pow(Real(10), -static_cast<int>(working_digits()) + 5);
  if (abs(exp(log_z0) - z0) > slack) throw BranchInconsistency("exp(log z0) does not match z0");
  CVector out = CVector::Constant(g.ring->size(), BigC(0));
  for (const auto& [key, c] : g.terms) {
    BigC w = exp(BigC(key.first) * log_z0);
    for (int k = 0; k < key.second; ++k) w *= log_z0;
    out += w * eval_class(c).coeffs;
  }
  return out;
}

}  // namespace flopcheck
