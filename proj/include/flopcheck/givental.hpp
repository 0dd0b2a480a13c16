#pragma once

#include "flopcheck/bigc.hpp"
#include "flopcheck/charclass.hpp"
#include "flopcheck/fm.hpp"

#include <map>
#include <utility>

namespace flopcheck {

/// Finite sum of z^{zpow} (log z)^{logpow} * class, zpow in (1/2)Z.
struct GiventalElement {
  using Key = std::pair<Rat, int>;
  Ring ring;
  std::map<Key, SymClass> terms;

  static GiventalElement zero(const Ring& ring) { return GiventalElement{ring, {}}; }
  void add(const Rat& zpow, int logpow, const SymClass& c);

  GiventalElement& operator+=(const GiventalElement& o);
  friend GiventalElement operator+(GiventalElement a, const GiventalElement& b) { return a += b; }
  friend GiventalElement operator*(const SymScalar& s, const GiventalElement& a);
  friend bool operator==(const GiventalElement& a, const GiventalElement& b) {
    return same_ring(a.ring, b.ring) && a.terms == b.terms;
  }
};

/// Multiplies the degree-k part by k.
template <class S>
CohClass<S> deg0(const CohClass<S>& a) {
  auto out = a;
  for (int i = 0; i < a.ring->size(); ++i) out.coeffs[i] = scalar_from_rat<S>(Rat(2 * a.ring->weight(i))) * a.coeffs[i];
  return out;
}

/// Multiplies the degree-k part by k/2 - dim/2.
template <class S>
CohClass<S> mu(const CohClass<S>& a) {
  auto out = a;
  for (int i = 0; i < a.ring->size(); ++i)
    out.coeffs[i] = scalar_from_rat<S>(Rat(2 * a.ring->weight(i) - a.ring->dim(), 2)) * a.coeffs[i];
  return out;
}

template <class S>
CohClass<S> rho(const CohClass<S>& a) {
  return mul(cast_class<S>(c1(tangent_bundle(a.ring))), a);
}

/// z^{sign ρ} applied termwise; ρ is nilpotent so the log z series is finite.
GiventalElement apply_z_rho(const GiventalElement& g, int sign = 1);
/// z^{-μ} applied termwise.
GiventalElement apply_z_minus_mu(const GiventalElement& g);

/// Γ ∪ (2πi)^{deg0/2} ch as a symbolic class.
SymClass gamma_twisted(const RatClass& ch);
/// Ψ from a Chern character on any shipped model.
GiventalElement psi_ch(const RatClass& ch);
GiventalElement psi(const KClass& e);

/// Coefficient vector at z = z0 on the branch log z = log_z0.
/// Throws BranchInconsistency unless exp(log_z0) matches z0.
CVector eval_givental(const GiventalElement& g, const BigC& z0, const BigC& log_z0);

/// Numeric value of a symbolic class at working precision.
NumClass eval_class(const SymClass& c);

}  // namespace flopcheck
