#pragma once

#include "flopcheck/cohomology.hpp"

#include <utility>
#include <vector>

namespace flopcheck {

/// Chern-root multiset; trivial summands are dropped.
struct RootBundle {
  Ring ring;
  std::vector<std::pair<RatClass, long>> roots;

  long rank() const {
    long n = 0;
    for (const auto& [x, m] : roots) n += m;
    return n;
  }
};

RootBundle trivial_bundle(const Ring& ring);
/// Tangent bundle of any shipped model, including products.
RootBundle tangent_bundle(const Ring& ring);

/// sum_k x^k c_k, truncated at the ring dimension.
template <class S>
CohClass<S> power_series(const CohClass<S>& x, const std::vector<Rat>& c) {
  auto out = CohClass<S>::zero(x.ring);
  auto xk = CohClass<S>::one(x.ring);
  for (size_t k = 0; k < c.size() && static_cast<int>(k) <= x.ring->dim(); ++k) {
    if (c[k] != 0) out += scalar_from_rat<S>(c[k]) * xk;
    xk = mul(xk, x);
  }
  return out;
}

/// exp of a class with vanishing degree-0 part.
template <class S>
CohClass<S> exp_class(const CohClass<S>& x) {
  return power_series(x, exp_series(x.ring->dim()));
}

/// Inverse of a class whose degree-0 part is 1.
RatClass unit_inverse(const RatClass& u);

RatClass chern_total(const RootBundle& b);
/// c_0, ..., c_dim.
std::vector<RatClass> chern_classes(const RootBundle& b);
/// Power sums p_1, ..., p_n of the roots from c_1, ..., c_n by Newton's identities.
std::vector<RatClass> newton_power_sums(const std::vector<RatClass>& c);
RatClass chern_character(const RootBundle& b);
RatClass todd(const RootBundle& b);
/// exp(-γ p_1 + sum_{k>=2} (-1)^k ζ(k)/k p_k) with symbolic γ and ζ(k).
SymClass gamma_class(const RootBundle& b, int max_zeta = kMaxZeta);

RatClass c1(const RootBundle& b);

}  // namespace flopcheck
