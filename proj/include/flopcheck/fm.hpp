#pragma once

#include "flopcheck/charclass.hpp"
#include "flopcheck/cohomology.hpp"

#include <map>
#include <utility>
#include <vector>

namespace flopcheck {

/// sum mult * [O(aH + bΞ)]; on Proj rings b is always 0.
struct KClass {
  Ring ring;
  std::map<std::pair<int, int>, long> terms;

  static KClass zero(const Ring& ring) { return KClass{ring, {}}; }
  static KClass line(const Ring& ring, int a, int b = 0);

  KClass& operator+=(const KClass& o);
  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  friend KClass operator*(long m, KClass a);
  friend bool operator==(const KClass& a, const KClass& b) {
    return same_ring(a.ring, b.ring) && a.terms == b.terms;
  }
};

/// O(iH + jΞ) for 0 <= i <= r, 0 <= j <= r+1, in monomial-basis order.
std::vector<KClass> basis_line_bundles(const Ring& local);

RatClass chern_character(const KClass& e);
/// ch(E^∨) from ch(E): degree-2k part times (-1)^k.
RatClass dual(const RatClass& ch);
/// ∫ ch(E^∨) ch(F) Td; throws Error if the result is not an integer.
Rat euler_pairing(const KClass& e, const KClass& f);
Rat euler_pairing_ch(const RatClass& ch_e, const RatClass& ch_f);

/// Everything about one flop needed on the K side.
struct FlopData {
  int r;
  Ring P, Pp, W;
  RingMap p, pp;
  RatClass td_W;
  RatClass td_Pp_inv;
  /// FM_H in the monomial bases of P and P'.
  RatMatrix fm;
  /// p'_* p^* in the same bases.
  RatMatrix graph;

  explicit FlopData(int rank);
};

/// Td(P')^{-1} p'_*(p^* α · Td(W)).
RatClass fm_transform(const FlopData& fd, const RatClass& alpha);
RatClass graph_correspondence(const FlopData& fd, const RatClass& alpha);

struct FMResult {
  KClass input;
  RatClass image;
  const RatMatrix* matrix;
};
FMResult fm_apply(const FlopData& fd, const KClass& e);

/// FM on the line-bundle lattices: column k expresses FM(E_k) in ch of the P' basis bundles.
RatMatrix fm_lattice_matrix(const FlopData& fd);

}  // namespace flopcheck
