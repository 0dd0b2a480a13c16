#pragma once

#include "flopcheck/bigc.hpp"
#include "flopcheck/errors.hpp"
#include "flopcheck/rat.hpp"
#include "flopcheck/sym_scalar.hpp"

#include <Eigen/Core>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace flopcheck {

using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

using Exps = std::vector<int>;
/// Sparse polynomial in the generators of a ring, before reduction.
using Poly = std::map<Exps, Rat>;

/// gen^power rewrites to rhs; every rhs monomial has a smaller exponent of gen.
struct Rule {
  int gen;
  int power;
  Poly rhs;
};

enum class RingKind { Proj, LocalP, LocalPPrime, Blowup, Product };

/// Graded commutative algebra on degree-2 generators with a monomial basis
/// cut out by the exponent bounds of its rewrite rules.
class RingModel {
 public:
  RingModel(RingKind kind, int r, std::string label, std::vector<std::string> gens,
            std::vector<Rule> rules, Exps point,
            std::vector<std::shared_ptr<const RingModel>> factors = {});

  RingKind kind() const { return kind_; }
  int r() const { return r_; }
  const std::string& label() const { return label_; }
  const std::vector<std::string>& gens() const { return gens_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<std::shared_ptr<const RingModel>>& factors() const { return factors_; }

  int ngens() const { return static_cast<int>(gens_.size()); }
  int size() const { return static_cast<int>(basis_.size()); }
  /// Complex dimension; the top cohomological degree is 2 * dim().
  int dim() const { return dim_; }
  const std::vector<Exps>& basis() const { return basis_; }
  const Exps& monomial(int i) const { return basis_[i]; }
  int index_of(const Exps& e) const;
  /// Half the cohomological degree of basis element i.
  int weight(int i) const { return weights_[i]; }

  /// Integral of each basis monomial.
  const RatVector& integration() const { return integration_; }
  const RatMatrix& pairing() const { return pairing_; }

  /// Normal form of an arbitrary polynomial, as a basis coefficient vector.
  RatVector reduce(const Poly& p) const;
  /// Basis expansion of monomial(i) * monomial(j).
  const std::vector<std::pair<int, Rat>>& product(int i, int j) const {
    return table_[static_cast<size_t>(i) * basis_.size() + j];
  }

  std::string monomial_string(int i) const;

 private:
  Poly reduce_poly(Poly p) const;

  RingKind kind_;
  int r_;
  std::string label_;
  std::vector<std::string> gens_;
  std::vector<Rule> rules_;
  std::vector<std::shared_ptr<const RingModel>> factors_;
  std::vector<Exps> basis_;
  std::map<Exps, int> index_;
  std::vector<int> weights_;
  int dim_ = 0;
  RatVector integration_;
  RatMatrix pairing_;
  std::vector<std::vector<std::pair<int, Rat>>> table_;
};

using Ring = std::shared_ptr<const RingModel>;

/// Q[h]/(h^{r+1}).
Ring proj_space(int r);
/// Q[h, xi]/(h^{r+1}, xi (xi - h)^{r+1}).
Ring local_model(int r);
/// The same presentation in primed generators.
Ring local_model_prime(int r);
/// Q[h1, h2, zeta]/(h1^{r+1}, h2^{r+1}, zeta (zeta - h1 - h2)).
Ring blowup(int r);
/// Kunneth ring; generators of b follow those of a.
Ring product(const Ring& a, const Ring& b);
/// local_model(r) with the sign of the linear h-term in the xi relation
/// flipped. Only for exercising failure paths.
Ring corrupted_local_model(int r);

bool same_ring(const Ring& a, const Ring& b);

template <class S>
S scalar_from_rat(const Rat& x) {
  return S(x);
}

/// Coefficient vector over the monomial basis of a ring.
template <class S>
struct CohClass {
  using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  Ring ring;
  Vector coeffs;

  CohClass() = default;
  CohClass(Ring rg, Vector c) : ring(std::move(rg)), coeffs(std::move(c)) {
    if (coeffs.size() != ring->size()) throw RingMismatch("coefficient vector has wrong length");
  }

  static CohClass zero(const Ring& rg) { return CohClass(rg, Vector::Constant(rg->size(), S(0))); }
  static CohClass one(const Ring& rg) { return basis_element(rg, 0); }
  static CohClass basis_element(const Ring& rg, int i) {
    CohClass c = zero(rg);
    c.coeffs[i] = S(1);
    return c;
  }
  /// Reduced class of a monomial given by exponents.
  static CohClass monomial(const Ring& rg, const Exps& e) { return from_rat(rg, rg->reduce(Poly{{e, Rat(1)}})); }
  static CohClass generator(const Ring& rg, int g) {
    Exps e(rg->ngens(), 0);
    e[g] = 1;
    return monomial(rg, e);
  }
  static CohClass from_rat(const Ring& rg, const RatVector& v) {
    Vector c(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) c[k] = scalar_from_rat<S>(v[k]);
    return CohClass(rg, c);
  }

  CohClass& operator+=(const CohClass& o) {
    check(o);
    coeffs += o.coeffs;
    return *this;
  }
  CohClass& operator-=(const CohClass& o) {
    check(o);
    coeffs -= o.coeffs;
    return *this;
  }
  friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
  friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
  friend CohClass operator-(const CohClass& a) { return CohClass(a.ring, -a.coeffs); }
  friend CohClass operator*(const S& s, const CohClass& a) {
    Vector c = a.coeffs;
    for (auto& x : c) x = s * x;
    return CohClass(a.ring, c);
  }
  friend bool operator==(const CohClass& a, const CohClass& b) {
    return same_ring(a.ring, b.ring) && a.coeffs == b.coeffs;
  }

  void check(const CohClass& o) const {
    if (!same_ring(ring, o.ring)) throw RingMismatch(ring->label() + " vs " + o.ring->label());
  }
};

using RatClass = CohClass<Rat>;
using SymClass = CohClass<SymScalar>;
using NumClass = CohClass<BigC>;

template <class S>
bool is_zero(const CohClass<S>& a) {
  for (const auto& x : a.coeffs)
    if (!is_zero(x)) return false;
  return true;
}

template <class S>
CohClass<S> mul(const CohClass<S>& a, const CohClass<S>& b) {
  a.check(b);
  const RingModel& R = *a.ring;
  auto out = CohClass<S>::zero(a.ring);
  for (int i = 0; i < R.size(); ++i) {
    if (is_zero(a.coeffs[i])) continue;
    for (int j = 0; j < R.size(); ++j) {
      if (is_zero(b.coeffs[j])) continue;
      S ab = a.coeffs[i] * b.coeffs[j];
      for (const auto& [k, c] : R.product(i, j)) out.coeffs[k] += ab * scalar_from_rat<S>(c);
    }
  }
  return out;
}

template <class S>
CohClass<S> power(const CohClass<S>& a, int n) {
  auto out = CohClass<S>::one(a.ring);
  for (int k = 0; k < n; ++k) out = mul(out, a);
  return out;
}

template <class S>
S integrate(const CohClass<S>& a) {
  S total(0L);
  for (int i = 0; i < a.ring->size(); ++i) {
    const Rat& w = a.ring->integration()[i];
    if (w != 0 && !is_zero(a.coeffs[i])) total += a.coeffs[i] * scalar_from_rat<S>(w);
  }
  return total;
}

/// Cohomological degrees carrying nonzero coefficients, ascending.
template <class S>
std::vector<int> degrees(const CohClass<S>& a) {
  std::set<int> ds;
  for (int i = 0; i < a.ring->size(); ++i)
    if (!is_zero(a.coeffs[i])) ds.insert(2 * a.ring->weight(i));
  return {ds.begin(), ds.end()};
}

/// Component of cohomological degree deg.
template <class S>
CohClass<S> homogeneous_part(const CohClass<S>& a, int deg) {
  auto out = CohClass<S>::zero(a.ring);
  for (int i = 0; i < a.ring->size(); ++i)
    if (2 * a.ring->weight(i) == deg) out.coeffs[i] = a.coeffs[i];
  return out;
}

template <class T, class S>
CohClass<T> cast_class(const CohClass<S>& a) {
  typename CohClass<T>::Vector c(a.coeffs.size());
  for (Eigen::Index k = 0; k < c.size(); ++k) c[k] = T(a.coeffs[k]);
  return CohClass<T>(a.ring, c);
}

/// Matrix of x ∪ (-) in the monomial basis.
RatMatrix mult_matrix(const RatClass& x);

/// Exact inverse over Q; throws Error if singular.
RatMatrix inverse(const RatMatrix& m);
Rat determinant(const RatMatrix& m);

/// Algebra map given by images of the source generators.
class RingMap {
 public:
  /// Throws RelationViolation unless every source relation maps to zero.
  RingMap(Ring source, Ring target, std::vector<RatClass> images);

  const Ring& source() const { return source_; }
  const Ring& target() const { return target_; }
  /// target.size() x source.size().
  const RatMatrix& matrix() const { return pullback_; }
  /// source.size() x target.size(); the adjoint of the pullback under the pairings.
  const RatMatrix& push_matrix() const { return push_; }

  RatClass pullback(const RatClass& a) const;
  RatClass pushforward(const RatClass& b) const;

 private:
  Ring source_;
  Ring target_;
  RatMatrix pullback_;
  RatMatrix push_;
};

/// Image of each relation of the source under the proposed generator images.
std::vector<RatClass> relation_images(const Ring& source, const Ring& target,
                                      const std::vector<RatClass>& images);

/// p: W -> P with h -> h1, xi -> zeta.
RingMap blowdown(int r);
/// p': W -> P' with h' -> h2, xi' -> zeta.
RingMap blowdown_prime(int r);
/// Same as blowdown but on an explicitly supplied source presentation.
RingMap blowdown_from(const Ring& source);
/// Pullback along the projection of a product ring onto factor side (0 or 1).
RingMap projection(const Ring& prod, int side);

/// m * v for a rational matrix acting on any coefficient type.
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, 1> apply(const RatMatrix& m, const Eigen::Matrix<S, Eigen::Dynamic, 1>& v) {
  Eigen::Matrix<S, Eigen::Dynamic, 1> out = Eigen::Matrix<S, Eigen::Dynamic, 1>::Constant(m.rows(), S(0));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (is_zero(v[j])) continue;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) out[i] += scalar_from_rat<S>(m(i, j)) * v[j];
  }
  return out;
}

template <class S>
CohClass<S> pullback(const RingMap& f, const CohClass<S>& a) {
  if (!same_ring(a.ring, f.source())) throw RingMismatch("pullback expects a class on " + f.source()->label());
  return CohClass<S>(f.target(), apply(f.matrix(), a.coeffs));
}

template <class S>
CohClass<S> pushforward(const RingMap& f, const CohClass<S>& b) {
  if (!same_ring(b.ring, f.target())) throw RingMismatch("pushforward expects a class on " + f.target()->label());
  return CohClass<S>(f.source(), apply(f.push_matrix(), b.coeffs));
}

}  // namespace flopcheck
