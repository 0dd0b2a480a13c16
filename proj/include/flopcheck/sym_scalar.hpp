#pragma once

#include "flopcheck/bigc.hpp"
#include "flopcheck/rat.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flopcheck {

/// Formal generators: gamma (Euler-Mascheroni), pi, i (i^2 = -1), lambda
/// (reserved regularization symbol), and zeta(k) for 2 <= k <= kMaxZeta.
enum class Gen : std::uint16_t { EulerGamma = 0, Pi = 1, I = 2, Lambda = 3, ZetaBase = 4 };

inline constexpr int kMaxZeta = 12;

using GenId = std::uint16_t;
inline GenId zeta_gen(int k) { return static_cast<GenId>(static_cast<int>(Gen::ZetaBase) + k - 2); }
std::string gen_name(GenId id);
/// Inverse of gen_name; throws UnresolvedSymbol for unknown names.
GenId parse_gen(const std::string& name);

/// Sorted (generator, exponent) pairs with positive exponents.
using SymMonomial = std::vector<std::pair<GenId, std::uint16_t>>;

/// Polynomial with rational coefficients in the formal generators above.
class SymScalar {
 public:
  SymScalar() = default;
  SymScalar(long x);  // NOLINT: Eigen builds zeros and ones from integers
  SymScalar(const Rat& x);  // NOLINT

  static SymScalar generator(GenId id);
  static SymScalar euler_gamma() { return generator(static_cast<GenId>(Gen::EulerGamma)); }
  static SymScalar pi() { return generator(static_cast<GenId>(Gen::Pi)); }
  static SymScalar i() { return generator(static_cast<GenId>(Gen::I)); }
  static SymScalar lambda() { return generator(static_cast<GenId>(Gen::Lambda)); }
  static SymScalar zeta(int k, int max_zeta = kMaxZeta);
  /// Builds from raw terms and normalizes.
  static SymScalar from_terms(const std::vector<std::pair<SymMonomial, Rat>>& terms);

  const std::map<SymMonomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Constant term.
  Rat constant() const;

  SymScalar& operator+=(const SymScalar& o);
  SymScalar& operator-=(const SymScalar& o);
  SymScalar& operator*=(const SymScalar& o);
  SymScalar& operator*=(const Rat& o);

  friend SymScalar operator+(SymScalar a, const SymScalar& b) { return a += b; }
  friend SymScalar operator-(SymScalar a, const SymScalar& b) { return a -= b; }
  friend SymScalar operator*(const SymScalar& a, const SymScalar& b);
  friend SymScalar operator*(SymScalar a, const Rat& b) { return a *= b; }
  friend SymScalar operator*(const Rat& b, SymScalar a) { return a *= b; }
  friend SymScalar operator-(const SymScalar& a);
  friend bool operator==(const SymScalar& a, const SymScalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const SymScalar& a, const SymScalar& b) { return !(a == b); }

  SymScalar pow(unsigned n) const;
  /// Re-applies the canonical form; a no-op on values built through the API.
  SymScalar normalized() const;

  std::string to_string() const;

 private:
  void add_term(SymMonomial mono, const Rat& c);
  std::map<SymMonomial, Rat> terms_;
};

inline bool is_zero(const SymScalar& s) { return s.is_zero(); }

/// Substitutes gamma, zeta(k), pi and i at the working precision.
/// Throws UnresolvedSymbol if lambda (or an unknown generator) remains.
BigC eval_sym(const SymScalar& s);
/// Same, at an explicit precision.
BigC eval_sym(const SymScalar& s, unsigned digits);

}  // namespace flopcheck

namespace Eigen {
template <>
struct NumTraits<flopcheck::SymScalar> : GenericNumTraits<flopcheck::SymScalar> {
  using Real = flopcheck::SymScalar;
  using NonInteger = flopcheck::SymScalar;
  using Nested = flopcheck::SymScalar;
  using Literal = flopcheck::SymScalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 16,
    MulCost = 64
  };
};
}  // namespace Eigen
