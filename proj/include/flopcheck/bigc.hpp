#pragma once

#include "flopcheck/rat.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <Eigen/Core>

#include <iosfwd>
#include <string>

namespace flopcheck {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultDigits = 60;

/// Decimal digits carried by newly created Real/BigC values.
unsigned working_digits();
/// Sets the per-run working precision. Values created earlier keep theirs.
void set_working_digits(unsigned digits);

/// Sets the working precision for the lifetime of the guard.
class ScopedDigits {
 public:
  explicit ScopedDigits(unsigned digits);
  ~ScopedDigits();
  ScopedDigits(const ScopedDigits&) = delete;
  ScopedDigits& operator=(const ScopedDigits&) = delete;

 private:
  unsigned saved_;
};

Real to_real(const Rat& x);

/// Complex number over Real.
class BigC {
 public:
  BigC() : re_(0), im_(0) {}
  BigC(int x) : re_(x), im_(0) {}  // NOLINT: integer literals in Eigen expressions
  BigC(double x) : re_(x), im_(0) {}  // NOLINT
  BigC(Real re) : re_(std::move(re)), im_(0) {}  // NOLINT
  BigC(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit BigC(const Rat& x) : re_(to_real(x)), im_(0) {}

  const Real& real() const { return re_; }
  const Real& imag() const { return im_; }

  BigC& operator+=(const BigC& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  BigC& operator-=(const BigC& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  BigC& operator*=(const BigC& o);
  BigC& operator/=(const BigC& o);
  BigC& operator*=(const Real& o) {
    re_ *= o;
    im_ *= o;
    return *this;
  }

  friend BigC operator+(BigC a, const BigC& b) { return a += b; }
  friend BigC operator-(BigC a, const BigC& b) { return a -= b; }
  friend BigC operator*(BigC a, const BigC& b) { return a *= b; }
  friend BigC operator/(BigC a, const BigC& b) { return a /= b; }
  friend BigC operator*(BigC a, const Real& b) { return a *= b; }
  friend BigC operator*(const Real& b, BigC a) { return a *= b; }
  friend BigC operator-(const BigC& a) { return BigC(-a.re_, -a.im_); }
  friend bool operator==(const BigC& a, const BigC& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const BigC& a, const BigC& b) { return !(a == b); }

 private:
  Real re_;
  Real im_;
};

inline const Real& real(const BigC& z) { return z.real(); }
inline const Real& imag(const BigC& z) { return z.imag(); }
inline BigC conj(const BigC& z) { return BigC(z.real(), -z.imag()); }
inline Real abs2(const BigC& z) { return z.real() * z.real() + z.imag() * z.imag(); }
Real abs(const BigC& z);
BigC exp(const BigC& z);
/// Principal branch.
BigC log(const BigC& z);
BigC sqrt(const BigC& z);
inline bool is_zero(const BigC& z) { return z.real() == 0 && z.imag() == 0; }

BigC imaginary_unit();
Real pi_value();
/// zeta(k) for k >= 2 by Euler-Maclaurin summation.
Real zeta_value(int k);
/// Euler-Mascheroni constant by Euler-Maclaurin summation.
Real euler_gamma();

/// Scientific decimal string with the working number of significant digits.
std::string format_real(const Real& x);
Real parse_real(const std::string& text);

std::ostream& operator<<(std::ostream& os, const BigC& z);

using CVector = Eigen::Matrix<BigC, Eigen::Dynamic, 1>;
using CMatrix = Eigen::Matrix<BigC, Eigen::Dynamic, Eigen::Dynamic>;

/// Max-abs-row-sum norm.
Real inf_norm(const CMatrix& m);
Real inf_norm(const CVector& v);
Real max_abs_entry(const CMatrix& m);
/// Euclidean norm.
Real norm2(const CVector& v);

/// Inverse via partial-pivot Gaussian elimination; throws on a zero pivot.
CMatrix inverse(const CMatrix& m);
BigC determinant(const CMatrix& m);
/// Exponential of a nilpotent matrix: the series terminates.
CMatrix exp_nilpotent(const CMatrix& m);

}  // namespace flopcheck

namespace Eigen {
template <>
struct NumTraits<flopcheck::BigC> : GenericNumTraits<flopcheck::BigC> {
  using Real = flopcheck::Real;
  using NonInteger = flopcheck::BigC;
  using Nested = flopcheck::BigC;
  using Literal = flopcheck::BigC;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 32
  };
  static Real epsilon() { return NumTraits<Real>::epsilon(); }
  static Real dummy_precision() { return NumTraits<Real>::dummy_precision(); }
  static int digits10() { return static_cast<int>(flopcheck::working_digits()); }
};
}  // namespace Eigen
