#include "flopcheck/bigc.hpp"

#include "flopcheck/errors.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <utility>

namespace flopcheck {

namespace {
const bool default_digits_set = [] {
  Real::default_precision(kDefaultDigits);
  return true;
}();
}  // namespace

unsigned working_digits() { return Real::default_precision(); }

void set_working_digits(unsigned digits) { Real::default_precision(digits); }

ScopedDigits::ScopedDigits(unsigned digits) : saved_(working_digits()) {
  set_working_digits(digits);
}

ScopedDigits::~ScopedDigits() { set_working_digits(saved_); }

Real to_real(const Rat& x) {
  return Real(boost::multiprecision::numerator(x)) / Real(boost::multiprecision::denominator(x));
}

BigC& BigC::operator*=(const BigC& o) {
  Real re = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  return *this;
}

BigC& BigC::operator/=(const BigC& o) {
  Real d = abs2(o);
  if (d == 0) throw Error("complex division by zero");
  Real re = (re_ * o.re_ + im_ * o.im_) / d;
  im_ = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  return *this;
}

Real abs(const BigC& z) { return boost::multiprecision::sqrt(abs2(z)); }

BigC exp(const BigC& z) {
  Real m = boost::multiprecision::exp(z.real());
  return BigC(m * boost::multiprecision::cos(z.imag()), m * boost::multiprecision::sin(z.imag()));
}

BigC log(const BigC& z) {
  if (is_zero(z)) throw Error("logarithm of zero");
  return BigC(boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.imag(), z.real()));
}

BigC sqrt(const BigC& z) {
  if (is_zero(z)) return BigC();
  return exp(log(z) * Real(Real(1) / 2));
}

BigC imaginary_unit() { return BigC(Real(0), Real(1)); }

namespace {

std::mutex constants_mutex;
std::map<std::pair<int, unsigned>, Real> constants_cache;

// key.first: 0 = pi, 1 = gamma, k >= 2 = zeta(k)
template <class F>
Real cached(int key, F&& compute) {
  unsigned digits = working_digits();
  {
    std::lock_guard<std::mutex> lock(constants_mutex);
    auto it = constants_cache.find({key, digits});
    if (it != constants_cache.end()) return it->second;
  }
  Real value;
  {
    ScopedDigits guard(digits + 12);
    value = compute(digits);
  }
  Real rounded(value);
  rounded.precision(digits);
  std::lock_guard<std::mutex> lock(constants_mutex);
  constants_cache.emplace(std::make_pair(key, digits), rounded);
  return rounded;
}

// Euler-Maclaurin tail: sum_k B_{2k}/(2k)! * rising(s, 2k-1) * M^{-s-2k+1}.
Real em_zeta(int s, unsigned digits) {
  long m = std::max<long>(12, static_cast<long>(digits));
  Real mm(m);
  Real sum(0);
  for (long n = 1; n < m; ++n) sum += boost::multiprecision::pow(Real(n), -s);
  sum += boost::multiprecision::pow(mm, 1 - s) / Real(s - 1);
  sum += boost::multiprecision::pow(mm, -s) / 2;
  Real eps = boost::multiprecision::pow(Real(10), -static_cast<int>(digits) - 10);
  int kmax = static_cast<int>(digits) + 40;
  auto b = bernoulli_numbers(2 * kmax);
  Real rising(s);  // s (s+1) ... (s+2k-2)
  Real fact(2);    // (2k)!
  Real power = boost::multiprecision::pow(mm, -s - 1);
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) {
      rising *= Real(s + 2 * k - 3) * Real(s + 2 * k - 2);
      fact *= Real(2 * k - 1) * Real(2 * k);
      power /= mm * mm;
    }
    Real term = to_real(b[2 * k]) / fact * rising * power;
    sum += term;
    if (boost::multiprecision::abs(term) < eps) break;
  }
  return sum;
}

Real em_gamma(unsigned digits) {
  long m = std::max<long>(12, static_cast<long>(digits));
  Real mm(m);
  Real sum(0);
  for (long n = 1; n < m; ++n) sum += Real(1) / Real(n);
  sum += Real(1) / (2 * mm) - boost::multiprecision::log(mm);
  Real eps = boost::multiprecision::pow(Real(10), -static_cast<int>(digits) - 10);
  int kmax = static_cast<int>(digits) + 40;
  auto b = bernoulli_numbers(2 * kmax);
  Real power(1);
  for (int k = 1; k <= kmax; ++k) {
    power /= mm * mm;
    Real term = to_real(b[2 * k]) / Real(2 * k) * power;
    sum += term;
    if (boost::multiprecision::abs(term) < eps) break;
  }
  return sum;
}

}  // namespace

Real pi_value() {
  return cached(0, [](unsigned) {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
  });
}

Real zeta_value(int k) {
  if (k < 2) throw Error("zeta_value requires k >= 2, got " + std::to_string(k));
  return cached(k, [k](unsigned digits) { return em_zeta(k, digits); });
}

Real euler_gamma() {
  return cached(1, [](unsigned digits) { return em_gamma(digits); });
}

std::string format_real(const Real& x) {
  return x.str(static_cast<std::streamsize>(working_digits()), std::ios_base::scientific);
}

Real parse_real(const std::string& text) {
  try {
    return Real(text);
  } catch (const std::runtime_error& e) {
    throw Error("cannot parse decimal '" + text + "': " + e.what());
  }
}

std::ostream& operator<<(std::ostream& os, const BigC& z) {
  return os << "(" << format_real(z.real()) << ", " << format_real(z.imag()) << ")";
}

Real inf_norm(const CMatrix& m) {
  Real best(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Real row(0);
    for (Eigen::Index j = 0; j < m.cols(); ++j) row += abs(m(i, j));
    if (row > best) best = row;
  }
  return best;
}

Real inf_norm(const CVector& v) {
  Real best(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Real a = abs(v(i));
    if (a > best) best = a;
  }
  return best;
}

Real max_abs_entry(const CMatrix& m) {
  Real best(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Real a = abs(m(i, j));
      if (a > best) best = a;
    }
  return best;
}

Real norm2(const CVector& v) {
  Real s(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) s += abs2(v(i));
  return boost::multiprecision::sqrt(s);
}

namespace {

// Row-reduces [a | b] in place; returns the determinant of a.
BigC eliminate(CMatrix& a, CMatrix& b) {
  const Eigen::Index n = a.rows();
  BigC det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    Real best = abs2(a(col, col));
    for (Eigen::Index row = col + 1; row < n; ++row) {
      Real v = abs2(a(row, col));
      if (v > best) {
        best = v;
        pivot = row;
      }
    }
    if (best == 0) return BigC();
    if (pivot != col) {
      a.row(col).swap(a.row(pivot));
      b.row(col).swap(b.row(pivot));
      det = -det;
    }
    BigC p = a(col, col);
    det *= p;
    BigC inv = BigC(1) / p;
    for (Eigen::Index j = col; j < n; ++j) a(col, j) *= inv;
    for (Eigen::Index j = 0; j < b.cols(); ++j) b(col, j) *= inv;
    for (Eigen::Index row = 0; row < n; ++row) {
      if (row == col || is_zero(a(row, col))) continue;
      BigC f = a(row, col);
      for (Eigen::Index j = col; j < n; ++j) a(row, j) -= f * a(col, j);
      for (Eigen::Index j = 0; j < b.cols(); ++j) b(row, j) -= f * b(col, j);
    }
  }
  return det;
}

}  // namespace

CMatrix inverse(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
  CMatrix a = m;
  CMatrix b = CMatrix::Identity(m.rows(), m.cols());
  if (is_zero(eliminate(a, b))) throw Error("singular matrix");
  return b;
}

BigC determinant(const CMatrix& m) {
  CMatrix a = m;
  CMatrix b(m.rows(), 0);
  return eliminate(a, b);
}

CMatrix exp_nilpotent(const CMatrix& m) {
  CMatrix result = CMatrix::Identity(m.rows(), m.cols());
  CMatrix term = result;
  for (Eigen::Index k = 1; k <= m.rows(); ++k) {
    term = (term * m).eval();
    term *= Real(Real(1) / Real(k));
    if (max_abs_entry(term) == 0) break;
    result += term;
  }
  return result;
}

}  // namespace flopcheck
