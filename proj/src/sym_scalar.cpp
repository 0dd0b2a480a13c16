#include "flopcheck/sym_scalar.hpp"

#include "flopcheck/errors.hpp"

#include <sstream>

namespace flopcheck {

namespace {
constexpr GenId kGamma = static_cast<GenId>(Gen::EulerGamma);
constexpr GenId kPi = static_cast<GenId>(Gen::Pi);
constexpr GenId kI = static_cast<GenId>(Gen::I);
constexpr GenId kLambda = static_cast<GenId>(Gen::Lambda);
constexpr GenId kZetaBase = static_cast<GenId>(Gen::ZetaBase);
}  // namespace

std::string gen_name(GenId id) {
  switch (id) {
    case kGamma: return "γ";
    case kPi: return "π";
    case kI: return "i";
    case kLambda: return "λ";
    default: return "ζ" + std::to_string(id - kZetaBase + 2);
  }
}

GenId parse_gen(const std::string& name) {
  if (name == "γ") return kGamma;
  if (name == "π") return kPi;
  if (name == "i") return kI;
  if (name == "λ") return kLambda;
  const std::string zeta = "ζ";
  if (name.rfind(zeta, 0) == 0) {
    int k = std::stoi(name.substr(zeta.size()));
    if (k >= 2) return zeta_gen(k);
  }
  throw UnresolvedSymbol("unknown generator '" + name + "'");
}

SymScalar::SymScalar(long x) {
  if (x != 0) terms_.emplace(SymMonomial{}, Rat(x));
}

SymScalar::SymScalar(const Rat& x) {
  if (x != 0) terms_.emplace(SymMonomial{}, x);
}

SymScalar SymScalar::generator(GenId id) {
  SymScalar s;
  s.terms_.emplace(SymMonomial{{id, 1}}, Rat(1));
  return s;
}

SymScalar SymScalar::zeta(int k, int max_zeta) {
  if (k < 2 || k > max_zeta)
    throw Error("zeta index " + std::to_string(k) + " outside [2, " + std::to_string(max_zeta) + "]");
  return generator(zeta_gen(k));
}

SymScalar SymScalar::from_terms(const std::vector<std::pair<SymMonomial, Rat>>& terms) {
  SymScalar s;
  for (const auto& [mono, c] : terms) s.add_term(mono, c);
  return s;
}

// Sorts, merges repeated generators, reduces i^2 = -1 and drops zeros.
void SymScalar::add_term(SymMonomial mono, const Rat& c) {
  if (c == 0) return;
  std::map<GenId, unsigned> exps;
  for (auto [g, e] : mono) exps[g] += e;
  Rat coeff = c;
  SymMonomial canon;
  for (auto [g, e] : exps) {
    if (g == kI) {
      if ((e / 2) % 2 == 1) coeff = -coeff;
      e %= 2;
    }
    if (e > 0) canon.emplace_back(g, static_cast<std::uint16_t>(e));
  }
  auto it = terms_.find(canon);
  if (it == terms_.end()) {
    terms_.emplace(std::move(canon), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

bool SymScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat SymScalar::constant() const {
  auto it = terms_.find(SymMonomial{});
  return it == terms_.end() ? Rat(0) : it->second;
}

SymScalar& SymScalar::operator+=(const SymScalar& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

SymScalar& SymScalar::operator-=(const SymScalar& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
  return *this;
}

SymScalar& SymScalar::operator*=(const SymScalar& o) {
  *this = *this * o;
  return *this;
}

SymScalar& SymScalar::operator*=(const Rat& o) {
  if (o == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, c] : terms_) c *= o;
  return *this;
}

SymScalar operator*(const SymScalar& a, const SymScalar& b) {
  SymScalar out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      SymMonomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

SymScalar operator-(const SymScalar& a) {
  SymScalar out = a;
  for (auto& [mono, c] : out.terms_) c = -c;
  return out;
}

SymScalar SymScalar::pow(unsigned n) const {
  SymScalar result(1L);
  SymScalar base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

SymScalar SymScalar::normalized() const {
  SymScalar s;
  for (const auto& [mono, c] : terms_) s.add_term(mono, c);
  return s;
}

std::string SymScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << format_rat(c);
    for (auto [g, e] : mono) {
      os << "*" << gen_name(g);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

BigC eval_sym(const SymScalar& s, unsigned digits) {
  BigC result;
  {
    ScopedDigits guard(digits + 10);
    std::map<GenId, BigC> values;
    auto value_of = [&](GenId g) -> const BigC& {
      auto it = values.find(g);
      if (it != values.end()) return it->second;
      BigC v;
      if (g == kGamma) {
        v = BigC(euler_gamma());
      } else if (g == kPi) {
        v = BigC(pi_value());
      } else if (g == kI) {
        v = imaginary_unit();
      } else if (g == kLambda) {
        throw UnresolvedSymbol("λ has no numeric value");
      } else {
        v = BigC(zeta_value(g - kZetaBase + 2));
      }
      return values.emplace(g, v).first->second;
    };
    for (const auto& [mono, c] : s.terms()) {
      BigC term(c);
      for (auto [g, e] : mono) {
        const BigC& v = value_of(g);
        for (unsigned k = 0; k < e; ++k) term *= v;
      }
      result += term;
    }
  }
  Real re = result.real();
  Real im = result.imag();
  re.precision(digits);
  im.precision(digits);
  return BigC(re, im);
}

BigC eval_sym(const SymScalar& s) { return eval_sym(s, working_digits()); }

}  // namespace flopcheck
