#include "flopcheck/quantum.hpp"

namespace flopcheck {

namespace {

RatClass scaled(const Rat& c, const RatClass& a) { return RatClass(a.ring, c * a.coeffs); }

void zadd(ZClass& into, int e, const RatClass& c) {
  auto it = into.find(e);
  if (it == into.end()) {
    if (!is_zero(c)) into.emplace(e, c);
    return;
  }
  it->second += c;
  if (is_zero(it->second)) into.erase(it);
}

ZClass zmul(const ZClass& a, const ZClass& b) {
  ZClass out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) zadd(out, ea + eb, mul(ca, cb));
  return out;
}

ZClass zpow(const ZClass& a, int n, const Ring& R) {
  ZClass out{{0, RatClass::one(R)}};
  for (int k = 0; k < n; ++k) out = zmul(out, a);
  return out;
}

ZClass zsub(ZClass a, const ZClass& b) {
  for (const auto& [e, c] : b) zadd(a, e, -c);
  return a;
}

ZClass zscale(const Rat& s, const ZClass& a) {
  ZClass out;
  for (const auto& [e, c] : a) zadd(out, e, scaled(s, c));
  return out;
}

// x + m z for a class x.
ZClass linear(const RatClass& x, const Rat& m) {
  ZClass out;
  zadd(out, 0, x);
  zadd(out, 1, scaled(m, RatClass::one(x.ring)));
  return out;
}

// (h + m z)^{-1} = sum_k (-1)^k h^k (m z)^{-k-1}; h is nilpotent.
ZClass inverse_linear(const RatClass& h, int m) {
  ZClass out;
  RatClass hk = RatClass::one(h.ring);
  Rat mk = Rat(1, m);
  for (int k = 0; k <= h.ring->dim() && !is_zero(hk); ++k) {
    zadd(out, -k - 1, scaled((k % 2) ? -mk : mk, hk));
    hk = mul(hk, h);
    mk /= m;
  }
  return out;
}

ZClass zclass_of(const RatClass& c) { return ZClass{{0, c}}; }

}  // namespace

ISeries i_function_extremal(const Ring& local, int order) {
  if (order < 1) throw Error("series order must be >= 1");
  if (local->kind() != RingKind::LocalP && local->kind() != RingKind::LocalPPrime)
    throw RingMismatch("the extremal I-function lives on a local model");
  const int r = local->r();
  RatClass h = RatClass::generator(local, 0), xi = RatClass::generator(local, 1);
  ISeries s{local, order, true, {}};
  s.coeffs.push_back(zclass_of(RatClass::one(local)));
  for (int d = 1; d <= order; ++d) {
    ZClass num = zpow(linear(xi - h, Rat(-(d - 1))), r + 1, local);
    ZClass den = zpow(inverse_linear(h, d), r + 1, local);
    s.coeffs.push_back(zmul(zmul(s.coeffs.back(), num), den));
  }
  return s;
}

bool is_homogeneous(const ISeries& s) {
  for (const auto& zc : s.coeffs)
    for (const auto& [e, c] : zc)
      for (int deg : degrees(c))
        if (deg / 2 != -e) return false;
  return true;
}

SeriesCheck qde_operator_check(const ISeries& s) {
  const Ring& R = s.ring;
  const int r = R->r();
  RatClass h = RatClass::generator(R, 0), xi = RatClass::generator(R, 1);
  SeriesCheck out;
  for (int d = 0; d <= s.order; ++d) {
    ZClass res = zmul(zpow(linear(h, Rat(d)), r + 1, R), s.coeffs[d]);
    if (d > 0) res = zsub(res, zmul(zpow(linear(xi - h, Rat(-(d - 1))), r + 1, R), s.coeffs[d - 1]));
    if (!res.empty()) return SeriesCheck{false, d};
  }
  return out;
}

SeriesCheck jet_closure_check(const ISeries& s) {
  const Ring& R = s.ring;
  const int r = R->r();
  const int sigma = (r % 2) ? 1 : -1;
  RatClass h = RatClass::generator(R, 0), xi = RatClass::generator(R, 1);
  for (int d = 0; d <= s.order; ++d) {
    ZClass res = zmul(zpow(linear(h, Rat(d)), r + 1, R), s.coeffs[d]);
    if (d > 0) {
      const ZClass& prev = s.coeffs[d - 1];
      ZClass theta = linear(h, Rat(d - 1));
      res = zsub(res, zscale(Rat(sigma), zmul(zpow(theta, r + 1, R), prev)));
      for (int k = 0; k <= r; ++k) {
        Rat c = Rat(binomial(r + 1, k)) * ((k % 2) ? -1 : 1);
        ZClass t = zmul(zclass_of(power(xi, r + 1 - k)), zmul(zpow(theta, k, R), prev));
        res = zsub(res, zscale(c, t));
      }
    }
    if (!res.empty()) return SeriesCheck{false, d};
  }
  return SeriesCheck{};
}

std::vector<RatClass> mirror_map_check(const ISeries& s) {
  std::vector<RatClass> out;
  for (int d = 1; d <= s.order; ++d) {
    auto it = s.coeffs[d].find(-1);
    out.push_back(it == s.coeffs[d].end() ? RatClass::zero(s.ring) : homogeneous_part(it->second, 2));
  }
  return out;
}

CMatrix to_complex(const RatMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) == 0 ? BigC(0) : BigC(m(i, j));
  return out;
}

std::vector<CVector> numeric_coefficients(const ISeries& s, const BigC& z0) {
  std::vector<CVector> out;
  for (const auto& zc : s.coeffs) {
    CVector v = CVector::Constant(s.ring->size(), BigC(0));
    for (const auto& [e, c] : zc) {
      BigC ze(1);
      for (int k = 0; k < std::abs(e); ++k) ze *= z0;
      if (e < 0) ze = BigC(1) / ze;
      for (int i = 0; i < s.ring->size(); ++i)
        if (c.coeffs[i] != 0) v[i] += ze * BigC(c.coeffs[i]);
    }
    out.push_back(v);
  }
  return out;
}

JetSystem make_jet_system(const Ring& local) {
  if (local->kind() != RingKind::LocalP && local->kind() != RingKind::LocalPPrime)
    throw RingMismatch("jet systems live on a local model");
  JetSystem sys;
  sys.r = local->r();
  sys.sigma = (sys.r % 2) ? 1 : -1;
  sys.ring = local;
  sys.h_mat = mult_matrix(RatClass::generator(local, 0));
  sys.xi_mat = mult_matrix(RatClass::generator(local, 1));
  const int n = sys.n(), r = sys.r, m = sys.size();
  RatMatrix id = RatMatrix::Identity(n, n);
  sys.a0 = RatMatrix::Zero(m, m);
  sys.a1 = RatMatrix::Zero(m, m);
  for (int k = 0; k < r; ++k) {
    sys.a0.block(k * n, (k + 1) * n, n, n) = id;
    sys.a1.block(k * n, (k + 1) * n, n, n) = Rat(-sys.sigma) * id;
  }
  std::vector<RatMatrix> xpow{id};
  for (int k = 1; k <= r + 1; ++k) xpow.push_back(xpow.back() * sys.xi_mat);
  for (int k = 0; k <= r; ++k) {
    Rat c = Rat(binomial(r + 1, k)) * ((k % 2) ? -1 : 1);
    sys.a1.block(r * n, k * n, n, n) = c * xpow[r + 1 - k];
  }
  return sys;
}

IEvaluator::IEvaluator(const JetSystem& sys, const BigC& z0)
    : sys_(sys), z_(z0), h_(to_complex(sys.h_mat)), xi_(to_complex(sys.xi_mat)) {
  if (is_zero(z0)) throw Error("z0 must be nonzero");
  CVector one = CVector::Constant(sys.n(), BigC(0));
  one[0] = BigC(1);
  tilde_.push_back(one);
}

const CVector& IEvaluator::coefficient(int d) {
  const int n = sys_.n(), r = sys_.r;
  CMatrix id = CMatrix::Identity(n, n);
  while (static_cast<int>(tilde_.size()) <= d) {
    const int m = static_cast<int>(tilde_.size());  // building Ĩ_m from Ĩ_{m-1}
    CVector v = tilde_.back();
    CMatrix up = xi_ - h_ - BigC(m - 1) * z_ * id;
    for (int k = 0; k <= r; ++k) v = up * v;
    // (h + m z)^{-1} = sum_k (-h)^k / (m z)^{k+1}
    BigC mz = BigC(m) * z_;
    CMatrix inv = CMatrix::Zero(n, n);
    CMatrix hk = id;
    BigC denom = mz;
    for (int k = 0; k <= r; ++k) {
      inv += (BigC(1) / denom) * hk;
      hk = -(hk * h_);
      denom *= mz;
    }
    for (int k = 0; k <= r; ++k) v = inv * v;
    tilde_.push_back(v);
  }
  return tilde_[d];
}

CVector IEvaluator::reduced_jets(const BigC& q, int min_terms) {
  if (abs(q) >= Real("0.9")) throw Error("series evaluation needs |q| < 0.9");
  const int n = sys_.n(), r = sys_.r;
  CMatrix id = CMatrix::Identity(n, n);
  std::vector<CVector> acc(r + 1, CVector::Constant(n, BigC(0)));
  const Real eps = pow(Real(10), -static_cast<int>(working_digits()) - 3);
  BigC qd(1);
  int quiet = 0;
  int d = 0;
  for (;; ++d) {
    CVector w = qd * coefficient(d);
    CMatrix step = h_ + BigC(d) * z_ * id;
    Real term = 0;
    for (int k = 0; k <= r; ++k) {
      acc[k] += w;
      term = std::max(term, inf_norm(w));
      if (k < r) w = step * w;
    }
    Real scale = std::max(Real(1), inf_norm(acc[r]));
    quiet = term < eps * scale ? quiet + 1 : 0;
    if (quiet >= 3 && d >= std::max(min_terms, min_terms_)) break;
    if (d > 20000) throw Error("series failed to converge");
    qd *= q;
  }
  last_terms_ = d + 1;
  CVector out(sys_.size());
  for (int k = 0; k <= r; ++k) out.segment(k * n, n) = acc[k];
  return out;
}

CMatrix IEvaluator::prefactor(const CMatrix& x, const BigC& log_q) const {
  return exp_nilpotent((log_q / z_) * x);
}

CVector IEvaluator::jets(const BigC& q, const BigC& log_q, int min_terms) {
  Real slack = abs(q) * pow(Real(10), -static_cast<int>(working_digits()) + 5);
  if (abs(exp(log_q) - q) > slack) throw BranchInconsistency("exp(log q) does not match q");
  CVector g = reduced_jets(q, min_terms);
  CMatrix e = prefactor(h_, log_q);
  const int n = sys_.n();
  for (int k = 0; k <= sys_.r; ++k) g.segment(k * n, n) = e * g.segment(k * n, n);
  return g;
}

CMatrix frame_from_jets(const IEvaluator& ev, const CVector& jets) {
  const JetSystem& sys = ev.system();
  const int n = sys.n(), r = sys.r;
  CMatrix c(n, n);
  for (int i = 0; i <= r; ++i) {
    CVector v = jets.segment(i * n, n);
    for (int j = 0; j <= r + 1; ++j) {
      c.col(i * (r + 2) + j) = v;
      v = ev.xi() * v;
    }
  }
  return c;
}

CMatrix prime_frame_from_jets(const IEvaluator& ev, const CVector& jets_prime, const BigC& log_q) {
  const JetSystem& sys = ev.system();
  const int n = sys.n(), r = sys.r;
  CMatrix pre = ev.prefactor(ev.xi(), log_q);
  std::vector<CMatrix> xpow{CMatrix::Identity(n, n)};
  for (int k = 1; k <= r + 1; ++k) xpow.push_back(xpow.back() * ev.xi());
  CMatrix c(n, n);
  for (int i = 0; i <= r; ++i) {
    CVector v = CVector::Constant(n, BigC(0));
    for (int k = 0; k <= i; ++k) {
      BigC coef(Rat(binomial(i, k)) * ((k % 2) ? -1 : 1));
      v += coef * (xpow[i - k] * jets_prime.segment(k * n, n));
    }
    v = pre * v;
    for (int j = 0; j <= r + 1; ++j) {
      c.col(i * (r + 2) + j) = v;
      v = ev.xi() * v;
    }
  }
  return c;
}

Real condition_number(const CMatrix& m) { return inf_norm(m) * inf_norm(inverse(m)); }

Frame solution_frame(IEvaluator& ev, const BigC& q0, const BigC& log_q0, bool reduced, int min_terms) {
  CVector g = reduced ? ev.reduced_jets(q0, min_terms) : ev.jets(q0, log_q0, min_terms);
  CMatrix c = frame_from_jets(ev, g);
  Real cond;
  try {
    cond = condition_number(c);
  } catch (const Error&) {
    throw ExtractionError("solution frame is rank deficient");
  }
  return Frame{c, cond};
}

}  // namespace flopcheck
