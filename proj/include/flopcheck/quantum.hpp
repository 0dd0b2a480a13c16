#pragma once

#include "flopcheck/bigc.hpp"
#include "flopcheck/cohomology.hpp"

#include <map>
#include <vector>

namespace flopcheck {

/// Laurent polynomial in z with class coefficients, keyed by z-exponent.
using ZClass = std::map<int, RatClass>;

/// Truncated extremal I-function sum_{d<=order} q^d Ĩ_d(z) on a local model.
struct ISeries {
  Ring ring;
  int order = 0;
  /// Whether the q^{h/z} factor is understood in front.
  bool prefactor = true;
  std::vector<ZClass> coeffs;
};

/// Ĩ_d = [prod_{m=1}^d (h+mz)]^{-(r+1)} [prod_{m=0}^{d-1} (ξ-h-mz)]^{r+1}, exact.
ISeries i_function_extremal(const Ring& local, int order);

/// Every term has cohomological weight equal to minus its z-exponent.
bool is_homogeneous(const ISeries& s);

struct SeriesCheck {
  bool pass = true;
  /// First q-order with a nonzero residue, or -1.
  int failing_order = -1;
};

/// L = (zθ)^{r+1} - q(ξ - zθ)^{r+1} applied to q^{h/z}Ĩ, through q^order.
SeriesCheck qde_operator_check(const ISeries& s);
/// (1 - σq)(zθ)^{r+1} I = q Σ_k C(r+1,k)(-1)^k ξ^{r+1-k} (zθ)^k I, through q^order.
SeriesCheck jet_closure_check(const ISeries& s);
/// z^{-1}, degree-2 part of Ĩ_d for d = 1..order.
std::vector<RatClass> mirror_map_check(const ISeries& s);

/// Ĩ_d(z0) from the symbolic coefficients.
std::vector<CVector> numeric_coefficients(const ISeries& s, const BigC& z0);

/// Companion system for the jets G = (g_0, ..., g_r), g_k = (zθ)^k I:
/// z q (1 - σq) dG/dq = (A0 + q A1) G with σ = (-1)^{r+1}.
struct JetSystem {
  int r = 0;
  int sigma = 1;
  Ring ring;
  RatMatrix h_mat, xi_mat;
  RatMatrix a0, a1;

  int n() const { return ring->size(); }
  int size() const { return (r + 1) * ring->size(); }
};

JetSystem make_jet_system(const Ring& local);

/// Numeric I-function at fixed z; series summed until terms fall below working precision.
class IEvaluator {
 public:
  IEvaluator(const JetSystem& sys, const BigC& z0);

  const JetSystem& system() const { return sys_; }
  const BigC& z() const { return z_; }
  const CMatrix& h() const { return h_; }
  const CMatrix& xi() const { return xi_; }

  /// Ĩ_d(z0).
  const CVector& coefficient(int d);
  /// Jets at q with branch log_q; |q| must be below 0.9. Sums at least min_terms orders.
  CVector jets(const BigC& q, const BigC& log_q, int min_terms = 0);
  /// Same without the q^{h/z} factor.
  CVector reduced_jets(const BigC& q, int min_terms = 0);
  /// Lower bound on the orders summed by every jets call.
  void set_min_terms(int n) { min_terms_ = n; }
  /// Orders summed by the last jets call.
  int last_terms() const { return last_terms_; }

  /// exp(log_q * x / z0) for a nilpotent multiplication matrix x.
  CMatrix prefactor(const CMatrix& x, const BigC& log_q) const;

 private:
  JetSystem sys_;
  BigC z_;
  CMatrix h_, xi_;
  std::vector<CVector> tilde_;
  int last_terms_ = 0;
  int min_terms_ = 0;
};

/// Columns ξ^j g_i at index i(r+2)+j.
CMatrix frame_from_jets(const IEvaluator& ev, const CVector& jets);
/// Flop-side frame: columns q^{ξ'/z} ξ'^j Σ_k C(i,k)(-1)^k ξ'^{i-k} g'_k, where g' are the
/// jets of the partner model at q' = 1/q and log_q is the continued branch of log q.
CMatrix prime_frame_from_jets(const IEvaluator& ev, const CVector& jets_prime, const BigC& log_q);

struct Frame {
  CMatrix matrix;
  Real condition;
};
/// Solution frame at (q0, log_q0); with reduced set the q^{h/z} factor is stripped.
Frame solution_frame(IEvaluator& ev, const BigC& q0, const BigC& log_q0, bool reduced = false, int min_terms = 0);

Real condition_number(const CMatrix& m);
CMatrix to_complex(const RatMatrix& m);

}  // namespace flopcheck
