#include "flopcheck/continuation.hpp"

#include <charconv>
#include <tuple>

namespace flopcheck {

namespace {

struct Sparse {
  std::vector<std::tuple<int, int, BigC>> entries;
  Eigen::Index rows = 0;

  explicit Sparse(const RatMatrix& m) : rows(m.rows()) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) entries.emplace_back(static_cast<int>(i), static_cast<int>(j), BigC(m(i, j)));
  }

  CMatrix operator*(const CMatrix& g) const {
    CMatrix out = CMatrix::Constant(rows, g.cols(), BigC(0));
    for (const auto& [i, j, v] : entries)
      for (Eigen::Index c = 0; c < g.cols(); ++c) out(i, c) += v * g(j, c);
    return out;
  }
};

Real distance_to_segment(const BigC& p, const BigC& a, const BigC& b) {
  BigC ab = b - a;
  Real len2 = abs2(ab);
  if (len2 == 0) return abs(p - a);
  BigC ap = p - a;
  Real t = (ap.real() * ab.real() + ap.imag() * ab.imag()) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return abs(p - (a + ab * t));
}

// One Taylor step from q = a to q = a + u; returns the number of terms used.
int taylor_step(CMatrix& g, const Sparse& a0, const Sparse& a1, const BigC& z, int sigma, const BigC& a,
                const BigC& u, const Real& tol) {
  const BigC s(sigma);
  const BigC p0 = z * a * (BigC(1) - s * a);
  const BigC p1 = z * (BigC(1) - BigC(2) * s * a);
  const BigC p2 = -(z * s);
  CMatrix prev = CMatrix::Constant(g.rows(), g.cols(), BigC(0));
  CMatrix a1_prev = prev;
  CMatrix cur = g;
  CMatrix sum = g;
  BigC upow(1);
  int quiet = 0;
  for (int n = 0;; ++n) {
    CMatrix a1_cur = a1 * cur;
    CMatrix next = a0 * cur + a * a1_cur + a1_prev - (p1 * BigC(n)) * cur - (p2 * BigC(n - 1)) * prev;
    next *= BigC(1) / (p0 * BigC(n + 1));
    upow *= u;
    CMatrix term = upow * next;
    sum += term;
    Real scale = std::max(Real(1e-300), max_abs_entry(sum));
    quiet = max_abs_entry(term) < tol * scale ? quiet + 1 : 0;
    if (quiet >= 2) {
      g = sum;
      return n + 1;
    }
    if (n > 5000) throw TransportError("Taylor series did not converge");
    prev = std::move(cur);
    cur = std::move(next);
    a1_prev = std::move(a1_cur);
  }
}

}  // namespace

PathSpec make_path(const std::string& id, const std::vector<std::pair<double, double>>& pts) {
  PathSpec p;
  p.id = id;
  // shortest round-trip decimal, so 0.4 means the decimal 0.4 at working precision
  auto decimal = [](double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return Real(std::string(buf, res.ptr));
  };
  for (auto [re, im] : pts) p.waypoints.emplace_back(decimal(re), decimal(im));
  if (p.waypoints.empty()) throw ConfigError("path needs at least one waypoint");
  p.log_q0 = log(p.waypoints.front());
  return p;
}

PathSpec default_path() { return named_path("upper"); }

PathSpec named_path(const std::string& name) {
  if (name == "upper" || name == "default")
    return make_path("upper", {{0.4, 0}, {0.4, 1.2}, {2.5, 1.2}, {2.5, 0}});
  if (name == "lower") return make_path("lower", {{0.4, 0}, {0.4, -1.2}, {2.5, -1.2}, {2.5, 0}});
  if (name == "rotated-upper")
    return make_path("rotated-upper", {{0.4, 0}, {0.4, 0.4}, {-0.4, 0.4}, {-0.4, 0}, {-0.4, -1.2}, {-2.5, -1.2}, {-2.5, 0}});
  if (name == "rotated-lower")
    return make_path("rotated-lower", {{0.4, 0}, {0.4, -0.4}, {-0.4, -0.4}, {-0.4, 0}, {-0.4, 1.2}, {-2.5, 1.2}, {-2.5, 0}});
  if (name == "loop0") return make_path("loop0", {{0.4, 0}, {0, 0.4}, {-0.4, 0}, {0, -0.4}, {0.4, 0}});
  if (name == "loop-inf")
    return make_path("loop-inf", {{0.4, 0}, {0.4, 2}, {-2, 2}, {-2, -2}, {2, -2}, {2, 2}, {0.4, 2}, {0.4, 0}});
  if (name == "null-loop") return make_path("null-loop", {{0.4, 0}, {0.6, 0}, {0.6, 0.2}, {0.4, 0.2}, {0.4, 0}});
  throw ConfigError("unknown path '" + name + "'");
}

PathSpec sigma_loop(int sigma) {
  const double s = sigma;
  return make_path("loop-sigma", {{0.4, 0}, {0.4, 0.5}, {s + 0.5, 0.5}, {s - 0.5, 0.5}, {s - 0.5, -0.5},
                                  {s + 0.5, -0.5}, {s + 0.5, 0.5}, {0.4, 0.5}, {0.4, 0}});
}

PathSpec concatenate(const PathSpec& a, const PathSpec& b) {
  if (abs(a.waypoints.back() - b.waypoints.front()) > Real(1e-30)) throw ConfigError("paths do not connect");
  PathSpec out = a;
  out.id = a.id + "+" + b.id;
  out.waypoints.insert(out.waypoints.end(), b.waypoints.begin() + 1, b.waypoints.end());
  return out;
}

void validate_path(const PathSpec& path, int sigma) {
  if (path.waypoints.empty()) throw ConfigError("path needs at least one waypoint");
  if (abs(exp(path.log_q0) - path.waypoints.front()) > Real(1e-20))
    throw ConfigError("path " + path.id + ": log q seed does not match the first waypoint");
  const Real min_dist("0.1");
  for (const BigC& s : {BigC(0), BigC(sigma)}) {
    if (abs(path.waypoints.front() - s) < min_dist) throw ConfigError("path " + path.id + " starts at a singular point");
    for (size_t k = 0; k + 1 < path.waypoints.size(); ++k)
      if (distance_to_segment(s, path.waypoints[k], path.waypoints[k + 1]) < min_dist)
        throw ConfigError("path " + path.id + " passes within 0.1 of a singular point");
  }
}

BigC continued_log(const PathSpec& path) {
  BigC l = path.log_q0;
  for (size_t k = 0; k + 1 < path.waypoints.size(); ++k)
    l += log(path.waypoints[k + 1] / path.waypoints[k]);
  return l;
}

PathSpec reversed(const PathSpec& path) {
  PathSpec out;
  out.id = path.id + "^-1";
  out.waypoints.assign(path.waypoints.rbegin(), path.waypoints.rend());
  out.log_q0 = continued_log(path);
  return out;
}

TransportResult transport(const JetSystem& sys, const BigC& z0, const CMatrix& g0, const PathSpec& path) {
  validate_path(path, sys.sigma);
  if (g0.rows() != sys.size()) throw TransportError("initial jets have the wrong size");
  const Sparse a0(sys.a0), a1(sys.a1);
  const Real tol = pow(Real(10), -static_cast<int>(working_digits()) + 10);
  const BigC sigma(sys.sigma);
  TransportResult res;
  res.value = g0;
  res.log_q = path.log_q0;
  for (size_t k = 0; k + 1 < path.waypoints.size(); ++k) {
    const BigC& a = path.waypoints[k];
    const BigC& b = path.waypoints[k + 1];
    BigC c = a;
    while (true) {
      BigC rest = b - c;
      Real len = abs(rest);
      if (len == 0) break;
      Real rad = std::min(abs(c), abs(c - sigma));
      if (rad < Real(1e-8)) throw TransportError("step size underflow near a singular point");
      bool last = len <= rad / 3;
      BigC u = last ? rest : rest * (rad / 3 / len);
      res.max_terms = std::max(res.max_terms, taylor_step(res.value, a0, a1, z0, sys.sigma, c, u, tol));
      ++res.steps;
      c = last ? b : c + u;
      if (last) break;
    }
    res.log_q += log(b / a);
  }
  res.q = path.waypoints.back();
  return res;
}

TransportResult transport_jets(const JetSystem& sys, const BigC& z0, const CVector& g0, const PathSpec& path) {
  return transport(sys, z0, CMatrix(g0), path);
}

FlopNumerics::FlopNumerics(int r, const BigC& z0)
    : sys(make_jet_system(local_model(r))),
      sys_prime(make_jet_system(local_model_prime(r))),
      ev(sys, z0),
      ev_prime(sys_prime, z0) {}

namespace {

struct Terminal {
  CMatrix frame, prime_frame, u;
};

Terminal at_terminal(FlopNumerics& fn, const CVector& jets, const BigC& q, const BigC& log_q) {
  Terminal t;
  t.frame = frame_from_jets(fn.ev, jets);
  t.prime_frame = prime_frame_from_jets(fn.ev_prime, fn.ev_prime.jets(BigC(1) / q, -log_q), log_q);
  t.u = t.prime_frame * inverse(t.frame);
  return t;
}

PathSpec segment(const std::string& id, const BigC& a, const BigC& b, const BigC& log_a) {
  return PathSpec{id, {a, b}, log_a};
}

}  // namespace

UMatrix extract_u(FlopNumerics& fn, const PathSpec& path) {
  validate_path(path, fn.sys.sigma);
  const BigC& q0 = path.waypoints.front();
  if (abs(path.waypoints.back()) <= 1) throw ExtractionError("terminal point must satisfy |q1| > 1");
  UMatrix out;
  out.r = fn.r();
  out.z0 = fn.z();
  out.convention = path.id;
  out.path = path;
  CVector g0 = fn.ev.jets(q0, path.log_q0);
  out.conditions["base"] = condition_number(frame_from_jets(fn.ev, g0));
  TransportResult t1 = transport_jets(fn.sys, fn.z(), g0, path);
  CVector g1 = t1.value.col(0);
  Terminal term = at_terminal(fn, g1, t1.q, t1.log_q);
  out.matrix = term.u;
  out.conditions["terminal"] = condition_number(term.frame);
  out.conditions["prime"] = condition_number(term.prime_frame);

  BigC q2 = t1.q * BigC(Real("1.4"));
  TransportResult t2 = transport_jets(fn.sys, fn.z(), g1, segment("stability", t1.q, q2, t1.log_q));
  Terminal term2 = at_terminal(fn, t2.value.col(0), t2.q, t2.log_q);
  out.residuals["stability"] = max_abs_entry(term2.u - out.matrix);

  BigC q3 = t1.q * BigC(Real("1.2"), Real("0.15"));
  TransportResult t3 = transport_jets(fn.sys, fn.z(), g1, segment("recheck", t1.q, q3, t1.log_q));
  Terminal term3 = at_terminal(fn, t3.value.col(0), t3.q, t3.log_q);
  out.residuals["intertwining"] = inf_norm(CMatrix(out.matrix * term3.frame - term3.prime_frame)) / inf_norm(term3.prime_frame);

  out.residuals["xi_intertwining"] = inf_norm(CMatrix(out.matrix * fn.ev.xi() - fn.ev_prime.xi() * out.matrix));
  out.det_abs = abs(determinant(out.matrix));
  if (out.det_abs == 0) throw ExtractionError("extracted matrix is singular");
  return out;
}

CMatrix monodromy(FlopNumerics& fn, const PathSpec& loop) {
  if (abs(loop.waypoints.back() - loop.waypoints.front()) > Real(1e-30))
    throw ConfigError("monodromy needs a closed loop");
  CVector g0 = fn.ev.jets(loop.waypoints.front(), loop.log_q0);
  TransportResult t = transport_jets(fn.sys, fn.z(), g0, loop);
  return frame_from_jets(fn.ev, t.value.col(0)) * inverse(frame_from_jets(fn.ev, g0));
}

int numeric_rank(const CMatrix& m, const Real& rel_tol) {
  CMatrix a = m;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Real scale = max_abs_entry(a);
  if (scale == 0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < std::min(rows, cols); ++k) {
    Eigen::Index pi = k, pj = k;
    Real best = -1;
    for (Eigen::Index i = k; i < rows; ++i)
      for (Eigen::Index j = k; j < cols; ++j) {
        Real v = abs(a(i, j));
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best <= rel_tol * scale) break;
    a.row(k).swap(a.row(pi));
    a.col(k).swap(a.col(pj));
    for (Eigen::Index i = k + 1; i < rows; ++i) {
      BigC f = a(i, k) / a(k, k);
      a.row(i) -= f * a.row(k);
    }
    ++rank;
  }
  return rank;
}

std::vector<Convention> convention_set(int r) {
  PathSpec up = named_path("upper");
  std::vector<Convention> out{
      {"upper", up, 0, 0},
      {"lower", named_path("lower"), 0, 0},
      {"upper*M0", up, 1, 0},
      {"upper*M0^-1", up, -1, 0},
      {"upper*Minf", up, 0, 1},
      {"upper*Minf^-1", up, 0, -1},
  };
  if (r % 2 == 0) {
    out.push_back({"rotated-upper", named_path("rotated-upper"), 0, 0});
    out.push_back({"rotated-lower", named_path("rotated-lower"), 0, 0});
  }
  return out;
}

namespace {

const CMatrix& cached_monodromy(FlopNumerics& fn, const std::string& name) {
  auto it = fn.monodromy_cache.find(name);
  if (it == fn.monodromy_cache.end()) it = fn.monodromy_cache.emplace(name, monodromy(fn, named_path(name))).first;
  return it->second;
}

}  // namespace

UMatrix extract_with_convention(FlopNumerics& fn, const Convention& c) {
  auto it = fn.u_cache.find(c.path.id);
  if (it == fn.u_cache.end()) it = fn.u_cache.emplace(c.path.id, extract_u(fn, c.path)).first;
  UMatrix u = it->second;
  u.convention = c.name;
  if (c.m0 != 0) {
    const CMatrix& m = cached_monodromy(fn, "loop0");
    u.matrix = u.matrix * (c.m0 > 0 ? m : inverse(m));
  }
  if (c.minf != 0) {
    const CMatrix& m = cached_monodromy(fn, "loop-inf");
    u.matrix = u.matrix * (c.minf > 0 ? m : inverse(m));
  }
  u.det_abs = abs(determinant(u.matrix));
  u.residuals["xi_intertwining"] = inf_norm(CMatrix(u.matrix * fn.ev.xi() - fn.ev_prime.xi() * u.matrix));
  return u;
}

}  // namespace flopcheck
