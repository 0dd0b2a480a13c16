#include "flopcheck/cohomology.hpp"

#include <sstream>

namespace flopcheck {

namespace {

Exps add_exps(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

int total_degree(const Exps& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

Rule nilpotent(int ngens, int gen, int power) {
  (void)ngens;
  return Rule{gen, power, {}};
}

// xi^{r+2} = -sum_{k=1}^{r+1} C(r+1,k) (-1)^k h^k xi^{r+2-k}, from xi (xi - h)^{r+1} = 0.
Rule xi_rule(int r, int h, int xi, int ngens, bool corrupt) {
  Rule rule{xi, r + 2, {}};
  for (int k = 1; k <= r + 1; ++k) {
    Exps e(ngens, 0);
    e[h] = k;
    e[xi] = r + 2 - k;
    Rat c = -Rat(binomial(r + 1, k)) * ((k % 2) ? -1 : 1);
    if (corrupt && k == 1) c = -c;
    rule.rhs[e] = c;
  }
  return rule;
}

Ring make_local(int r, bool prime, bool corrupt) {
  if (r < 1) throw Error("rank must be >= 1");
  std::vector<std::string> gens = prime ? std::vector<std::string>{"h′", "ξ′"}
                                        : std::vector<std::string>{"h", "ξ"};
  std::vector<Rule> rules{nilpotent(2, 0, r + 1), xi_rule(r, 0, 1, 2, corrupt)};
  std::string name = prime ? "LocalP′" : (corrupt ? "LocalP!corrupt" : "LocalP");
  return std::make_shared<const RingModel>(prime ? RingKind::LocalPPrime : RingKind::LocalP, r,
                                           name + "," + std::to_string(r), gens, rules,
                                           Exps{r, r + 1});
}

}  // namespace

RingModel::RingModel(RingKind kind, int r, std::string label, std::vector<std::string> gens,
                     std::vector<Rule> rules, Exps point, std::vector<std::shared_ptr<const RingModel>> factors)
    : kind_(kind), r_(r), label_(std::move(label)), gens_(std::move(gens)), rules_(std::move(rules)),
      factors_(std::move(factors)) {
  const int n = ngens();
  std::vector<int> bound(n, -1);
  for (const auto& rule : rules_) {
    if (bound[rule.gen] != -1) throw Error(label_ + ": two rules for one generator");
    bound[rule.gen] = rule.power;
  }
  for (int g = 0; g < n; ++g)
    if (bound[g] < 1) throw Error(label_ + ": generator without a bounding rule");

  // Lexicographic enumeration: the first generator is most significant.
  Exps e(n, 0);
  while (true) {
    basis_.push_back(e);
    int g = n - 1;
    while (g >= 0 && ++e[g] == bound[g]) e[g--] = 0;
    if (g < 0) break;
  }
  for (int i = 0; i < size(); ++i) {
    index_[basis_[i]] = i;
    weights_.push_back(total_degree(basis_[i]));
  }
  dim_ = total_degree(point);

  integration_ = RatVector::Constant(size(), Rat(0));
  for (int i = 0; i < size(); ++i) {
    if (weights_[i] != dim_) continue;
    if (basis_[i] != point) throw Error(label_ + ": top degree is not spanned by the point class");
    integration_[i] = 1;
  }

  table_.resize(static_cast<size_t>(size()) * size());
  for (int i = 0; i < size(); ++i) {
    for (int j = i; j < size(); ++j) {
      RatVector v = reduce(Poly{{add_exps(basis_[i], basis_[j]), Rat(1)}});
      std::vector<std::pair<int, Rat>> entries;
      for (int k = 0; k < size(); ++k)
        if (v[k] != 0) entries.emplace_back(k, v[k]);
      table_[static_cast<size_t>(i) * size() + j] = entries;
      table_[static_cast<size_t>(j) * size() + i] = entries;
    }
  }

  pairing_ = RatMatrix::Zero(size(), size());
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      for (const auto& [k, c] : product(i, j)) pairing_(i, j) += c * integration_[k];
}

int RingModel::index_of(const Exps& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw Error(label_ + ": not a basis monomial");
  return it->second;
}

Poly RingModel::reduce_poly(Poly work) const {
  Poly done;
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const Exps& e = node.key();
    const Rat& c = node.mapped();
    if (c == 0) continue;
    const Rule* hit = nullptr;
    for (const auto& rule : rules_) {
      if (e[rule.gen] >= rule.power) {
        hit = &rule;
        break;
      }
    }
    if (!hit) {
      Rat& slot = done[e];
      slot += c;
      if (slot == 0) done.erase(e);
      continue;
    }
    Exps base = e;
    base[hit->gen] -= hit->power;
    for (const auto& [t, tc] : hit->rhs) work[add_exps(base, t)] += c * tc;
  }
  return done;
}

RatVector RingModel::reduce(const Poly& p) const {
  RatVector v = RatVector::Constant(size(), Rat(0));
  for (const auto& [e, c] : reduce_poly(p)) v[index_of(e)] += c;
  return v;
}

std::string RingModel::monomial_string(int i) const {
  std::ostringstream os;
  bool any = false;
  for (int g = 0; g < ngens(); ++g) {
    int e = basis_[i][g];
    if (e == 0) continue;
    if (any) os << "*";
    os << gens_[g];
    if (e > 1) os << "^" << e;
    any = true;
  }
  if (!any) os << "1";
  return os.str();
}

Ring proj_space(int r) {
  if (r < 1) throw Error("rank must be >= 1");
  return std::make_shared<const RingModel>(RingKind::Proj, r, "Proj," + std::to_string(r),
                                           std::vector<std::string>{"h"},
                                           std::vector<Rule>{nilpotent(1, 0, r + 1)}, Exps{r});
}

Ring local_model(int r) { return make_local(r, false, false); }
Ring local_model_prime(int r) { return make_local(r, true, false); }
Ring corrupted_local_model(int r) { return make_local(r, false, true); }

Ring blowup(int r) {
  if (r < 1) throw Error("rank must be >= 1");
  Rule zeta{2, 2, {}};
  zeta.rhs[Exps{1, 0, 1}] = 1;
  zeta.rhs[Exps{0, 1, 1}] = 1;
  return std::make_shared<const RingModel>(
      RingKind::Blowup, r, "BlowupW," + std::to_string(r), std::vector<std::string>{"h1", "h2", "ζ"},
      std::vector<Rule>{nilpotent(3, 0, r + 1), nilpotent(3, 1, r + 1), zeta}, Exps{r, r, 1});
}

Ring product(const Ring& a, const Ring& b) {
  const int na = a->ngens();
  const int n = na + b->ngens();
  auto widen = [&](const Exps& e, int offset) {
    Exps out(n, 0);
    for (size_t k = 0; k < e.size(); ++k) out[offset + k] = e[k];
    return out;
  };
  std::vector<std::string> gens = a->gens();
  gens.insert(gens.end(), b->gens().begin(), b->gens().end());
  std::vector<Rule> rules;
  for (int side = 0; side < 2; ++side) {
    const Ring& f = side == 0 ? a : b;
    int offset = side == 0 ? 0 : na;
    for (const auto& rule : f->rules()) {
      Rule w{rule.gen + offset, rule.power, {}};
      for (const auto& [e, c] : rule.rhs) w.rhs[widen(e, offset)] = c;
      rules.push_back(w);
    }
  }
  Exps pa = a->monomial(a->size() - 1);
  Exps pb = b->monomial(b->size() - 1);
  Exps point = widen(pa, 0);
  for (size_t k = 0; k < pb.size(); ++k) point[na + k] = pb[k];
  // Each factor's last basis element is its point class (all exponents at their bounds).
  return std::make_shared<const RingModel>(RingKind::Product, a->r(), a->label() + "×" + b->label(), gens,
                                           rules, point, std::vector<Ring>{a, b});
}

bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && a->label() == b->label()); }

RatMatrix mult_matrix(const RatClass& x) {
  const int n = x.ring->size();
  RatMatrix m = RatMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m.col(j) = mul(x, RatClass::basis_element(x.ring, j)).coeffs;
  return m;
}

namespace {

// Reduced row echelon over Q on [m | rhs]; returns the determinant of m.
Rat gauss_jordan(RatMatrix& m, RatMatrix& rhs) {
  const Eigen::Index n = m.rows();
  Rat det = 1;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      m.row(piv).swap(m.row(col));
      rhs.row(piv).swap(rhs.row(col));
      det = -det;
    }
    Rat p = m(col, col);
    det *= p;
    m.row(col) /= p;
    rhs.row(col) /= p;
    for (Eigen::Index row = 0; row < n; ++row) {
      if (row == col || m(row, col) == 0) continue;
      Rat f = m(row, col);
      m.row(row) -= f * m.row(col);
      rhs.row(row) -= f * rhs.row(col);
    }
  }
  return det;
}

}  // namespace

RatMatrix inverse(const RatMatrix& m) {
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::Identity(m.rows(), m.cols());
  if (gauss_jordan(a, inv) == 0) throw Error("singular rational matrix");
  return inv;
}

Rat determinant(const RatMatrix& m) {
  RatMatrix a = m;
  RatMatrix dummy = RatMatrix::Zero(m.rows(), 0);
  return gauss_jordan(a, dummy);
}

namespace {

RatClass eval_poly(const Ring& target, const std::vector<RatClass>& images, const Poly& p) {
  RatClass out = RatClass::zero(target);
  for (const auto& [e, c] : p) {
    RatClass term = RatClass::one(target);
    for (size_t g = 0; g < e.size(); ++g) term = mul(term, power(images[g], e[g]));
    out += RatClass(target, c * term.coeffs);
  }
  return out;
}

}  // namespace

std::vector<RatClass> relation_images(const Ring& source, const Ring& target,
                                      const std::vector<RatClass>& images) {
  if (static_cast<int>(images.size()) != source->ngens())
    throw RingMismatch("wrong number of generator images");
  for (const auto& im : images)
    if (!same_ring(im.ring, target)) throw RingMismatch("generator image lives in the wrong ring");
  std::vector<RatClass> out;
  for (const auto& rule : source->rules()) {
    Exps lead(source->ngens(), 0);
    lead[rule.gen] = rule.power;
    Poly rel = rule.rhs;
    for (auto& [e, c] : rel) c = -c;
    rel[lead] += 1;
    out.push_back(eval_poly(target, images, rel));
  }
  return out;
}

RingMap::RingMap(Ring source, Ring target, std::vector<RatClass> images)
    : source_(std::move(source)), target_(std::move(target)) {
  auto rels = relation_images(source_, target_, images);
  for (size_t k = 0; k < rels.size(); ++k) {
    if (!rels[k].coeffs.isZero())
      throw RelationViolation("relation " + std::to_string(k) + " of " + source_->label() +
                              " does not vanish in " + target_->label());
  }
  pullback_ = RatMatrix::Zero(target_->size(), source_->size());
  for (int i = 0; i < source_->size(); ++i)
    pullback_.col(i) = eval_poly(target_, images, Poly{{source_->monomial(i), Rat(1)}}).coeffs;
  push_ = inverse(source_->pairing()) * pullback_.transpose() * target_->pairing();
}

RatClass RingMap::pullback(const RatClass& a) const {
  if (!same_ring(a.ring, source_)) throw RingMismatch("pullback expects a class on " + source_->label());
  return RatClass(target_, pullback_ * a.coeffs);
}

RatClass RingMap::pushforward(const RatClass& b) const {
  if (!same_ring(b.ring, target_)) throw RingMismatch("pushforward expects a class on " + target_->label());
  return RatClass(source_, push_ * b.coeffs);
}

RingMap blowdown_from(const Ring& source) {
  Ring w = blowup(source->r());
  return RingMap(source, w, {RatClass::generator(w, 0), RatClass::generator(w, 2)});
}

RingMap blowdown(int r) { return blowdown_from(local_model(r)); }

RingMap blowdown_prime(int r) {
  Ring w = blowup(r);
  return RingMap(local_model_prime(r), w, {RatClass::generator(w, 1), RatClass::generator(w, 2)});
}

RingMap projection(const Ring& prod, int side) {
  if (prod->kind() != RingKind::Product || side < 0 || side > 1) throw Error("projection needs a product ring");
  const Ring& f = prod->factors()[side];
  int offset = side == 0 ? 0 : prod->factors()[0]->ngens();
  std::vector<RatClass> images;
  for (int g = 0; g < f->ngens(); ++g) images.push_back(RatClass::generator(prod, offset + g));
  return RingMap(f, prod, images);
}

}  // namespace flopcheck
