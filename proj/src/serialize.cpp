#include "flopcheck/serialize.hpp"

namespace flopcheck {

namespace {

template <class S>
Json class_json(const CohClass<S>& c) {
  Json terms = Json::array();
  for (int i = 0; i < c.ring->size(); ++i) {
    if (is_zero(c.coeffs[i])) continue;
    terms.push_back(Json{{"mono", c.ring->monomial(i)}, {"coeff", to_json(c.coeffs[i])}});
  }
  return Json{{"ring", c.ring->label()}, {"terms", terms}};
}

template <class S, class F>
CohClass<S> class_from_json(const Json& j, const Ring& ring, F coeff) {
  if (j.at("ring").get<std::string>() != ring->label())
    throw RingMismatch("class is on " + j.at("ring").get<std::string>() + ", expected " + ring->label());
  auto c = CohClass<S>::zero(ring);
  for (const auto& t : j.at("terms")) c.coeffs[ring->index_of(t.at("mono").get<Exps>())] += coeff(t.at("coeff"));
  return c;
}

Real real_from_json(const Json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  if (j.is_number()) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, j.get<double>());
    return Real(std::string(buf, res.ptr));
  }
  throw ConfigError("expected a number or decimal string");
}

}  // namespace

Json to_json(const Rat& x) { return format_rat(x); }

Json to_json(const BigC& z) { return Json{{"re", format_real(z.real())}, {"im", format_real(z.imag())}}; }

Json to_json(const SymScalar& s) {
  Json out = Json::array();
  for (const auto& [mono, c] : s.terms()) {
    Json m = Json::object();
    for (auto [g, e] : mono) m[gen_name(g)] = e;
    out.push_back(Json{{"mono", m}, {"coeff", format_rat(c)}});
  }
  return out;
}

Json to_json(const RatClass& c) { return class_json(c); }
Json to_json(const SymClass& c) { return class_json(c); }
Json to_json(const NumClass& c) { return class_json(c); }

Json to_json(const GiventalElement& g) {
  Json out = Json::array();
  for (const auto& [key, c] : g.terms)
    out.push_back(Json{{"zpow", std::to_string(static_cast<long>(numerator(key.first * 2))) + "/2"},
                       {"logpow", key.second},
                       {"class", to_json(c)}});
  return out;
}

Json to_json(const ISeries& s) {
  Json coeffs = Json::array();
  for (int d = 0; d <= s.order; ++d) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.coeffs[d]) terms.push_back(Json{{"zpow", e}, {"class", to_json(c)}});
    coeffs.push_back(Json{{"d", d}, {"terms", terms}});
  }
  return Json{{"schema", kSchema}, {"ring", s.ring->label()}, {"order", s.order},
              {"prefactor", s.prefactor ? "q^{h/z}" : "none"}, {"coeffs", coeffs}};
}

Json to_json(const PathSpec& p) {
  Json pts = Json::array();
  for (const BigC& w : p.waypoints) pts.push_back(to_json(w));
  return Json{{"id", p.id}, {"waypoints", pts}, {"log_q0", to_json(p.log_q0)}};
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(format_rat(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const UMatrix& u) {
  Json res = Json::object();
  for (const auto& [k, v] : u.residuals) res[k] = format_real(v);
  Json cond = Json::object();
  for (const auto& [k, v] : u.conditions) cond[k] = format_real(v);
  return Json{{"schema", kSchema},        {"r", u.r},
              {"z0", to_json(u.z0)},      {"convention", u.convention},
              {"path", to_json(u.path)},  {"matrix", to_json(u.matrix)},
              {"residuals", res},         {"conditions", cond},
              {"det_abs", format_real(u.det_abs)}};
}

Json fm_matrix_json(const FlopData& fd) {
  Json basis = Json::array();
  for (int i = 0; i < fd.P->size(); ++i) basis.push_back(fd.P->monomial_string(i));
  RatMatrix lattice = fm_lattice_matrix(fd);
  return Json{{"schema", kSchema},
              {"r", fd.r},
              {"basis", basis},
              {"matrix", to_json(fd.fm)},
              {"lattice_matrix", to_json(lattice)},
              {"lattice_det", format_rat(determinant(lattice))}};
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  return parse_rat(j.get<std::string>());
}

BigC bigc_from_json(const Json& j) {
  if (j.is_object()) return BigC(real_from_json(j.at("re")), real_from_json(j.at("im")));
  if (j.is_array() && j.size() == 2) return BigC(real_from_json(j[0]), real_from_json(j[1]));
  return BigC(real_from_json(j));
}

SymScalar sym_from_json(const Json& j) {
  std::vector<std::pair<SymMonomial, Rat>> terms;
  for (const auto& t : j) {
    SymMonomial mono;
    for (const auto& [name, e] : t.at("mono").items()) mono.emplace_back(parse_gen(name), e.get<std::uint16_t>());
    terms.emplace_back(mono, parse_rat(t.at("coeff").get<std::string>()));
  }
  return SymScalar::from_terms(terms);
}

RatClass rat_class_from_json(const Json& j, const Ring& ring) {
  return class_from_json<Rat>(j, ring, [](const Json& c) { return rat_from_json(c); });
}

SymClass sym_class_from_json(const Json& j, const Ring& ring) {
  return class_from_json<SymScalar>(j, ring, [](const Json& c) { return sym_from_json(c); });
}

PathSpec path_from_json(const Json& j) {
  PathSpec p;
  const Json& pts = j.is_object() ? j.at("waypoints") : j;
  p.id = j.is_object() && j.contains("id") ? j.at("id").get<std::string>() : "custom";
  for (const auto& w : pts) p.waypoints.push_back(bigc_from_json(w));
  if (p.waypoints.empty()) throw ConfigError("path needs at least one waypoint");
  p.log_q0 = j.is_object() && j.contains("log_q0") ? bigc_from_json(j.at("log_q0")) : log(p.waypoints.front());
  return p;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace flopcheck
