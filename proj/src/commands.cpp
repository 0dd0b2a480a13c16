#include "flopcheck/commands.hpp"

#include "flopcheck/verify.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace flopcheck {

namespace {

std::string sci(const Real& x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << static_cast<double>(x);
  return os.str();
}

std::string sci(double x) { return sci(Real(x)); }

// Runs body; an exception becomes a failed check with its message.
void run(Report& rep, const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  c.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.checks.push_back(c);
}

void exact(Check& c, bool ok, const std::string& detail = "") {
  c.pass = ok;
  c.measured = ok ? "exact" : "mismatch";
  c.tolerance = "exact";
  if (!ok) c.detail = detail;
}

void numeric(Check& c, const Real& value, double tol, bool below = true) {
  c.pass = below ? value < Real(tol) : value > Real(tol);
  c.measured = sci(value);
  c.tolerance = (below ? "< " : "> ") + sci(tol);
}

RatClass gen(const Ring& R, int g) { return RatClass::generator(R, g); }

void cohomology_suite(Report& rep, int r, const Ring& P) {
  Ring W = blowup(r);
  run(rep, "cohomology.relations.p", [&](Check& c) {
    auto rels = relation_images(P, W, {gen(W, 0), gen(W, 2)});
    bool ok = true;
    for (const auto& x : rels) ok = ok && is_zero(x);
    exact(c, ok, "a relation of " + P->label() + " does not vanish on " + W->label());
  });
  run(rep, "cohomology.relations.p_prime", [&](Check& c) {
    auto rels = relation_images(local_model_prime(r), W, {gen(W, 1), gen(W, 2)});
    bool ok = true;
    for (const auto& x : rels) ok = ok && is_zero(x);
    exact(c, ok);
  });
  run(rep, "cohomology.pairing_nondegenerate", [&](Check& c) {
    bool ok = true;
    for (const Ring& R : {proj_space(r), P, local_model_prime(r), W}) ok = ok && determinant(R->pairing()) != 0;
    exact(c, ok);
  });
  run(rep, "cohomology.intersection_numbers", [&](Check& c) {
    bool ok = true;
    std::string detail;
    for (int i = 0; i <= r; ++i) {
      Rat v = integrate(mul(power(gen(P, 0), i), power(gen(P, 1), 2 * r + 1 - i)));
      if (v != Rat(binomial(2 * r - i, r - i))) {
        ok = false;
        detail = "i=" + std::to_string(i) + " gives " + format_rat(v);
      }
    }
    exact(c, ok, detail);
  });
  run(rep, "cohomology.adjunction", [&](Check& c) {
    RingMap p = blowdown(r), pp = blowdown_prime(r);
    const int n = p.source()->size();
    RatMatrix id = RatMatrix::Identity(n, n);
    exact(c, p.push_matrix() * p.matrix() == id && pp.push_matrix() * pp.matrix() == id);
  });
  run(rep, "cohomology.projection_formula", [&](Check& c) {
    RingMap p = blowdown(r);
    bool ok = true;
    for (int i = 0; i < p.source()->size(); ++i) {
      RatClass a = RatClass::basis_element(p.source(), i);
      for (int j = 0; j < W->size(); ++j) {
        RatClass b = RatClass::basis_element(p.target(), j);
        ok = ok && p.pushforward(mul(b, p.pullback(a))) == mul(p.pushforward(b), a);
      }
    }
    exact(c, ok);
  });
}

void charclass_suite(Report& rep, int r) {
  run(rep, "charclass.hrr", [&](Check& c) {
    bool ok = true;
    for (int n = 1; n <= 3; ++n) {
      Ring Pn = proj_space(n);
      RatClass td = todd(tangent_bundle(Pn));
      for (int k = -n; k <= 6; ++k) {
        RatClass ch = chern_character(KClass::line(Pn, k));
        Rat expected = k >= 0 ? Rat(binomial(k + n, n)) : Rat(0);
        ok = ok && integrate(mul(ch, td)) == expected;
      }
    }
    exact(c, ok);
  });
  run(rep, "charclass.gamma_p1", [&](Check& c) {
    Ring P1 = proj_space(1);
    SymClass expected = SymClass::one(P1) + (SymScalar(-2L) * SymScalar::euler_gamma()) * cast_class<SymScalar>(gen(P1, 0));
    exact(c, gamma_class(tangent_bundle(P1)) == expected);
  });
  run(rep, "charclass.gamma_p2", [&](Check& c) {
    Ring P2 = proj_space(2);
    SymScalar g = SymScalar::euler_gamma();
    SymClass h = cast_class<SymScalar>(gen(P2, 0));
    SymClass expected = SymClass::one(P2) + (SymScalar(-3L) * g) * h +
                        (Rat(9, 2) * g * g + Rat(3, 2) * SymScalar::zeta(2)) * mul(h, h);
    exact(c, gamma_class(tangent_bundle(P2)) == expected);
  });
  run(rep, "charclass.kunneth", [&](Check& c) {
    bool ok = true;
    for (auto [a, b] : {std::pair{1, 1}, std::pair{1, 2}}) {
      Ring A = proj_space(a), B = proj_space(b), AB = product(A, B);
      RingMap pa = projection(AB, 0), pb = projection(AB, 1);
      RootBundle T = tangent_bundle(AB);
      ok = ok && gamma_class(T) == mul(pullback(pa, gamma_class(tangent_bundle(A))), pullback(pb, gamma_class(tangent_bundle(B))));
      ok = ok && todd(T) == mul(pa.pullback(todd(tangent_bundle(A))), pb.pullback(todd(tangent_bundle(B))));
      ok = ok && chern_character(T) == pa.pullback(chern_character(tangent_bundle(A))) + pb.pullback(chern_character(tangent_bundle(B)));
    }
    exact(c, ok);
  });
  run(rep, "charclass.c1_local", [&](Check& c) {
    Ring P = local_model(r);
    exact(c, c1(tangent_bundle(P)) == RatClass(P, Rat(r + 2) * gen(P, 1).coeffs));
  });
  run(rep, "charclass.crepancy", [&](Check& c) {
    RingMap p = blowdown(r);
    Ring W = p.target();
    RatClass E = gen(W, 2) - gen(W, 0) - gen(W, 1);
    exact(c, c1(tangent_bundle(W)) == p.pullback(c1(tangent_bundle(p.source()))) - RatClass(W, Rat(r) * E.coeffs));
  });
}

void fm_suite(Report& rep, const FlopData& fd) {
  auto lb = basis_line_bundles(fd.P);
  run(rep, "fm.unit", [&](Check& c) { exact(c, fm_transform(fd, RatClass::one(fd.P)) == RatClass::one(fd.Pp)); });
  run(rep, "fm.rank", [&](Check& c) {
    bool ok = true;
    for (const auto& e : lb) ok = ok && fm_apply(fd, e).image.coeffs[0] == chern_character(e).coeffs[0];
    exact(c, ok);
  });
  run(rep, "fm.euler_pairing", [&](Check& c) {
    std::vector<RatClass> img;
    for (const auto& e : lb) img.push_back(fm_apply(fd, e).image);
    bool ok = true;
    for (size_t i = 0; i < lb.size(); ++i)
      for (size_t j = 0; j < lb.size(); ++j) ok = ok && euler_pairing(lb[i], lb[j]) == euler_pairing_ch(img[i], img[j]);
    exact(c, ok);
  });
  run(rep, "fm.lattice_unimodular", [&](Check& c) {
    RatMatrix K = fm_lattice_matrix(fd);
    bool integral = true;
    for (Eigen::Index i = 0; i < K.rows(); ++i)
      for (Eigen::Index j = 0; j < K.cols(); ++j) integral = integral && denominator(K(i, j)) == 1;
    Rat det = determinant(K);
    exact(c, integral && (det == 1 || det == -1), "det " + format_rat(det));
    c.measured = "det " + format_rat(det);
  });
  run(rep, "fm.graph_correspondence", [&](Check& c) {
    RatClass hp = gen(fd.Pp, 0), xip = gen(fd.Pp, 1);
    bool ok = graph_correspondence(fd, gen(fd.P, 0)) == xip - hp && graph_correspondence(fd, gen(fd.P, 1)) == xip;
    ok = ok && graph_correspondence(fd, c1(tangent_bundle(fd.P))) == c1(tangent_bundle(fd.Pp));
    for (int i = 0; i < fd.P->size(); ++i)
      for (int j = 0; j < fd.P->size(); ++j) {
        RatClass a = RatClass::basis_element(fd.P, i), b = RatClass::basis_element(fd.P, j);
        ok = ok && integrate(mul(graph_correspondence(fd, a), graph_correspondence(fd, b))) == integrate(mul(a, b));
      }
    exact(c, ok);
  });
  run(rep, "fm.differs_from_graph", [&](Check& c) { exact(c, fd.fm != fd.graph); });
}

void quantum_suite(Report& rep, int r, int order) {
  ISeries s = i_function_extremal(local_model(r), order);
  run(rep, "quantum.homogeneity", [&](Check& c) { exact(c, is_homogeneous(s)); });
  run(rep, "quantum.qde", [&](Check& c) {
    SeriesCheck q = qde_operator_check(s);
    exact(c, q.pass, "residue at order " + std::to_string(q.failing_order));
    c.measured = q.pass ? "zero through q^" + std::to_string(order) : "residue at q^" + std::to_string(q.failing_order);
  });
  run(rep, "quantum.jet_closure", [&](Check& c) {
    SeriesCheck q = jet_closure_check(s);
    exact(c, q.pass, "residue at order " + std::to_string(q.failing_order));
  });
  run(rep, "quantum.mirror_map", [&](Check& c) {
    bool ok = true;
    for (const auto& x : mirror_map_check(s)) ok = ok && is_zero(x);
    exact(c, ok);
  });
  run(rep, "quantum.qde_detects_mutation", [&](Check& c) {
    ISeries bad = s;
    const int d = std::min(3, order);
    for (auto& [e, x] : bad.coeffs[d]) x = -x;
    SeriesCheck q = qde_operator_check(bad);
    exact(c, !q.pass && q.failing_order == d);
  });
}

std::string z_label(const std::string& z) {
  std::string out;
  for (char ch : z) out += std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' ? ch : '_';
  return out;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
}

std::string class_text(const SymClass& c) {
  std::string out;
  for (int i = 0; i < c.ring->size(); ++i) {
    if (is_zero(c.coeffs[i])) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.coeffs[i].to_string() + ")*" + c.ring->monomial_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.informational && !c.pass) return false;
  return true;
}

Json Report::to_json() const {
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json j{{"name", c.name},
           {"status", c.informational ? "info" : (c.pass ? "pass" : "fail")},
           {"measured", c.measured},
           {"tolerance", c.tolerance},
           {"runtime_s", c.seconds}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    cs.push_back(j);
  }
  return Json{{"schema", kSchema},
              {"command", command},
              {"status", pass() ? "pass" : "fail"},
              {"config", flopcheck::to_json(config)},
              {"config_hash", config_hash(config)},
              {"checks", cs},
              {"extra", extra}};
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.informational ? "INFO" : (c.pass ? "PASS" : "FAIL")) << "  " << c.name;
    if (!c.measured.empty()) os << "  measured=" << c.measured;
    if (!c.tolerance.empty()) os << "  tol=" << c.tolerance;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << (pass() ? "PASS" : "FAIL") << "  " << command << " overall\n";
  return os.str();
}

Report cmd_sanity(const Config& cfg) {
  validate(cfg, true);
  ScopedDigits digits(cfg.digits);
  Report rep{"sanity", cfg, {}, Json::object()};
  const int r = cfg.rank;
  Ring P = cfg.fault == "relation" ? corrupted_local_model(r) : local_model(r);
  cohomology_suite(rep, r, P);
  charclass_suite(rep, r);
  FlopData fd(r);
  fm_suite(rep, fd);
  if (r <= 2) {
    quantum_suite(rep, r, cfg.order);
  } else {
    rep.extra["skipped"] = "quantum suites run for rank <= 2 only";
  }
  return rep;
}

MainResult commutes_under_convention(FlopNumerics& fn, const PsiSamples& s, const PathSpec& route, double tol) {
  MainResult out;
  Convention first{route.id, route, 0, 0};
  UMatrix u = extract_with_convention(fn, first);
  Real res = commutativity(s, u.matrix).max_residual;
  out.chosen = ConventionResult{route.id, res, u};
  if (res < Real(tol)) {
    out.recorded = route.id;
    out.passing = 1;
    return out;
  }
  for (const Convention& c : convention_set(fn.r())) {
    UMatrix uc = extract_with_convention(fn, c);
    Real rc = commutativity(s, uc.matrix).max_residual;
    out.scan.push_back(ConventionResult{c.name, rc, uc});
    if (rc < Real(tol)) {
      ++out.passing;
      out.recorded = c.name;
      out.chosen = out.scan.back();
    }
  }
  if (out.passing != 1) out.recorded.clear();
  return out;
}

Report cmd_verify(const Config& cfg) {
  validate(cfg, false);
  ScopedDigits digits(cfg.digits);
  Report rep{"verify", cfg, {}, Json::object()};
  const int r = cfg.rank;
  FlopData fd(r);
  PathSpec route = resolve_path(cfg);
  validate_path(route, (r % 2) ? 1 : -1);
  std::vector<BigC> zs = z_points(cfg);
  std::vector<CMatrix> us;
  std::set<std::string> recorded;
  Json per_z = Json::array();
  for (size_t k = 0; k < zs.size(); ++k) {
    const BigC& z0 = zs[k];
    const std::string tag = "[z=" + cfg.z[k] + "]";
    FlopNumerics fn(r, z0);
    fn.ev.set_min_terms(cfg.order);
    fn.ev_prime.set_min_terms(cfg.order);
    PsiSamples s = sample_psi(fd, z0, log(z0));
    MainResult m;
    run(rep, "main.commutativity" + tag, [&](Check& c) {
      m = commutes_under_convention(fn, s, route, cfg.tol.commutativity);
      numeric(c, m.chosen.residual, cfg.tol.commutativity);
      c.pass = c.pass && m.passing == 1;
      c.detail = m.recorded.empty() ? std::to_string(m.passing) + " conventions pass" : "convention " + m.recorded;
    });
    Json scan = Json::object();
    for (const auto& cr : m.scan) scan[cr.name] = sci(cr.residual);
    per_z.push_back(Json{{"z0", cfg.z[k]}, {"convention", m.recorded}, {"scan", scan}});
    if (m.recorded.empty()) continue;
    recorded.insert(m.recorded);
    const UMatrix& u = m.chosen.u;
    us.push_back(u.matrix);
    run(rep, "u.stability" + tag, [&](Check& c) { numeric(c, u.residuals.at("stability"), cfg.tol.stability); });
    run(rep, "u.intertwining" + tag, [&](Check& c) { numeric(c, u.residuals.at("intertwining"), cfg.tol.intertwining); });
    run(rep, "u.xi_intertwining" + tag, [&](Check& c) { numeric(c, u.residuals.at("xi_intertwining"), cfg.tol.xi); });
    run(rep, "u.det" + tag, [&](Check& c) { numeric(c, u.det_abs, cfg.tol.det, false); });
  }
  run(rep, "main.convention_consistent", [&](Check& c) {
    c.pass = recorded.size() == 1;
    c.measured = recorded.size() == 1 ? *recorded.begin() : std::to_string(recorded.size()) + " conventions";
  });
  if (us.size() >= 2) {
    run(rep, "u.z_dependence", [&](Check& c) {
      c.informational = true;
      c.pass = true;
      c.measured = sci(max_abs_entry(us[0] - us[1]));
      c.detail = "max |U(z=" + cfg.z[0] + ") - U(z=" + cfg.z[1] + ")|";
    });
  }
  rep.extra["conventions"] = per_z;
  if (recorded.size() == 1) rep.extra["recorded_convention"] = *recorded.begin();
  return rep;
}

Report cmd_dump(const std::string& what, const Config& cfg) {
  namespace fs = std::filesystem;
  const bool needs_numeric = what == "u-matrix";
  validate(cfg, !needs_numeric);
  ScopedDigits digits(cfg.digits);
  Report rep{"dump " + what, cfg, {}, Json::object()};
  Json files = Json::array();
  const fs::path out(cfg.out);
  run(rep, "dump." + what, [&](Check& c) {
    if (what == "gamma") {
      Ring R = parse_space(cfg.space);
      SymClass g = gamma_class(tangent_bundle(R));
      Json j{{"schema", kSchema}, {"space", cfg.space}, {"class", to_json(g)}, {"text", class_text(g)}};
      write_file(out / "gamma.json", dump(j));
      files.push_back((out / "gamma.json").string());
    } else if (what == "fm-matrix") {
      FlopData fd(cfg.rank);
      write_file(out / "fm-matrix.json", dump(fm_matrix_json(fd)));
      files.push_back((out / "fm-matrix.json").string());
    } else if (what == "ifunction") {
      if (cfg.rank > 2) throw ConfigError("ifunction dumps need rank <= 2");
      write_file(out / "ifunction.json", dump(to_json(i_function_extremal(local_model(cfg.rank), cfg.order))));
      files.push_back((out / "ifunction.json").string());
    } else if (what == "u-matrix") {
      PathSpec route = resolve_path(cfg);
      std::vector<BigC> zs = z_points(cfg);
      for (size_t k = 0; k < zs.size(); ++k) {
        FlopNumerics fn(cfg.rank, zs[k]);
        fn.ev.set_min_terms(cfg.order);
        fn.ev_prime.set_min_terms(cfg.order);
        UMatrix u = extract_u(fn, route);
        fs::path p = out / ("u-matrix_z" + z_label(cfg.z[k]) + ".json");
        write_file(p, dump(to_json(u)));
        files.push_back(p.string());
      }
    } else {
      throw ConfigError("unknown dump target '" + what + "'");
    }
    c.pass = true;
    c.measured = std::to_string(files.size()) + " file(s)";
  });
  rep.extra["files"] = files;
  return rep;
}

}  // namespace flopcheck
