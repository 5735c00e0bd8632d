#include "gdaha/io.hpp"

#include <ostream>

#include "gdaha/error.hpp"

namespace gdaha::io {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::ParseError, what);
}

const json& field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), "complex numbers are [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from(const json& j) {
  require(j.is_array(), "a matrix is an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    require(j[static_cast<std::size_t>(r)].is_array() && static_cast<Eigen::Index>(j[static_cast<std::size_t>(r)].size()) == cols,
            "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  }
  return m;
}

json to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMatrix qmatrix_from(const json& j) {
  require(j.is_array(), "a matrix is an array of rows");
  const std::size_t rows = j.size(), cols = rows ? j[0].size() : 0;
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    require(j[r].is_array() && j[r].size() == cols, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = qcomplex_from(j[r][c]);
  }
  return m;
}

QComplex qcomplex_from(const json& j) {
  if (j.is_string()) return parse_qcomplex(j.get<std::string>());
  if (j.is_number_integer()) return QComplex(Rational(j.get<long>()));
  if (j.is_number()) return QComplex(parse_rational(j.dump()));
  throw Error(ErrorKind::ParseError, "expected an exact number, got " + j.dump());
}

RationalParams params_from_json(const json& j) {
  const json& legs = field(j, "legs");
  require(legs.is_array(), "\"legs\" is a list of leg lengths");
  std::vector<int> d;
  for (const auto& x : legs) {
    require(x.is_number_integer(), "leg lengths are integers");
    d.push_back(x.get<int>());
  }
  const StarGraph graph = build_star_graph(d);
  const json& gamma = field(j, "gamma");
  require(gamma.is_array() && gamma.size() == d.size(), "\"gamma\" needs one row per leg");
  GammaTable rows;
  for (std::size_t k = 0; k < d.size(); ++k) {
    require(gamma[k].is_array() && gamma[k].size() == static_cast<std::size_t>(d[k]),
            "gamma row " + std::to_string(k + 1) + " needs " + std::to_string(d[k]) + " entries");
    std::vector<QComplex> row;
    for (const auto& x : gamma[k]) row.push_back(qcomplex_from(x));
    rows.push_back(std::move(row));
  }
  const QComplex nu = j.contains("nu") ? qcomplex_from(j.at("nu")) : QComplex(0);
  return gamma_to_mu_xi(graph, graph.to_stored_order(rows), nu);
}

json to_json(const RationalParams& p) {
  json legs = json::array(), gamma = json::array();
  for (std::size_t k = 0; k < p.graph.d.size(); ++k) {
    legs.push_back(p.graph.d[k]);
    json row = json::array();
    for (const auto& g : p.gamma[k]) row.push_back(format(g));
    gamma.push_back(std::move(row));
  }
  return {{"legs", legs}, {"gamma", gamma}, {"nu", format(p.nu)}, {"leg_order", p.graph.input_order}};
}

json params_report(const RationalParams& p) {
  json out = to_json(p);
  json mu_leg = json::array();
  for (const auto& row : p.muxi.mu_leg) {
    json r = json::array();
    for (const auto& x : row) r.push_back(format(x));
    mu_leg.push_back(std::move(r));
  }
  json xi = json::array();
  for (const auto& x : p.muxi.xi) xi.push_back(format(x));
  out["mu_node"] = format(p.muxi.mu_node);
  out["mu_leg"] = std::move(mu_leg);
  out["xi"] = std::move(xi);
  out["affine"] = p.graph.affine;
  const MultiplicativeParams mp = exponentiate_params(p);
  json u = json::array();
  for (const auto& row : mp.u) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    u.push_back(std::move(r));
  }
  out["u"] = std::move(u);
  out["t"] = to_json(mp.t);
  out["q"] = to_json(mp.q);
  json diagnostics = json::object();
  if (p.graph.affine) {
    const QComplex hbar = hbar_of(p);
    out["hbar"] = format(hbar);
    diagnostics["hbar_zero"] = hbar.is_zero();
    diagnostics["q_minus_one"] = std::abs(mp.q - 1.0);
    json warnings = json::array();
    if (!hbar.is_zero()) warnings.push_back("NonZeroHbar: the Deligne-Simpson problems need hbar = 0 (q = 1)");
    diagnostics["warnings"] = std::move(warnings);
  } else {
    diagnostics["warnings"] = json::array({"NotAffine: hbar and q are only defined for affine diagrams"});
  }
  out["diagnostics"] = std::move(diagnostics);
  return out;
}

json to_json(const ResidualReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back({{"relation", e.name}, {"norm", e.norm}, {"exact_zero", e.exact_zero}});
  json out = {{"exact", r.exact}, {"max", r.max}, {"entries", std::move(entries)}};
  if (const ResidualEntry* w = r.worst()) out["worst"] = w->name;
  return out;
}

json to_json(const MatrixRep& rep) {
  json gens = json::object(), exact = json::object(), params = json::object();
  const auto& labels = rep.presentation->generators();
  for (std::size_t g = 0; g < labels.size(); ++g) {
    gens[labels[g]] = to_json(rep.matrices[g]);
    if (rep.exact) exact[labels[g]] = to_json((*rep.exact)[g]);
  }
  for (const auto& [name, value] : rep.parameters) params[name] = to_json(value);
  json out = {{"algebra", rep.presentation->name()}, {"dim", rep.dim}, {"generators", std::move(gens)},
              {"parameters", std::move(params)}};
  if (rep.exact) out["exact"] = std::move(exact);
  return out;
}

MatrixRep rep_from_json(const json& j, std::shared_ptr<const Presentation> presentation) {
  const auto& labels = presentation->generators();
  MatrixRep rep;
  if (j.contains("exact")) {
    std::vector<QMatrix> mats;
    for (const auto& label : labels) mats.push_back(qmatrix_from(field(field(j, "exact"), label.c_str())));
    rep = make_exact_rep(std::move(presentation), std::move(mats));
  } else {
    std::vector<CMatrix> mats;
    for (const auto& label : labels) mats.push_back(matrix_from(field(field(j, "generators"), label.c_str())));
    rep = make_rep(std::move(presentation), std::move(mats));
  }
  if (j.contains("parameters"))
    for (const auto& [name, value] : j.at("parameters").items()) rep.parameters[name] = complex_from(value);
  return rep;
}

json to_json(const ConjugacyClassSpec& spec) {
  json entries = json::array();
  for (const auto& [value, mult] : spec.entries) entries.push_back({{"eigenvalue", to_json(value)}, {"multiplicity", mult}});
  return entries;
}

namespace {

ConjugacyClassSpec spec_from(const json& j) {
  require(j.is_array(), "a class spec is a list of {eigenvalue, multiplicity}");
  std::vector<std::pair<Complex, int>> entries;
  for (const auto& e : j) entries.emplace_back(complex_from(field(e, "eigenvalue")), field(e, "multiplicity").get<int>());
  return make_spec(entries);
}

}  // namespace

json to_json(const DSSolution& sol) {
  json mats = json::array(), specs = json::array(), conj = json::array();
  for (const auto& m : sol.matrices) mats.push_back(to_json(m));
  for (const auto& s : sol.specs) specs.push_back(to_json(s));
  for (const auto& g : sol.conjugators) conj.push_back(to_json(g));
  json out = {{"kind", sol.kind == DSKind::Additive ? "additive" : "multiplicative"},
              {"matrices", std::move(mats)},
              {"specs", std::move(specs)},
              {"conjugators", std::move(conj)},
              {"residual", sol.residual},
              {"gauge", sol.gauge},
              {"seed", sol.seed},
              {"start", sol.start},
              {"iterations", sol.iterations}};
  out["tangent_dim"] = sol.tangent_dim ? json(*sol.tangent_dim) : json(nullptr);
  out["irreducible"] = sol.irreducible ? json(*sol.irreducible) : json(nullptr);
  return out;
}

DSSolution ds_from_json(const json& j) {
  DSSolution sol;
  const std::string kind = field(j, "kind").get<std::string>();
  require(kind == "additive" || kind == "multiplicative", "kind is additive or multiplicative");
  sol.kind = kind == "additive" ? DSKind::Additive : DSKind::Multiplicative;
  for (const auto& m : field(j, "matrices")) sol.matrices.push_back(matrix_from(m));
  if (j.contains("specs"))
    for (const auto& s : j.at("specs")) sol.specs.push_back(spec_from(s));
  if (j.contains("conjugators"))
    for (const auto& g : j.at("conjugators")) sol.conjugators.push_back(matrix_from(g));
  sol.residual = j.value("residual", ds_residual(sol.kind, sol.matrices));
  if (j.contains("tangent_dim") && !j.at("tangent_dim").is_null()) sol.tangent_dim = j.at("tangent_dim").get<int>();
  if (j.contains("irreducible") && !j.at("irreducible").is_null()) sol.irreducible = j.at("irreducible").get<bool>();
  sol.gauge = j.value("gauge", sol.gauge);
  sol.seed = j.value("seed", sol.seed);
  sol.start = j.value("start", 0);
  sol.iterations = j.value("iterations", 0);
  return sol;
}

json to_json(const LoopGeometry& g) {
  json alpha = json::array(), base = json::array();
  for (const auto& a : g.alpha) alpha.push_back(to_json(a));
  for (const auto& z : g.base) base.push_back(to_json(z));
  return {{"alpha", std::move(alpha)},
          {"base", std::move(base)},
          {"delta", g.delta},
          {"r_min", g.delta / 2.0},
          {"loops", "U_k: below the axis to alpha_k, one ccw circle of radius delta, retrace; "
                    "T_i: ccw half-turn of z_i, z_i+1 about their midpoint"}};
}

LoopGeometry geometry_from_json(const json& j) {
  std::vector<Complex> alpha, base;
  for (const auto& a : field(j, "alpha")) alpha.push_back(complex_from(a));
  for (const auto& z : field(j, "base")) base.push_back(complex_from(z));
  return make_geometry(std::move(alpha), std::move(base), j.value("delta", 0.0));
}

json to_json(const MonodromyData& mon) {
  json u = json::array();
  for (const auto& row : mon.u) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    u.push_back(std::move(r));
  }
  json out = {{"kind", mon.kind},
              {"representation", to_json(mon.rep)},
              {"contour", to_json(mon.geometry)},
              {"u", std::move(u)},
              {"t", to_json(mon.t)},
              {"tolerance", mon.tolerance},
              {"error_estimate", mon.error_estimate},
              {"relations", to_json(mon.relations)}};
  if (mon.kind == "kz") out["legs"] = mon.graph.d;
  return out;
}

json to_json(const FlowTrajectory& traj) {
  json samples = json::array();
  for (const auto& s : traj.samples) {
    json x = json::array(), inv = json::array();
    for (const auto& m : s.x) x.push_back(to_json(m));
    for (const auto& v : s.invariants) inv.push_back(to_json(v));
    samples.push_back({{"kappa", to_json(s.kappa)},
                       {"x", std::move(x)},
                       {"invariants", std::move(inv)},
                       {"rh_product_residual", s.residual},
                       {"drift", s.drift}});
  }
  json target = json::array();
  for (const auto& v : traj.target) target.push_back(to_json(v));
  return {{"samples", std::move(samples)}, {"target", std::move(target)}, {"surrogate", traj.surrogate},
          {"normalization", traj.normalization}, {"max_drift", traj.max_drift}, {"halvings", traj.halvings}};
}

void write_trajectory_csv(std::ostream& out, const FlowTrajectory& traj) {
  const auto old = out.precision(17);
  out << "kappa_re,kappa_im,residual,drift";
  for (std::size_t i = 0; i < traj.target.size(); ++i) out << ",inv_" << i << "_re,inv_" << i << "_im";
  out << '\n';
  for (const auto& s : traj.samples) {
    out << s.kappa.real() << ',' << s.kappa.imag() << ',' << s.residual << ',' << s.drift;
    for (const auto& v : s.invariants) out << ',' << v.real() << ',' << v.imag();
    out << '\n';
  }
  out.precision(old);
}

void write_spectra_csv(std::ostream& out, const std::vector<CMatrix>& tuple) {
  const auto old = out.precision(17);
  out << "matrix,index,re,im\n";
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    const auto eig = eigenvalues(tuple[k]);
    for (std::size_t i = 0; i < eig.size(); ++i) out << k + 1 << ',' << i << ',' << eig[i].real() << ',' << eig[i].imag() << '\n';
  }
  out.precision(old);
}

}  // namespace gdaha::io
