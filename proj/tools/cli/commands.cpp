#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "gdaha/algebras.hpp"
#include "gdaha/connection.hpp"
#include "gdaha/error.hpp"
#include "gdaha/io.hpp"
#include "gdaha/rng.hpp"

namespace gdaha::cli {

namespace {

using io::to_json;

[[noreturn]] void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

json read_json(const std::string& path, const char* what) {
  if (path.empty()) fail(ErrorKind::ParseError, std::string("missing ") + what + " file");
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

struct Context {
  const RunConfig& config;
  Sink& sink;
  std::vector<std::string> lines;

  json meta(const json& quantities, const json& contour = nullptr) const {
    json m = {{"command", config.command},
              {"seed", config.seed},
              {"tolerances",
               {{"solver", config.tol.solver},
                {"transport", config.tol.transport},
                {"rank", config.tol.rank},
                {"certification", config.tol.cert}}},
              {"quantities", quantities}};
    m["contour"] = contour;
    return m;
  }

  void say(std::string line) { lines.push_back(std::move(line)); }
};

RationalParams load_params(const RunConfig& c) { return io::params_from_json(read_json(c.params_path, "parameter")); }

std::vector<QComplex> parse_q_list(const std::vector<std::string>& items) {
  std::vector<QComplex> out;
  for (const auto& s : items) out.push_back(parse_qcomplex(s));
  return out;
}

LoopGeometry kz_geometry(const RunConfig& c, int m, int n) {
  if (c.alpha.empty() && c.base.empty()) return default_geometry(m, n, c.delta);
  std::vector<Complex> alpha;
  if (c.alpha.empty()) {
    for (int k = 0; k < m; ++k) alpha.emplace_back(k, 0.0);
  } else {
    for (double a : c.alpha) alpha.emplace_back(a, 0.0);
  }
  if (static_cast<int>(alpha.size()) != m)
    fail(ErrorKind::SizeMismatch, "--alpha needs " + std::to_string(m) + " values");
  std::vector<Complex> base;
  if (c.base.empty()) {
    double right = 0.0;
    for (auto a : alpha) right = std::max(right, a.real());
    for (int j = 1; j <= n; ++j) base.emplace_back(right + j, 0.0);
  } else {
    for (double b : c.base) base.emplace_back(b, 0.0);
  }
  if (static_cast<int>(base.size()) != n) fail(ErrorKind::SizeMismatch, "--base needs " + std::to_string(n) + " values");
  return make_geometry(std::move(alpha), std::move(base), c.delta);
}

LoopGeometry cherednik_geometry(const RunConfig& c, int n) {
  std::vector<Complex> base;
  if (c.base.empty()) {
    for (int j = 1; j <= n; ++j) base.emplace_back(j, 0.0);
  } else {
    for (double b : c.base) base.emplace_back(b, 0.0);
  }
  if (static_cast<int>(base.size()) != n) fail(ErrorKind::SizeMismatch, "--base needs " + std::to_string(n) + " values");
  return make_geometry({Complex(0.0, 0.0)}, std::move(base), c.delta);
}

SolverOptions solver_options(const RunConfig& c, std::uint64_t seed) {
  SolverOptions o;
  o.seed = seed;
  o.tolerance = c.tol.solver;
  return o;
}

/// Seeds of independent module solves, drawn from their own stream.
std::uint64_t module_seed(const RunConfig& c, int index) {
  if (index == 0) return c.seed;
  auto rng = RandomStreams(c.seed).stream("cli-modules", static_cast<std::uint64_t>(index));
  return rng();
}

double spec_deviation(const std::vector<CMatrix>& tuple, const std::vector<ConjugacyClassSpec>& specs, double tol) {
  double worst = 0.0;
  for (std::size_t k = 0; k < tuple.size(); ++k) worst = std::max(worst, spectrum_match(tuple[k], specs[k], tol).deviation);
  return worst;
}

json matrices_json(const std::vector<CMatrix>& tuple) {
  json out = json::array();
  for (const auto& m : tuple) out.push_back(to_json(m));
  return out;
}

json sahi_json(const SahiCheck& s) {
  json w = json::array();
  for (auto z : s.normalization.w) w.push_back(to_json(z));
  const auto& p = s.normalization.params;
  return {{"rescaling", w},
          {"parameters",
           {{"t0", to_json(p.t0)}, {"tn", to_json(p.tn)}, {"u0", to_json(p.u0)}, {"un", to_json(p.un)}, {"q", to_json(p.q)}}},
          {"relations", to_json(s.relations)}};
}

void certify(double value, double tol, ErrorKind kind, const std::string& what) {
  if (!(value <= tol)) {
    std::ostringstream msg;
    msg << what << " = " << value << " exceeds " << tol;
    fail(kind, msg.str());
  }
}

std::string csv(const std::function<void(std::ostream&)>& write) {
  std::ostringstream out;
  out.precision(17);
  write(out);
  return out.str();
}

DSSolution solve_module(const RunConfig& c, const RationalParams& p, int index) {
  auto sol = solve_additive_ds(additive_class_specs(p, 1, c.tol.solver * 100), solver_options(c, module_seed(c, index)));
  return sol;
}

MatrixRep module_rep(const RationalParams& p, const std::vector<CMatrix>& x) {
  auto rep = make_rep(rational_gdaha_presentation(p.graph, 1, p.gamma, p.nu), x);
  rep.parameters["nu"] = p.nu_value();
  return rep;
}

// ---------------------------------------------------------------------------

void cmd_params(Context& ctx) {
  auto p = load_params(ctx.config);
  json doc = {{"meta", ctx.meta({{"params", "star-graph eigenvalue table gamma and coupling nu"},
                                 {"report", "node/leg parameters mu, shifts xi, hbar, u = exp(2 pi i gamma), "
                                            "t = exp(-pi i nu), q = exp(-2 pi i hbar), diagnostics"}})},
              {"params", to_json(p)},
              {"report", io::params_report(p)}};
  ctx.sink.put("params_report.json", doc);
  ctx.say("params: hbar = " + format(hbar_of(p)));
}

void cmd_algebra(Context& ctx) {
  const auto& c = ctx.config;
  if (c.lambda.empty()) fail(ErrorKind::ParseError, "--lambda is required");
  auto lambda = parse_q_list(c.lambda);
  auto nu = parse_qcomplex(c.nu);
  const int n = c.n;
  auto rep = degenerate_regular_rep(n, lambda, nu);
  auto report = relation_residuals(rep);
  long expected = 1;
  for (int i = 2; i <= n; ++i) expected *= i;
  for (int i = 0; i < n; ++i) expected *= static_cast<long>(lambda.size());

  ctx.sink.put("regular_rep.json", {{"meta", ctx.meta({{"representation", "left regular module of the cyclotomic "
                                                                          "degenerate algebra, exact entries"}})},
                                    {"representation", to_json(rep)}});
  json doc = {{"meta", ctx.meta({{"dimension", "n! l^n"},
                                 {"relations", "defining relations evaluated exactly"},
                                 {"x_spectrum", "spectrum of x on the trivial isotypic part V'"}})},
              {"n", n},
              {"lambda", c.lambda},
              {"nu", format(nu)},
              {"dimension", rep.dim},
              {"expected_dimension", expected},
              {"relations", to_json(report)}};
  if (n >= 2) {
    auto spec = cyclotomic_trivial_spec(*rep.presentation, n, lambda.back());
    auto ns = exact_isotypic_subspace(rep, spec);
    auto x = exact_restricted_operator(rep, cyclotomic_x(*rep.presentation, n, nu), ns);
    auto expected_spec = trivial_part_x_spectrum(lambda, nu, n);
    bool match = characteristic_polynomial(x) == polynomial_from_roots(expected_spec);
    json roots = json::array();
    for (const auto& r : expected_spec) roots.push_back(format(r));
    doc["x_spectrum"] = {{"v_prime_dim", ns.free_rows.size()}, {"expected_spectrum", roots}, {"charpoly_matches", match}};
    ctx.sink.put("algebra_report.json", doc);
    if (!match) fail(ErrorKind::SpecMismatch, "spectrum of x on V' differs from the predicted one");
  } else {
    ctx.sink.put("algebra_report.json", doc);
  }
  if (rep.dim != expected) fail(ErrorKind::SizeMismatch, "regular module has the wrong dimension");
  if (!report.all_exact_zero()) fail(ErrorKind::RelationResidualTooLarge, "a relation is not exactly zero");
  ctx.say("algebra: dim " + std::to_string(rep.dim) + ", relations exact");
}

void cmd_solve_ds(Context& ctx) {
  const auto& c = ctx.config;
  auto p = load_params(c);
  std::vector<ConjugacyClassSpec> specs;
  DSSolution sol;
  if (c.kind == "additive") {
    specs = additive_class_specs(p, c.n, c.tol.solver * 100);
    sol = solve_additive_ds(specs, solver_options(c, c.seed));
  } else if (c.kind == "multiplicative") {
    specs = multiplicative_class_specs(exponentiate_params(p), c.n, c.tol.solver * 100);
    sol = solve_multiplicative_ds(specs, solver_options(c, c.seed));
  } else {
    fail(ErrorKind::ParseError, "--kind must be additive or multiplicative");
  }
  sol.tangent_dim = tangent_dimension(sol, c.tol.rank);
  sol.irreducible = irreducibility_check(sol.matrices);
  double dev = spec_deviation(sol.matrices, specs, c.tol.cert);
  json doc = to_json(sol);
  doc["meta"] = ctx.meta({{"matrices", c.kind == "additive" ? "x_k with sum x_k = 0 in prescribed classes"
                                                            : "X_k with X_1...X_m = Id in prescribed classes"},
                          {"tangent_dim", "dimension of the solution variety at the point"},
                          {"spec_deviation", "largest eigenvalue mismatch against the classes"}});
  doc["spec_deviation"] = dev;
  ctx.sink.put("ds_solution.json", doc);
  ctx.sink.put_text("ds_spectra.csv", csv([&](std::ostream& o) { io::write_spectra_csv(o, sol.matrices); }));
  certify(dev, c.tol.cert, ErrorKind::SpecMismatch, "spectrum deviation");
  std::ostringstream s;
  s << "solve-ds: residual " << sol.residual << ", tangent_dim " << *sol.tangent_dim << ", irreducible "
    << (*sol.irreducible ? "yes" : "no");
  ctx.say(s.str());
}

void cmd_monodromy(Context& ctx) {
  const auto& c = ctx.config;
  MonodromyData mon;
  json extra = json::object();
  if (c.cherednik) {
    if (c.lambda.empty()) fail(ErrorKind::ParseError, "--lambda is required with --cherednik");
    auto lambda = parse_q_list(c.lambda);
    auto nu = parse_qcomplex(c.nu);
    auto rep = degenerate_regular_rep(c.n, lambda, nu);
    auto geo = cherednik_geometry(c, c.n);
    mon = cherednik_monodromy(rep, lambda, nu, geo, c.tol.transport);
    json doc = to_json(mon);
    doc["meta"] = ctx.meta({{"matrices", "monodromy U, T_i of Cherednik's system on the regular module"},
                            {"relations", "Ariki-Koike relations on the monodromy"}},
                           to_json(geo));
    ctx.sink.put("monodromy.json", doc);
    if (c.n >= 2) {
      auto spectra = cherednik_spectral_check(mon, c.tol.cert);
      json vals = json::array(), want = json::array();
      for (auto z : spectra.x_eigenvalues) vals.push_back(to_json(z));
      for (auto z : spectra.x_expected) want.push_back(to_json(z));
      doc["spectra"] = {{"v_prime_dim", spectra.v_prime.rank()},
                        {"x_eigenvalues", vals},
                        {"x_expected", want},
                        {"x_deviation", spectra.x_deviation},
                        {"eigenspace_residual", spectra.eigenspace_residual},
                        {"eigenspace_dims", spectra.eigenspace_dims}};
      ctx.sink.put("monodromy.json", doc);
      certify(spectra.x_deviation, c.tol.cert, ErrorKind::SpecMismatch, "X spectrum deviation on V'");
      certify(spectra.eigenspace_residual, c.tol.cert, ErrorKind::SpecMismatch, "X eigenspace residual");
    }
  } else {
    auto p = load_params(c);
    MatrixRep rep;
    if (!c.input_path.empty()) {
      rep = io::rep_from_json(read_json(c.input_path, "representation").at("representation"),
                              rational_gdaha_presentation(p.graph, c.n, p.gamma, p.nu));
      rep.parameters["nu"] = p.nu_value();
    } else {
      if (c.n != 1) fail(ErrorKind::ShapeMismatch, "without --input only n = 1 modules are built");
      auto sol = solve_module(c, p, 0);
      ctx.sink.put("ds_solution.json", to_json(sol));
      rep = module_rep(p, sol.matrices);
    }
    auto geo = kz_geometry(c, p.graph.m(), c.n);
    mon = monodromy_functor(rep, p, c.n, geo, c.tol.transport);
    json doc = to_json(mon);
    doc["meta"] = ctx.meta({{"matrices", "monodromy U_k, T_i of the KZ-type connection (the functor F)"},
                            {"relations", "defining relations of the multiplicative algebra on the monodromy"}},
                           to_json(geo));
    ctx.sink.put("monodromy.json", doc);
    if (p.graph.is_d4()) {
      doc["sahi"] = sahi_json(sahi_relation_check(mon));
      ctx.sink.put("monodromy.json", doc);
    }
  }
  certify(mon.relations.max, c.tol.cert, ErrorKind::RelationResidualTooLarge, "monodromy relation residual");
  std::ostringstream s;
  s << "monodromy: " << mon.kind << ", relation residual " << mon.relations.max << ", error estimate "
    << mon.error_estimate;
  ctx.say(s.str());
}

std::vector<CMatrix> load_or_solve_tuple(Context& ctx, std::vector<ConjugacyClassSpec>* specs) {
  const auto& c = ctx.config;
  if (!c.input_path.empty()) {
    auto sol = io::ds_from_json(read_json(c.input_path, "DS solution"));
    if (sol.kind != DSKind::Additive) fail(ErrorKind::ShapeMismatch, "an additive DS solution is required");
    if (specs) *specs = sol.specs;
    return sol.matrices;
  }
  auto p = load_params(c);
  if (c.n != 1) fail(ErrorKind::ShapeMismatch, "only n = 1 tuples are solved here");
  auto sol = solve_module(c, p, 0);
  ctx.sink.put("ds_solution.json", to_json(sol));
  if (specs) *specs = sol.specs;
  return sol.matrices;
}

void cmd_rh(Context& ctx) {
  const auto& c = ctx.config;
  auto x = load_or_solve_tuple(ctx, nullptr);
  auto geo = kz_geometry(c, static_cast<int>(x.size()), 1);
  auto rh = rh_map(x, geo, c.tol.transport);
  json doc = {{"meta", ctx.meta({{"tuple", "monodromy X_k of dF = sum x_k/(z - alpha_k) F dz (Riemann-Hilbert map)"},
                                 {"product_residual", "||X_1...X_m - Id||"},
                                 {"spec_deviation", "mismatch of spec X_k against exp(2 pi i spec x_k)"}},
                                to_json(geo))},
              {"tuple", matrices_json(rh.tuple)},
              {"product_residual", rh.product_residual},
              {"spec_deviation", rh.spec_deviation},
              {"error_estimate", rh.error_estimate}};
  ctx.sink.put("rh.json", doc);
  ctx.sink.put_text("rh_spectra.csv", csv([&](std::ostream& o) { io::write_spectra_csv(o, rh.tuple); }));
  certify(rh.product_residual, c.tol.cert, ErrorKind::RelationResidualTooLarge, "RH product residual");
  std::ostringstream s;
  s << "rh: product residual " << rh.product_residual << ", spec deviation " << rh.spec_deviation;
  ctx.say(s.str());
}

/// z -> z/(z + c) with c to the left of every puncture; keeps real orderings.
std::optional<LoopGeometry> mobius_image(const LoopGeometry& g) {
  double left = 0.0;
  for (auto a : g.alpha) left = std::min(left, a.real());
  const double c = 2.0 - left;
  std::vector<Complex> alpha, base;
  for (auto a : g.alpha) alpha.push_back(a / (a + c));
  for (auto b : g.base) base.push_back(b / (b + c));
  try {
    return make_geometry(alpha, base);
  } catch (const Error&) {
    return std::nullopt;
  }
}

void cmd_diagram(Context& ctx) {
  const auto& c = ctx.config;
  auto p = load_params(c);
  if (!p.graph.affine) fail(ErrorKind::NotAffine, "the diagram check needs an affine star graph");
  if (c.n != 1) fail(ErrorKind::ShapeMismatch, "the diagram check runs on n = 1 modules");
  if (c.modules < 1) fail(ErrorKind::ParseError, "--modules must be positive");
  auto geo = kz_geometry(c, p.graph.m(), 1);
  auto geo2 = mobius_image(geo);

  json bundle = {{"meta", ctx.meta({{"solution", "additive DS tuple x_k (module of B_1)"},
                                    {"monodromy", "F(M): monodromy of the KZ-type connection with relation report"},
                                    {"phi_monodromy", "Phi(F(M)): multiplicative tuple read off V'"},
                                    {"rh", "RH(Phi(M)): Riemann-Hilbert image of the additive tuple"},
                                    {"diagram_residual", "conjugacy mismatch between Phi(F(M)) and RH(Phi(M))"},
                                    {"mobius_residual", "conjugacy mismatch of RH under a fractional-linear "
                                                        "change of punctures"}},
                                   to_json(geo))},
                 {"params", to_json(p)},
                 {"modules", json::array()}};
  double worst_diagram = 0.0, worst_mobius = 0.0, worst_relation = 0.0;
  for (int i = 0; i < c.modules; ++i) {
    json entry;
    auto sol = solve_module(c, p, i);
    sol.tangent_dim = tangent_dimension(sol, c.tol.rank);
    sol.irreducible = irreducibility_check(sol.matrices);
    entry["solution"] = to_json(sol);
    bundle["modules"].push_back(entry);
    ctx.sink.put("pipeline_bundle.json", bundle);

    auto mon = monodromy_functor(module_rep(p, sol.matrices), p, 1, geo, c.tol.transport);
    entry["monodromy"] = to_json(mon);
    if (p.graph.is_d4()) entry["sahi"] = sahi_json(sahi_relation_check(mon));
    worst_relation = std::max(worst_relation, mon.relations.max);
    bundle["modules"].back() = entry;
    ctx.sink.put("pipeline_bundle.json", bundle);

    auto phi = phi_nondegenerate(mon, c.tol.cert);
    auto rh = rh_map(sol.matrices, geo, c.tol.transport);
    auto match = match_up_to_conjugacy(phi.tuple, rh.tuple, c.tol.cert);
    entry["phi_monodromy"] = {{"tuple", matrices_json(phi.tuple)},
                              {"closure_residual", phi.closure_residual},
                              {"spec_deviation", phi.spec_deviation}};
    entry["rh"] = {{"tuple", matrices_json(rh.tuple)},
                   {"product_residual", rh.product_residual},
                   {"spec_deviation", rh.spec_deviation}};
    entry["diagram_residual"] = match.residual;
    worst_diagram = std::max(worst_diagram, match.residual);
    if (geo2) {
      auto rh2 = rh_map(sol.matrices, *geo2, c.tol.transport);
      double r = match_up_to_conjugacy(rh.tuple, rh2.tuple, c.tol.cert).residual;
      entry["mobius_residual"] = r;
      worst_mobius = std::max(worst_mobius, r);
    }
    bundle["modules"].back() = entry;
    bundle["max_diagram_residual"] = worst_diagram;
    bundle["max_relation_residual"] = worst_relation;
    if (geo2) {
      bundle["max_mobius_residual"] = worst_mobius;
      bundle["mobius_contour"] = to_json(*geo2);
    }
    ctx.sink.put("pipeline_bundle.json", bundle);
  }
  certify(worst_relation, c.tol.cert, ErrorKind::RelationResidualTooLarge, "monodromy relation residual");
  certify(worst_diagram, c.tol.cert, ErrorKind::SpecMismatch, "diagram residual");
  certify(worst_mobius, c.tol.cert, ErrorKind::SpecMismatch, "fractional-linear residual");
  std::ostringstream s;
  s << "diagram: " << c.modules << " module(s), residual " << worst_diagram << ", fractional-linear " << worst_mobius;
  ctx.say(s.str());
}

void cmd_flow(Context& ctx) {
  const auto& c = ctx.config;
  auto x0 = load_or_solve_tuple(ctx, nullptr);
  if (x0.size() != 4) fail(ErrorKind::NotD4, "the flow needs a four-point tuple");
  auto path = parse_kappa_path(c.kappa_path);
  FlowOptions options;
  options.transport_tolerance = c.tol.transport;
  options.word_length = c.word_length;
  options.check_word_length = c.check_word_length;
  options.surrogate = c.surrogate;
  std::vector<Complex> rest(path.begin() + 1, path.end());

  auto emit = [&](const FlowTrajectory& traj, bool complete) {
    json doc = to_json(traj);
    doc["meta"] = ctx.meta({{"samples", "kappa, residual ||prod X_k - Id|| and invariant drift along the path"},
                            {"invariants", "traces of words of length <= " + std::to_string(c.check_word_length) +
                                               " in the monodromy (conjugation invariants)"},
                            {"pinned_words", "corrector holds traces of words of length <= " +
                                                 std::to_string(c.word_length)}},
                           {{"kappa_path", c.kappa_path}, {"surrogate", c.surrogate}, {"normalization", traj.normalization}});
    doc["complete"] = complete;
    ctx.sink.put("flow.json", doc);
    ctx.sink.put_text("flow_trajectory.csv", csv([&](std::ostream& o) { io::write_trajectory_csv(o, traj); }));
  };
  FlowTrajectory partial;
  try {
    auto traj = painleve_flow(x0, path.front(), rest, options, &partial);
    emit(traj, true);
    std::ostringstream s;
    s << "flow: " << traj.samples.size() << " samples, max drift " << traj.max_drift << ", halvings " << traj.halvings;
    ctx.say(s.str());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ContinuationStall) emit(partial, false);
    throw;
  }
}

void cmd_continue_rep(Context& ctx) {
  const auto& c = ctx.config;
  auto p_file = load_params(c);
  if (c.n < 2) fail(ErrorKind::ShapeMismatch, "continuation needs n >= 2");
  QComplex target = c.nu_target.empty() ? p_file.nu : parse_qcomplex(c.nu_target);
  auto p0 = gamma_to_mu_xi(p_file.graph, p_file.gamma, QComplex(0));
  auto p = gamma_to_mu_xi(p_file.graph, p_file.gamma, target);

  std::vector<std::vector<CMatrix>> modules;
  for (int i = 0; i < c.n; ++i) modules.push_back(solve_module(c, p0, i).matrices);
  auto seed = induced_rep_nu_zero(p, c.n, modules, c.tol.rank);
  ctx.sink.put("seed_rep.json", {{"meta", ctx.meta({{"representation", "induced B_n-module at nu = 0"}})},
                                 {"representation", to_json(seed)}});

  ContinuationReport report;
  auto rep = continue_bn_representation(p, c.n, target, seed, {}, &report);
  auto relations = relation_residuals(rep);
  auto geo = kz_geometry(c, p.graph.m(), c.n);
  double curvature = curvature_residual(kz_connection(rep, geo.alpha), 20, c.seed);
  json doc = {{"meta", ctx.meta({{"representation", "B_n-module continued in nu"},
                                 {"relations", "defining relations of B_n(gamma, nu)"},
                                 {"curvature", "flatness defect of the KZ-type connection at 20 random points"},
                                 {"phi_degenerate", "additive tuple read off V' with spectrum check"}},
                                to_json(geo))},
              {"representation", to_json(rep)},
              {"nu_target", format(target)},
              {"steps", report.steps_taken},
              {"corrector_iterations", report.corrector_iterations},
              {"relations", to_json(relations)},
              {"curvature", curvature}};
  ctx.sink.put("continued_rep.json", doc);
  json params_doc = to_json(p);
  ctx.sink.put("continued_params.json", params_doc);
  auto phi = phi_degenerate(rep, p, c.n, c.tol.cert);
  doc["phi_degenerate"] = {{"tuple", matrices_json(phi.tuple)},
                           {"closure_residual", phi.closure_residual},
                           {"spec_deviation", phi.spec_deviation}};
  ctx.sink.put("continued_rep.json", doc);
  certify(relations.max, c.tol.cert, ErrorKind::RelationResidualTooLarge, "relation residual");
  certify(curvature, c.tol.cert, ErrorKind::RelationResidualTooLarge, "curvature");
  std::ostringstream s;
  s << "continue-rep: nu = " << format(target) << ", relation residual " << relations.max << ", curvature " << curvature
    << ", phi spec deviation " << phi.spec_deviation;
  ctx.say(s.str());
}

int exit_code(ErrorKind kind) {
  switch (classify(kind)) {
    case ErrorClass::Validation:
      return 2;
    case ErrorClass::Convergence:
      return 3;
    case ErrorClass::Certification:
      return 4;
  }
  return 1;
}

}  // namespace

DirectorySink::DirectorySink(std::string dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

void DirectorySink::put(const std::string& name, const json& doc) {
  std::ofstream out(std::filesystem::path(dir_) / name);
  out << doc.dump(2) << '\n';
}

void DirectorySink::put_text(const std::string& name, const std::string& text) {
  std::ofstream out(std::filesystem::path(dir_) / name);
  out << text;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"params", "algebra", "solve-ds", "monodromy", "rh",
                                              "diagram", "pipeline", "flow",     "continue-rep"};
  return names;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "not a number: '" + item + "'");
    }
  }
  return out;
}

std::vector<Complex> parse_kappa_path(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) fail(ErrorKind::ParseError, "kappa path needs a kind prefix: " + spec);
  const std::string kind = spec.substr(0, colon);
  auto v = parse_reals(spec.substr(colon + 1));
  auto steps_of = [&](double s) {
    if (s < 1 || s != std::floor(s)) fail(ErrorKind::ParseError, "kappa path step count must be a positive integer");
    return static_cast<int>(s);
  };
  std::vector<Complex> out;
  if (kind == "arc" && v.size() == 6) {
    const Complex centre(v[0], v[1]);
    const int steps = steps_of(v[5]);
    for (int j = 0; j <= steps; ++j) {
      double deg = v[3] + (v[4] - v[3]) * j / steps;
      out.push_back(centre + v[2] * std::polar(1.0, deg * M_PI / 180.0));
    }
  } else if (kind == "line" && v.size() == 5) {
    const Complex a(v[0], v[1]), b(v[2], v[3]);
    const int steps = steps_of(v[4]);
    for (int j = 0; j <= steps; ++j) out.push_back(a + (b - a) * (static_cast<double>(j) / steps));
  } else if (kind == "const" && v.size() == 3) {
    const int steps = steps_of(v[2]);
    out.assign(static_cast<std::size_t>(steps) + 1, Complex(v[0], v[1]));
  } else {
    fail(ErrorKind::ParseError, "unrecognised kappa path: " + spec);
  }
  return out;
}

int run(const RunConfig& config, Sink& sink, std::string* summary) {
  Context ctx{config, sink, {}};
  static const std::map<std::string, std::function<void(Context&)>> table{
      {"params", cmd_params},       {"algebra", cmd_algebra}, {"solve-ds", cmd_solve_ds},
      {"monodromy", cmd_monodromy}, {"rh", cmd_rh},           {"diagram", cmd_diagram},
      {"pipeline", cmd_diagram},    {"flow", cmd_flow},       {"continue-rep", cmd_continue_rep}};
  int code = 0;
  try {
    auto it = table.find(config.command);
    if (it == table.end()) fail(ErrorKind::ParseError, "unknown command '" + config.command + "'");
    if (!(config.tol.solver > 0 && config.tol.transport > 0 && config.tol.rank > 0 && config.tol.cert > 0))
      fail(ErrorKind::ParseError, "tolerances must be positive");
    it->second(ctx);
  } catch (const Error& e) {
    ctx.say(std::string("error: ") + e.what());
    code = exit_code(e.kind());
  } catch (const std::exception& e) {
    ctx.say(std::string("error: ") + e.what());
    code = 1;
  }
  if (summary) {
    summary->clear();
    for (const auto& l : ctx.lines) *summary += l + "\n";
  }
  return code;
}

}  // namespace gdaha::cli
