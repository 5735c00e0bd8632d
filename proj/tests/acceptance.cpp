// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "cli/commands.hpp"
#include "gdaha/connection.hpp"
#include "gdaha/error.hpp"
#include "gdaha/io.hpp"
#include "support.hpp"

using namespace gdaha;
using namespace gdaha::testing;

namespace {

int failures = 0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records `value <= bound` under `name`.
  void below(const std::string& name, double value, double bound) {
    detail << name << '=' << value << (value <= bound ? " <= " : " > ") << bound << "; ";
    if (!(value <= bound)) pass = false;
  }
  void require(const std::string& name, bool ok) {
    detail << name << (ok ? " ok; " : " FAILED; ");
    if (!ok) pass = false;
  }
};

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << "exception: " << e.what();
  }
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s (%.1fs): %s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), seconds_since(t0),
              out.detail.str().c_str());
  std::fflush(stdout);
}

QMatrix poly_eval_exact(const std::vector<QComplex>& coeffs, const QMatrix& a) {
  // Horner in the matrix argument.
  QMatrix acc = QMatrix::scalar(a.rows(), coeffs.back());
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * a + QMatrix::scalar(a.rows(), coeffs[i]);
  return acc;
}

// Multiset {lambda_l - (n-1) nu, lambda_l + nu (n-1 times), lambda_j (n times, j < l)}.
std::vector<QComplex> x_spectrum_oracle(const std::vector<QComplex>& lambda, const QComplex& nu, int n) {
  std::vector<QComplex> out{lambda.back() - QComplex(n - 1) * nu};
  for (int i = 0; i + 1 < n; ++i) out.push_back(lambda.back() + nu);
  for (std::size_t j = 0; j + 1 < lambda.size(); ++j)
    for (int i = 0; i < n; ++i) out.push_back(lambda[j]);
  return out;
}

// Expected eigenvalues of the additive tuple attached to a B_n-module.
std::vector<std::vector<Complex>> additive_oracle(const RationalParams& p, int n) {
  const int ell = p.graph.ell(), m = p.graph.m();
  std::vector<std::vector<Complex>> out;
  for (int k = 0; k < m; ++k) {
    const auto& row = p.gamma[static_cast<std::size_t>(k)];
    std::vector<Complex> e;
    if (k + 1 < m) {
      const int mult = n * ell / p.graph.d[static_cast<std::size_t>(k)];
      for (const auto& g : row)
        for (int i = 0; i < mult; ++i) e.push_back(g.to_complex());
    } else {
      const Complex top = row.back().to_complex(), nu = p.nu_value();
      e.push_back(top - double(n - 1) * nu);
      for (int i = 0; i + 1 < n; ++i) e.push_back(top + nu);
      for (std::size_t j = 0; j + 1 < row.size(); ++j)
        for (int i = 0; i < n; ++i) e.push_back(row[j].to_complex());
    }
    out.push_back(e);
  }
  return out;
}

double spectrum_error(const std::vector<CMatrix>& tuple, const std::vector<std::vector<Complex>>& expected) {
  double worst = 0.0;
  for (std::size_t k = 0; k < tuple.size(); ++k)
    worst = std::max(worst, bottleneck_matching(eigenvalues(tuple[k]), expected[k]));
  return worst;
}

std::string write_params_file(const RationalParams& p, const std::string& name) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << io::to_json(p).dump();
  return path.string();
}

// Float fields within tol, everything else equal.
void compare_json(const nlohmann::json& a, const nlohmann::json& b, double tol, int& exact_fields, double& worst,
                  bool& same_shape) {
  if (a.type() != b.type() && !(a.is_number() && b.is_number())) {
    same_shape = false;
    return;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) same_shape = false;
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) {
        same_shape = false;
        continue;
      }
      compare_json(it.value(), b.at(it.key()), tol, exact_fields, worst, same_shape);
    }
  } else if (a.is_array()) {
    if (a.size() != b.size()) {
      same_shape = false;
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) compare_json(a[i], b[i], tol, exact_fields, worst, same_shape);
  } else if (a.is_number_float() || b.is_number_float()) {
    const double x = a.get<double>(), y = b.get<double>();
    worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(x)));
  } else {
    ++exact_fields;
    if (a != b) same_shape = false;
  }
}

}  // namespace

int main() {
  std::printf("acceptance run\n");

  criterion(1, "regular representations", [](Outcome& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<QComplex> pool{q(1, 5), q(-2, 7), q(3, 11)};
    const std::vector<std::pair<int, int>> cases{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}};
    for (auto [n, ell] : cases) {
      std::vector<QComplex> lambda(pool.begin(), pool.begin() + ell);
      const QComplex nu = q(1, 3);
      DegenerateRegularAlgebra alg(n, lambda, nu);
      auto rep = alg.representation();
      long expected = 1;
      for (int i = 2; i <= n; ++i) expected *= i;
      for (int i = 0; i < n; ++i) expected *= ell;
      const std::string tag = "(" + std::to_string(n) + "," + std::to_string(ell) + ")";
      out.require(tag + " dim " + std::to_string(rep.dim), rep.dim == expected);
      out.require(tag + " relations exactly zero", relation_residuals(rep).all_exact_zero());
      // (a b) c = a (b c) for every generator pair on a spread of basis elements.
      bool assoc = true;
      const auto& labels = rep.presentation->generators();
      for (const auto& la : labels)
        for (const auto& lb : labels) {
          auto a = alg.generator(la), b = alg.generator(lb);
          auto ab = alg.multiply(a, b);
          for (long c = 0; c < static_cast<long>(rep.dim); c += std::max(1L, static_cast<long>(rep.dim) / 7)) {
            auto e = alg.basis(c);
            if (alg.multiply(ab, e) != alg.multiply(a, alg.multiply(b, e))) assoc = false;
          }
        }
      out.require(tag + " associativity", assoc);
    }
    out.below("runtime_s", seconds_since(t0), 30.0);
  });

  criterion(2, "exact spectrum of x on V'", [](Outcome& out) {
    const std::vector<QComplex> pool{q(1, 5), q(-2, 7), q(3, 11)};
    for (auto [n, ell] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
      std::vector<QComplex> lambda(pool.begin(), pool.begin() + ell);
      const QComplex nu = q(1, 3);
      auto rep = degenerate_regular_rep(n, lambda, nu);
      auto ns = exact_isotypic_subspace(rep, cyclotomic_trivial_spec(*rep.presentation, n, lambda.back()));
      auto x = exact_restricted_operator(rep, cyclotomic_x(*rep.presentation, n, nu), ns);
      const std::string tag = "(" + std::to_string(n) + "," + std::to_string(ell) + ")";
      out.require(tag + " dim V'=" + std::to_string(ns.free_rows.size()), static_cast<int>(ns.free_rows.size()) == n * ell);
      // The oracle's characteristic polynomial must annihilate x and agree with det(z - x).
      auto oracle = polynomial_from_roots(x_spectrum_oracle(lambda, nu, n));
      out.require(tag + " charpoly", characteristic_polynomial(x) == oracle);
      out.require(tag + " annihilated", poly_eval_exact(oracle, x).is_zero());
    }
  });

  struct Instance {
    std::string name;
    RationalParams params;
    int n;
  };
  const std::vector<Instance> instances{{"D4 n=1", d4_params(), 1}, {"D4 n=2", d4_params(), 2}, {"E6 n=1", e6_params(), 1}};

  criterion(3, "additive Deligne-Simpson", [&](Outcome& out) {
    for (const auto& inst : instances) {
      const auto t0 = std::chrono::steady_clock::now();
      auto specs = additive_class_specs(inst.params, inst.n);
      Complex trace = 0.0;
      for (const auto& s : specs)
        for (auto [value, mult] : s.entries) trace += value * double(mult);
      out.below(inst.name + " trace", std::abs(trace), 1e-12);
      auto sol = solve_additive_ds(specs);
      out.below(inst.name + " residual", ds_residual(DSKind::Additive, sol.matrices), 1e-10);
      out.below(inst.name + " spec", spectrum_error(sol.matrices, additive_oracle(inst.params, inst.n)), 1e-8);
      out.require(inst.name + " irreducible", irreducibility_check(sol.matrices));
      const int td = tangent_dimension(sol, kRankRelativeCut);
      out.require(inst.name + " tangent_dim " + std::to_string(td), td == 2 * inst.n);
      out.below(inst.name + " runtime_s", seconds_since(t0), 120.0);
    }
  });

  criterion(4, "multiplicative Deligne-Simpson at q = 1", [&](Outcome& out) {
    for (const auto& inst : instances) {
      auto mp = exponentiate_params(inst.params);
      out.below(inst.name + " |q-1|", std::abs(mp.q - 1.0), 1e-12);
      auto specs = multiplicative_class_specs(mp, inst.n);
      Complex det = 1.0;
      for (const auto& s : specs)
        for (auto [value, mult] : s.entries) det *= std::pow(value, mult);
      out.below(inst.name + " det", std::abs(det - 1.0), 1e-12);
      auto sol = solve_multiplicative_ds(specs);
      CMatrix prod = CMatrix::Identity(sol.matrices[0].rows(), sol.matrices[0].cols());
      for (const auto& x : sol.matrices) prod = prod * x;
      out.below(inst.name + " residual", (prod - CMatrix::Identity(prod.rows(), prod.cols())).norm(), 1e-10);
      const int td = tangent_dimension(sol, kRankRelativeCut);
      out.require(inst.name + " tangent_dim " + std::to_string(td), td == 2 * inst.n);
    }
  });

  criterion(5, "parallel transport", [](Outcome& out) {
    const Complex a(0.3, 0.1);
    CMatrix x1(1, 1), x2(1, 1);
    x1(0, 0) = a;
    x2(0, 0) = -a;
    auto geo = default_geometry(2, 1);
    auto conn = fuchsian_connection({x1, x2}, geo.alpha);
    auto loop = braid_loop(geo, {BraidGenerator::Kind::U, 1});
    const Complex exact = std::exp(Complex(0.0, 2.0 * M_PI) * a);
    out.below("scalar", std::abs(parallel_transport(conn, loop, 1e-11).matrix(0, 0) - exact), 1e-10);

    auto sol = solve_rank_one(d4_params());
    auto geo4 = default_geometry(4, 1);
    auto conn4 = fuchsian_connection(sol.matrices, geo4.alpha);
    auto u2 = braid_loop(geo4, {BraidGenerator::Kind::U, 2});
    auto there_and_back = parallel_transport(conn4, compose(reversed(u2), u2), 1e-11).matrix;
    out.below("contractible", (there_and_back - CMatrix::Identity(2, 2)).norm(), 1e-10);
    out.below("loop around all punctures", rh_map(sol.matrices, geo4, 1e-11).product_residual, 1e-10);

    const double coarse = std::abs(transport_fixed_step(conn, loop, 4)(0, 0) - exact);
    const double fine = std::abs(transport_fixed_step(conn, loop, 8)(0, 0) - exact);
    out.below("halving ratio^-1", fine / coarse, 1.0 / 16.0);
  });

  const ExactPair pair = exact_d4_pair();
  const auto graph = build_star_graph({2, 2, 2, 2});
  const auto p_nu0 = gamma_to_mu_xi(graph, pair.gamma, QComplex(0));
  const auto p_nu = gamma_to_mu_xi(graph, pair.gamma, q(1, 20));
  const MatrixRep induced = induced_rep_nu_zero(p_nu0, 2, std::vector<std::vector<QMatrix>>{pair.first, pair.second});
  std::optional<MatrixRep> continued;

  criterion(6, "flatness of the KZ connection", [&](Outcome& out) {
    auto geo = default_geometry(4, 2);
    out.below("nu=0 induced", curvature_residual(kz_connection(induced, geo.alpha), 20, 7), 1e-10);
    continued = continue_bn_representation(p_nu, 2, q(1, 20), induced);
    out.below("|nu|=0.05 continued", curvature_residual(kz_connection(*continued, geo.alpha), 20, 7), 1e-10);
  });

  criterion(7, "n = 1 monodromy functor", [](Outcome& out) {
    auto check = [&](const std::string& name, const RationalParams& p, double tol) {
      auto sol = solve_rank_one(p);
      auto mon = monodromy_functor(rank_one_rep(p, sol.matrices), p, 1, default_geometry(p.graph.m(), 1), 1e-11);
      const auto dim = sol.matrices[0].rows();
      const CMatrix id = CMatrix::Identity(dim, dim);
      double poly = 0.0;
      CMatrix prod = id;
      for (int k = 0; k < p.graph.m(); ++k) {
        const CMatrix& u = mon.rep["U[" + std::to_string(k + 1) + "]"];
        CMatrix acc = id;
        for (const auto& g : p.gamma[static_cast<std::size_t>(k)]) acc = acc * (u - std::exp(Complex(0, 2 * M_PI) * g.to_complex()) * id);
        poly = std::max(poly, acc.norm());
        prod = prod * u;
      }
      out.below(name + " polynomial", poly, tol);
      out.below(name + " product", (prod - id).norm(), tol);
    };
    check("D4", d4_params(), 1e-8);
    check("E6", e6_params(), 1e-8);
    // Group-algebra point: gamma_kj = j/d_k shifted by integers so the traces cancel.
    auto group_point = [&](const std::string& name, const std::vector<int>& legs, const GammaTable& gamma) {
      auto p = gamma_to_mu_xi(build_star_graph(legs), gamma, QComplex(0));
      auto sol = solve_rank_one(p);
      auto mon = monodromy_functor(rank_one_rep(p, sol.matrices), p, 1, default_geometry(p.graph.m(), 1), 1e-11);
      double worst = 0.0;
      for (int k = 0; k < p.graph.m(); ++k) {
        const CMatrix& u = mon.rep["U[" + std::to_string(k + 1) + "]"];
        CMatrix power = CMatrix::Identity(u.rows(), u.cols());
        for (int i = 0; i < p.graph.d[static_cast<std::size_t>(k)]; ++i) power = power * u;
        worst = std::max(worst, (power - CMatrix::Identity(u.rows(), u.cols())).norm());
      }
      out.below(name + " U^d=Id", worst, 1e-8);
    };
    group_point("D4", {2, 2, 2, 2}, {{q(0), q(1, 2)}, {q(0), q(1, 2)}, {q(0), q(1, 2)}, {q(-1), q(-1, 2)}});
    group_point("E6", {3, 3, 3}, {{q(0), q(1, 3), q(2, 3)}, {q(0), q(1, 3), q(2, 3)}, {q(-1), q(-2, 3), q(-1, 3)}});
  });

  criterion(8, "Cherednik monodromy (2,2)", [](Outcome& out) {
    const std::vector<QComplex> lambda{q(1, 5), q(-2, 7)};
    const QComplex nu = q(1, 9);
    auto rep = degenerate_regular_rep(2, lambda, nu);
    auto mon = cherednik_monodromy(rep, lambda, nu, make_geometry({Complex(0)}, {Complex(1), Complex(2)}), 1e-11);
    out.below("Ariki-Koike relations", mon.relations.max, 1e-6);
    auto spectra = cherednik_spectral_check(mon, 1e-6);
    const Complex v1 = std::exp(Complex(0, 2 * M_PI) * lambda[0].to_complex());
    const Complex v2 = std::exp(Complex(0, 2 * M_PI) * lambda[1].to_complex());
    const Complex t = std::exp(Complex(0, -M_PI) * nu.to_complex());
    out.below("X|V' spectrum", bottleneck_matching(spectra.x_eigenvalues, {v2 * t * t, v2 / (t * t), v1, v1}), 1e-6);
    out.below("V'_1 eigenspace", spectra.eigenspace_residual, 1e-6);
    out.require("dim V'_1 = 2", spectra.eigenspace_dims == std::vector<int>{2});
  });

  criterion(9, "commuting diagram", [](Outcome& out) {
    const std::string params = write_params_file(d4_params(), "gdaha_acceptance_d4.json");
    const std::vector<std::pair<std::string, std::vector<double>>> configs{{"default", {}}, {"spread", {0.0, 0.7, 1.9, 3.2}}};
    for (const auto& [name, alpha] : configs) {
      cli::RunConfig config;
      config.command = "diagram";
      config.params_path = params;
      config.modules = 3;
      config.alpha = alpha;
      cli::MemorySink sink;
      std::string summary;
      const int code = cli::run(config, sink, &summary);
      out.require(name + " exit " + std::to_string(code), code == 0);
      const auto& bundle = sink.docs.at("pipeline_bundle.json");
      out.require(name + " modules", bundle.at("modules").size() == 3);
      out.below(name + " diagram", bundle.at("max_diagram_residual").get<double>(), 1e-6);
      out.below(name + " fractional-linear", bundle.at("max_mobius_residual").get<double>(), 1e-6);
    }
  });

  criterion(10, "continuation to |nu| = 0.05", [&](Outcome& out) {
    if (!continued) continued = continue_bn_representation(p_nu, 2, q(1, 20), induced);
    out.below("B_2 relations", relation_residuals(*continued).max, 1e-8);
    auto phi = phi_degenerate(*continued, p_nu, 2, 1e-6);
    out.below("phi_degenerate spectra", spectrum_error(phi.tuple, additive_oracle(p_nu, 2)), 1e-6);
    out.below("phi_degenerate closure", phi.closure_residual, 1e-6);
  });

  criterion(11, "isomonodromic flow", [](Outcome& out) {
    auto sol = solve_rank_one(d4_params());
    auto coarse = painleve_flow(sol.matrices, 0.4, half_circle(20));
    out.below("drift (20 steps)", coarse.max_drift, 1e-6);
    auto fine = painleve_flow(sol.matrices, 0.4, half_circle(40));
    out.below("drift (40 steps)", fine.max_drift, 1e-6);
    out.below("drift growth", fine.max_drift / std::max(coarse.max_drift, 1e-9), 2.0);
    out.below("endpoints conjugate", match_up_to_conjugacy(coarse.samples.back().x, fine.samples.back().x, 1e-6).residual,
              1e-6);

    // nu = 0, n = 2: the induced module's tuple splits into its two rank-one blocks,
    // and the flow of the whole tuple stays block-decoupled.
    auto p0 = d4_params(QComplex(0));
    auto s1 = solve_rank_one(p0, 101), s2 = solve_rank_one(p0, 102);
    auto rep = induced_rep_nu_zero(p0, 2, std::vector<std::vector<CMatrix>>{s1.matrices, s2.matrices}, 1e-9);
    auto phi = phi_degenerate(rep, p0, 2, 1e-6);
    std::vector<CMatrix> blocks;
    for (int k = 0; k < 4; ++k) blocks.push_back(block_diagonal(s1.matrices[k], s2.matrices[k]));
    out.below("nu=0 splitting", match_up_to_conjugacy(phi.tuple, blocks, 1e-5).residual, 1e-5);
    const auto path = half_circle(20);
    auto f1 = painleve_flow(s1.matrices, 0.4, path), f2 = painleve_flow(s2.matrices, 0.4, path);
    auto whole = painleve_flow(phi.tuple, 0.4, path);
    double worst = 0.0;
    for (std::size_t j = 0; j < whole.samples.size(); ++j) {
      std::vector<CMatrix> split;
      for (int k = 0; k < 4; ++k) split.push_back(block_diagonal(f1.samples[j].x[k], f2.samples[j].x[k]));
      worst = std::max(worst, match_up_to_conjugacy(whole.samples[j].x, split, 1e-5).residual);
    }
    out.below("block decoupling", worst, 1e-5);
  });

  criterion(12, "deterministic replay", [](Outcome& out) {
    const std::string params = write_params_file(d4_params(), "gdaha_acceptance_replay.json");
    for (const std::string command : {"diagram", "solve-ds"}) {
      cli::RunConfig config;
      config.command = command;
      config.params_path = params;
      config.seed = 777;
      cli::MemorySink first, second;
      const int c1 = cli::run(config, first), c2 = cli::run(config, second);
      out.require(command + " exit codes", c1 == 0 && c2 == 0);
      int exact_fields = 0;
      double worst = 0.0;
      bool same = first.docs.size() == second.docs.size() && first.texts == second.texts;
      for (const auto& [name, doc] : first.docs) {
        if (!second.docs.count(name)) {
          same = false;
          continue;
        }
        compare_json(doc, second.docs.at(name), 1e-12, exact_fields, worst, same);
      }
      out.require(command + " exact fields identical (" + std::to_string(exact_fields) + ")", same);
      out.below(command + " float fields", worst, 1e-12);
    }
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
