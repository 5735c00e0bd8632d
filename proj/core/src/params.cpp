#include "gdaha/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gdaha/error.hpp"

namespace gdaha {

int StarGraph::vertex_count() const {
  return 1 + std::accumulate(d.begin(), d.end(), 0, [](int acc, int dk) { return acc + dk - 1; });
}

std::string StarGraph::vertex_label(int leg, int j) const {
  return "i" + std::to_string(j) + "(" + std::to_string(leg) + ")";
}

StarGraph build_star_graph(std::vector<int> d) {
  if (d.empty()) throw Error(ErrorKind::FiniteDynkin, "empty leg list");
  const int m = static_cast<int>(d.size());
  if (m < 3) throw Error(ErrorKind::FiniteDynkin, "a star with fewer than 3 legs is of type A");
  for (int dk : d)
    if (dk < 2) throw Error(ErrorKind::FiniteDynkin, "every leg needs at least 2 vertices");

  Rational inv_sum = 0;
  for (int dk : d) inv_sum += Rational(1, dk);
  inv_sum.canonicalize();
  if (inv_sum > m - 2)
    throw Error(ErrorKind::FiniteDynkin,
                "sum 1/d_k = " + format_rational(inv_sum) + " exceeds m - 2 = " + std::to_string(m - 2));

  StarGraph g;
  g.input_order.resize(d.size());
  std::iota(g.input_order.begin(), g.input_order.end(), 0);
  std::stable_sort(g.input_order.begin(), g.input_order.end(),
                   [&](int a, int b) { return d[a] < d[b]; });
  for (int k : g.input_order) g.d.push_back(d[k]);
  g.affine = inv_sum == m - 2;
  return g;
}

std::vector<std::vector<Complex>> RationalParams::gamma_values() const {
  std::vector<std::vector<Complex>> out;
  for (const auto& row : gamma) {
    out.emplace_back();
    for (const auto& g : row) out.back().push_back(g.to_complex());
  }
  return out;
}

namespace {

void check_shape(const StarGraph& graph, const GammaTable& gamma) {
  if (gamma.size() != graph.d.size())
    throw Error(ErrorKind::ShapeMismatch, "gamma has " + std::to_string(gamma.size()) +
                                              " legs, graph has " + std::to_string(graph.m()));
  for (std::size_t k = 0; k < gamma.size(); ++k)
    if (static_cast<int>(gamma[k].size()) != graph.d[k])
      throw Error(ErrorKind::ShapeMismatch, "leg " + std::to_string(k + 1) + " expects " +
                                                std::to_string(graph.d[k]) + " gamma values");
}

}  // namespace

RationalParams gamma_to_mu_xi(const StarGraph& graph, GammaTable gamma, QComplex nu) {
  check_shape(graph, gamma);
  const long m = graph.m();
  MuXi mx;
  for (const auto& row : gamma) mx.mu_node += row[0];
  const QComplex per_leg = mx.mu_node / QComplex(m);
  for (const auto& row : gamma) {
    mx.xi.push_back(row[0] - per_leg);
    std::vector<QComplex> leg;
    for (std::size_t j = 0; j + 1 < row.size(); ++j) leg.push_back(row[j + 1] - row[j]);
    mx.mu_leg.push_back(std::move(leg));
  }
  return RationalParams{graph, std::move(gamma), std::move(nu), std::move(mx)};
}

GammaTable mu_xi_to_gamma(const StarGraph& graph, const MuXi& muxi) {
  if (muxi.xi.size() != graph.d.size() || muxi.mu_leg.size() != graph.d.size())
    throw Error(ErrorKind::ShapeMismatch, "mu/xi do not match the graph");
  const QComplex per_leg = muxi.mu_node / QComplex(static_cast<long>(graph.m()));
  GammaTable gamma;
  for (std::size_t k = 0; k < graph.d.size(); ++k) {
    if (static_cast<int>(muxi.mu_leg[k].size()) != graph.d[k] - 1)
      throw Error(ErrorKind::ShapeMismatch, "mu on leg " + std::to_string(k + 1));
    std::vector<QComplex> row{per_leg + muxi.xi[k]};
    for (const auto& mu : muxi.mu_leg[k]) row.push_back(row.back() + mu);
    gamma.push_back(std::move(row));
  }
  return gamma;
}

QComplex hbar_of(const RationalParams& params) {
  if (!params.graph.affine) throw Error(ErrorKind::NotAffine, "hbar is defined for affine graphs only");
  const long ell = params.graph.ell();
  QComplex h;
  for (std::size_t k = 0; k < params.gamma.size(); ++k) {
    const QComplex weight(Rational(ell, params.graph.d[k]));
    for (const auto& g : params.gamma[k]) h += weight * g;
  }
  return h;
}

Complex exp_2pi_i(const QComplex& z) {
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), z.re.get_num_mpz_t(), z.re.get_den_mpz_t());
  Rational frac = z.re - Rational(whole);
  frac.canonicalize();
  Complex phase;
  Rational quarter = frac * 4;
  quarter.canonicalize();
  if (quarter.get_den() == 1) {
    static constexpr std::array<Complex, 4> kQuadrant{Complex{1, 0}, Complex{0, 1}, Complex{-1, 0},
                                                      Complex{0, -1}};
    phase = kQuadrant[quarter.get_num().get_ui() % 4];
  } else {
    const double angle = 2.0 * std::numbers::pi * frac.get_d();
    phase = {std::cos(angle), std::sin(angle)};
  }
  if (z.is_real()) return phase;
  return phase * std::exp(-2.0 * std::numbers::pi * z.im.get_d());
}

MultiplicativeParams exponentiate_params(const RationalParams& params) {
  MultiplicativeParams out;
  out.graph = params.graph;
  for (const auto& row : params.gamma) {
    out.u.emplace_back();
    for (const auto& g : row) out.u.back().push_back(exp_2pi_i(g));
  }
  out.t = exp_2pi_i(-params.nu * QComplex(Rational(1, 2)));
  out.q = params.graph.affine ? exp_2pi_i(-hbar_of(params)) : q_from_u(params.graph, out.u);
  out.gamma = params.gamma;
  out.nu = params.nu;
  return out;
}

Complex q_from_u(const StarGraph& graph, const UTable& u) {
  const int ell = graph.ell();
  Complex q{1.0, 0.0};
  for (std::size_t k = 0; k < u.size(); ++k) {
    const int dk = graph.d[k];
    for (const auto& ukj : u[k]) {
      if (ell % dk == 0)
        q *= std::pow(ukj, -(ell / dk));
      else
        q *= std::pow(ukj, -static_cast<double>(ell) / dk);
    }
  }
  return q;
}

MultiplicativeParams make_multiplicative(const StarGraph& graph, UTable u, Complex t) {
  if (u.size() != graph.d.size()) throw Error(ErrorKind::ShapeMismatch, "u table legs");
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (static_cast<int>(u[k].size()) != graph.d[k]) throw Error(ErrorKind::ShapeMismatch, "u row");
    for (const auto& x : u[k])
      if (x == Complex{}) throw Error(ErrorKind::ZeroParameter, "u entries must be nonzero");
  }
  if (t == Complex{}) throw Error(ErrorKind::ZeroParameter, "t must be nonzero");
  MultiplicativeParams out;
  out.graph = graph;
  out.q = q_from_u(graph, u);
  out.u = std::move(u);
  out.t = t;
  return out;
}

UTable sahi_parameters(const SahiParams& p) {
  for (Complex x : {p.t0, p.tn, p.u0, p.un, p.q})
    if (x == Complex{}) throw Error(ErrorKind::ZeroParameter, "Sahi parameters must be nonzero");
  return {{p.q * p.t0, -p.q / p.t0},
          {p.u0, -1.0 / p.u0},
          {p.un, -1.0 / p.un},
          {p.tn, -1.0 / p.tn}};
}

SahiNormalization sahi_normalize(const UTable& u, std::optional<Complex> q_hint) {
  if (u.size() != 4 || std::any_of(u.begin(), u.end(), [](const auto& r) { return r.size() != 2; }))
    throw Error(ErrorKind::NotD4, "Sahi parameters need a 4x2 u table");
  auto nearest_root = [](Complex square, Complex target) {
    Complex r = std::sqrt(square);
    return std::abs(r - target) <= std::abs(-r - target) ? r : -r;
  };
  SahiNormalization out;
  for (int k = 1; k < 4; ++k) out.w[k] = nearest_root(-1.0 / (u[k][0] * u[k][1]), 1.0);
  out.w[0] = 1.0 / (out.w[1] * out.w[2] * out.w[3]);
  const Complex q2 = -out.w[0] * out.w[0] * u[0][0] * u[0][1];
  const Complex q = nearest_root(q2, q_hint.value_or(std::sqrt(q2)));
  out.params = {out.w[0] * u[0][0] / q, out.w[3] * u[3][0], out.w[1] * u[1][0], out.w[2] * u[2][0], q};
  return out;
}

}  // namespace gdaha
