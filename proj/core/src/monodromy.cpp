#include "gdaha/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "gdaha/algebras.hpp"
#include "gdaha/error.hpp"

namespace gdaha {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<Complex>;

constexpr long kMaxStepsPerSegment = 200000;
constexpr double kMinStep = 1e-13;

struct SegmentSystem {
  const Connection& conn;
  const PathInConfig& path;
  std::size_t segment;
  mutable CMatrix a;

  void operator()(const State& x, State& dxdt, double s) const {
    conn.evaluate(path.point(segment, s), path.velocity(segment, s), a);
    const auto d = conn.dim();
    Eigen::Map<const CMatrix> f(x.data(), d, d);
    Eigen::Map<CMatrix> df(dxdt.data(), d, d);
    df.noalias() = a * f;
  }
};

void check_path(const Connection& conn, const PathInConfig& path) {
  if (path.n != conn.n())
    throw Error(ErrorKind::ShapeMismatch, "path moves " + std::to_string(path.n) + " points, connection has " +
                                              std::to_string(conn.n()));
}

State identity_state(Eigen::Index d) {
  State x(static_cast<std::size_t>(d * d), Complex{});
  for (Eigen::Index i = 0; i < d; ++i) x[static_cast<std::size_t>(i * d + i)] = 1.0;
  return x;
}

CMatrix to_matrix(const State& x, Eigen::Index d) { return Eigen::Map<const CMatrix>(x.data(), d, d); }

CMatrix adaptive_run(const Connection& conn, const PathInConfig& path, double tol, long& steps) {
  const auto d = conn.dim();
  State x = identity_state(d);
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
  for (std::size_t seg = 0; seg < path.segments.size(); ++seg) {
    SegmentSystem sys{conn, path, seg, CMatrix(d, d)};
    double s = 0.0, ds = 0.05;
    long local = 0;
    while (s < 1.0) {
      ds = std::min(ds, 1.0 - s);
      if (odeint::controlled_step_result r = stepper.try_step(sys, x, s, ds); r == odeint::success) {
        if (++local > kMaxStepsPerSegment)
          throw Error(ErrorKind::StepUnderflow, "step budget exhausted on segment " + std::to_string(seg) + " of " + path.label);
      } else if (ds < kMinStep) {
        throw Error(ErrorKind::StepUnderflow, "step size below " + std::to_string(kMinStep) + " on " + path.label);
      }
    }
    steps += local;
  }
  return to_matrix(x, d);
}

}  // namespace

TransportResult parallel_transport(const Connection& conn, const PathInConfig& path, double tol, bool certify) {
  check_path(conn, path);
  if (!(tol > 0.0)) throw Error(ErrorKind::ToleranceNotMet, "tolerance must be positive");
  if (min_distance(path, conn.alpha()) < path.r_min * (1.0 - 1e-9))
    throw Error(ErrorKind::StepUnderflow, "path " + path.label + " comes closer than r_min to the singular locus");
  TransportResult out;
  // The controller bounds the local error per step; a hundredth of the requested
  // tolerance leaves room for the accumulation over a loop.
  CMatrix coarse = adaptive_run(conn, path, tol / 100.0, out.steps);
  if (!certify) {
    out.matrix = std::move(coarse);
    return out;
  }
  out.matrix = adaptive_run(conn, path, tol / 1000.0, out.steps);
  out.error_estimate = (coarse - out.matrix).norm() / std::max(1.0, out.matrix.norm());
  if (out.error_estimate > tol)
    throw Error(ErrorKind::ToleranceNotMet, "transport along " + path.label + " changes by " +
                                                std::to_string(out.error_estimate) + " between tolerances");
  return out;
}

CMatrix transport_fixed_step(const Connection& conn, const PathInConfig& path, int steps_per_segment) {
  check_path(conn, path);
  const auto d = conn.dim();
  State x = identity_state(d);
  odeint::runge_kutta_fehlberg78<State> stepper;
  const double h = 1.0 / steps_per_segment;
  for (std::size_t seg = 0; seg < path.segments.size(); ++seg) {
    SegmentSystem sys{conn, path, seg, CMatrix(d, d)};
    for (int k = 0; k < steps_per_segment; ++k) stepper.do_step(sys, x, k * h, h);
  }
  return to_matrix(x, d);
}

TransportResult loop_monodromy(const Connection& conn, const PathInConfig& path, double tol) {
  TransportResult r = parallel_transport(conn, path, tol);
  std::vector<int> moved;
  for (int j = 0; j < path.n; ++j)
    if (path.end_perm[static_cast<std::size_t>(j)] != j) moved.push_back(j);
  if (moved.empty()) return r;
  if (moved.size() != 2 || moved[1] != moved[0] + 1)
    throw Error(ErrorKind::BadOrdering, "loop " + path.label + " does not close up to one adjacent swap");
  // The continued solution near the swapped base point is carried back by s.
  r.matrix = conn.swap(moved[0], moved[1]) * r.matrix;
  return r;
}

namespace {

Complex exp_two_pi_i(Complex z) { return std::exp(Complex(0.0, 2.0 * M_PI) * z); }

}  // namespace

MonodromyData monodromy_functor(const MatrixRep& bn_rep, const RationalParams& params, int n,
                                const LoopGeometry& geometry, double tol) {
  if (static_cast<int>(geometry.base.size()) != n)
    throw Error(ErrorKind::ShapeMismatch, "base point has " + std::to_string(geometry.base.size()) + " coordinates, need " +
                                              std::to_string(n));
  for (const auto& a : geometry.alpha)
    if (a.imag() != 0.0) throw Error(ErrorKind::BadOrdering, "monodromy functor needs real punctures");
  const Connection conn = kz_connection(bn_rep, geometry.alpha, std::max(tol, 1e-8));
  const MultiplicativeParams mp = exponentiate_params(params);
  const int m = params.graph.m();

  MonodromyData out;
  out.kind = "kz";
  out.geometry = geometry;
  out.graph = params.graph;
  out.u = mp.u;
  out.t = mp.t;
  out.tolerance = tol;
  std::vector<CMatrix> mats;
  for (int k = 1; k <= m; ++k) {
    TransportResult r = loop_monodromy(conn, braid_loop(geometry, {BraidGenerator::Kind::U, k}), tol);
    out.error_estimate = std::max(out.error_estimate, r.error_estimate);
    mats.push_back(std::move(r.matrix));
  }
  for (int i = 1; i < n; ++i) {
    TransportResult r = loop_monodromy(conn, braid_loop(geometry, {BraidGenerator::Kind::T, i}), tol);
    out.error_estimate = std::max(out.error_estimate, r.error_estimate);
    mats.push_back(std::move(r.matrix));
  }
  out.rep = make_rep(gdaha_presentation(params.graph, n, mp.u, mp.t), std::move(mats));
  out.rep.parameters["t"] = mp.t;
  out.rep.parameters["q"] = mp.q;
  out.relations = relation_residuals(out.rep);
  return out;
}

MonodromyData cherednik_monodromy(const MatrixRep& rep, const std::vector<QComplex>& lambda, const QComplex& nu,
                                  const LoopGeometry& geometry, double tol) {
  if (geometry.alpha.size() != 1 || geometry.alpha.front() != Complex{})
    throw Error(ErrorKind::BadOrdering, "Cherednik's system has the single puncture 0");
  const Connection conn = cherednik_connection(rep, std::max(tol, 1e-8));
  const int n = conn.n();
  if (static_cast<int>(geometry.base.size()) != n) throw Error(ErrorKind::ShapeMismatch, "base point size differs from n");
  std::vector<Complex> v;
  for (const auto& l : lambda) v.push_back(exp_two_pi_i(l.to_complex()));
  const Complex t = std::exp(Complex(0.0, -M_PI) * nu.to_complex());

  MonodromyData out;
  out.kind = "cherednik";
  out.geometry = geometry;
  out.u = {v};
  out.t = t;
  out.tolerance = tol;
  std::vector<CMatrix> mats(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) {
    TransportResult r = loop_monodromy(conn, braid_loop(geometry, {BraidGenerator::Kind::T, i}), tol);
    out.error_estimate = std::max(out.error_estimate, r.error_estimate);
    mats[static_cast<std::size_t>(i - 1)] = std::move(r.matrix);
  }
  TransportResult r = loop_monodromy(conn, braid_loop(geometry, {BraidGenerator::Kind::U, 1}), tol);
  out.error_estimate = std::max(out.error_estimate, r.error_estimate);
  mats[static_cast<std::size_t>(n - 1)] = std::move(r.matrix);
  out.rep = make_rep(ariki_koike_presentation(n, v, t), std::move(mats));
  out.rep.parameters["t"] = t;
  out.relations = relation_residuals(out.rep);
  return out;
}

ResidualReport hn_relation_check(const MonodromyData& mon) { return relation_residuals(mon.rep); }

CherednikSpectra cherednik_spectral_check(const MonodromyData& mon, double tol) {
  if (mon.kind != "cherednik") throw Error(ErrorKind::ShapeMismatch, "needs Cherednik monodromy data");
  const Presentation& p = *mon.rep.presentation;
  const int n = static_cast<int>(mon.geometry.base.size());
  const std::vector<Complex>& v = mon.u.front();
  const int ell = static_cast<int>(v.size());
  const Complex t = mon.t;
  CherednikSpectra out;
  out.v_prime = isotypic_subspace(mon.rep, ariki_koike_trivial_spec(p, n, v.back(), t), std::max(tol, 1e-9));
  if (out.v_prime.rank() != n * ell)
    throw Error(ErrorKind::WrongIsotypicDimension,
                "V' has dimension " + std::to_string(out.v_prime.rank()) + ", expected " + std::to_string(n * ell));
  const CMatrix x = restricted_operator(mon.rep, ariki_koike_x(p, n), out.v_prime, std::max(tol, 1e-9));
  out.x_eigenvalues = eigenvalues(x);
  out.x_expected.push_back(v.back() * std::pow(t, 2 * (n - 1)));
  out.x_expected.insert(out.x_expected.end(), static_cast<std::size_t>(n - 1), v.back() / (t * t));
  for (int j = 0; j + 1 < ell; ++j) out.x_expected.insert(out.x_expected.end(), static_cast<std::size_t>(n), v[static_cast<std::size_t>(j)]);
  out.x_deviation = bottleneck_matching(out.x_eigenvalues, out.x_expected);

  // V_k' = pi T_{n-1}^-1...T_1^-1 P_k(U) V with pi the projection onto V' along the
  // span of the nontrivial isotypic parts, i.e. the H_{n-1,l}-submodule generated
  // by the images of g - chi(g).
  const auto dim = mon.rep.dim;
  const IsotypicSpec spec = ariki_koike_trivial_spec(p, n, v.back(), t);
  std::vector<CMatrix> gens;
  CMatrix seeds(dim, 0);
  for (const auto& [g, chi] : spec.conditions) {
    gens.push_back(evaluate(mon.rep, g));
    const CMatrix img = gens.back() - chi.value * CMatrix::Identity(dim, dim);
    CMatrix grown(dim, seeds.cols() + dim);
    grown << seeds, img;
    seeds = std::move(grown);
  }
  auto orth = [&](const CMatrix& m) -> CMatrix {
    if (m.cols() == 0) return m;
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > 1e-9 * std::max(1.0, sv(0))) ++r;
    return svd.matrixU().leftCols(r);
  };
  CMatrix comp = orth(seeds);
  for (Eigen::Index before = -1; before != comp.cols();) {
    before = comp.cols();
    CMatrix grown(dim, comp.cols() * static_cast<Eigen::Index>(gens.size() + 1));
    grown.leftCols(comp.cols()) = comp;
    for (std::size_t j = 0; j < gens.size(); ++j) grown.middleCols(static_cast<Eigen::Index>(j + 1) * comp.cols(), comp.cols()) = gens[j] * comp;
    comp = orth(grown);
  }
  if (comp.cols() + out.v_prime.rank() != dim)
    throw Error(ErrorKind::WrongIsotypicDimension, "V' has no invariant complement of dimension " +
                                                       std::to_string(dim - out.v_prime.rank()));
  CMatrix frame(dim, dim);
  frame << out.v_prime.basis, comp;
  const CMatrix pi = out.v_prime.basis * frame.inverse().topRows(out.v_prime.rank());

  CMatrix walk = CMatrix::Identity(dim, dim);
  for (int i = n - 1; i >= 1; --i) walk = walk * mon.rep["T[" + std::to_string(i) + "]"].inverse();
  const CMatrix x_full = evaluate(mon.rep, ariki_koike_x(p, n));
  const CMatrix& u = mon.rep["U"];
  for (int k = 0; k + 1 < ell; ++k) {
    const Complex vk = v[static_cast<std::size_t>(k)];
    const CMatrix ek = orthonormal_null_space(u - vk * CMatrix::Identity(dim, dim), 1e-7);
    const CMatrix vk_space = orth(pi * walk * ek);
    out.eigenspace_dims.push_back(static_cast<int>(vk_space.cols()));
    if (vk_space.cols() == 0) throw Error(ErrorKind::EmptySubspace, "V'_" + std::to_string(k + 1) + " is empty");
    const double r = (x_full * vk_space - vk * vk_space).norm() / std::max(1.0, x_full.norm());
    out.eigenspace_residual = std::max(out.eigenspace_residual, r);
  }
  return out;
}

SahiCheck sahi_relation_check(const MonodromyData& mon, std::optional<Complex> q_hint) {
  if (mon.kind != "kz" || !mon.graph.is_d4()) throw Error(ErrorKind::NotD4, "Sahi's algebra needs D4 monodromy data");
  const int n = static_cast<int>(mon.geometry.base.size());
  SahiCheck out;
  out.normalization = sahi_normalize(mon.u, q_hint);
  const auto& w = out.normalization.w;
  const SahiParams& sp = out.normalization.params;
  const auto dim = mon.rep.dim;
  auto U = [&](int k) -> CMatrix { return w[static_cast<std::size_t>(k - 1)] * mon.rep["U[" + std::to_string(k) + "]"]; };
  auto T = [&](int i) -> const CMatrix& { return mon.rep["T[" + std::to_string(i) + "]"]; };
  CMatrix s = CMatrix::Identity(dim, dim);
  for (int i = 1; i < n; ++i) s = s * T(i);
  const CMatrix s_inv = s.inverse();

  const CMatrix t0 = U(1) / sp.q;
  const CMatrix tv0 = U(2);
  const CMatrix tvn = s_inv * U(3) * s;
  const CMatrix tn = s_inv * U(4) * s;
  std::vector<CMatrix> x{sp.q * t0 * tv0};
  for (int i = 1; i < n; ++i) x.push_back(T(i) * x.back() * T(i));

  std::vector<CMatrix> mats{t0};
  for (int i = 1; i < n; ++i) mats.push_back(T(i));
  mats.push_back(tn);
  for (const auto& xi : x) mats.push_back(xi);
  mats.push_back(tv0);
  mats.push_back(tvn);
  out.rep = make_rep(sahi_presentation(n, sp, mon.t), std::move(mats));
  out.relations = relation_residuals(out.rep);
  return out;
}

}  // namespace gdaha
