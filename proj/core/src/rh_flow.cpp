#include "gdaha/rh_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "gdaha/algebras.hpp"
#include "gdaha/error.hpp"

namespace gdaha {

namespace {

std::string u_label(int k) { return "U[" + std::to_string(k) + "]"; }
std::string t_label(int i) { return "T[" + std::to_string(i) + "]"; }

double max_spec_deviation(const std::vector<CMatrix>& tuple, const std::vector<ConjugacyClassSpec>& specs) {
  double worst = 0.0;
  for (std::size_t k = 0; k < tuple.size(); ++k)
    worst = std::max(worst, bottleneck_matching(eigenvalues(tuple[k]), specs[k].expanded()));
  return worst;
}

void require_dimension(const Subspace& s, int expected) {
  if (s.rank() != expected)
    throw Error(ErrorKind::WrongIsotypicDimension,
                "V' has dimension " + std::to_string(s.rank()) + ", expected " + std::to_string(expected));
}

Subspace whole_space(int dim) { return {dim, CMatrix::Identity(dim, dim)}; }

}  // namespace

PhiResult phi_degenerate(const MatrixRep& rep, const RationalParams& params, int n, double tol) {
  const int m = params.graph.m(), ell = params.graph.ell();
  const Presentation& p = *rep.presentation;
  PhiResult out;
  const double iso_tol = std::max(tol, 1e-9);
  if (n == 1) {
    out.v_prime = whole_space(rep.dim);
  } else {
    out.v_prime = isotypic_subspace(rep, gdaha_trivial_spec(p, n, m, params.gamma.back().back()), iso_tol);
  }
  require_dimension(out.v_prime, n * ell);
  const std::string sn = std::to_string(n);
  for (int k = 1; k <= m; ++k) {
    CMatrix y = rep["Y[" + sn + "," + std::to_string(k) + "]"];
    if (k == m)
      for (int j = 1; j < n; ++j) y -= params.nu_value() * rep[s_label(j, n)];
    out.tuple.push_back(restricted_operator(y, out.v_prime, iso_tol));
  }
  out.closure_residual = ds_residual(DSKind::Additive, out.tuple);
  out.spec_deviation = max_spec_deviation(out.tuple, additive_class_specs(params, n, 1e-9));
  if (out.spec_deviation > tol)
    throw Error(ErrorKind::SpecMismatch, "Phi(V) misses the additive classes by " + std::to_string(out.spec_deviation));
  return out;
}

PhiResult phi_nondegenerate(const MatrixRep& rep, const StarGraph& graph, int n, const UTable& u, Complex t, double tol) {
  const int m = graph.m(), ell = graph.ell();
  const Presentation& p = *rep.presentation;
  PhiResult out;
  const double iso_tol = std::max(tol, 1e-9);
  if (n == 1) {
    out.v_prime = whole_space(rep.dim);
  } else {
    IsotypicSpec spec;
    for (int i = 1; i <= n - 2; ++i) spec.conditions.emplace_back(p.gen(t_label(i)), Coeff(t));
    spec.conditions.emplace_back(p.gen(u_label(m)), Coeff(u.back().back()));
    out.v_prime = isotypic_subspace(rep, spec, iso_tol);
  }
  require_dimension(out.v_prime, n * ell);
  const auto d = rep.dim;
  CMatrix left = CMatrix::Identity(d, d), right = CMatrix::Identity(d, d);
  for (int i = n - 1; i >= 1; --i) left = left * rep[t_label(i)];
  for (int i = 1; i < n; ++i) right = right * rep[t_label(i)];
  const CMatrix right_inv = right.inverse();
  for (int k = 1; k <= m; ++k) {
    const CMatrix w = left * rep[u_label(k)] * (k == m ? right : right_inv);
    out.tuple.push_back(restricted_operator(w, out.v_prime, iso_tol));
  }
  out.closure_residual = ds_residual(DSKind::Multiplicative, out.tuple);
  MultiplicativeParams mp;
  mp.graph = graph;
  mp.u = u;
  mp.t = t;
  mp.q = q_from_u(graph, u);
  out.spec_deviation = max_spec_deviation(out.tuple, multiplicative_class_specs(mp, n, 1e-6));
  if (out.spec_deviation > tol)
    throw Error(ErrorKind::SpecMismatch, "Phi(V) misses the multiplicative classes by " + std::to_string(out.spec_deviation));
  return out;
}

PhiResult phi_nondegenerate(const MonodromyData& mon, double tol) {
  if (mon.kind != "kz") throw Error(ErrorKind::ShapeMismatch, "Phi needs H_n monodromy data");
  return phi_nondegenerate(mon.rep, mon.graph, static_cast<int>(mon.geometry.base.size()), mon.u, mon.t, tol);
}

RHResult rh_map(const std::vector<CMatrix>& x, const LoopGeometry& geometry, double tol) {
  if (geometry.base.size() != 1) throw Error(ErrorKind::ShapeMismatch, "the Riemann-Hilbert map uses a one-point geometry");
  const Connection conn = fuchsian_connection(x, geometry.alpha, std::max(1e-8, tol));
  RHResult out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    TransportResult r = loop_monodromy(conn, braid_loop(geometry, {BraidGenerator::Kind::U, static_cast<int>(k + 1)}), tol);
    out.error_estimate = std::max(out.error_estimate, r.error_estimate);
    out.tuple.push_back(std::move(r.matrix));
  }
  out.product_residual = ds_residual(DSKind::Multiplicative, out.tuple);
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::vector<Complex> expected;
    for (const auto& e : eigenvalues(x[k])) expected.push_back(std::exp(Complex(0.0, 2.0 * M_PI) * e));
    out.spec_deviation = std::max(out.spec_deviation, bottleneck_matching(eigenvalues(out.tuple[k]), expected));
  }
  if (out.spec_deviation > std::max(1e-6, 1e3 * tol))
    throw Error(ErrorKind::SpecMismatch, "monodromy eigenvalues miss exp(2 pi i x_k) by " + std::to_string(out.spec_deviation));
  return out;
}

std::vector<Complex> conjugation_invariants(const std::vector<CMatrix>& tuple, int max_length) {
  std::vector<Complex> out;
  if (tuple.empty()) return out;
  const auto d = tuple.front().rows();
  std::vector<CMatrix> level{CMatrix::Identity(d, d)};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<CMatrix> next;
    next.reserve(level.size() * tuple.size());
    // Words a_{i1} ... a_{iL} in lexicographic order of (i1, ..., iL).
    for (const auto& w : level)
      for (const auto& a : tuple) next.push_back(w * a);
    for (const auto& w : next) out.push_back(w.trace());
    level = std::move(next);
  }
  return out;
}

ConjugacyMatch match_up_to_conjugacy(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b, double tol) {
  if (a.size() != b.size() || a.empty()) throw Error(ErrorKind::SizeMismatch, "tuples differ in length");
  const auto d = a.front().rows();
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].rows() != d || b[k].rows() != d) throw Error(ErrorKind::SizeMismatch, "tuples differ in matrix size");
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix stacked(static_cast<Eigen::Index>(a.size()) * d * d, d * d);
  for (std::size_t k = 0; k < a.size(); ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * d * d, d * d) = kron(a[k].transpose(), id) - kron(id, b[k]);
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  ConjugacyMatch out;
  out.residual = s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
  if (out.residual < tol) {
    CMatrix g = Eigen::Map<const CMatrix>(svd.matrixV().col(d * d - 1).data(), d, d);
    Eigen::JacobiSVD<CMatrix> gs(g);
    const auto& gsv = gs.singularValues();
    if (gsv(gsv.size() - 1) > 1e-8 * gsv(0)) out.conjugator = g;
  }
  return out;
}

std::vector<Complex> kappa_punctures(Complex kappa, double a) {
  const Complex kp = kappa * a / (a - 1.0 + kappa);
  return {Complex{}, kp, Complex(1.0, 0.0), Complex(a, 0.0)};
}

LoopGeometry kappa_geometry(Complex kappa, double a) {
  auto alpha = kappa_punctures(kappa, a);
  const double kr = alpha[1].real();
  if (!(kr > 0.0 && kr < 1.0))
    throw Error(ErrorKind::BadOrdering, "kappa' must have real part in (0, 1) for the comb loops");
  // delta is tied to the real gaps only; the comb keeps it away from kappa' itself.
  return make_geometry(std::move(alpha), {Complex(a + 1.0, 0.0)});
}

namespace {

constexpr int kSmoothSteps = 200;

class FlowProblem {
 public:
  FlowProblem(const std::vector<CMatrix>& x0, const FlowOptions& options) : options_(options) {
    for (const auto& x : x0) {
      Eigen::ComplexEigenSolver<CMatrix> es(x);
      lambda_.push_back(es.eigenvalues().asDiagonal());
      g0_.push_back(es.eigenvectors());
    }
    size_ = x0.front().rows();
    g1_inv_ = g0_[0].inverse();
    y0_ = g1_inv_ * g0_[1].col(0);
  }

  const std::vector<CMatrix>& initial_g() const { return g0_; }

  std::vector<CMatrix> tuple(const std::vector<CMatrix>& g) const {
    std::vector<CMatrix> x;
    for (std::size_t k = 0; k < g.size(); ++k) x.push_back(g[k] * lambda_[k] * g[k].inverse());
    return x;
  }

  // With `smooth` the transports use a fixed step sequence, so that nearby
  // arguments are integrated identically and difference quotients stay clean.
  std::vector<Complex> invariants_at(const std::vector<CMatrix>& x, Complex kappa, double* residual,
                                     bool smooth = false) const {
    return invariants_at(x, kappa, residual, smooth, options_.word_length);
  }

  std::vector<Complex> invariants_at(const std::vector<CMatrix>& x, Complex kappa, double* residual, bool smooth,
                                     int word_length) const {
    // The residues are re-centred to sum exactly to zero; the mismatch is carried by
    // the separate closure block.
    std::vector<CMatrix> xs = x;
    CMatrix sum = CMatrix::Zero(size_, size_);
    for (const auto& m : xs) sum += m;
    xs.back() -= sum;
    const LoopGeometry geometry = kappa_geometry(kappa, options_.surrogate);
    if (smooth) {
      const Connection conn = fuchsian_connection(xs, geometry.alpha);
      std::vector<CMatrix> tuple;
      for (std::size_t k = 0; k < xs.size(); ++k)
        tuple.push_back(transport_fixed_step(conn, braid_loop(geometry, {BraidGenerator::Kind::U, static_cast<int>(k + 1)}),
                                             kSmoothSteps));
      return conjugation_invariants(tuple, word_length);
    }
    const RHResult rh = rh_map(xs, geometry, options_.transport_tolerance);
    if (residual) *residual = rh.product_residual;
    return conjugation_invariants(rh.tuple, word_length);
  }

  CVector residual(const std::vector<CMatrix>& g, Complex kappa, const std::vector<Complex>& target,
                   bool smooth = false) const {
    const auto x = tuple(g);
    const auto inv = invariants_at(x, kappa, nullptr, smooth);
    CMatrix sum = CMatrix::Zero(size_, size_);
    for (const auto& m : x) sum += m;
    CVector r(static_cast<Eigen::Index>(inv.size()) + size_ * size_);
    for (std::size_t i = 0; i < inv.size(); ++i) r(static_cast<Eigen::Index>(i)) = inv[i] - target[i];
    r.tail(size_ * size_) = Eigen::Map<const CVector>(sum.data(), size_ * size_);
    return r;
  }

  Eigen::Index size() const { return size_; }

  // Conjugation by the centralizer g_1 D g_1^-1 of x_1 leaves the problem
  // unchanged. D is fixed by making the first column of g_1^-1 g_2 constant, and
  // the columns of each g_k are normalized, so that nearby solutions have nearby g.
  void fix_gauge(std::vector<CMatrix>& g) const {
    const CMatrix y = g1_inv_ * g[1];
    bool generic = true;
    for (Eigen::Index i = 0; i < size_; ++i) generic = generic && std::abs(y(i, 0)) > 1e-8 * y.col(0).norm();
    if (generic) {
      const CVector ratio = y0_.cwiseQuotient(y.col(0));
      const CMatrix p = g0_[0] * ratio.asDiagonal() * g1_inv_;
      for (std::size_t k = 1; k < g.size(); ++k) g[k] = p * g[k];
    }
    for (std::size_t k = 1; k < g.size(); ++k)
      for (Eigen::Index c = 0; c < size_; ++c) g[k].col(c) /= g[k].col(c).norm();
  }

 private:
  FlowOptions options_;
  std::vector<CMatrix> lambda_;
  std::vector<CMatrix> g0_;
  CMatrix g1_inv_;
  CVector y0_;
  Eigen::Index size_ = 0;
};

double inf_norm(const CVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Long words have traces of very different size; rows are scaled so each
// invariant counts relative to its target.
CVector row_weights(const std::vector<Complex>& target, Eigen::Index closure_rows) {
  CVector w(static_cast<Eigen::Index>(target.size()) + closure_rows);
  for (std::size_t i = 0; i < target.size(); ++i) w(static_cast<Eigen::Index>(i)) = 1.0 / std::max(1.0, std::abs(target[i]));
  w.tail(closure_rows).setOnes();
  return w;
}

using Factorization = Eigen::JacobiSVD<CMatrix>;

Factorization weighted_jacobian(const FlowProblem& problem, const std::vector<CMatrix>& g, Complex kappa,
                                const std::vector<Complex>& target, const CVector& w) {
  const auto d = problem.size();
  const std::size_t m = g.size();
  constexpr double h = 1e-6;
  const CVector base = problem.residual(g, kappa, target, true);
  CMatrix jac(base.size(), static_cast<Eigen::Index>(m - 1) * d * d);
  for (std::size_t k = 1; k < m; ++k)
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index row = 0; row < d; ++row) {
        std::vector<CMatrix> gp = g;
        CMatrix e = CMatrix::Identity(d, d);
        e(row, c) += h;
        gp[k] = e * g[k];
        jac.col(static_cast<Eigen::Index>(k - 1) * d * d + c * d + row) = (problem.residual(gp, kappa, target, true) - base) / h;
      }
  // Gauge directions only carry difference noise, well separated from the
  // directions that move the invariants; the rank is cut at the widest gap.
  Factorization svd(w.asDiagonal() * jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = sv.size();
  double widest = 0.0;
  for (Eigen::Index i = 0; i + 1 < sv.size(); ++i) {
    if (sv(i) < 1e-10 * top) break;
    const double gap = sv(i) / std::max(sv(i + 1), 1e-300);
    if (gap > widest) {
      widest = gap;
      rank = i + 1;
    }
  }
  if (widest < 100.0) rank = sv.size();
  svd.setThreshold(rank < sv.size() ? 0.5 * (sv(rank - 1) + sv(rank)) / top : 1e-12);
  return svd;
}

// Gauss-Newton in the holomorphic directions g_k -> (1 + E) g_k, k >= 2, with a
// forward-difference Jacobian that is kept across iterations and kappa steps
// until it stops giving a clear decrease. Full steps only: when a fresh Jacobian
// cannot halve the weighted 2-norm the start is outside the Newton region and the
// caller shortens the kappa step. Convergence is judged on the unweighted max-norm.
bool correct(const FlowProblem& problem, std::vector<CMatrix>& g, Complex kappa, const std::vector<Complex>& target,
             const FlowOptions& options, std::optional<Factorization>& jacobian, double& final_residual) {
  const auto d = problem.size();
  const std::size_t m = g.size();
  const CVector w = row_weights(target, d * d);
  CVector r = problem.residual(g, kappa, target);
  double rn = inf_norm(r);
  double r2 = r.cwiseProduct(w).norm();
  final_residual = rn;
  for (int it = 0; it < options.max_iterations && rn > options.tolerance; ++it) {
    const bool fresh = !jacobian;
    if (fresh) jacobian = weighted_jacobian(problem, g, kappa, target, w);
    const CVector delta = jacobian->solve(-r.cwiseProduct(w));
    std::vector<CMatrix> trial = g;
    for (std::size_t k = 1; k < m; ++k) {
      Eigen::Map<const CMatrix> e(delta.data() + static_cast<Eigen::Index>(k - 1) * d * d, d, d);
      trial[k] = (CMatrix::Identity(d, d) + e) * g[k];
    }
    CVector tr;
    double t2 = std::numeric_limits<double>::infinity();
    try {
      tr = problem.residual(trial, kappa, target);
      t2 = tr.cwiseProduct(w).norm();
    } catch (const Error&) {
    }
    if (fresh && !(t2 < 0.5 * r2)) {
      jacobian.reset();
      return false;
    }
    if (!(t2 < r2)) {
      jacobian.reset();
      continue;
    }
    if (t2 > 0.1 * r2) jacobian.reset();
    g = std::move(trial);
    r = std::move(tr);
    r2 = t2;
    rn = inf_norm(r);
    final_residual = rn;
    problem.fix_gauge(g);
  }
  return rn <= options.tolerance;
}

}  // namespace

FlowTrajectory painleve_flow(const std::vector<CMatrix>& x0, Complex kappa0, const std::vector<Complex>& kappa_path,
                             const FlowOptions& options, FlowTrajectory* partial) {
  if (x0.size() != 4) throw Error(ErrorKind::NotD4, "the kappa flow needs four punctures");
  const double closure = ds_residual(DSKind::Additive, x0);
  if (closure > 1e-8) throw Error(ErrorKind::SumNotZero, "x0 sums to " + std::to_string(closure));

  const FlowProblem problem(x0, options);
  FlowTrajectory traj;
  traj.surrogate = options.surrogate;
  auto record = [&](Complex kappa, const std::vector<CMatrix>& x) {
    FlowSample s;
    s.kappa = kappa;
    s.x = x;
    s.invariants = problem.invariants_at(x, kappa, &s.residual, false, options.check_word_length);
    double drift = 0.0;
    for (std::size_t i = 0; i < s.invariants.size() && i < traj.target.size(); ++i)
      drift = std::max(drift, std::abs(s.invariants[i] - traj.target[i]));
    s.drift = drift;
    traj.max_drift = std::max(traj.max_drift, drift);
    traj.samples.push_back(std::move(s));
  };

  std::vector<CMatrix> g = problem.initial_g();
  const std::vector<Complex> pinned = problem.invariants_at(problem.tuple(g), kappa0, nullptr);
  traj.target = problem.invariants_at(problem.tuple(g), kappa0, nullptr, false, options.check_word_length);
  record(kappa0, problem.tuple(g));

  Complex current = kappa0;
  std::optional<Factorization> jacobian;
  // Secant predictor from the previous accepted point.
  std::optional<std::pair<Complex, std::vector<CMatrix>>> previous;
  for (const Complex& goal : kappa_path) {
    if (std::abs(goal - current) > options.max_path_step)
      throw Error(ErrorKind::PathTooCoarse, "kappa path jumps by " + std::to_string(std::abs(goal - current)) +
                                                "; refine the path below " + std::to_string(options.max_path_step));
    kappa_geometry(goal, options.surrogate);
    double fraction = 1.0;
    int depth = 0;
    while (current != goal) {
      const Complex next = fraction >= 1.0 ? goal : current + fraction * (goal - current);
      std::vector<CMatrix> trial = g;
      // Long extrapolations from short steps amplify the corrector noise; they are skipped.
      const Complex ratio = previous ? (next - current) / (current - previous->first) : Complex{};
      if (previous && std::abs(ratio) <= 2.0) {
        for (std::size_t k = 1; k < g.size(); ++k) trial[k] += ratio * (g[k] - previous->second[k]);
      }
      double res = 0.0;
      bool ok = false;
      try {
        ok = correct(problem, trial, next, pinned, options, jacobian, res);
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) {
        if (++depth > options.max_halvings) {
          if (partial) *partial = traj;
          throw ConvergenceError(ErrorKind::ContinuationStall,
                                 "flow stalled near kappa = " + std::to_string(next.real()) + "+" + std::to_string(next.imag()) + "i",
                                 res);
        }
        ++traj.halvings;
        jacobian.reset();
        fraction /= 2.0;
        continue;
      }
      previous.emplace(current, std::move(g));
      g = std::move(trial);
      current = next;
      fraction = std::min(1.0, fraction * 2.0);
      depth = 0;
    }
    record(goal, problem.tuple(g));
  }
  return traj;
}

}  // namespace gdaha
