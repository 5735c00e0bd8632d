#include "gdaha/ds_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gdaha/algebras.hpp"
#include "gdaha/error.hpp"
#include "gdaha/rng.hpp"

namespace gdaha {

ConjugacyClassSpec make_spec(const std::vector<std::pair<Complex, int>>& entries) {
  ConjugacyClassSpec spec;
  for (const auto& [value, mult] : entries) {
    if (mult <= 0) continue;
    auto it = std::find_if(spec.entries.begin(), spec.entries.end(), [&](const auto& e) { return e.first == value; });
    if (it != spec.entries.end())
      it->second += mult;
    else
      spec.entries.emplace_back(value, mult);
  }
  return spec;
}

std::vector<ConjugacyClassSpec> additive_class_specs(const RationalParams& params, int n, double tol) {
  const QComplex hbar = hbar_of(params);
  if (std::abs(hbar.to_complex()) > tol)
    throw Error(ErrorKind::NonZeroHbar, "hbar = " + format(hbar) + "; traces cannot cancel");
  const int m = params.graph.m(), ell = params.graph.ell(), size = n * ell;
  std::vector<ConjugacyClassSpec> specs;
  for (int k = 0; k + 1 < m; ++k) {
    std::vector<std::pair<Complex, int>> e;
    for (const auto& g : params.gamma[static_cast<std::size_t>(k)]) e.emplace_back(g.to_complex(), size / params.graph.d[static_cast<std::size_t>(k)]);
    specs.push_back(make_spec(e));
  }
  const auto& last = params.gamma.back();
  const QComplex& top = last.back();
  std::vector<std::pair<Complex, int>> e{{(top - QComplex(n - 1) * params.nu).to_complex(), 1},
                                         {(top + params.nu).to_complex(), n - 1}};
  for (std::size_t j = 0; j + 1 < last.size(); ++j) e.emplace_back(last[j].to_complex(), n);
  specs.push_back(make_spec(e));
  return specs;
}

std::vector<ConjugacyClassSpec> multiplicative_class_specs(const MultiplicativeParams& params, int n, double tol) {
  const Complex qn = std::pow(params.q, n);
  if (std::abs(qn - 1.0) > tol)
    throw Error(ErrorKind::DetObstruction, "q^n = " + std::to_string(qn.real()) + "+" + std::to_string(qn.imag()) +
                                               "i; determinants cannot multiply to 1");
  const int m = params.graph.m(), ell = params.graph.ell(), size = n * ell;
  std::vector<ConjugacyClassSpec> specs;
  for (int k = 0; k + 1 < m; ++k) {
    std::vector<std::pair<Complex, int>> e;
    for (const auto& u : params.u[static_cast<std::size_t>(k)]) e.emplace_back(u, size / params.graph.d[static_cast<std::size_t>(k)]);
    specs.push_back(make_spec(e));
  }
  const auto& last = params.u.back();
  const Complex top = last.back();
  std::vector<std::pair<Complex, int>> e{{top * std::pow(params.t, 2 * (n - 1)), 1}, {top * std::pow(params.t, -2), n - 1}};
  for (std::size_t j = 0; j + 1 < last.size(); ++j) e.emplace_back(last[j], n);
  specs.push_back(make_spec(e));
  return specs;
}

double ds_residual(DSKind kind, const std::vector<CMatrix>& tuple) {
  if (tuple.empty()) return 0.0;
  const auto n = tuple.front().rows();
  if (kind == DSKind::Additive) {
    CMatrix s = CMatrix::Zero(n, n);
    for (const auto& x : tuple) s += x;
    return s.norm();
  }
  CMatrix p = CMatrix::Identity(n, n);
  for (const auto& x : tuple) p = p * x;
  return (p - CMatrix::Identity(n, n)).norm();
}

namespace {

Eigen::Map<const CVector> as_vector(const CMatrix& m) { return {m.data(), m.size()}; }

class DSProblem {
 public:
  DSProblem(DSKind kind, const std::vector<ConjugacyClassSpec>& specs) : kind_(kind) {
    for (const auto& s : specs) diagonals_.push_back(s.diagonal());
    size_ = diagonals_.front().rows();
  }

  std::vector<CMatrix> matrices(const std::vector<CMatrix>& g) const {
    std::vector<CMatrix> x;
    for (std::size_t k = 0; k < g.size(); ++k) {
      Eigen::PartialPivLU<CMatrix> lu(g[k]);
      x.push_back(g[k] * diagonals_[k] * lu.inverse());
    }
    return x;
  }

  CVector residual(const std::vector<CMatrix>& x) const {
    CMatrix f;
    if (kind_ == DSKind::Additive) {
      f = CMatrix::Zero(size_, size_);
      for (const auto& xk : x) f += xk;
    } else {
      f = CMatrix::Identity(size_, size_);
      for (const auto& xk : x) f = f * xk;
      f -= CMatrix::Identity(size_, size_);
    }
    return as_vector(f);
  }

  // Columns: vec(E_k) for k = 2..m, with x_k -> (1+E_k) x_k (1+E_k)^{-1}.
  CMatrix jacobian(const std::vector<CMatrix>& x) const {
    const auto n2 = size_ * size_;
    const auto m = static_cast<Eigen::Index>(x.size());
    CMatrix j(n2, (m - 1) * n2);
    for (Eigen::Index k = 1; k < m; ++k) {
      // adjoint_action gives vec(E x - x E).
      CMatrix block = adjoint_action(x[static_cast<std::size_t>(k)]);
      if (kind_ == DSKind::Multiplicative) {
        CMatrix before = CMatrix::Identity(size_, size_), after = CMatrix::Identity(size_, size_);
        for (Eigen::Index p = 0; p < k; ++p) before = before * x[static_cast<std::size_t>(p)];
        for (Eigen::Index p = k + 1; p < m; ++p) after = after * x[static_cast<std::size_t>(p)];
        block = kron(after.transpose(), before) * block;
      }
      j.middleCols((k - 1) * n2, n2) = block;
    }
    return j;
  }

  Eigen::Index size() const { return size_; }

 private:
  DSKind kind_;
  std::vector<CMatrix> diagonals_;
  Eigen::Index size_ = 0;
};

double condition_number(const CMatrix& g) {
  Eigen::JacobiSVD<CMatrix> svd(g);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
}

struct LMResult {
  std::vector<CMatrix> g;
  double residual = 0.0;
  int iterations = 0;
};

LMResult levenberg_marquardt(const DSProblem& problem, std::vector<CMatrix> g, const SolverOptions& options) {
  const auto n = problem.size();
  const auto n2 = n * n;
  auto x = problem.matrices(g);
  CVector f = problem.residual(x);
  double r = f.norm();
  double mu = 1e-3;
  int it = 0;
  for (; it < options.max_iterations && r > options.tolerance / 10.0; ++it) {
    const CMatrix jac = problem.jacobian(x);
    // Row-space form of the damped step: delta = -J^H (J J^H + mu I)^{-1} f.
    CMatrix jjh = jac * jac.adjoint();
    bool improved = false;
    while (mu < 1e12) {
      CMatrix lhs = jjh;
      lhs.diagonal().array() += mu * std::max(1.0, jjh.diagonal().real().maxCoeff()) * 1e-6 + mu * 1e-12;
      const CVector y = lhs.ldlt().solve(-f);
      const CVector delta = jac.adjoint() * y;
      std::vector<CMatrix> trial = g;
      for (std::size_t k = 1; k < g.size(); ++k) {
        Eigen::Map<const CMatrix> e(delta.data() + static_cast<Eigen::Index>(k - 1) * n2, n, n);
        trial[k] = (CMatrix::Identity(n, n) + e) * g[k];
      }
      const auto tx = problem.matrices(trial);
      const CVector tf = problem.residual(tx);
      const double tr = tf.norm();
      if (std::isfinite(tr) && tr < r) {
        g = std::move(trial);
        x = tx;
        f = tf;
        r = tr;
        mu = std::max(mu / 5.0, 1e-12);
        improved = true;
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
    // Rebalance the conjugators so their columns stay of unit size; this only
    // rescales eigenvectors and leaves x_k unchanged.
    for (std::size_t k = 1; k < g.size(); ++k)
      for (Eigen::Index c = 0; c < n; ++c) g[k].col(c) /= g[k].col(c).norm();
  }
  return {std::move(g), r, it};
}

DSSolution solve_ds(DSKind kind, const std::vector<ConjugacyClassSpec>& specs, const SolverOptions& options) {
  if (specs.empty()) throw Error(ErrorKind::SizeMismatch, "no class specs");
  const int size = specs.front().size();
  for (const auto& s : specs)
    if (s.size() != size) throw Error(ErrorKind::SizeMismatch, "class specs differ in size");
  if (kind == DSKind::Additive) {
    Complex trace{};
    for (const auto& s : specs) trace += s.trace();
    if (std::abs(trace) > options.obstruction_tolerance)
      throw Error(ErrorKind::TraceObstruction, "sum of traces is " + std::to_string(std::abs(trace)));
  } else {
    Complex det{1.0, 0.0};
    for (const auto& s : specs) det *= s.determinant();
    if (std::abs(det - 1.0) > options.obstruction_tolerance)
      throw Error(ErrorKind::DetObstruction, "product of determinants differs from 1 by " + std::to_string(std::abs(det - 1.0)));
  }

  const DSProblem problem(kind, specs);
  const RandomStreams streams(options.seed);
  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < options.starts; ++start) {
    auto rng = streams.stream(kind == DSKind::Additive ? "ds-additive" : "ds-multiplicative", static_cast<std::uint64_t>(start));
    std::vector<CMatrix> g{CMatrix::Identity(size, size)};
    for (std::size_t k = 1; k < specs.size(); ++k) g.push_back(random_matrix(rng, size, size));
    if (std::any_of(g.begin(), g.end(), [](const CMatrix& m) { return condition_number(m) > 1e6; })) continue;
    LMResult result = levenberg_marquardt(problem, std::move(g), options);
    best = std::min(best, result.residual);
    if (result.residual <= options.tolerance) {
      DSSolution sol;
      sol.kind = kind;
      sol.matrices = problem.matrices(result.g);
      sol.specs = specs;
      sol.conjugators = std::move(result.g);
      sol.residual = ds_residual(kind, sol.matrices);
      sol.seed = options.seed;
      sol.start = start;
      sol.iterations = result.iterations;
      return sol;
    }
  }
  throw ConvergenceError(ErrorKind::NoConvergence,
                         "no start reached the residual target; best " + std::to_string(best), best);
}

CMatrix column_space(const CMatrix& m, const char* what) {
  const RankDecision rd = numerical_rank(m);
  if (rd.ambiguous) throw Error(ErrorKind::RankAmbiguous, std::string("singular values cluster at the cut in ") + what);
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rd.rank);
}

}  // namespace

DSSolution solve_additive_ds(const std::vector<ConjugacyClassSpec>& specs, const SolverOptions& options) {
  return solve_ds(DSKind::Additive, specs, options);
}

DSSolution solve_multiplicative_ds(const std::vector<ConjugacyClassSpec>& specs, const SolverOptions& options) {
  return solve_ds(DSKind::Multiplicative, specs, options);
}

int tangent_dimension(const DSSolution& sol, double tol) {
  const double r = ds_residual(sol.kind, sol.matrices);
  if (r > tol) throw Error(ErrorKind::ToleranceNotMet, "solution residual " + std::to_string(r) + " above " + std::to_string(tol));
  const auto n = sol.matrices.front().rows();
  const auto m = sol.matrices.size();
  std::vector<CMatrix> tangent;
  Eigen::Index total = 0;
  for (std::size_t k = 0; k < m; ++k) {
    CMatrix basis = column_space(adjoint_action(sol.matrices[k]), "ad(x_k)");
    if (sol.kind == DSKind::Multiplicative) {
      CMatrix before = CMatrix::Identity(n, n), after = CMatrix::Identity(n, n);
      for (std::size_t p = 0; p < k; ++p) before = before * sol.matrices[p];
      for (std::size_t p = k + 1; p < m; ++p) after = after * sol.matrices[p];
      basis = kron(after.transpose(), before) * basis;
    }
    total += basis.cols();
    tangent.push_back(std::move(basis));
  }
  CMatrix dmu(n * n, total);
  Eigen::Index offset = 0;
  for (const auto& b : tangent) {
    dmu.middleCols(offset, b.cols()) = b;
    offset += b.cols();
  }
  const RankDecision rd = numerical_rank(dmu);
  if (rd.ambiguous) throw Error(ErrorKind::RankAmbiguous, "singular values cluster at the cut in d mu");
  return static_cast<int>(total) - rd.rank - static_cast<int>(n * n - 1);
}

bool irreducibility_check(const std::vector<CMatrix>& tuple, int max_length) {
  if (tuple.empty()) return false;
  const auto n = tuple.front().rows();
  if (max_length < 0) max_length = static_cast<int>(2 * n);
  const auto n2 = n * n;
  CMatrix basis(n2, n2);
  Eigen::Index rank = 0;
  auto try_add = [&](const CMatrix& w) {
    CVector v = as_vector(w);
    const double scale = v.norm();
    if (scale == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) v -= basis.leftCols(rank) * (basis.leftCols(rank).adjoint() * v);
    if (v.norm() <= 1e-9 * scale) return false;
    basis.col(rank++) = v / v.norm();
    return true;
  };
  std::vector<CMatrix> frontier{CMatrix::Identity(n, n)};
  try_add(frontier.front());
  for (int len = 1; len <= max_length && rank < n2 && !frontier.empty(); ++len) {
    std::vector<CMatrix> next;
    for (const auto& w : frontier)
      for (const auto& a : tuple) {
        CMatrix cand = a * w;
        if (try_add(cand)) next.push_back(std::move(cand));
        if (rank == n2) return true;
      }
    frontier = std::move(next);
  }
  return rank == n2;
}

int joint_centralizer_dimension(const std::vector<CMatrix>& tuple) {
  const auto n = tuple.front().rows();
  CMatrix stacked(static_cast<Eigen::Index>(tuple.size()) * n * n, n * n);
  for (std::size_t k = 0; k < tuple.size(); ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) = adjoint_action(tuple[k]);
  const RankDecision rd = numerical_rank(stacked);
  if (rd.ambiguous) throw Error(ErrorKind::RankAmbiguous, "singular values cluster at the cut in the centralizer");
  return static_cast<int>(n * n) - rd.rank;
}

DSSolution conjugate(const DSSolution& sol, const CMatrix& g) {
  DSSolution out = sol;
  Eigen::PartialPivLU<CMatrix> lu(g);
  const CMatrix ginv = lu.inverse();
  for (auto& x : out.matrices) x = g * x * ginv;
  for (auto& c : out.conjugators) c = g * c;
  out.residual = ds_residual(out.kind, out.matrices);
  return out;
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  Rational c = q;
  c.canonicalize();
  if (!mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t())) return std::nullopt;
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), c.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), c.get_den_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

QMatrix two_by_two(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  QMatrix m(2, 2);
  m(0, 0) = QComplex(a);
  m(0, 1) = QComplex(b);
  m(1, 0) = QComplex(c);
  m(1, 1) = QComplex(d);
  return m;
}

}  // namespace

ExactRankOne exact_d4_rank_one(const std::vector<Rational>& ab, const Rational& c, const Rational& f) {
  if (ab.size() != 6) throw Error(ErrorKind::ShapeMismatch, "need (a1,b1,a2,b2,a3,b3)");
  if (sgn(f) == 0) throw Error(ErrorKind::ZeroParameter, "f must be nonzero");
  const Rational &a1 = ab[0], &b1 = ab[1], &a2 = ab[2], &b2 = ab[3], &a3 = ab[4], &b3 = ab[5];
  const Rational A = a1 + a2 + a3, B = b1 + b2 + b3;
  const auto root = rational_sqrt(Rational((A - B) * (A - B) + 4));
  if (!root) throw Error(ErrorKind::NonGenericParameters, "(A-B)^2 + 4 is not a rational square");
  const Rational a4 = (-(A + B) + *root) / 2, b4 = (-(A + B) - *root) / 2;
  const Rational e = c * (b3 - a3 - c) / f;
  const Rational p = ((A + c) * (B - c) - A * B + 1) / f - e;

  ExactRankOne out;
  out.gamma = {{QComplex(a1), QComplex(b1)}, {QComplex(a2), QComplex(b2)}, {QComplex(a3), QComplex(b3)}, {QComplex(a4), QComplex(b4)}};
  out.x.push_back(two_by_two(a1, 0, 0, b1));
  out.x.push_back(two_by_two(a2, p, 0, b2));
  out.x.push_back(two_by_two(a3 + c, e, f, b3 - c));
  QMatrix sum = out.x[0] + out.x[1] + out.x[2];
  out.x.push_back(sum * QComplex(-1));
  return out;
}

namespace {

// Residual map of B_n(gamma, nu) restricted to the unknowns Y_{1,k}; the
// remaining relations follow by S_n symmetry.
class ContinuationSystem {
 public:
  ContinuationSystem(const MatrixRep& seed, const RationalParams& params, int n)
      : n_(n), m_(params.graph.m()), dim_(seed.dim), gamma_(params.gamma_values()) {
    const auto id = CMatrix::Identity(dim_, dim_);
    swap_.push_back(id);
    for (int j = 2; j <= n_; ++j) swap_.push_back(seed[s_label(1, j)]);
    s_sum_ = CMatrix::Zero(dim_, dim_);
    for (int j = 2; j <= n_; ++j) s_sum_ += seed[s_label(1, j)];
    for (int a = 2; a <= n_; ++a)
      for (int b = a + 1; b <= n_; ++b) stab_.push_back(seed[s_label(a, b)]);
  }

  std::vector<CMatrix> unknowns(const MatrixRep& rep) const {
    std::vector<CMatrix> y;
    for (int k = 1; k <= m_; ++k) y.push_back(rep["Y[1," + std::to_string(k) + "]"]);
    return y;
  }

  std::vector<CMatrix> full_family(const std::vector<CMatrix>& y, int i) const {
    std::vector<CMatrix> out;
    for (const auto& yk : y) out.push_back(swap_[static_cast<std::size_t>(i - 1)] * yk * swap_[static_cast<std::size_t>(i - 1)]);
    return out;
  }

  // Residual F(y) when dy is null, else the directional derivative dF(y)[dy].
  CVector evaluate(const std::vector<CMatrix>& y, const std::vector<CMatrix>* dy, Complex nu) const {
    std::vector<CMatrix> blocks;
    const auto d = dim_;
    const CMatrix id = CMatrix::Identity(d, d);
    for (int k = 0; k < m_; ++k) {
      const auto& roots = gamma_[static_cast<std::size_t>(k)];
      std::vector<CMatrix> factors;
      for (const auto& g : roots) factors.push_back(y[static_cast<std::size_t>(k)] - g * id);
      if (!dy) {
        CMatrix p = id;
        for (const auto& fct : factors) p = p * fct;
        blocks.push_back(p);
      } else {
        CMatrix acc = CMatrix::Zero(d, d);
        for (std::size_t q = 0; q < factors.size(); ++q) {
          CMatrix p = id;
          for (std::size_t r = 0; r < factors.size(); ++r) p = p * (r == q ? (*dy)[static_cast<std::size_t>(k)] : factors[r]);
          acc += p;
        }
        blocks.push_back(acc);
      }
    }
    {
      CMatrix s = CMatrix::Zero(d, d);
      for (int k = 0; k < m_; ++k) s += dy ? (*dy)[static_cast<std::size_t>(k)] : y[static_cast<std::size_t>(k)];
      if (!dy) s -= nu * s_sum_;
      blocks.push_back(s);
    }
    for (int j = 2; j <= n_; ++j) {
      const CMatrix& sw = swap_[static_cast<std::size_t>(j - 1)];
      for (int k = 0; k < m_; ++k) {
        const CMatrix& yk = y[static_cast<std::size_t>(k)];
        const CMatrix zk = sw * yk * sw;
        if (!dy) {
          blocks.push_back(yk * zk - zk * yk - nu * (yk - zk) * sw);
        } else {
          const CMatrix& dk = (*dy)[static_cast<std::size_t>(k)];
          const CMatrix dz = sw * dk * sw;
          blocks.push_back(dk * zk + yk * dz - dz * yk - zk * dk - nu * (dk - dz) * sw);
        }
        for (int l = 0; l < m_; ++l) {
          if (l == k) continue;
          const CMatrix zl = sw * y[static_cast<std::size_t>(l)] * sw;
          if (!dy) {
            blocks.push_back(yk * zl - zl * yk);
          } else {
            const CMatrix& dk = (*dy)[static_cast<std::size_t>(k)];
            const CMatrix dzl = sw * (*dy)[static_cast<std::size_t>(l)] * sw;
            blocks.push_back(dk * zl - zl * dk + yk * dzl - dzl * yk);
          }
        }
      }
    }
    for (const auto& st : stab_)
      for (int k = 0; k < m_; ++k) {
        const CMatrix& v = dy ? (*dy)[static_cast<std::size_t>(k)] : y[static_cast<std::size_t>(k)];
        blocks.push_back(v * st - st * v);
      }
    CVector out(static_cast<Eigen::Index>(blocks.size()) * d * d);
    for (std::size_t b = 0; b < blocks.size(); ++b) out.segment(static_cast<Eigen::Index>(b) * d * d, d * d) = as_vector(blocks[b]);
    return out;
  }

  CMatrix jacobian(const std::vector<CMatrix>& y, Complex nu) const {
    const auto d = dim_;
    const Eigen::Index cols = m_ * d * d;
    std::vector<CMatrix> dy(static_cast<std::size_t>(m_), CMatrix::Zero(d, d));
    CMatrix jac;
    for (int k = 0; k < m_; ++k)
      for (Eigen::Index c = 0; c < d; ++c)
        for (Eigen::Index r = 0; r < d; ++r) {
          dy[static_cast<std::size_t>(k)](r, c) = 1.0;
          const CVector col = evaluate(y, &dy, nu);
          if (jac.size() == 0) jac.resize(col.size(), cols);
          jac.col(k * d * d + c * d + r) = col;
          dy[static_cast<std::size_t>(k)](r, c) = 0.0;
        }
    return jac;
  }

  Eigen::Index dim() const { return dim_; }

 private:
  int n_, m_;
  Eigen::Index dim_;
  std::vector<std::vector<Complex>> gamma_;
  std::vector<CMatrix> swap_;
  CMatrix s_sum_;
  std::vector<CMatrix> stab_;
};

struct CorrectorResult {
  std::vector<CMatrix> y;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

CorrectorResult gauss_newton(const ContinuationSystem& sys, std::vector<CMatrix> y, Complex nu,
                             const ContinuationOptions& options) {
  const auto d = sys.dim();
  CVector f = sys.evaluate(y, nullptr, nu);
  double r = f.norm();
  CorrectorResult out;
  for (int it = 0; it < options.max_corrector_iterations; ++it) {
    if (r <= options.tolerance) {
      out.converged = true;
      break;
    }
    const CMatrix jac = sys.jacobian(y, nu);
    const CMatrix normal = jac.adjoint() * jac;
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod;
    cod.setThreshold(1e-14);
    cod.compute(normal);
    const CVector delta = cod.solve(-(jac.adjoint() * f));
    std::vector<CMatrix> trial = y;
    for (std::size_t k = 0; k < y.size(); ++k)
      trial[k] += Eigen::Map<const CMatrix>(delta.data() + static_cast<Eigen::Index>(k) * d * d, d, d);
    const CVector tf = sys.evaluate(trial, nullptr, nu);
    const double tr = tf.norm();
    ++out.iterations;
    if (!(tr < r)) break;
    y = std::move(trial);
    f = tf;
    r = tr;
  }
  out.converged = out.converged || r <= options.tolerance;
  out.y = std::move(y);
  out.residual = r;
  return out;
}

}  // namespace

MatrixRep continue_bn_representation(const RationalParams& params, int n, const QComplex& nu_target,
                                     const MatrixRep& seed, const ContinuationOptions& options,
                                     ContinuationReport* report) {
  if (seed.dim > 16) throw Error(ErrorKind::SizeMismatch, "continuation is limited to dimension 16");
  if (!hbar_of(params).is_zero()) throw Error(ErrorKind::NonZeroHbar, "continuation needs hbar = 0");
  const ResidualReport seed_check = relation_residuals(seed);
  if (seed_check.max > 1e-12)
    throw Error(ErrorKind::RelationResidualTooLarge, "seed violates the nu = 0 relations by " + std::to_string(seed_check.max));
  if (report) *report = ContinuationReport{};
  if (nu_target.is_zero()) return seed;

  const ContinuationSystem sys(seed, params, n);
  const Complex target = nu_target.to_complex();
  std::vector<CMatrix> y = sys.unknowns(seed), previous = y;
  double tau = 0.0, step = 1.0 / options.steps, prev_step = 0.0;
  int halvings = 0, total_iterations = 0, steps_taken = 0;
  double residual = 0.0;
  while (tau < 1.0) {
    const double next = std::min(1.0, tau + step);
    // Secant predictor from the last two accepted points.
    std::vector<CMatrix> guess = y;
    if (prev_step > 0.0) {
      const double ratio = (next - tau) / prev_step;
      for (std::size_t k = 0; k < y.size(); ++k) guess[k] += ratio * (y[k] - previous[k]);
    }
    CorrectorResult cr = gauss_newton(sys, std::move(guess), next * target, options);
    total_iterations += cr.iterations;
    if (!cr.converged) {
      if (++halvings > options.max_halvings) {
        const QComplex reached = nu_target * QComplex(Rational(static_cast<long>(std::lround(tau * 1e6)), 1000000L));
        if (report) *report = {reached, steps_taken, total_iterations, cr.residual};
        throw ConvergenceError(ErrorKind::NoConvergence,
                               "continuation stalled at nu = " + format(reached) + " with residual " + std::to_string(cr.residual),
                               cr.residual);
      }
      step /= 2.0;
      continue;
    }
    previous = y;
    y = std::move(cr.y);
    prev_step = next - tau;
    tau = next;
    residual = cr.residual;
    ++steps_taken;
  }

  auto pres = rational_gdaha_presentation(params.graph, n, params.gamma, nu_target);
  std::vector<CMatrix> mats;
  std::vector<std::vector<CMatrix>> families;
  for (int i = 1; i <= n; ++i) families.push_back(sys.full_family(y, i));
  for (const auto& label : pres->generators()) {
    int i = 0, k = 0;
    if (std::sscanf(label.c_str(), "Y[%d,%d]", &i, &k) == 2)
      mats.push_back(families[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)]);
    else
      mats.push_back(seed[label]);
  }
  MatrixRep out = make_rep(pres, std::move(mats));
  out.parameters = seed.parameters;
  out.parameters["nu"] = target;
  if (report) *report = {nu_target, steps_taken, total_iterations, residual};
  return out;
}

}  // namespace gdaha
