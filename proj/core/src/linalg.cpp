#include "gdaha/linalg.hpp"

#include <algorithm>
#include <functional>

#include "gdaha/error.hpp"

namespace gdaha {

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

RankDecision numerical_rank(const CMatrix& m, double rel_cut) {
  RankDecision out;
  if (m.size() == 0) return out;
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  const double top = s.size() > 0 ? s(0) : 0.0;
  out.cut = rel_cut * top;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > out.cut) ++out.rank;
    if (top > 0.0 && s(i) > out.cut / 10.0 && s(i) < out.cut * 10.0) out.ambiguous = true;
  }
  return out;
}

CMatrix orthonormal_null_space(const CMatrix& a, double tol) {
  const auto cols = a.cols();
  if (a.rows() == 0) return CMatrix::Identity(cols, cols);
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < cols; ++i) {
    const double sigma = i < s.size() ? s(i) : 0.0;
    if (sigma <= tol * scale) keep.push_back(i);
  }
  CMatrix basis(cols, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) basis.col(static_cast<Eigen::Index>(j)) = svd.matrixV().col(keep[j]);
  return basis;
}

CMatrix adjoint_action(const CMatrix& x) {
  const auto n = x.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  // vec(P x) = (x^T (x) I) vec(P); vec(x P) = (I (x) x) vec(P).
  return kron(x.transpose(), id) - kron(id, x);
}

CMatrix to_cmatrix(const QMatrix& q) {
  CMatrix m(static_cast<Eigen::Index>(q.rows()), static_cast<Eigen::Index>(q.cols()));
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = q(r, c).to_complex();
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix t_matrix(int n) {
  CMatrix t = CMatrix::Ones(n, n);
  t.diagonal().setZero();
  return t;
}

CMatrix permutation_matrix(const std::vector<int>& images) {
  const auto n = static_cast<Eigen::Index>(images.size());
  CMatrix p = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) p(images[static_cast<std::size_t>(j)], j) = 1.0;
  return p;
}

std::vector<Complex> eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

int ConjugacyClassSpec::size() const {
  int n = 0;
  for (const auto& [value, mult] : entries) n += mult;
  return n;
}

std::vector<Complex> ConjugacyClassSpec::expanded() const {
  std::vector<Complex> out;
  for (const auto& [value, mult] : entries) out.insert(out.end(), static_cast<std::size_t>(mult), value);
  return out;
}

Complex ConjugacyClassSpec::trace() const {
  Complex t{};
  for (const auto& [value, mult] : entries) t += static_cast<double>(mult) * value;
  return t;
}

Complex ConjugacyClassSpec::determinant() const {
  Complex d{1.0, 0.0};
  for (const auto& [value, mult] : entries) d *= std::pow(value, mult);
  return d;
}

CMatrix ConjugacyClassSpec::diagonal() const {
  const auto values = expanded();
  CMatrix d = CMatrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
  return d;
}

namespace {

// Kuhn's augmenting-path matching restricted to edges with cost <= limit.
bool perfect_matching(const std::vector<std::vector<double>>& cost, double limit) {
  const std::size_t n = cost.size();
  std::vector<int> match_right(n, -1);
  std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t left,
                                                                     std::vector<char>& seen) {
    for (std::size_t r = 0; r < n; ++r) {
      if (cost[left][r] > limit || seen[r]) continue;
      seen[r] = 1;
      if (match_right[r] < 0 || augment(static_cast<std::size_t>(match_right[r]), seen)) {
        match_right[r] = static_cast<int>(left);
        return true;
      }
    }
    return false;
  };
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<char> seen(n, 0);
    if (!augment(l, seen)) return false;
  }
  return true;
}

}  // namespace

double bottleneck_matching(const std::vector<Complex>& values, const std::vector<Complex>& targets) {
  if (values.size() != targets.size())
    throw Error(ErrorKind::SizeMismatch, "eigenvalue count differs from class size");
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  std::vector<double> levels;
  levels.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = std::abs(values[i] - targets[j]);
      levels.push_back(cost[i][j]);
    }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::size_t lo = 0, hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching(cost, levels[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return levels[lo];
}

SpectrumMatch spectrum_match(const CMatrix& m, const ConjugacyClassSpec& spec, double tol) {
  if (m.rows() != m.cols() || spec.size() != m.rows())
    throw Error(ErrorKind::SizeMismatch, "spectrum_match: matrix size " + std::to_string(m.rows()) +
                                             " vs class size " + std::to_string(spec.size()));
  SpectrumMatch out;
  out.deviation = bottleneck_matching(eigenvalues(m), spec.expanded());
  out.matches = out.deviation <= tol;
  return out;
}

}  // namespace gdaha
