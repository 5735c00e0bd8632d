#include "gdaha/connection.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "gdaha/algebras.hpp"
#include "gdaha/error.hpp"
#include "gdaha/rng.hpp"

namespace gdaha {

Connection::Connection(ConnectionKind kind, std::vector<Complex> alpha, std::vector<std::vector<CMatrix>> residues,
                       std::vector<std::vector<CMatrix>> swaps, Complex nu)
    : kind_(kind),
      n_(static_cast<int>(residues.size())),
      dim_(residues.at(0).at(0).rows()),
      alpha_(std::move(alpha)),
      residues_(std::move(residues)),
      swaps_(std::move(swaps)),
      nu_(nu) {}

CMatrix Connection::a(int i, const std::vector<Complex>& z) const {
  CMatrix out = CMatrix::Zero(dim_, dim_);
  const auto& res = residues_[static_cast<std::size_t>(i)];
  for (std::size_t k = 0; k < alpha_.size(); ++k) out += res[k] / (z[static_cast<std::size_t>(i)] - alpha_[k]);
  for (int p = 0; p < n_; ++p)
    if (p != i) out -= (nu_ / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(p)])) * swap(i, p);
  return out;
}

void Connection::evaluate(const std::vector<Complex>& z, const std::vector<Complex>& zdot, CMatrix& out) const {
  out.setZero(dim_, dim_);
  for (int i = 0; i < n_; ++i) {
    const Complex zi = z[static_cast<std::size_t>(i)], vi = zdot[static_cast<std::size_t>(i)];
    if (vi == Complex{}) continue;
    const auto& res = residues_[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < alpha_.size(); ++k) out += (vi / (zi - alpha_[k])) * res[k];
    for (int p = 0; p < n_; ++p)
      if (p != i) out -= (nu_ * vi / (zi - z[static_cast<std::size_t>(p)])) * swap(i, p);
  }
}

CMatrix Connection::curvature(int i, int j, const std::vector<Complex>& z) const {
  const CMatrix ai = a(i, z), aj = a(j, z);
  const Complex d = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
  // d_j A_i = -nu s_ij/(z_i - z_j)^2 and d_i A_j = -nu s_ji/(z_j - z_i)^2.
  const CMatrix dj_ai = (-nu_ / (d * d)) * swap(i, j);
  const CMatrix di_aj = (-nu_ / (d * d)) * swap(j, i);
  return di_aj - dj_ai + ai * aj - aj * ai;
}

namespace {

Complex nu_of(const MatrixRep& rep) {
  auto it = rep.parameters.find("nu");
  if (it == rep.parameters.end()) throw Error(ErrorKind::ShapeMismatch, "representation does not record nu");
  return it->second;
}

void check_relations(const MatrixRep& rep, double tol) {
  const ResidualReport r = relation_residuals(rep);
  if (r.max > tol)
    throw Error(ErrorKind::RelationResidualTooLarge,
                "relation " + r.worst()->name + " violated by " + std::to_string(r.max));
}

std::vector<std::vector<CMatrix>> swap_table(const MatrixRep& rep, int n) {
  std::vector<std::vector<CMatrix>> s(static_cast<std::size_t>(n), std::vector<CMatrix>(static_cast<std::size_t>(n)));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = rep[s_label(i, j)];
      s[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = rep[s_label(i, j)];
    }
  return s;
}

}  // namespace

Connection kz_connection(const MatrixRep& rep, const std::vector<Complex>& alpha, double tol) {
  int n = 0, m = 0;
  for (const auto& label : rep.presentation->generators()) {
    int i = 0, k = 0;
    if (std::sscanf(label.c_str(), "Y[%d,%d]", &i, &k) == 2) {
      n = std::max(n, i);
      m = std::max(m, k);
    }
  }
  if (n == 0) throw Error(ErrorKind::ShapeMismatch, "not a B_n representation");
  if (static_cast<int>(alpha.size()) != m)
    throw Error(ErrorKind::ShapeMismatch, "need " + std::to_string(m) + " punctures");
  for (std::size_t a = 0; a < alpha.size(); ++a)
    for (std::size_t b = a + 1; b < alpha.size(); ++b)
      if (alpha[a] == alpha[b]) throw Error(ErrorKind::BadOrdering, "punctures must be distinct");
  check_relations(rep, tol);
  std::vector<std::vector<CMatrix>> res(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= m; ++k) res[static_cast<std::size_t>(i - 1)].push_back(rep["Y[" + std::to_string(i) + "," + std::to_string(k) + "]"]);
  return Connection(ConnectionKind::KZ, alpha, std::move(res), swap_table(rep, n), nu_of(rep));
}

Connection cherednik_connection(const MatrixRep& rep, double tol) {
  int n = 0;
  for (const auto& label : rep.presentation->generators()) {
    int i = 0;
    char close = 0;
    if (std::sscanf(label.c_str(), "Y[%d%c", &i, &close) == 2 && close == ']') n = std::max(n, i);
  }
  if (n == 0) throw Error(ErrorKind::ShapeMismatch, "not a B_{n,l} representation");
  check_relations(rep, tol);
  std::vector<std::vector<CMatrix>> res(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) res[static_cast<std::size_t>(i - 1)].push_back(rep["Y[" + std::to_string(i) + "]"]);
  return Connection(ConnectionKind::Cherednik, {Complex{}}, std::move(res), swap_table(rep, n), nu_of(rep));
}

Connection fuchsian_connection(const std::vector<CMatrix>& x, const std::vector<Complex>& alpha, double tol) {
  if (x.size() != alpha.size() || x.empty()) throw Error(ErrorKind::ShapeMismatch, "one residue per puncture");
  CMatrix sum = CMatrix::Zero(x.front().rows(), x.front().cols());
  for (const auto& m : x) sum += m;
  if (sum.norm() > tol) throw Error(ErrorKind::SumNotZero, "residues sum to " + std::to_string(sum.norm()));
  return Connection(ConnectionKind::Fuchsian, alpha, {x}, {std::vector<CMatrix>(1)}, Complex{});
}

double curvature_residual(const Connection& conn, int points, std::uint64_t seed, double min_separation) {
  if (conn.n() < 2) return 0.0;
  auto rng = RandomStreams(seed).stream("curvature");
  double lo = 0.0, hi = 0.0;
  for (const auto& a : conn.alpha()) {
    lo = std::min(lo, a.real());
    hi = std::max(hi, a.real());
  }
  lo -= 1.0;
  hi += 1.0;
  double worst = 0.0;
  for (int p = 0; p < points;) {
    std::vector<Complex> z;
    for (int i = 0; i < conn.n(); ++i) z.emplace_back(lo + (hi - lo) * uniform01(rng), 2.0 * uniform01(rng) - 1.0);
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < z.size(); ++i) {
      for (const auto& a : conn.alpha()) sep = std::min(sep, std::abs(z[i] - a));
      for (std::size_t j = i + 1; j < z.size(); ++j) sep = std::min(sep, std::abs(z[i] - z[j]));
    }
    if (sep < min_separation) continue;
    ++p;
    for (int i = 0; i < conn.n(); ++i)
      for (int j = i + 1; j < conn.n(); ++j) worst = std::max(worst, conn.curvature(i, j, z).norm());
  }
  return worst;
}

}  // namespace gdaha
