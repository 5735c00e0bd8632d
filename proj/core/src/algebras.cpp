#include "gdaha/algebras.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "gdaha/error.hpp"

namespace gdaha {

std::string s_label(int i, int j) {
  if (i > j) std::swap(i, j);
  return "s[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

namespace {

std::string y_label(int i, int k) { return "Y[" + std::to_string(i) + "," + std::to_string(k) + "]"; }
std::string y_label(int i) { return "Y[" + std::to_string(i) + "]"; }
std::string t_label(int i) { return "T[" + std::to_string(i) + "]"; }
std::string u_label(int k) { return "U[" + std::to_string(k) + "]"; }
std::string x_label(int i) { return "X[" + std::to_string(i) + "]"; }

NcExpr one() { return NcExpr::scalar(Coeff(1L)); }

NcExpr annihilating_polynomial(const NcExpr& y, const std::vector<Coeff>& roots) {
  NcExpr out = one();
  for (const auto& r : roots) out = out * (y - NcExpr::scalar(r));
  return out;
}

int transpose_point(int i, int j, int h) { return h == i ? j : h == j ? i : h; }

void add_symmetric_group(Presentation& p, int n) {
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) p.add_generator(s_label(i, j), true);
}

void add_symmetric_relations(Presentation& p, int n) {
  std::vector<std::pair<int, int>> ts;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) ts.emplace_back(i, j);
  for (auto [i, j] : ts) {
    const auto s = p.gen(s_label(i, j));
    p.add_relation(s_label(i, j) + "^2=1", s * s - one());
  }
  for (auto [i, j] : ts)
    for (auto [h, k] : ts) {
      if (i == h && j == k) continue;
      const auto t = p.gen(s_label(i, j));
      const auto image = s_label(transpose_point(i, j, h), transpose_point(i, j, k));
      p.add_relation(s_label(i, j) + s_label(h, k) + s_label(i, j) + "=" + image,
                     t * p.gen(s_label(h, k)) * t - p.gen(image));
    }
}

// s_ij Y_i = Y_j s_ij and s_ij Y_h = Y_h s_ij, for a label family y(i).
template <class Label>
void add_symmetric_y_relations(Presentation& p, int n, Label y) {
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const auto s = p.gen(s_label(i, j));
      p.add_relation(s_label(i, j) + y(i) + "=" + y(j) + s_label(i, j), s * p.gen(y(i)) - p.gen(y(j)) * s);
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int h = 1; h <= n; ++h) {
        if (h == i || h == j) continue;
        const auto s = p.gen(s_label(i, j));
        p.add_relation(s_label(i, j) + y(h) + "=" + y(h) + s_label(i, j), commutator(s, p.gen(y(h))));
      }
}

template <class Label>
void add_degenerate_commutators(Presentation& p, int n, Label y, const QComplex& nu) {
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const auto yi = p.gen(y(i)), yj = p.gen(y(j));
      p.add_relation("[" + y(i) + "," + y(j) + "]=nu(" + y(i) + "-" + y(j) + ")" + s_label(i, j),
                     commutator(yi, yj) - Coeff(nu) * ((yi - yj) * p.gen(s_label(i, j))));
    }
}

void add_braid_relations(Presentation& p, int first, int last) {
  for (int i = first; i < last; ++i) {
    const auto a = p.gen(t_label(i)), b = p.gen(t_label(i + 1));
    p.add_relation("braid " + t_label(i) + t_label(i + 1), a * b * a - b * a * b);
  }
  for (int i = first; i <= last; ++i)
    for (int j = i + 2; j <= last; ++j)
      p.add_relation("[" + t_label(i) + "," + t_label(j) + "]=0", commutator(p.gen(t_label(i)), p.gen(t_label(j))));
}

void add_hecke_relation(Presentation& p, const std::string& label, Complex param) {
  p.add_relation(label + "-" + label + "^-1=c-c^-1",
                 p.gen(label) - p.inv(label) - NcExpr::scalar(Coeff(param - 1.0 / param)));
}

}  // namespace

std::shared_ptr<Presentation> rational_gdaha_presentation(const StarGraph& graph, int n, const GammaTable& gamma,
                                                          const QComplex& nu) {
  if (n < 1) throw Error(ErrorKind::SizeMismatch, "n must be positive");
  auto p = std::make_shared<Presentation>("B_n");
  const int m = graph.m();
  add_symmetric_group(*p, n);
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= m; ++k) p->add_generator(y_label(i, k));
  add_symmetric_relations(*p, n);
  for (int k = 1; k <= m; ++k) add_symmetric_y_relations(*p, n, [k](int i) { return y_label(i, k); });
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= m; ++k) {
      std::vector<Coeff> roots(gamma[static_cast<std::size_t>(k - 1)].begin(),
                               gamma[static_cast<std::size_t>(k - 1)].end());
      p->add_relation("poly " + y_label(i, k), annihilating_polynomial(p->gen(y_label(i, k)), roots));
    }
  for (int i = 1; i <= n; ++i) {
    NcExpr sum;
    for (int k = 1; k <= m; ++k) sum += p->gen(y_label(i, k));
    for (int j = 1; j <= n; ++j)
      if (j != i) sum -= Coeff(nu) * p->gen(s_label(i, j));
    p->add_relation("sum_k Y[" + std::to_string(i) + ",k]=nu sum_j s", sum);
  }
  for (int k = 1; k <= m; ++k) add_degenerate_commutators(*p, n, [k](int i) { return y_label(i, k); }, nu);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l) {
          if (k == l) continue;
          p->add_relation("[" + y_label(i, k) + "," + y_label(j, l) + "]=0",
                          commutator(p->gen(y_label(i, k)), p->gen(y_label(j, l))));
        }
  return p;
}

std::shared_ptr<Presentation> cyclotomic_presentation(int n, const std::vector<QComplex>& lambda,
                                                      const QComplex& nu) {
  if (n < 1 || lambda.empty()) throw Error(ErrorKind::SizeMismatch, "n and l must be positive");
  auto p = std::make_shared<Presentation>("B_n,l");
  add_symmetric_group(*p, n);
  for (int i = 1; i <= n; ++i) p->add_generator(y_label(i));
  add_symmetric_relations(*p, n);
  add_symmetric_y_relations(*p, n, [](int i) { return y_label(i); });
  const std::vector<Coeff> roots(lambda.begin(), lambda.end());
  for (int i = 1; i <= n; ++i) p->add_relation("poly " + y_label(i), annihilating_polynomial(p->gen(y_label(i)), roots));
  add_degenerate_commutators(*p, n, [](int i) { return y_label(i); }, nu);
  return p;
}

std::shared_ptr<Presentation> gdaha_presentation(const StarGraph& graph, int n, const UTable& u, Complex t) {
  auto p = std::make_shared<Presentation>("H_n");
  const int m = graph.m();
  for (int k = 1; k <= m; ++k) p->add_generator(u_label(k), true);
  for (int i = 1; i < n; ++i) p->add_generator(t_label(i), true);

  NcExpr product = one();
  for (int k = 1; k <= m; ++k) product = product * p->gen(u_label(k));
  for (int i = 1; i < n; ++i) product = product * p->gen(t_label(i));
  for (int i = n - 1; i >= 1; --i) product = product * p->gen(t_label(i));
  p->add_relation("U[1]...U[m] T[1]...T[n-1]^2...T[1]=1", product - one());

  add_braid_relations(*p, 1, n - 1);
  for (int i = 2; i < n; ++i)
    for (int j = 1; j <= m; ++j)
      p->add_relation("[" + u_label(j) + "," + t_label(i) + "]=0", commutator(p->gen(u_label(j)), p->gen(t_label(i))));
  if (n >= 2) {
    const auto t1 = p->gen(t_label(1)), t1inv = p->inv(t_label(1));
    for (int j = 1; j <= m; ++j) {
      const auto uj = p->gen(u_label(j));
      p->add_relation("[" + u_label(j) + ",T[1]" + u_label(j) + "T[1]]=0", commutator(uj, t1 * uj * t1));
    }
    for (int k = 1; k <= m; ++k)
      for (int j = k + 1; j <= m; ++j)
        p->add_relation("[" + u_label(k) + ",T[1]^-1" + u_label(j) + "T[1]]=0",
                        commutator(p->gen(u_label(k)), t1inv * p->gen(u_label(j)) * t1));
  }
  for (int k = 1; k <= m; ++k) {
    const std::vector<Coeff> roots(u[static_cast<std::size_t>(k - 1)].begin(), u[static_cast<std::size_t>(k - 1)].end());
    p->add_relation("poly " + u_label(k), annihilating_polynomial(p->gen(u_label(k)), roots));
  }
  for (int i = 1; i < n; ++i) add_hecke_relation(*p, t_label(i), t);
  return p;
}

std::shared_ptr<Presentation> ariki_koike_presentation(int n, const std::vector<Complex>& v, Complex t) {
  auto p = std::make_shared<Presentation>("H_n,l");
  for (int i = 1; i < n; ++i) p->add_generator(t_label(i), true);
  p->add_generator("U", true);
  add_braid_relations(*p, 1, n - 1);
  const auto u = p->gen("U");
  for (int j = 2; j < n; ++j) p->add_relation("[U," + t_label(j) + "]=0", commutator(u, p->gen(t_label(j))));
  if (n >= 2) {
    const auto t1 = p->gen(t_label(1));
    p->add_relation("UT[1]UT[1]=T[1]UT[1]U", u * t1 * u * t1 - t1 * u * t1 * u);
  }
  p->add_relation("poly U", annihilating_polynomial(u, std::vector<Coeff>(v.begin(), v.end())));
  for (int i = 1; i < n; ++i) add_hecke_relation(*p, t_label(i), t);
  return p;
}

std::shared_ptr<Presentation> sahi_presentation(int n, const SahiParams& sp, Complex t) {
  auto p = std::make_shared<Presentation>("Sahi H_n");
  for (int i = 0; i <= n; ++i) p->add_generator(t_label(i), true);
  for (int i = 1; i <= n; ++i) p->add_generator(x_label(i), true);
  const std::string tv0 = "Tv[0]", tvn = "Tv[" + std::to_string(n) + "]";
  p->add_generator(tv0, true);
  p->add_generator(tvn, true);

  const auto T = [&](int i) { return p->gen(t_label(i)); };
  const auto X = [&](int i) { return p->gen(x_label(i)); };
  if (n >= 2) {
    p->add_relation("T[0]T[1]T[0]T[1]=T[1]T[0]T[1]T[0]", T(0) * T(1) * T(0) * T(1) - T(1) * T(0) * T(1) * T(0));
    p->add_relation("T[n-1]T[n]T[n-1]T[n]=T[n]T[n-1]T[n]T[n-1]",
                    T(n - 1) * T(n) * T(n - 1) * T(n) - T(n) * T(n - 1) * T(n) * T(n - 1));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      p->add_relation("[" + x_label(i) + "," + x_label(j) + "]=0", commutator(X(i), X(j)));
  add_braid_relations(*p, 1, n - 1);
  for (int i = 0; i <= n; ++i)
    for (int j = i + 2; j <= n; ++j) {
      if (i >= 1 && j <= n - 1) continue;  // already among the braid-group relations
      p->add_relation("[" + t_label(i) + "," + t_label(j) + "]=0", commutator(T(i), T(j)));
    }
  for (int i = 1; i < n; ++i) add_hecke_relation(*p, t_label(i), t);
  add_hecke_relation(*p, t_label(0), sp.t0);
  add_hecke_relation(*p, t_label(n), sp.tn);
  for (int i = 0; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (std::abs(i - j) > 1 || (i == n && j == n - 1))
        p->add_relation("[" + t_label(i) + "," + x_label(j) + "]=0", commutator(T(i), X(j)));
    }
  for (int i = 1; i < n; ++i)
    p->add_relation(t_label(i) + x_label(i) + "=" + x_label(i + 1) + t_label(i) + "^-1",
                    T(i) * X(i) - X(i + 1) * p->inv(t_label(i)));
  p->add_relation(tvn + "=X[n]^-1T[n]^-1", p->gen(tvn) - p->inv(x_label(n)) * p->inv(t_label(n)));
  p->add_relation(tv0 + "=q^-1T[0]^-1X[1]", p->gen(tv0) - Coeff(1.0 / sp.q) * (p->inv(t_label(0)) * X(1)));
  add_hecke_relation(*p, tvn, sp.un);
  add_hecke_relation(*p, tv0, sp.u0);
  return p;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

DegenerateRegularAlgebra::DegenerateRegularAlgebra(int n, std::vector<QComplex> lambda, QComplex nu)
    : n_(n), ell_(static_cast<int>(lambda.size())), lambda_(std::move(lambda)), nu_(std::move(nu)) {
  if (n_ < 1 || ell_ < 1) throw Error(ErrorKind::SizeMismatch, "n and l must be positive");
  annihilator_ = polynomial_from_roots(lambda_);
  perms_ = all_permutations(n_);
  for (std::size_t i = 0; i < perms_.size(); ++i) perm_index_[perms_[i]] = static_cast<int>(i);
  for (int i = 0; i < n_; ++i) {
    powers_.push_back(monomials_);
    monomials_ *= ell_;
  }
}

int DegenerateRegularAlgebra::exponent(long mono, int i) const {
  return static_cast<int>((mono / powers_[static_cast<std::size_t>(i)]) % ell_);
}

long DegenerateRegularAlgebra::with_exponent(long mono, int i, int value) const {
  return mono + (value - exponent(mono, i)) * powers_[static_cast<std::size_t>(i)];
}

namespace {

void accumulate(DegenerateRegularAlgebra::Element& into, const DegenerateRegularAlgebra::Element& e,
                const QComplex& scale) {
  for (const auto& [idx, c] : e) {
    auto& slot = into[idx];
    slot += c * scale;
  }
}

void prune(DegenerateRegularAlgebra::Element& e) {
  for (auto it = e.begin(); it != e.end();) it = it->second.is_zero() ? e.erase(it) : std::next(it);
}

}  // namespace

DegenerateRegularAlgebra::Element DegenerateRegularAlgebra::left_perm(int perm, const Element& e) const {
  const auto& w = perms_[static_cast<std::size_t>(perm)];
  Element out;
  for (const auto& [idx, c] : e) {
    const auto& u = perms_[static_cast<std::size_t>(idx / monomials_)];
    std::vector<int> wu(u.size());
    for (std::size_t x = 0; x < u.size(); ++x) wu[x] = w[static_cast<std::size_t>(u[x])];
    out[index_of(perm_index_.at(wu), idx % monomials_)] += c;
  }
  return out;
}

DegenerateRegularAlgebra::Element DegenerateRegularAlgebra::left_s(int i, int j, const Element& e) {
  std::vector<int> s(static_cast<std::size_t>(n_));
  std::iota(s.begin(), s.end(), 0);
  std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
  return left_perm(perm_index_.at(s), e);
}

// Normal form of Y_j Y^a (identity group part), 0-based j.
const DegenerateRegularAlgebra::Element& DegenerateRegularAlgebra::straighten(int j, long mono) {
  const auto key = std::make_pair(j, mono);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Element out;
  int first = -1;
  for (int i = 0; i < n_ && first < 0; ++i)
    if (exponent(mono, i) > 0) first = i;
  if (first < 0 || first >= j) {
    const int e = exponent(mono, j) + 1;
    if (e < ell_) {
      out[index_of(0, with_exponent(mono, j, e))] = QComplex(1);
    } else {
      for (int p = 0; p < ell_; ++p)
        if (!annihilator_[static_cast<std::size_t>(p)].is_zero())
          out[index_of(0, with_exponent(mono, j, p))] -= annihilator_[static_cast<std::size_t>(p)];
    }
  } else {
    // Y_j Y_f = Y_f Y_j - nu Y_f s + nu Y_j s with s = s_fj, and Y_f s = s Y_j, Y_j s = s Y_f.
    const long rest = with_exponent(mono, first, exponent(mono, first) - 1);
    const Element pj = straighten(j, rest);
    const Element pf = straighten(first, rest);
    out = left_y(first, pj);
    accumulate(out, left_s(first, j, pj), -nu_);
    accumulate(out, left_s(first, j, pf), nu_);
    prune(out);
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

DegenerateRegularAlgebra::Element DegenerateRegularAlgebra::left_y(int i, const Element& e) {
  Element out;
  for (const auto& [idx, c] : e) {
    const int perm = static_cast<int>(idx / monomials_);
    const auto& w = perms_[static_cast<std::size_t>(perm)];
    const int j = static_cast<int>(std::find(w.begin(), w.end(), i) - w.begin());
    const Element moved = left_perm(perm, straighten(j, idx % monomials_));
    accumulate(out, moved, c);
  }
  prune(out);
  return out;
}

DegenerateRegularAlgebra::Element DegenerateRegularAlgebra::multiply(const Element& a, const Element& b) {
  Element out;
  for (const auto& [idx, c] : a) {
    Element z = b;
    const long mono = idx % monomials_;
    for (int i = n_ - 1; i >= 0; --i)
      for (int r = 0; r < exponent(mono, i); ++r) z = left_y(i, z);
    accumulate(out, left_perm(static_cast<int>(idx / monomials_), z), c);
  }
  prune(out);
  return out;
}

DegenerateRegularAlgebra::Element DegenerateRegularAlgebra::generator(const std::string& label) const {
  int i = 0, j = 0;
  if (std::sscanf(label.c_str(), "s[%d,%d]", &i, &j) == 2) {
    std::vector<int> s(static_cast<std::size_t>(n_));
    std::iota(s.begin(), s.end(), 0);
    std::swap(s[static_cast<std::size_t>(i - 1)], s[static_cast<std::size_t>(j - 1)]);
    return {{index_of(perm_index_.at(s), 0), QComplex(1)}};
  }
  if (std::sscanf(label.c_str(), "Y[%d]", &i) == 1) return {{index_of(0, powers_[static_cast<std::size_t>(i - 1)]), QComplex(1)}};
  throw Error(ErrorKind::ParseError, "unknown generator " + label);
}

MatrixRep DegenerateRegularAlgebra::representation() {
  auto pres = cyclotomic_presentation(n_, lambda_, nu_);
  const auto dim = static_cast<std::size_t>(dimension());
  std::vector<QMatrix> mats;
  for (const auto& label : pres->generators()) {
    QMatrix m(dim, dim);
    int i = 0, j = 0;
    const bool is_s = std::sscanf(label.c_str(), "s[%d,%d]", &i, &j) == 2;
    if (!is_s) std::sscanf(label.c_str(), "Y[%d]", &i);
    for (std::size_t col = 0; col < dim; ++col) {
      const Element b = basis(static_cast<long>(col));
      const Element image = is_s ? left_s(i - 1, j - 1, b) : left_y(i - 1, b);
      for (const auto& [row, c] : image) m(static_cast<std::size_t>(row), col) = c;
    }
    mats.push_back(std::move(m));
  }
  MatrixRep rep = make_exact_rep(pres, std::move(mats));
  rep.parameters["nu"] = nu_.to_complex();
  for (int r = 0; r < ell_; ++r) rep.parameters["lambda" + std::to_string(r + 1)] = lambda_[static_cast<std::size_t>(r)].to_complex();
  return rep;
}

MatrixRep degenerate_regular_rep(int n, const std::vector<QComplex>& lambda, const QComplex& nu) {
  DegenerateRegularAlgebra algebra(n, lambda, nu);
  return algebra.representation();
}

namespace {

template <class M>
M zero_matrix(std::size_t n) {
  if constexpr (std::is_same_v<M, QMatrix>)
    return QMatrix(n, n);
  else
    return CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

template <class M>
bool is_zero_entry(const M& m, std::size_t r, std::size_t c) {
  if constexpr (std::is_same_v<M, QMatrix>)
    return m(r, c).is_zero();
  else
    return m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) == Complex{};
}

template <class M, class V>
void add_entry(M& m, std::size_t r, std::size_t c, const V& v) {
  if constexpr (std::is_same_v<M, QMatrix>)
    m(r, c) += v;
  else
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += v;
}

template <class M>
auto entry(const M& m, std::size_t r, std::size_t c) {
  if constexpr (std::is_same_v<M, QMatrix>)
    return QComplex(m(r, c));
  else
    return Complex(m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
}

template <class M>
auto unit() {
  if constexpr (std::is_same_v<M, QMatrix>)
    return QComplex(1);
  else
    return Complex(1.0, 0.0);
}

template <class M>
std::vector<M> induced_matrices(const Presentation& pres, int n, int m, std::size_t ell,
                                const std::vector<std::vector<M>>& modules) {
  const auto perms = all_permutations(n);
  std::map<std::vector<int>, std::size_t> perm_index;
  for (std::size_t i = 0; i < perms.size(); ++i) perm_index[perms[i]] = i;
  std::size_t block = 1;
  std::vector<std::size_t> powers;
  for (int i = 0; i < n; ++i) {
    powers.push_back(block);
    block *= ell;
  }
  const std::size_t dim = perms.size() * block;

  std::vector<M> out;
  for (const auto& label : pres.generators()) {
    M mat = zero_matrix<M>(dim);
    int i = 0, j = 0, k = 0;
    if (std::sscanf(label.c_str(), "s[%d,%d]", &i, &j) == 2) {
      for (std::size_t p = 0; p < perms.size(); ++p) {
        auto sw = perms[p];
        for (auto& x : sw) x = transpose_point(i - 1, j - 1, x);
        const std::size_t q = perm_index.at(sw);
        for (std::size_t v = 0; v < block; ++v) add_entry(mat, q * block + v, p * block + v, unit<M>());
      }
    } else if (std::sscanf(label.c_str(), "Y[%d,%d]", &i, &k) == 2) {
      for (std::size_t p = 0; p < perms.size(); ++p) {
        const auto& w = perms[p];
        const auto slot = static_cast<std::size_t>(std::find(w.begin(), w.end(), i - 1) - w.begin());
        const M& x = modules[slot][static_cast<std::size_t>(k - 1)];
        for (std::size_t v = 0; v < block; ++v) {
          const std::size_t digit = (v / powers[slot]) % ell;
          for (std::size_t r = 0; r < ell; ++r) {
            if (is_zero_entry(x, r, digit)) continue;
            const std::size_t row = v + (r - digit) * powers[slot];
            add_entry(mat, p * block + row, p * block + v, entry(x, r, digit));
          }
        }
      }
    }
    out.push_back(std::move(mat));
  }
  (void)m;
  return out;
}

void check_module_shape(const RationalParams& params, int n, std::size_t count, const std::vector<std::size_t>& sizes) {
  if (static_cast<int>(count) != n) throw Error(ErrorKind::SizeMismatch, "need one rank-one module per point");
  for (auto s : sizes)
    if (static_cast<int>(s) != params.graph.m()) throw Error(ErrorKind::SizeMismatch, "each module needs m matrices");
}

}  // namespace

MatrixRep induced_rep_nu_zero(const RationalParams& params, int n, const std::vector<std::vector<QMatrix>>& modules) {
  std::vector<std::size_t> sizes;
  for (const auto& mod : modules) sizes.push_back(mod.size());
  check_module_shape(params, n, modules.size(), sizes);
  const auto ell = static_cast<std::size_t>(params.graph.ell());
  for (std::size_t p = 0; p < modules.size(); ++p) {
    QMatrix sum(ell, ell);
    for (std::size_t k = 0; k < modules[p].size(); ++k) {
      const QMatrix& x = modules[p][k];
      if (x.rows() != ell || x.cols() != ell) throw Error(ErrorKind::SizeMismatch, "module matrices must be l x l");
      QMatrix annihilated = QMatrix::identity(ell);
      std::vector<QComplex> roots;
      const auto reps = ell / static_cast<std::size_t>(params.graph.d[k]);
      for (const auto& g : params.gamma[k]) {
        annihilated = annihilated * (x - QMatrix::scalar(ell, g));
        roots.insert(roots.end(), reps, g);
      }
      if (!annihilated.is_zero() || characteristic_polynomial(x) != polynomial_from_roots(roots))
        throw Error(ErrorKind::SpecMismatch, "module " + std::to_string(p + 1) + " leg " + std::to_string(k + 1) +
                                                 " does not have the prescribed semisimple spectrum");
      sum += x;
    }
    if (!sum.is_zero()) throw Error(ErrorKind::SpecMismatch, "module matrices do not sum to zero");
  }
  auto pres = rational_gdaha_presentation(params.graph, n, params.gamma, QComplex(0));
  MatrixRep rep = make_exact_rep(pres, induced_matrices(*pres, n, params.graph.m(), ell, modules));
  rep.parameters["nu"] = 0.0;
  return rep;
}

MatrixRep induced_rep_nu_zero(const RationalParams& params, int n, const std::vector<std::vector<CMatrix>>& modules,
                              double tol) {
  std::vector<std::size_t> sizes;
  for (const auto& mod : modules) sizes.push_back(mod.size());
  check_module_shape(params, n, modules.size(), sizes);
  const auto ell = static_cast<Eigen::Index>(params.graph.ell());
  const auto gammas = params.gamma_values();
  for (std::size_t p = 0; p < modules.size(); ++p) {
    CMatrix sum = CMatrix::Zero(ell, ell);
    for (std::size_t k = 0; k < modules[p].size(); ++k) {
      const CMatrix& x = modules[p][k];
      if (x.rows() != ell || x.cols() != ell) throw Error(ErrorKind::SizeMismatch, "module matrices must be l x l");
      ConjugacyClassSpec spec;
      CMatrix annihilated = CMatrix::Identity(ell, ell);
      for (const auto& g : gammas[k]) {
        spec.entries.emplace_back(g, static_cast<int>(ell) / params.graph.d[k]);
        annihilated = annihilated * (x - g * CMatrix::Identity(ell, ell));
      }
      const double scale = std::max(1.0, spectral_norm(x));
      if (!spectrum_match(x, spec, tol * scale).matches || spectral_norm(annihilated) > tol * std::pow(scale, static_cast<double>(gammas[k].size())))
        throw Error(ErrorKind::SpecMismatch, "module " + std::to_string(p + 1) + " leg " + std::to_string(k + 1) +
                                                 " does not have the prescribed semisimple spectrum");
      sum += x;
    }
    if (spectral_norm(sum) > tol) throw Error(ErrorKind::SpecMismatch, "module matrices do not sum to zero");
  }
  auto pres = rational_gdaha_presentation(params.graph, n, params.gamma, QComplex(0));
  MatrixRep rep = make_rep(pres, induced_matrices(*pres, n, params.graph.m(), static_cast<std::size_t>(ell), modules));
  rep.parameters["nu"] = 0.0;
  return rep;
}

MatrixRep restrict_eta(const MatrixRep& bn_rep, const RationalParams& params, int n) {
  const int m = params.graph.m();
  auto pres = cyclotomic_presentation(n, params.lambda(), params.nu);
  std::vector<std::string> source;
  for (const auto& label : pres->generators()) {
    int i = 0;
    source.push_back(std::sscanf(label.c_str(), "Y[%d]", &i) == 1 ? y_label(i, m) : label);
  }
  MatrixRep out;
  if (bn_rep.is_exact()) {
    std::vector<QMatrix> mats;
    for (const auto& label : source) mats.push_back(bn_rep.exact_at(label));
    out = make_exact_rep(pres, std::move(mats));
  } else {
    std::vector<CMatrix> mats;
    for (const auto& label : source) mats.push_back(bn_rep[label]);
    out = make_rep(pres, std::move(mats));
  }
  out.parameters = bn_rep.parameters;
  return out;
}

void check_generic(const std::vector<QComplex>& lambda, const QComplex& nu, int n) {
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      if (i == j) continue;
      const QComplex diff = lambda[i] - lambda[j];
      for (long d = -(n - 1); d <= n - 1; ++d)
        if (diff == QComplex(d) * nu)
          throw Error(ErrorKind::NonGenericParameters,
                      "lambda_" + std::to_string(i + 1) + " - lambda_" + std::to_string(j + 1) + " = " +
                          std::to_string(d) + " nu");
    }
}

IsotypicSpec cyclotomic_trivial_spec(const Presentation& p, int n, const QComplex& lambda_ell) {
  IsotypicSpec spec;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) spec.conditions.emplace_back(p.gen(s_label(i, j)), Coeff(1L));
  for (int i = 1; i < n; ++i) spec.conditions.emplace_back(p.gen(y_label(i)), Coeff(lambda_ell));
  return spec;
}

IsotypicSpec gdaha_trivial_spec(const Presentation& p, int n, int m, const QComplex& gamma_m_ell) {
  IsotypicSpec spec;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) spec.conditions.emplace_back(p.gen(s_label(i, j)), Coeff(1L));
  for (int i = 1; i < n; ++i) spec.conditions.emplace_back(p.gen(y_label(i, m)), Coeff(gamma_m_ell));
  return spec;
}

NcExpr cyclotomic_x(const Presentation& p, int n, const QComplex& nu) {
  NcExpr x = p.gen(y_label(n));
  for (int j = 1; j < n; ++j) x -= Coeff(nu) * p.gen(s_label(j, n));
  return x;
}

std::vector<QComplex> trivial_part_x_spectrum(const std::vector<QComplex>& lambda, const QComplex& nu, int n) {
  const QComplex& top = lambda.back();
  std::vector<QComplex> out{top - QComplex(n - 1) * nu};
  out.insert(out.end(), static_cast<std::size_t>(n - 1), top + nu);
  for (std::size_t j = 0; j + 1 < lambda.size(); ++j) out.insert(out.end(), static_cast<std::size_t>(n), lambda[j]);
  return out;
}

IsotypicSpec ariki_koike_trivial_spec(const Presentation& p, int n, Complex v_ell, Complex t) {
  IsotypicSpec spec;
  for (int i = 1; i <= n - 2; ++i) spec.conditions.emplace_back(p.gen(t_label(i)), Coeff(t));
  spec.conditions.emplace_back(p.gen("U"), Coeff(v_ell));
  return spec;
}

NcExpr ariki_koike_x(const Presentation& p, int n) {
  NcExpr x = one();
  for (int i = n - 1; i >= 1; --i) x = x * p.gen(t_label(i));
  x = x * p.gen("U");
  for (int i = 1; i < n; ++i) x = x * p.gen(t_label(i));
  return x;
}

NcExpr ariki_koike_un(const Presentation& p, int n) {
  NcExpr x = one();
  for (int i = n - 1; i >= 1; --i) x = x * p.inv(t_label(i));
  x = x * p.gen("U");
  for (int i = 1; i < n; ++i) x = x * p.gen(t_label(i));
  return x;
}

}  // namespace gdaha
