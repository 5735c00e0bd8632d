#pragma once

// Presentations of the algebras in play and their explicit matrix realizations:
// rational GDAHA B_n, degenerate cyclotomic Hecke B_{n,l}, GDAHA H_n,
// Ariki-Koike H_{n,l}, and Sahi's rank-n algebra.

#include <map>
#include <memory>
#include <vector>

#include "gdaha/params.hpp"
#include "gdaha/presentation.hpp"

namespace gdaha {

// Generator labels are 1-based: "s[i,j]" (i<j), "Y[i,k]", "Y[i]", "U[k]", "U", "T[i]", "X[i]".
std::string s_label(int i, int j);

std::shared_ptr<Presentation> rational_gdaha_presentation(const StarGraph& graph, int n, const GammaTable& gamma,
                                                          const QComplex& nu);
std::shared_ptr<Presentation> cyclotomic_presentation(int n, const std::vector<QComplex>& lambda,
                                                      const QComplex& nu);
std::shared_ptr<Presentation> gdaha_presentation(const StarGraph& graph, int n, const UTable& u, Complex t);
std::shared_ptr<Presentation> ariki_koike_presentation(int n, const std::vector<Complex>& v, Complex t);
/// Sahi's algebra with the auxiliary generators "Tv[0]", "Tv[n]" standing for
/// T_0^vee and T_n^vee, tied to T_0, T_n, X_1, X_n by their defining relations.
std::shared_ptr<Presentation> sahi_presentation(int n, const SahiParams& p, Complex t);

/// Permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

/// Left-regular representation of B_{n,l}(lambda, nu) on the basis w Y_1^{a_1}...Y_n^{a_n}.
class DegenerateRegularAlgebra {
 public:
  using Element = std::map<long, QComplex>;

  DegenerateRegularAlgebra(int n, std::vector<QComplex> lambda, QComplex nu);

  int n() const { return n_; }
  int ell() const { return ell_; }
  long dimension() const { return static_cast<long>(perms_.size()) * monomials_; }

  Element basis(long index) const { return {{index, QComplex(1)}}; }
  /// The algebra element named by a generator label of the cyclotomic presentation.
  Element generator(const std::string& label) const;

  Element left_s(int i, int j, const Element& e);
  Element left_y(int i, const Element& e);
  Element multiply(const Element& a, const Element& b);

  MatrixRep representation();

 private:
  long index_of(int perm, long mono) const { return perm * monomials_ + mono; }
  int exponent(long mono, int i) const;
  long with_exponent(long mono, int i, int value) const;
  Element left_perm(int perm, const Element& e) const;
  const Element& straighten(int j, long mono);

  int n_;
  int ell_;
  std::vector<QComplex> lambda_;
  QComplex nu_;
  std::vector<QComplex> annihilator_;  // monic coefficients of prod (Y - lambda_r)
  std::vector<std::vector<int>> perms_;
  std::map<std::vector<int>, int> perm_index_;
  std::vector<long> powers_;
  long monomials_ = 1;
  std::map<std::pair<int, long>, Element> memo_;
};

MatrixRep degenerate_regular_rep(int n, const std::vector<QComplex>& lambda, const QComplex& nu);

/// C[S_n] (x) M_1 (x) ... (x) M_n as a B_n(gamma, 0)-module; modules[p][k] is the
/// action of Y_{.,k} on the p-th rank-one module. Throws SpecMismatch when a module
/// does not have the prescribed spectra or does not sum to zero.
MatrixRep induced_rep_nu_zero(const RationalParams& params, int n, const std::vector<std::vector<QMatrix>>& modules);
MatrixRep induced_rep_nu_zero(const RationalParams& params, int n, const std::vector<std::vector<CMatrix>>& modules,
                              double tol);

/// Pullback along eta_m: Y_i := Y_{i,m}, s_ij := s_ij, as a B_{n,l}(gamma_m, nu)-module.
MatrixRep restrict_eta(const MatrixRep& bn_rep, const RationalParams& params, int n);

/// Conservative exclusion list: distinct lambda and lambda_i - lambda_j != d nu for
/// |d| <= n-1. Throws NonGenericParameters.
void check_generic(const std::vector<QComplex>& lambda, const QComplex& nu, int n);

/// Trivial character of B_{n-1,l}: s_ij -> 1, Y_i -> lambda_l for i, j < n.
IsotypicSpec cyclotomic_trivial_spec(const Presentation& p, int n, const QComplex& lambda_ell);
/// Same character pulled back along eta_m on a B_n presentation.
IsotypicSpec gdaha_trivial_spec(const Presentation& p, int n, int m, const QComplex& gamma_m_ell);
/// x = Y_n - nu sum_{j<n} s_nj on a cyclotomic presentation.
NcExpr cyclotomic_x(const Presentation& p, int n, const QComplex& nu);
/// Expected eigenvalues of x on V': lambda_l-(n-1)nu, lambda_l+nu (n-1 times), lambda_j (n times each).
std::vector<QComplex> trivial_part_x_spectrum(const std::vector<QComplex>& lambda, const QComplex& nu, int n);

/// Trivial character of H_{n-1,l}: T_i -> t (i <= n-2), U -> v_l.
IsotypicSpec ariki_koike_trivial_spec(const Presentation& p, int n, Complex v_ell, Complex t);
/// X = T_{n-1}...T_1 U T_1...T_{n-1}.
NcExpr ariki_koike_x(const Presentation& p, int n);
/// U_n = T_{n-1}^{-1}...T_1^{-1} U T_1...T_{n-1}.
NcExpr ariki_koike_un(const Presentation& p, int n);

}  // namespace gdaha
