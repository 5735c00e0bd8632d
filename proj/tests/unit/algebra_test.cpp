#include <gtest/gtest.h>

#include "gdaha/algebras.hpp"
#include "gdaha/error.hpp"
#include "support.hpp"

using namespace gdaha;
using gdaha::testing::q;

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long power(long b, int e) { return e == 0 ? 1 : b * power(b, e - 1); }

}  // namespace

TEST(RegularRep, NuZeroIsSemidirectProduct) {
  // At nu = 0 the algebra is C[S_n] acting on C[Y]/(prod (Y - lambda)), so Y_1 has each
  // lambda_j with multiplicity n! l^(n-1) and every non-identity permutation is traceless.
  const std::vector<QComplex> lambda{q(1, 5), q(-2, 7), q(3, 11)};
  const int n = 2;
  auto rep = degenerate_regular_rep(n, lambda, q(0));
  ASSERT_EQ(rep.dim, factorial(n) * power(3, n));
  EXPECT_TRUE(relation_residuals(rep).all_exact_zero());

  std::vector<QComplex> roots;
  for (const auto& l : lambda)
    for (long r = 0; r < factorial(n) * power(3, n - 1); ++r) roots.push_back(l);
  EXPECT_EQ(characteristic_polynomial(rep.exact_at("Y[1]")), polynomial_from_roots(roots));

  const auto& s = rep.exact_at(s_label(1, 2));
  QComplex trace;
  for (std::size_t i = 0; i < s.rows(); ++i) trace += s(i, i);
  EXPECT_TRUE(trace.is_zero());
  EXPECT_EQ(s * rep.exact_at("Y[1]"), rep.exact_at("Y[2]") * s);
}

TEST(RegularRep, RelationsExactForGenericNu) {
  for (int n : {1, 2, 3}) {
    auto rep = degenerate_regular_rep(n, {q(1, 5), q(-2, 7)}, q(1, 3));
    auto report = relation_residuals(rep);
    EXPECT_TRUE(report.exact);
    EXPECT_TRUE(report.all_exact_zero()) << "n = " << n;
  }
}

TEST(RegularRep, MatricesAreLeftMultiplication) {
  DegenerateRegularAlgebra alg(2, {q(1, 5), q(-2, 7)}, q(1, 3));
  auto rep = alg.representation();
  const auto y2 = alg.generator("Y[2]");
  for (long b = 0; b < alg.dimension(); ++b) {
    auto product = alg.multiply(y2, alg.basis(b));
    const auto& m = rep.exact_at("Y[2]");
    for (long r = 0; r < alg.dimension(); ++r) {
      auto it = product.find(r);
      const QComplex expected = it == product.end() ? QComplex() : it->second;
      EXPECT_EQ(m(static_cast<std::size_t>(r), static_cast<std::size_t>(b)), expected);
    }
  }
}

TEST(RegularRep, NonGenericParametersRejected) {
  EXPECT_THROW(check_generic({q(0), q(1)}, q(1), 2), Error);
  EXPECT_THROW(check_generic({q(1, 2), q(1, 2)}, q(1, 3), 2), Error);
  EXPECT_NO_THROW(check_generic({q(0), q(1)}, q(1), 1));
  EXPECT_NO_THROW(check_generic({q(1, 5), q(-2, 7)}, q(1, 3), 3));
}

TEST(TrivialPartSpectrum, WrongNuIsDetected) {
  const std::vector<QComplex> lambda{q(1, 5), q(-2, 7)};
  const QComplex nu = q(1, 9);
  const int n = 2;
  auto rep = degenerate_regular_rep(n, lambda, nu);
  auto ns = exact_isotypic_subspace(rep, cyclotomic_trivial_spec(*rep.presentation, n, lambda.back()));
  ASSERT_EQ(ns.basis.cols(), static_cast<std::size_t>(n * 2));
  auto x = exact_restricted_operator(rep, cyclotomic_x(*rep.presentation, n, nu), ns);
  const auto poly = characteristic_polynomial(x);
  EXPECT_EQ(poly, polynomial_from_roots(trivial_part_x_spectrum(lambda, nu, n)));
  EXPECT_NE(poly, polynomial_from_roots(trivial_part_x_spectrum(lambda, q(1, 8), n)));
}

TEST(InducedRep, ExactRelationsAtNuZero) {
  auto pair = gdaha::testing::exact_d4_pair();
  auto p = gamma_to_mu_xi(build_star_graph({2, 2, 2, 2}), pair.gamma, q(0));
  auto rep = induced_rep_nu_zero(p, 2, {pair.first, pair.second});
  ASSERT_TRUE(rep.is_exact());
  EXPECT_EQ(rep.dim, 2 * 2 * 2);
  EXPECT_TRUE(relation_residuals(rep).all_exact_zero());
}

TEST(InducedRep, WrongSpectraRejected) {
  auto pair = gdaha::testing::exact_d4_pair();
  auto gamma = pair.gamma;
  gamma[0][0] += q(1);
  gamma[1][0] -= q(1);
  auto p = gamma_to_mu_xi(build_star_graph({2, 2, 2, 2}), gamma, q(0));
  try {
    induced_rep_nu_zero(p, 2, {pair.first, pair.second});
    FAIL() << "expected SpecMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SpecMismatch);
  }
}

TEST(Presentation, ParseWordAndUndeclaredGenerators) {
  auto p = cyclotomic_presentation(2, {q(1, 5), q(-2, 7)}, q(1, 3));
  auto w = p->parse_word("Y[1] s[1,2] Y[2]");
  ASSERT_EQ(w.terms().size(), 1u);
  EXPECT_EQ(w.terms()[0].word.size(), 3u);
  EXPECT_THROW(p->parse_word("Y[3]"), Error);
  EXPECT_THROW(p->add_relation("bad", p->inv("Y[1]")), Error);
}
