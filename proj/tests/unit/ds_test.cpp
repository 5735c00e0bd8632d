#include <functional>

#include <gtest/gtest.h>

#include "gdaha/ds_solver.hpp"
#include "gdaha/error.hpp"
#include "gdaha/rh_flow.hpp"
#include "gdaha/rng.hpp"
#include "support.hpp"

using namespace gdaha;
using gdaha::testing::q;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(AdditiveDS, HbarMustVanish) {
  auto gamma = gdaha::testing::d4_gamma();
  gamma[2][0] += q(1, 10);
  auto p = gamma_to_mu_xi(build_star_graph({2, 2, 2, 2}), gamma, q(0));
  EXPECT_EQ(kind_of([&] { additive_class_specs(p, 1); }), ErrorKind::NonZeroHbar);
}

TEST(AdditiveDS, TraceObstruction) {
  std::vector<ConjugacyClassSpec> specs(3, make_spec({{0.5, 1}, {-0.5, 1}}));
  specs[2] = make_spec({{0.5, 1}, {-0.25, 1}});
  EXPECT_EQ(kind_of([&] { solve_additive_ds(specs); }), ErrorKind::TraceObstruction);
}

TEST(AdditiveDS, MakeSpecMergesEqualEigenvalues) {
  auto s = make_spec({{1.0, 1}, {2.0, 0}, {1.0, 2}, {3.0, 1}});
  ASSERT_EQ(s.entries.size(), 2u);
  EXPECT_EQ(s.entries[0].second, 3);
  EXPECT_EQ(s.size(), 4);
}

TEST(AdditiveDS, SolutionIsGaugeInvariant) {
  auto p = gdaha::testing::d4_params();
  auto sol = gdaha::testing::solve_rank_one(p);
  ASSERT_LT(sol.residual, 1e-10);
  auto rng = RandomStreams(5).stream("gauge");
  CMatrix g = random_matrix(rng, 2, 2) + 2.0 * CMatrix::Identity(2, 2);
  auto moved = conjugate(sol, g);
  EXPECT_LT(ds_residual(DSKind::Additive, moved.matrices), 1e-10);
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_LT(spectrum_match(moved.matrices[k], sol.specs[k], 1e-8).deviation, 1e-10);
  auto a = conjugation_invariants(sol.matrices, 3), b = conjugation_invariants(moved.matrices, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-10);
  EXPECT_EQ(tangent_dimension(moved, 1e-7), 2);
  EXPECT_LT(match_up_to_conjugacy(sol.matrices, moved.matrices, 1e-8).residual, 1e-8);
}

TEST(AdditiveDS, SameSeedSameSolution) {
  auto p = gdaha::testing::e6_params();
  auto a = gdaha::testing::solve_rank_one(p, 99), b = gdaha::testing::solve_rank_one(p, 99);
  for (std::size_t k = 0; k < a.matrices.size(); ++k) EXPECT_EQ(a.matrices[k], b.matrices[k]);
  EXPECT_EQ(a.start, b.start);
}

TEST(AdditiveDS, IrreducibleSolutionHasScalarCentralizer) {
  auto p = gdaha::testing::e6_params();
  auto sol = gdaha::testing::solve_rank_one(p);
  EXPECT_EQ(joint_centralizer_dimension(sol.matrices), 1);
  EXPECT_TRUE(irreducibility_check(sol.matrices));
  std::vector<CMatrix> doubled;
  for (const auto& x : sol.matrices) doubled.push_back(gdaha::testing::block_diagonal(x, x));
  EXPECT_EQ(joint_centralizer_dimension(doubled), 4);
  EXPECT_FALSE(irreducibility_check(doubled));
}

TEST(ExactRankOne, SumsToZeroWithPrescribedSpectra) {
  auto pair = gdaha::testing::exact_d4_pair();
  QMatrix sum(2, 2);
  for (const auto& x : pair.first) sum += x;
  EXPECT_TRUE(sum.is_zero());
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(characteristic_polynomial(pair.first[k]), polynomial_from_roots(pair.gamma[k]));
    EXPECT_EQ(characteristic_polynomial(pair.second[k]), polynomial_from_roots(pair.gamma[k]));
  }
  std::vector<CMatrix> a, b;
  for (std::size_t k = 0; k < 4; ++k) {
    a.push_back(to_cmatrix(pair.first[k]));
    b.push_back(to_cmatrix(pair.second[k]));
  }
  // Different c give different points of the moduli space.
  EXPECT_GT(match_up_to_conjugacy(a, b, 1e-8).residual, 1e-4);
}

TEST(ExactRankOne, IrrationalRootRejected) {
  std::vector<Rational> ab{Rational(1), Rational(0), Rational(0), Rational(0), Rational(0), Rational(0)};
  EXPECT_EQ(kind_of([&] { exact_d4_rank_one(ab, Rational(0), Rational(1)); }), ErrorKind::NonGenericParameters);
}

TEST(MultiplicativeDS, ProductIsIdentity) {
  auto mp = exponentiate_params(gdaha::testing::d4_params());
  SolverOptions o;
  auto sol = solve_multiplicative_ds(multiplicative_class_specs(mp, 1), o);
  EXPECT_LT(sol.residual, 1e-10);
  CMatrix prod = CMatrix::Identity(2, 2);
  for (const auto& x : sol.matrices) prod = prod * x;
  EXPECT_LT((prod - CMatrix::Identity(2, 2)).norm(), 1e-10);
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_LT(spectrum_match(sol.matrices[k], sol.specs[k], 1e-8).deviation, 1e-10);
}

TEST(MultiplicativeDS, DeterminantObstruction) {
  auto g = build_star_graph({2, 2, 2, 2});
  UTable u(4, std::vector<Complex>{Complex(1.0), Complex(-1.0)});
  u[0][0] = std::polar(1.0, 0.3);
  auto mp = make_multiplicative(g, u, 1.0);
  EXPECT_EQ(kind_of([&] { multiplicative_class_specs(mp, 1); }), ErrorKind::DetObstruction);
}
