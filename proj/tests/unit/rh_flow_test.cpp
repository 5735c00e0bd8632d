#include <functional>

#include <gtest/gtest.h>

#include "gdaha/error.hpp"
#include "gdaha/rh_flow.hpp"
#include "gdaha/rng.hpp"
#include "support.hpp"

using namespace gdaha;

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

Complex cross_ratio(const std::vector<Complex>& a) {
  return (a[1] - a[0]) * (a[3] - a[2]) / ((a[2] - a[0]) * (a[3] - a[1]));
}

}  // namespace

TEST(RiemannHilbert, DiagonalTupleExponentiates) {
  // Commuting diagonal residues: each loop monodromy is exp(2 pi i x_k).
  std::vector<Complex> d1{0.2, -0.1}, d2{0.15, 0.33}, d3{Complex(0.1, 0.05), 0.4};
  std::vector<CMatrix> x;
  for (const auto& d : {d1, d2, d3}) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = d[0];
    m(1, 1) = d[1];
    x.push_back(m);
  }
  x.push_back(-(x[0] + x[1] + x[2]));
  auto r = rh_map(x, default_geometry(4, 1), 1e-12);
  for (std::size_t k = 0; k < 4; ++k)
    for (int i = 0; i < 2; ++i)
      EXPECT_NEAR(std::abs(r.tuple[k](i, i) - std::exp(Complex(0, 2 * M_PI) * x[k](i, i))), 0.0, 1e-9);
  EXPECT_LT(r.product_residual, 1e-9);
}

TEST(RiemannHilbert, ResiduesMustSumToZero) {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 0.3;
  a(1, 1) = -0.2;
  a(0, 1) = 1.0;
  std::vector<CMatrix> x{a, -a};
  EXPECT_NO_THROW(rh_map(x, make_geometry({0.0, 1.0}, {2.0}), 1e-11));
  x[1](1, 0) = 0.01;
  EXPECT_EQ(kind_of([&] { rh_map(x, make_geometry({0.0, 1.0}, {2.0}), 1e-11); }), ErrorKind::SumNotZero);
}

TEST(Conjugacy, RandomConjugationIsFound) {
  auto sol = gdaha::testing::solve_rank_one(gdaha::testing::e6_params());
  auto rng = RandomStreams(11).stream("conj");
  CMatrix g = random_matrix(rng, 3, 3) + 2.0 * CMatrix::Identity(3, 3);
  std::vector<CMatrix> moved;
  for (const auto& x : sol.matrices) moved.push_back(g * x * g.inverse());
  auto m = match_up_to_conjugacy(sol.matrices, moved, 1e-8);
  EXPECT_LT(m.residual, 1e-10);
  ASSERT_TRUE(m.conjugator.has_value());
  for (std::size_t k = 0; k < moved.size(); ++k)
    EXPECT_LT((*m.conjugator * sol.matrices[k] - moved[k] * *m.conjugator).norm(), 1e-8 * m.conjugator->norm());
}

TEST(Invariants, CountIsSumOfPowers) {
  auto sol = gdaha::testing::solve_rank_one(gdaha::testing::d4_params());
  for (int length = 1; length <= 4; ++length) {
    std::size_t expected = 0, power = 1;
    for (int l = 1; l <= length; ++l) expected += (power *= 4);
    EXPECT_EQ(conjugation_invariants(sol.matrices, length).size(), expected);
  }
  auto inv = conjugation_invariants(sol.matrices, 2);
  EXPECT_NEAR(std::abs(inv[4] - (sol.matrices[0] * sol.matrices[0]).trace()), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(inv[5] - (sol.matrices[0] * sol.matrices[1]).trace()), 0.0, 1e-12);
}

TEST(KappaGeometry, CrossRatioIsKappa) {
  for (Complex kappa : {Complex(0.5, 0.0), Complex(0.45, 0.08), Complex(0.3, -0.2)}) {
    for (double a : {10.0, 25.0}) {
      auto pts = kappa_punctures(kappa, a);
      ASSERT_EQ(pts.size(), 4u);
      EXPECT_NEAR(std::abs(cross_ratio(pts) - kappa), 0.0, 1e-12);
      EXPECT_DOUBLE_EQ(pts[3].real(), a);
    }
  }
}

TEST(Flow, ConstantPathHasNoDrift) {
  auto sol = gdaha::testing::solve_rank_one(gdaha::testing::d4_params());
  std::vector<Complex> path(3, Complex(0.5, 0.0));
  auto traj = painleve_flow(sol.matrices, 0.5, path);
  EXPECT_EQ(traj.samples.size(), 4u);
  EXPECT_LT(traj.max_drift, 1e-12);
  EXPECT_EQ(traj.halvings, 0);
}

TEST(Flow, CoarsePathRejected) {
  auto sol = gdaha::testing::solve_rank_one(gdaha::testing::d4_params());
  EXPECT_EQ(kind_of([&] { painleve_flow(sol.matrices, 0.5, {Complex(0.5, 0.5)}); }), ErrorKind::PathTooCoarse);
}

TEST(Flow, SurrogatePositionDoesNotChangeInvariants) {
  // The monodromy only depends on kappa, so moving the fourth puncture along the
  // Moebius orbit leaves the traces of all words fixed at kappa_0.
  auto sol = gdaha::testing::solve_rank_one(gdaha::testing::d4_params());
  FlowOptions near, far;
  near.surrogate = 10.0;
  far.surrogate = 20.0;
  std::vector<Complex> path{0.5};
  auto a = painleve_flow(sol.matrices, 0.5, path, near), b = painleve_flow(sol.matrices, 0.5, path, far);
  ASSERT_EQ(a.target.size(), b.target.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.target.size(); ++i) worst = std::max(worst, std::abs(a.target[i] - b.target[i]));
  EXPECT_LT(worst, 1e-8);
}
