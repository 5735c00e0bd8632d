#include <functional>

#include <gtest/gtest.h>

#include "gdaha/error.hpp"
#include "gdaha/monodromy.hpp"
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

TEST(Geometry, OrderingAndDelta) {
  EXPECT_EQ(kind_of([] { make_geometry({1.0, 0.0}, {3.0}); }), ErrorKind::BadOrdering);
  EXPECT_EQ(kind_of([] { make_geometry({0.0, 1.0}, {0.5}); }), ErrorKind::BadOrdering);
  EXPECT_EQ(kind_of([] { make_geometry({0.0, 1.0}, {Complex(3.0, 1.0)}); }), ErrorKind::BadOrdering);
  EXPECT_EQ(kind_of([] { make_geometry({0.0, 1.0}, {3.0}, 0.5); }), ErrorKind::DeltaTooLarge);
  auto g = default_geometry(4, 2);
  EXPECT_EQ(g.alpha.size(), 4u);
  EXPECT_DOUBLE_EQ(g.base[0].real(), 5.0);
  EXPECT_DOUBLE_EQ(g.base[1].real(), 6.0);
  EXPECT_DOUBLE_EQ(g.delta, 0.25);
}

TEST(BraidLoops, WindingNumbers) {
  auto g = make_geometry({0.0, Complex(1.0, 0.6), 2.0}, {3.0, 4.0}, 0.1);
  for (int k = 1; k <= 3; ++k) {
    auto loop = braid_loop(g, {BraidGenerator::Kind::U, k});
    EXPECT_TRUE(loop.closed());
    for (int j = 1; j <= 3; ++j)
      EXPECT_NEAR(winding_number(loop, 0, g.alpha[static_cast<std::size_t>(j - 1)]), j == k ? 1.0 : 0.0, 1e-9);
    EXPECT_NEAR(winding_number(loop, 1, g.alpha[0]), 0.0, 1e-9);
    EXPECT_GT(min_distance(loop, g.alpha), 0.25 * g.delta);
  }
  auto t = braid_loop(g, {BraidGenerator::Kind::T, 1});
  EXPECT_EQ(t.end_perm, (std::vector<int>{1, 0}));
  EXPECT_FALSE(t.closed());
  auto full = compose(t, t);
  EXPECT_TRUE(full.closed());
  // Two half-turns make z_1 circle z_2 once.
  EXPECT_NEAR(winding_number(full, 0, 3.5), 1.0, 1e-9);
}

TEST(Transport, ScalarLoopGivesExponential) {
  const Complex a(0.3, 0.1);
  CMatrix x1(1, 1), x2(1, 1);
  x1(0, 0) = a;
  x2(0, 0) = -a;
  auto conn = fuchsian_connection({x1, x2}, {0.0, 1.0});
  auto g = make_geometry({0.0, 1.0}, {2.0});
  for (int k = 1; k <= 2; ++k) {
    auto r = loop_monodromy(conn, braid_loop(g, {BraidGenerator::Kind::U, k}), 1e-12);
    EXPECT_NEAR(std::abs(r.matrix(0, 0) - std::exp(Complex(0, 2 * M_PI) * (k == 1 ? a : -a))), 0.0, 1e-10);
  }
  EXPECT_EQ(kind_of([&] { fuchsian_connection({x1, x1}, {0.0, 1.0}); }), ErrorKind::SumNotZero);
}

TEST(Transport, ReversedPathInverts) {
  auto p = gdaha::testing::d4_params();
  auto sol = gdaha::testing::solve_rank_one(p);
  auto g = default_geometry(4, 1);
  auto conn = fuchsian_connection(sol.matrices, g.alpha);
  auto loop = braid_loop(g, {BraidGenerator::Kind::U, 2});
  auto there = parallel_transport(conn, loop, 1e-12).matrix;
  auto back = parallel_transport(conn, reversed(loop), 1e-12).matrix;
  EXPECT_LT((back * there - CMatrix::Identity(2, 2)).norm(), 1e-9);
}

TEST(Monodromy, IndependentOfDetourScale) {
  auto p = gdaha::testing::d4_params();
  auto rep = gdaha::testing::rank_one_rep(p, gdaha::testing::solve_rank_one(p).matrices);
  auto narrow = monodromy_functor(rep, p, 1, default_geometry(4, 1, 0.1), 1e-11);
  auto wide = monodromy_functor(rep, p, 1, default_geometry(4, 1, 0.3), 1e-11);
  for (std::size_t i = 0; i < narrow.rep.matrices.size(); ++i)
    EXPECT_LT((narrow.rep.matrices[i] - wide.rep.matrices[i]).norm(), 1e-8) << i;
  EXPECT_LT(hn_relation_check(narrow).max, 1e-8);
}

TEST(Monodromy, InducedModuleIsFlat) {
  auto pair = gdaha::testing::exact_d4_pair();
  auto p = gamma_to_mu_xi(build_star_graph({2, 2, 2, 2}), pair.gamma, q(0));
  auto rep = induced_rep_nu_zero(p, 2, {pair.first, pair.second});
  auto conn = kz_connection(rep, default_geometry(4, 2).alpha);
  EXPECT_LT(curvature_residual(conn, 10, 3), 1e-10);
  auto mon = monodromy_functor(rep, p, 2, default_geometry(4, 2), 1e-11);
  EXPECT_LT(mon.relations.max, 1e-7);
}

TEST(Monodromy, BrokenModuleRejected) {
  auto p = gdaha::testing::d4_params();
  auto x = gdaha::testing::solve_rank_one(p).matrices;
  x[0](0, 1) += 0.1;
  auto rep = gdaha::testing::rank_one_rep(p, x);
  EXPECT_EQ(kind_of([&] { kz_connection(rep, default_geometry(4, 1).alpha); }), ErrorKind::RelationResidualTooLarge);
}
