#include <sstream>

#include <gtest/gtest.h>

#include "gdaha/algebras.hpp"
#include "gdaha/error.hpp"
#include "gdaha/io.hpp"
#include "support.hpp"

using namespace gdaha;
using gdaha::testing::q;

TEST(Io, ScalarsAndMatrices) {
  EXPECT_EQ(io::complex_from(io::to_json(Complex(0.25, -3.0))), Complex(0.25, -3.0));
  EXPECT_EQ(io::qcomplex_from(io::json(0.13)), q(13, 100));
  EXPECT_EQ(io::qcomplex_from(io::json("1/2-3i")), QComplex(Rational(1, 2), Rational(-3)));
  CMatrix m(2, 3);
  m << Complex(1, 2), 3, Complex(0, -1), 4, 5, Complex(1e-17, 6);
  EXPECT_EQ(io::matrix_from(io::to_json(m)), m);
  EXPECT_THROW(io::matrix_from(io::json::parse("[[1, 2], [3]]")), Error);
}

TEST(Io, ParamsRoundTripKeepsCallerLegOrder) {
  auto j = io::json::parse(R"({"legs": [3, 2, 6], "gamma": [["1/3", 0, "-1/3"], [0.5, "-1/2"],
                               [1, 2, 3, 4, 5, "-15"]], "nu": "1/4"})");
  auto p = io::params_from_json(j);
  EXPECT_EQ(p.graph.d, (std::vector<int>{2, 3, 6}));
  EXPECT_EQ(p.gamma[0][0], q(1, 2));
  EXPECT_EQ(p.nu, q(1, 4));
  auto back = io::params_from_json(io::to_json(p));
  EXPECT_EQ(back.gamma, p.gamma);
  EXPECT_EQ(back.graph.d, p.graph.d);
  EXPECT_THROW(io::params_from_json(io::json::parse(R"({"legs": [2, 2, 2], "gamma": [[0,0],[0,0],[0,0]]})")), Error);
  EXPECT_THROW(io::params_from_json(io::json::parse(R"({"legs": [2, 2, 2, 2]})")), Error);
}

TEST(Io, SolutionRoundTrip) {
  auto sol = gdaha::testing::solve_rank_one(gdaha::testing::d4_params());
  auto back = io::ds_from_json(io::to_json(sol));
  ASSERT_EQ(back.matrices.size(), sol.matrices.size());
  for (std::size_t k = 0; k < sol.matrices.size(); ++k) {
    EXPECT_EQ(back.matrices[k], sol.matrices[k]);
    EXPECT_EQ(back.specs[k].entries, sol.specs[k].entries);
  }
  EXPECT_EQ(back.seed, sol.seed);
  EXPECT_EQ(back.tangent_dim, sol.tangent_dim);
}

TEST(Io, ExactRepRoundTrip) {
  auto rep = degenerate_regular_rep(2, {q(1, 5), q(-2, 7)}, q(1, 3));
  auto back = io::rep_from_json(io::to_json(rep), rep.presentation);
  ASSERT_TRUE(back.is_exact());
  for (const auto& label : rep.presentation->generators()) EXPECT_EQ(back.exact_at(label), rep.exact_at(label));
  auto j = io::to_json(rep);
  j["exact"].erase("Y[1]");
  EXPECT_THROW(io::rep_from_json(j, rep.presentation), Error);
}

TEST(Io, GeometryRoundTrip) {
  auto g = make_geometry({0.0, Complex(1.0, 0.5), 2.0}, {3.0, 4.0}, 0.2);
  auto back = io::geometry_from_json(io::to_json(g));
  EXPECT_EQ(back.alpha, g.alpha);
  EXPECT_EQ(back.base, g.base);
  EXPECT_EQ(back.delta, g.delta);
}

TEST(Io, CsvHeaders) {
  std::ostringstream spectra;
  CMatrix m = CMatrix::Identity(2, 2);
  io::write_spectra_csv(spectra, {m, -m});
  std::istringstream lines(spectra.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "matrix,index,re,im");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) rows += !line.empty();
  EXPECT_EQ(rows, 4);

  FlowTrajectory traj;
  FlowSample s;
  s.kappa = 0.5;
  s.invariants = {1.0, 2.0};
  traj.target = s.invariants;
  traj.samples.push_back(s);
  std::ostringstream flow;
  io::write_trajectory_csv(flow, traj);
  EXPECT_EQ(flow.str().substr(0, flow.str().find('\n')), "kappa_re,kappa_im,residual,drift,inv_0_re,inv_0_im,inv_1_re,inv_1_im");
}
