#pragma once

// Parameter packs and modules shared by the unit and acceptance tests.

#include <chrono>
#include <cmath>
#include <complex>
#include <vector>

#include "gdaha/algebras.hpp"
#include "gdaha/ds_solver.hpp"
#include "gdaha/rh_flow.hpp"

namespace gdaha::testing {

inline QComplex q(long a, long b = 1) { return QComplex(Rational(a, b)); }

/// Generic D4 eigenvalues with sum zero (so hbar = 0).
inline GammaTable d4_gamma() {
  return {{q(13, 100), q(-41, 100)}, {q(27, 100), q(5, 100)}, {q(-33, 100), q(19, 100)}, {q(21, 100), q(-11, 100)}};
}

inline GammaTable e6_gamma() {
  return {{q(11, 100), q(-29, 100), q(7, 100)}, {q(23, 100), q(-5, 100), q(-13, 100)}, {q(-17, 100), q(31, 100), q(-8, 100)}};
}

inline RationalParams d4_params(QComplex nu = q(1, 7)) {
  return gamma_to_mu_xi(build_star_graph({2, 2, 2, 2}), d4_gamma(), nu);
}

inline RationalParams e6_params(QComplex nu = q(1, 7)) {
  return gamma_to_mu_xi(build_star_graph({3, 3, 3}), e6_gamma(), nu);
}

/// B_1-module from an additive tuple.
inline MatrixRep rank_one_rep(const RationalParams& p, const std::vector<CMatrix>& x) {
  auto rep = make_rep(rational_gdaha_presentation(p.graph, 1, p.gamma, p.nu), x);
  rep.parameters["nu"] = p.nu_value();
  return rep;
}

inline DSSolution solve_rank_one(const RationalParams& p, std::uint64_t seed = 20240601) {
  SolverOptions o;
  o.seed = seed;
  return solve_additive_ds(additive_class_specs(p, 1), o);
}

/// Two exact rank-one D4 modules sharing one gamma table, for induced B_2-modules.
struct ExactPair {
  GammaTable gamma;
  std::vector<QMatrix> first, second;
};

inline ExactPair exact_d4_pair() {
  std::vector<Rational> ab{Rational(1, 3), Rational(-1, 5), Rational(2, 7), Rational(0), Rational(1, 11), Rational(0)};
  const Rational a = ab[0] + ab[2] + ab[4], b = ab[1] + ab[3];
  ab[5] = a - b - Rational(3, 2);
  auto m1 = exact_d4_rank_one(ab, Rational(0), Rational(1));
  auto m2 = exact_d4_rank_one(ab, Rational(1, 3), Rational(2));
  return {m1.gamma, m1.x, m2.x};
}

/// Upper half circle about 0.5 of radius 0.1, from kappa = 0.4 to 0.6 in `steps` samples.
inline std::vector<Complex> half_circle(int steps) {
  std::vector<Complex> out;
  for (int j = 1; j <= steps; ++j) out.push_back(0.5 + 0.1 * std::polar(1.0, M_PI - M_PI * j / steps));
  return out;
}

inline CMatrix block_diagonal(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace gdaha::testing
