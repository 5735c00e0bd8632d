#pragma once

// Floating-point linear algebra helpers shared by every module: rank decisions,
// null spaces, and eigenvalue-multiset matching against prescribed classes.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gdaha/exact.hpp"

namespace gdaha {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Relative singular-value cut used for every numerical rank decision.
inline constexpr double kRankRelativeCut = 1e-7;

double spectral_norm(const CMatrix& m);

/// Numerical rank with the cut at rel_cut * sigma_max; `ambiguous` is set when a
/// singular value lies within a factor 10 of the cut.
struct RankDecision {
  int rank = 0;
  bool ambiguous = false;
  double cut = 0.0;
  std::vector<double> singular_values;
};
RankDecision numerical_rank(const CMatrix& m, double rel_cut = kRankRelativeCut);

/// Orthonormal basis of {v : A v ~ 0}: right singular vectors whose singular
/// value is at most tol * max(1, sigma_max).
CMatrix orthonormal_null_space(const CMatrix& a, double tol);

/// ad(x): vec(P) -> vec(P x - x P) in column-major vec convention.
CMatrix adjoint_action(const CMatrix& x);

CMatrix to_cmatrix(const QMatrix& q);
CMatrix kron(const CMatrix& a, const CMatrix& b);
/// The n x n matrix with zero diagonal and ones elsewhere.
CMatrix t_matrix(int n);
CMatrix permutation_matrix(const std::vector<int>& images);

std::vector<Complex> eigenvalues(const CMatrix& m);

/// Semisimple conjugacy class given by eigenvalues with multiplicities.
struct ConjugacyClassSpec {
  std::vector<std::pair<Complex, int>> entries;

  int size() const;
  /// Eigenvalue list with multiplicities expanded, in entry order.
  std::vector<Complex> expanded() const;
  Complex trace() const;
  Complex determinant() const;
  CMatrix diagonal() const;
};

struct SpectrumMatch {
  bool matches = false;
  /// Smallest achievable maximum |eigenvalue - target| over multiplicity-respecting
  /// assignments.
  double deviation = 0.0;
};

/// Throws SizeMismatch when the spec's total multiplicity differs from the size of m.
SpectrumMatch spectrum_match(const CMatrix& m, const ConjugacyClassSpec& spec, double tol);
/// Same matching applied to an already computed eigenvalue list.
double bottleneck_matching(const std::vector<Complex>& values, const std::vector<Complex>& targets);

}  // namespace gdaha
