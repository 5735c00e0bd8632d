#pragma once

// Additive and multiplicative Deligne-Simpson problems for the classes attached
// to a star-shaped diagram, their certification (dimension, irreducibility), and
// continuation of B_n-modules in nu.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdaha/linalg.hpp"
#include "gdaha/params.hpp"
#include "gdaha/presentation.hpp"

namespace gdaha {

enum class DSKind { Additive, Multiplicative };

struct DSSolution {
  DSKind kind = DSKind::Additive;
  std::vector<CMatrix> matrices;
  std::vector<ConjugacyClassSpec> specs;
  /// x_k = g_k Lambda_k g_k^{-1}.
  std::vector<CMatrix> conjugators;
  double residual = 0.0;
  std::optional<int> tangent_dim;
  std::optional<bool> irreducible;
  std::string gauge = "g_1 = Id";
  std::uint64_t seed = 0;
  int start = 0;
  int iterations = 0;
};

struct SolverOptions {
  std::uint64_t seed = 20240601;
  /// Target for ||sum x_k||_F or ||X_1...X_m - Id||_F.
  double tolerance = 1e-13;
  /// Allowed trace (or log-determinant) defect of the class data.
  double obstruction_tolerance = 1e-10;
  int max_iterations = 400;
  int starts = 12;
};

/// Merges exactly equal eigenvalues and drops zero multiplicities.
ConjugacyClassSpec make_spec(const std::vector<std::pair<Complex, int>>& entries);

std::vector<ConjugacyClassSpec> additive_class_specs(const RationalParams& params, int n, double tol = 1e-12);
std::vector<ConjugacyClassSpec> multiplicative_class_specs(const MultiplicativeParams& params, int n,
                                                           double tol = 1e-12);

DSSolution solve_additive_ds(const std::vector<ConjugacyClassSpec>& specs, const SolverOptions& options = {});
DSSolution solve_multiplicative_ds(const std::vector<ConjugacyClassSpec>& specs, const SolverOptions& options = {});

/// Residual of an arbitrary tuple: ||sum||_F or ||product - Id||_F.
double ds_residual(DSKind kind, const std::vector<CMatrix>& tuple);

/// sum_k rank(ad x_k) - rank(d mu) - (N^2 - 1). Throws RankAmbiguous.
int tangent_dimension(const DSSolution& sol, double tol);
/// True iff words of length <= max_length span all N x N matrices; default 2N.
bool irreducibility_check(const std::vector<CMatrix>& tuple, int max_length = -1);
/// Dimension of {P : [P, x_k] = 0 for all k}.
int joint_centralizer_dimension(const std::vector<CMatrix>& tuple);

/// Conjugates every matrix of a solution by g; specs and gauge label are kept.
DSSolution conjugate(const DSSolution& sol, const CMatrix& g);

/// Exact rank-one D4 additive solutions: x_1 = diag(a1,b1), x_2 upper triangular,
/// x_3 with (1,1) entry a3 + c and (2,1) entry f, x_4 = -(x_1+x_2+x_3). The fourth
/// leg's eigenvalues are the roots of z^2 + (A+B) z + AB - 1, which must be rational.
/// Different c give non-conjugate solutions for the same parameters.
struct ExactRankOne {
  GammaTable gamma;
  std::vector<QMatrix> x;
};
ExactRankOne exact_d4_rank_one(const std::vector<Rational>& ab, const Rational& c, const Rational& f);

struct ContinuationOptions {
  int steps = 10;
  int max_halvings = 6;
  int max_corrector_iterations = 25;
  double tolerance = 1e-12;
};

struct ContinuationReport {
  QComplex nu_reached;
  int steps_taken = 0;
  int corrector_iterations = 0;
  double residual = 0.0;
};

/// Homotopy nu: 0 -> nu_target over B_n(gamma, nu)-modules with the S_n matrices
/// frozen; unknowns are Y_{1,k}, with Y_{i,k} = s_1i Y_{1,k} s_1i.
MatrixRep continue_bn_representation(const RationalParams& params, int n, const QComplex& nu_target,
                                     const MatrixRep& seed, const ContinuationOptions& options = {},
                                     ContinuationReport* report = nullptr);

}  // namespace gdaha
