#pragma once

// Parallel transport along configuration-space loops and the monodromy functor
// from B_n-modules to H_n-modules.

#include <optional>
#include <string>

#include "gdaha/connection.hpp"
#include "gdaha/params.hpp"
#include "gdaha/paths.hpp"
#include "gdaha/presentation.hpp"

namespace gdaha {

struct TransportResult {
  CMatrix matrix;
  /// Relative difference between the runs at tol and tol/10.
  double error_estimate = 0.0;
  long steps = 0;
};

/// Solves dF/ds = (sum_i A_i(z(s)) z_i'(s)) F, F(0) = Id, segment by segment with an
/// adaptive Runge-Kutta-Fehlberg 7(8) pair, then repeats at tol/10 and compares.
/// Throws StepUnderflow, ToleranceNotMet.
TransportResult parallel_transport(const Connection& conn, const PathInConfig& path, double tol, bool certify = true);
/// Same integrator at a fixed number of steps per segment (order checks).
CMatrix transport_fixed_step(const Connection& conn, const PathInConfig& path, int steps_per_segment);

/// Monodromy operator of a loop in the unordered configuration space: the transport
/// followed by the fiber action of the end permutation (identity or one adjacent swap).
TransportResult loop_monodromy(const Connection& conn, const PathInConfig& path, double tol);

struct MonodromyData {
  /// "kz" (generators U[k], T[i] of H_n) or "cherednik" (U, T[i] of H_{n,l}).
  std::string kind;
  MatrixRep rep;
  LoopGeometry geometry;
  StarGraph graph;
  UTable u;
  Complex t{1.0, 0.0};
  double tolerance = 0.0;
  double error_estimate = 0.0;
  ResidualReport relations;
};

/// F(M) for a B_n-module M, with u = exp(2 pi i gamma) and t = exp(-pi i nu).
MonodromyData monodromy_functor(const MatrixRep& bn_rep, const RationalParams& params, int n,
                                const LoopGeometry& geometry, double tol);
/// Monodromy of Cherednik's system on a B_{n,l}-module; v_j = exp(2 pi i lambda_j).
/// The geometry must have the single puncture 0.
MonodromyData cherednik_monodromy(const MatrixRep& rep, const std::vector<QComplex>& lambda, const QComplex& nu,
                                  const LoopGeometry& geometry, double tol);

/// Residuals of every defining relation of H_n (or H_{n,l}) on the monodromy matrices.
ResidualReport hn_relation_check(const MonodromyData& mon);

/// Spectral checks on Cherednik monodromy data with v = (v_1..v_l):
/// X = T_{n-1}...T_1 U T_1...T_{n-1} on V' = {T_i v = t v (i <= n-2), U v = v_l v}
/// against {v_l t^{2(n-1)}, v_l t^-2 (n-1 times), v_j (n times, j < l)}, and X = v_k
/// on V'_k = pi T_{n-1}^-1...T_1^-1 P_k(U) V (k < l), pi the projection onto V' along
/// the nontrivial isotypic parts of H_{n-1,l}.
struct CherednikSpectra {
  Subspace v_prime;
  std::vector<Complex> x_eigenvalues;
  std::vector<Complex> x_expected;
  double x_deviation = 0.0;
  /// max_k ||X E_k - v_k E_k|| / max(1, ||X||) over orthonormal bases E_k of V'_k.
  double eigenspace_residual = 0.0;
  std::vector<int> eigenspace_dims;
};
/// Throws WrongIsotypicDimension when dim V' != n l.
CherednikSpectra cherednik_spectral_check(const MonodromyData& mon, double tol);

struct SahiCheck {
  SahiNormalization normalization;
  MatrixRep rep;
  ResidualReport relations;
};

/// Builds T_0 = q^-1 U_1, T_0^vee = U_2, T_n^vee = S^-1 U_3 S, T_n = S^-1 U_4 S
/// (S = T_1...T_{n-1}), X_1 = q T_0 T_0^vee, X_{i+1} = T_i X_i T_i from D4 monodromy
/// after rescaling U_k by the normalizing factors w_k. Throws NotD4.
SahiCheck sahi_relation_check(const MonodromyData& mon, std::optional<Complex> q_hint = Complex{1.0, 0.0});

}  // namespace gdaha
