#pragma once

// From representations to Deligne-Simpson tuples (the maps Phi), the
// Riemann-Hilbert map on additive tuples, comparison up to conjugacy, and the
// isomonodromic flow in the cross-ratio of four punctures.

#include <optional>
#include <string>
#include <vector>

#include "gdaha/ds_solver.hpp"
#include "gdaha/monodromy.hpp"

namespace gdaha {

struct PhiResult {
  std::vector<CMatrix> tuple;
  Subspace v_prime;
  /// ||sum x_k|| or ||prod X_k - Id||.
  double closure_residual = 0.0;
  /// Largest spectrum_match deviation against the prescribed classes.
  double spec_deviation = 0.0;
};

/// x_k = Y_{n,k}|V' (k < m), x_m = (Y_{n,m} - nu sum_{j<n} s_nj)|V' with V' the trivial
/// isotypic part of B_{n-1,l}(gamma_m, nu). Throws WrongIsotypicDimension, and
/// SpecMismatch when the tuple misses the additive classes by more than tol.
PhiResult phi_degenerate(const MatrixRep& bn_rep, const RationalParams& params, int n, double tol);

/// U~_i = T_{n-1}...T_1 U_i T_1^-1...T_{n-1}^-1 (i < m), U~_m = T_{n-1}...T_1 U_m T_1...T_{n-1}
/// restricted to V' = {T_i v = t v (i <= n-2), U_m v = u_{ml} v}.
PhiResult phi_nondegenerate(const MatrixRep& hn_rep, const StarGraph& graph, int n, const UTable& u, Complex t,
                            double tol);
PhiResult phi_nondegenerate(const MonodromyData& mon, double tol);

struct RHResult {
  std::vector<CMatrix> tuple;
  double product_residual = 0.0;
  /// Deviation of spec(X_k) from exp(2 pi i spec(x_k)).
  double spec_deviation = 0.0;
  double error_estimate = 0.0;
};

/// Monodromy of dF/dz = sum_k x_k/(z - alpha_k) F around the U_k loops of a
/// one-point geometry. Throws SumNotZero, SpecMismatch.
RHResult rh_map(const std::vector<CMatrix>& x, const LoopGeometry& geometry, double tol);

/// Traces of all words of length 1..max_length, shortest first, then lexicographic.
std::vector<Complex> conjugation_invariants(const std::vector<CMatrix>& tuple, int max_length);

struct ConjugacyMatch {
  /// sigma_min / sigma_max of g -> (g A_k - B_k g)_k.
  double residual = 0.0;
  std::optional<CMatrix> conjugator;
};
ConjugacyMatch match_up_to_conjugacy(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b, double tol);

/// Punctures (0, kappa', 1, A) whose cross-ratio
/// (a2 - a1)(a4 - a3) / ((a3 - a1)(a4 - a2)) equals kappa.
std::vector<Complex> kappa_punctures(Complex kappa, double a);
LoopGeometry kappa_geometry(Complex kappa, double a);

struct FlowOptions {
  /// Target for the invariant mismatch of each accepted sample.
  double tolerance = 1e-9;
  double transport_tolerance = 1e-11;
  /// Words whose traces the corrector holds fixed.
  int word_length = 2;
  /// Longer words used only to measure the drift of the accepted samples.
  int check_word_length = 4;
  /// Position of the fourth puncture.
  double surrogate = 10.0;
  int max_halvings = 6;
  int max_iterations = 30;
  /// Largest allowed distance between consecutive path samples.
  double max_path_step = 0.25;
};

struct FlowSample {
  Complex kappa;
  std::vector<CMatrix> x;
  /// Traces of words up to check_word_length.
  std::vector<Complex> invariants;
  /// ||prod X_k - Id|| of RH at this sample.
  double residual = 0.0;
  /// max |invariants - target|.
  double drift = 0.0;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  std::vector<Complex> target;
  double surrogate = 0.0;
  std::string normalization = "alpha = (0, kappa', 1, A), cross-ratio (a2-a1)(a4-a3)/((a3-a1)(a4-a2)) = kappa";
  double max_drift = 0.0;
  int halvings = 0;
};

/// Isomonodromic deformation of a D4 additive tuple: for each kappa on the path,
/// Gauss-Newton over x_k = g_k L_k g_k^-1 (g_1 fixed) drives the traces of words up
/// to word_length in RH back to their value at kappa_0, warm-started, halving steps
/// on failure. The drift of each sample is measured on words up to check_word_length.
/// Throws ContinuationStall (carrying the partial trajectory in `partial`),
/// PathTooCoarse, BadOrdering.
FlowTrajectory painleve_flow(const std::vector<CMatrix>& x0, Complex kappa0, const std::vector<Complex>& kappa_path,
                             const FlowOptions& options = {}, FlowTrajectory* partial = nullptr);

}  // namespace gdaha
