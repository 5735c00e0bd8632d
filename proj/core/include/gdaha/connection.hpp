#pragma once

// Flat connections sum_i A_i(z) dz_i with values in End(fiber): the KZ system of a
// B_n-module, Cherednik's system for a B_{n,l}-module, and single-variable Fuchsian
// systems.

#include <cstdint>
#include <vector>

#include "gdaha/linalg.hpp"
#include "gdaha/presentation.hpp"

namespace gdaha {

enum class ConnectionKind { KZ, Cherednik, Fuchsian };

class Connection {
 public:
  /// residues[i][k] multiplies 1/(z_i - alpha_k); swaps[i][j] is s_ij (empty for n = 1).
  Connection(ConnectionKind kind, std::vector<Complex> alpha, std::vector<std::vector<CMatrix>> residues,
             std::vector<std::vector<CMatrix>> swaps, Complex nu);

  ConnectionKind kind() const { return kind_; }
  int n() const { return n_; }
  Eigen::Index dim() const { return dim_; }
  const std::vector<Complex>& alpha() const { return alpha_; }
  Complex nu() const { return nu_; }
  /// Fiber action of the transposition (i j), 0-based.
  const CMatrix& swap(int i, int j) const { return swaps_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  CMatrix a(int i, const std::vector<Complex>& z) const;
  /// sum_i A_i(z) zdot_i, written into out.
  void evaluate(const std::vector<Complex>& z, const std::vector<Complex>& zdot, CMatrix& out) const;
  /// d_i A_j - d_j A_i + [A_i, A_j].
  CMatrix curvature(int i, int j, const std::vector<Complex>& z) const;

 private:
  ConnectionKind kind_;
  int n_;
  Eigen::Index dim_;
  std::vector<Complex> alpha_;
  std::vector<std::vector<CMatrix>> residues_;
  std::vector<std::vector<CMatrix>> swaps_;
  Complex nu_;
};

/// A_i = sum_k Y_{i,k}/(z_i - alpha_k) - sum_{p != i} nu s_ip/(z_i - z_p). The module
/// must satisfy its relations within tol (RelationResidualTooLarge).
Connection kz_connection(const MatrixRep& rep, const std::vector<Complex>& alpha, double tol = 1e-8);
/// A_i = Y_i/z_i - sum_{p != i} nu s_ip/(z_i - z_p), single puncture at 0.
Connection cherednik_connection(const MatrixRep& rep, double tol = 1e-8);
/// A(z) = sum_k x_k/(z - alpha_k); throws SumNotZero.
Connection fuchsian_connection(const std::vector<CMatrix>& x, const std::vector<Complex>& alpha, double tol = 1e-8);

/// Largest curvature norm over `points` random configurations kept at distance
/// >= min_separation from the singular locus.
double curvature_residual(const Connection& conn, int points, std::uint64_t seed, double min_separation = 0.2);

}  // namespace gdaha
