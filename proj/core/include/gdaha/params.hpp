#pragma once

// Star-shaped diagrams and the rational (gamma, nu) / multiplicative (u, t)
// parameter packs attached to them.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "gdaha/exact.hpp"

namespace gdaha {

/// A tree with one m-valent node and m legs; leg k has d[k] vertices counting the node.
///
/// Legs are stored sorted by length so that the last leg is a longest one
/// (ell() == d.back()). `input_order[k]` is the caller's index of stored leg k.
struct StarGraph {
  std::vector<int> d;
  std::vector<int> input_order;
  bool affine = false;

  int m() const { return static_cast<int>(d.size()); }
  int ell() const { return d.back(); }
  int vertex_count() const;

  static std::string node_label() { return "i0"; }
  /// Vertex i_j(k) of leg k (1-based), j = 1..d_k-1 counted from the node.
  std::string vertex_label(int leg, int j) const;

  /// Reorders a per-leg table given in the caller's leg order into stored order.
  template <class T>
  std::vector<T> to_stored_order(const std::vector<T>& per_input_leg) const {
    std::vector<T> out;
    out.reserve(per_input_leg.size());
    for (int k : input_order) out.push_back(per_input_leg.at(static_cast<std::size_t>(k)));
    return out;
  }

  bool is_d4() const { return d == std::vector<int>{2, 2, 2, 2}; }
};

/// Validates the leg list and classifies it; throws FiniteDynkin for
/// star-shaped finite Dynkin shapes (sum 1/d_k > m - 2), m < 3, or d_k < 2.
StarGraph build_star_graph(std::vector<int> d);

/// gamma[k][j] = gamma_{k+1, j+1}; rows have length d_k.
using GammaTable = std::vector<std::vector<QComplex>>;
using UTable = std::vector<std::vector<Complex>>;

struct MuXi {
  QComplex mu_node;
  /// mu_leg[k][p] = mu at vertex i_{p+1}(k+1), p = 0..d_k-2.
  std::vector<std::vector<QComplex>> mu_leg;
  std::vector<QComplex> xi;
};

struct RationalParams {
  StarGraph graph;
  GammaTable gamma;
  QComplex nu;
  MuXi muxi;

  /// Eigenvalues of the m-th leg, addressed as lambda_j in the cyclotomic subalgebra.
  const std::vector<QComplex>& lambda() const { return gamma.back(); }
  std::vector<std::vector<Complex>> gamma_values() const;
  Complex nu_value() const { return nu.to_complex(); }
};

/// Solves gamma_{kj} = sum_{p<j} mu_{i_p(k)} + mu_{i0}/m + xi_k with sum xi = 0.
RationalParams gamma_to_mu_xi(const StarGraph& graph, GammaTable gamma, QComplex nu);
GammaTable mu_xi_to_gamma(const StarGraph& graph, const MuXi& muxi);

/// hbar = ell * sum_{k,j} gamma_{kj} / d_k; affine graphs only.
QComplex hbar_of(const RationalParams& params);

struct MultiplicativeParams {
  StarGraph graph;
  UTable u;
  Complex t{1.0, 0.0};
  Complex q{1.0, 0.0};
  /// Exact exponents when built from rational parameters.
  std::optional<GammaTable> gamma;
  std::optional<QComplex> nu;

  const std::vector<Complex>& v() const { return u.back(); }
};

/// exp(2 pi i z), reducing the real part of z modulo 1 exactly first.
Complex exp_2pi_i(const QComplex& z);

/// u = exp(2 pi i gamma), t = exp(-pi i nu), q = exp(-2 pi i hbar) (q = 1 off the affine case).
MultiplicativeParams exponentiate_params(const RationalParams& params);

/// q(u) = prod_{k,j} u_{kj}^(-ell/d_k), computed from the u table itself.
Complex q_from_u(const StarGraph& graph, const UTable& u);

/// Builds multiplicative parameters directly from (u, t); q from q_from_u.
MultiplicativeParams make_multiplicative(const StarGraph& graph, UTable u, Complex t);

struct SahiParams {
  Complex t0, tn, u0, un, q;
};

/// The 4x2 table u_{11} = q t0, u_{12} = -q/t0, u_{21} = u0, u_{22} = -1/u0,
/// u_{31} = un, u_{32} = -1/un, u_{41} = tn, u_{42} = -1/tn.
UTable sahi_parameters(const SahiParams& p);

/// Rescalings w_k (prod w_k = 1) such that (w_k u_{kj}) has the Sahi shape, plus the
/// recovered Sahi parameters. `q_hint` fixes the sign of q when supplied.
struct SahiNormalization {
  std::array<Complex, 4> w;
  SahiParams params;
};
SahiNormalization sahi_normalize(const UTable& u, std::optional<Complex> q_hint = std::nullopt);

}  // namespace gdaha
