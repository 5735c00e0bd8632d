#pragma once

// Loops in the configuration space of n points in C minus the punctures alpha_k,
// built from line segments and circular arcs.

#include <string>
#include <vector>

#include "gdaha/linalg.hpp"

namespace gdaha {

/// Motion of one coordinate over a segment, parametrized by s in [0, 1].
struct Motion {
  enum class Kind { Fixed, Line, Arc };
  Kind kind = Kind::Fixed;
  Complex a{}, b{};
  Complex center{};
  double radius = 0.0, theta0 = 0.0, theta1 = 0.0;

  static Motion fixed(Complex z) { return {Kind::Fixed, z, z, {}, 0.0, 0.0, 0.0}; }
  static Motion line(Complex from, Complex to) { return {Kind::Line, from, to, {}, 0.0, 0.0, 0.0}; }
  static Motion arc(Complex center, double radius, double theta0, double theta1) {
    return {Kind::Arc, {}, {}, center, radius, theta0, theta1};
  }

  Complex at(double s) const;
  Complex velocity(double s) const;
  Motion reversed() const;
};

struct PathSegment {
  std::vector<Motion> coords;
};

struct PathInConfig {
  int n = 0;
  std::vector<PathSegment> segments;
  std::vector<Complex> base;
  /// The path ends at z_j = base[end_perm[j]].
  std::vector<int> end_perm;
  double r_min = 0.0;
  std::string label;

  std::vector<Complex> point(std::size_t segment, double s) const;
  std::vector<Complex> velocity(std::size_t segment, double s) const;
  bool closed() const;
};

/// Punctures, base point and detour scale shared by all loops of one computation.
struct LoopGeometry {
  std::vector<Complex> alpha;
  std::vector<Complex> base;
  double delta = 0.0;
};

/// Checks Re alpha_1 < ... < Re alpha_m < z_01 < ... < z_0n (base real) and picks
/// delta = min gap / 4 unless given. Throws BadOrdering, DeltaTooLarge.
LoopGeometry make_geometry(std::vector<Complex> alpha, std::vector<Complex> base, double delta = 0.0);
/// alpha = (0, 1, ..., m-1), z_0j = m + j.
LoopGeometry default_geometry(int m, int n, double delta = 0.0);

struct BraidGenerator {
  enum class Kind { U, T };
  Kind kind = Kind::U;
  int index = 1;  // 1-based
};

/// U_k: z_1 drops below the axis, runs left under alpha_{k+1..m}, circles alpha_k
/// once counterclockwise and retraces. For a non-real alpha_k it rises vertically
/// from the common depth to just below alpha_k. T_i: z_i, z_{i+1} swap by a
/// counterclockwise half-turn about their midpoint.
PathInConfig braid_loop(const LoopGeometry& geometry, BraidGenerator generator);

/// First traverse `first`, then `second` (loop product second * first).
PathInConfig compose(const PathInConfig& second, const PathInConfig& first);
PathInConfig reversed(const PathInConfig& path);

/// Smallest sampled distance from the path to {z_i = alpha_k} and {z_i = z_j}.
double min_distance(const PathInConfig& path, const std::vector<Complex>& alpha, int samples_per_segment = 64);
/// Winding number of coordinate `coord` around `point`, by argument accumulation.
/// Only meaningful for a coordinate that returns to its start.
double winding_number(const PathInConfig& path, int coord, Complex point, int samples_per_segment = 256);

}  // namespace gdaha
