#include "gdaha/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gdaha/error.hpp"

namespace gdaha {

namespace {
constexpr double kPi = std::numbers::pi;
}

Complex Motion::at(double s) const {
  switch (kind) {
    case Kind::Fixed:
      return a;
    case Kind::Line:
      return a + s * (b - a);
    case Kind::Arc:
      return center + radius * std::polar(1.0, theta0 + s * (theta1 - theta0));
  }
  return a;
}

Complex Motion::velocity(double s) const {
  switch (kind) {
    case Kind::Fixed:
      return {};
    case Kind::Line:
      return b - a;
    case Kind::Arc: {
      const double w = theta1 - theta0;
      return Complex(0.0, w) * radius * std::polar(1.0, theta0 + s * w);
    }
  }
  return {};
}

Motion Motion::reversed() const {
  Motion m = *this;
  std::swap(m.a, m.b);
  std::swap(m.theta0, m.theta1);
  return m;
}

std::vector<Complex> PathInConfig::point(std::size_t segment, double s) const {
  std::vector<Complex> z;
  for (const auto& c : segments[segment].coords) z.push_back(c.at(s));
  return z;
}

std::vector<Complex> PathInConfig::velocity(std::size_t segment, double s) const {
  std::vector<Complex> v;
  for (const auto& c : segments[segment].coords) v.push_back(c.velocity(s));
  return v;
}

bool PathInConfig::closed() const {
  for (int j = 0; j < n; ++j)
    if (end_perm[static_cast<std::size_t>(j)] != j) return false;
  return true;
}

LoopGeometry make_geometry(std::vector<Complex> alpha, std::vector<Complex> base, double delta) {
  if (alpha.empty() || base.empty()) throw Error(ErrorKind::BadOrdering, "need at least one puncture and one point");
  std::vector<double> line;
  for (const auto& a : alpha) line.push_back(a.real());
  for (const auto& z : base) {
    if (z.imag() != 0.0) throw Error(ErrorKind::BadOrdering, "base points must be real");
    line.push_back(z.real());
  }
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < line.size(); ++i) {
    if (!(line[i] > line[i - 1]))
      throw Error(ErrorKind::BadOrdering, "need Re alpha_1 < ... < Re alpha_m < z_01 < ... < z_0n");
    gap = std::min(gap, line[i] - line[i - 1]);
  }
  if (delta == 0.0) delta = gap / 4.0;
  if (!(delta > 0.0) || delta >= gap / 3.0)
    throw Error(ErrorKind::DeltaTooLarge, "delta must lie in (0, " + std::to_string(gap / 3.0) + ")");
  return {std::move(alpha), std::move(base), delta};
}

LoopGeometry default_geometry(int m, int n, double delta) {
  std::vector<Complex> alpha, base;
  for (int k = 0; k < m; ++k) alpha.emplace_back(k, 0.0);
  for (int j = 1; j <= n; ++j) base.emplace_back(m + j, 0.0);
  return make_geometry(std::move(alpha), std::move(base), delta);
}

namespace {

PathInConfig empty_path(const LoopGeometry& g) {
  PathInConfig p;
  p.n = static_cast<int>(g.base.size());
  p.base = g.base;
  p.end_perm.resize(g.base.size());
  for (int j = 0; j < p.n; ++j) p.end_perm[static_cast<std::size_t>(j)] = j;
  p.r_min = g.delta / 2.0;
  return p;
}

// Segment where only coordinate `coord` moves.
PathSegment single(const std::vector<Complex>& at, int coord, const Motion& m) {
  PathSegment seg;
  for (std::size_t j = 0; j < at.size(); ++j) seg.coords.push_back(static_cast<int>(j) == coord ? m : Motion::fixed(at[j]));
  return seg;
}

}  // namespace

PathInConfig braid_loop(const LoopGeometry& g, BraidGenerator gen) {
  PathInConfig p = empty_path(g);
  const int m = static_cast<int>(g.alpha.size());
  if (gen.kind == BraidGenerator::Kind::U) {
    if (gen.index < 1 || gen.index > m) throw Error(ErrorKind::ShapeMismatch, "no puncture " + std::to_string(gen.index));
    const Complex a = g.alpha[static_cast<std::size_t>(gen.index - 1)];
    const double d = g.delta;
    double depth = d;
    for (const auto& x : g.alpha) depth = std::max(depth, d - x.imag());
    const Complex start = g.base.front();
    const Complex low_right = start - Complex(0.0, depth);
    const Complex low_left(a.real(), -depth);
    const Complex below = a - Complex(0.0, d);
    std::vector<PathSegment> out;
    out.push_back(single(g.base, 0, Motion::line(start, low_right)));
    out.push_back(single(g.base, 0, Motion::line(low_right, low_left)));
    if (std::abs(below - low_left) > 0.0) out.push_back(single(g.base, 0, Motion::line(low_left, below)));
    const std::size_t approach = out.size();
    out.push_back(single(g.base, 0, Motion::arc(a, d, -kPi / 2.0, 3.0 * kPi / 2.0)));
    for (std::size_t i = approach; i-- > 0;) {
      PathSegment back = out[i];
      back.coords[0] = back.coords[0].reversed();
      out.push_back(back);
    }
    p.segments = std::move(out);
    p.label = "U[" + std::to_string(gen.index) + "]";
    return p;
  }
  if (gen.index < 1 || gen.index >= p.n) throw Error(ErrorKind::ShapeMismatch, "no generator T[" + std::to_string(gen.index) + "]");
  const int i = gen.index - 1;
  const Complex left = g.base[static_cast<std::size_t>(i)], right = g.base[static_cast<std::size_t>(i + 1)];
  const Complex mid = (left + right) / 2.0;
  const double r = std::abs(right - left) / 2.0;
  for (int half = 0; half < 2; ++half) {
    PathSegment seg;
    for (int j = 0; j < p.n; ++j) {
      const double t0 = half * kPi / 2.0, t1 = (half + 1) * kPi / 2.0;
      if (j == i)
        seg.coords.push_back(Motion::arc(mid, r, kPi + t0, kPi + t1));
      else if (j == i + 1)
        seg.coords.push_back(Motion::arc(mid, r, t0, t1));
      else
        seg.coords.push_back(Motion::fixed(g.base[static_cast<std::size_t>(j)]));
    }
    p.segments.push_back(std::move(seg));
  }
  std::swap(p.end_perm[static_cast<std::size_t>(i)], p.end_perm[static_cast<std::size_t>(i + 1)]);
  p.label = "T[" + std::to_string(gen.index) + "]";
  return p;
}

PathInConfig compose(const PathInConfig& second, const PathInConfig& first) {
  if (first.n != second.n || first.base != second.base)
    throw Error(ErrorKind::ShapeMismatch, "paths live in different configuration spaces");
  PathInConfig out = first;
  // After `first`, coordinate j sits at base slot first.end_perm[j]; `second` is
  // written in terms of slots, so its motions are relabelled accordingly.
  for (const auto& seg : second.segments) {
    PathSegment relabelled;
    for (int j = 0; j < first.n; ++j)
      relabelled.coords.push_back(seg.coords[static_cast<std::size_t>(first.end_perm[static_cast<std::size_t>(j)])]);
    out.segments.push_back(std::move(relabelled));
  }
  for (int j = 0; j < first.n; ++j)
    out.end_perm[static_cast<std::size_t>(j)] = second.end_perm[static_cast<std::size_t>(first.end_perm[static_cast<std::size_t>(j)])];
  out.r_min = std::min(first.r_min, second.r_min);
  out.label = second.label + " " + first.label;
  return out;
}

PathInConfig reversed(const PathInConfig& path) {
  PathInConfig out = path;
  out.segments.clear();
  // Coordinate j starts at slot end_perm[j]; the reversed path is written per coordinate
  // so its starting slots follow the inverse permutation.
  std::vector<int> inverse(path.end_perm.size());
  for (std::size_t j = 0; j < inverse.size(); ++j) inverse[static_cast<std::size_t>(path.end_perm[j])] = static_cast<int>(j);
  for (auto it = path.segments.rbegin(); it != path.segments.rend(); ++it) {
    PathSegment seg;
    for (int slot = 0; slot < path.n; ++slot) seg.coords.push_back(it->coords[static_cast<std::size_t>(inverse[static_cast<std::size_t>(slot)])].reversed());
    out.segments.push_back(std::move(seg));
  }
  out.end_perm = inverse;
  out.label = "(" + path.label + ")^-1";
  return out;
}

double min_distance(const PathInConfig& path, const std::vector<Complex>& alpha, int samples) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < path.segments.size(); ++s)
    for (int k = 0; k <= samples; ++k) {
      const auto z = path.point(s, static_cast<double>(k) / samples);
      for (std::size_t i = 0; i < z.size(); ++i) {
        for (const auto& a : alpha) best = std::min(best, std::abs(z[i] - a));
        for (std::size_t j = i + 1; j < z.size(); ++j) best = std::min(best, std::abs(z[i] - z[j]));
      }
    }
  return best;
}

double winding_number(const PathInConfig& path, int coord, Complex point, int samples) {
  double total = 0.0;
  for (std::size_t s = 0; s < path.segments.size(); ++s) {
    Complex prev = path.segments[s].coords[static_cast<std::size_t>(coord)].at(0.0) - point;
    for (int k = 1; k <= samples; ++k) {
      const Complex cur = path.segments[s].coords[static_cast<std::size_t>(coord)].at(static_cast<double>(k) / samples) - point;
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return total / (2.0 * kPi);
}

}  // namespace gdaha
