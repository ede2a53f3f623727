#pragma once

// Brute-force references used by the tests. They are deliberately slow and
// share no code with the library beyond the grid bookkeeping.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "supcon/funcspace.hpp"

namespace oracle {

using supcon::GridSpec;
using supcon::SampledFunction;

inline std::vector<std::vector<double>> node_coords(const GridSpec& g) {
  std::vector<std::vector<double>> x(g.point_count());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto idx = g.multi_index(k);
    for (int i : idx) x[k].push_back(g.coordinate(i));
  }
  return x;
}

// Solves the (d+1) x (d+1) system of the affine function through d+1 lifted
// points; false when the points are affinely dependent.
inline bool affine_through(const std::vector<std::vector<double>>& x, const std::vector<double>& v,
                           const std::vector<std::size_t>& pick, std::vector<double>& coef) {
  const std::size_t d = x[0].size(), m = d + 1;
  std::vector<std::vector<double>> A(m, std::vector<double>(m + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < d; ++c) A[r][c] = x[pick[r]][c];
    A[r][d] = 1.0;
    A[r][m] = v[pick[r]];
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    if (std::abs(A[piv][c]) < 1e-12) return false;
    std::swap(A[c], A[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c) continue;
      const double f = A[r][c] / A[c][c];
      for (std::size_t k = c; k <= m; ++k) A[r][k] -= f * A[c][k];
    }
  }
  coef.assign(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) coef[r] = A[r][m] / A[r][r];
  return true;
}

// Convex envelope at the nodes as the maximum over all supporting
// hyperplanes through d+1 lifted nodes that stay below every node.
inline std::vector<double> convex_envelope_by_facets(const SampledFunction& f) {
  const auto x = node_coords(f.grid());
  const auto& v = f.values();
  const std::size_t n = v.size(), d = x[0].size();
  std::vector<double> env(n, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> pick(d + 1);
  std::vector<double> coef;
  const double scale = 1.0 + *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == d + 1) {
      if (!affine_through(x, v, pick, coef)) return;
      auto plane = [&](std::size_t k) {
        double s = coef[d];
        for (std::size_t c = 0; c < d; ++c) s += coef[c] * x[k][c];
        return s;
      };
      for (std::size_t k = 0; k < n; ++k)
        if (plane(k) > v[k] + 1e-12 * scale) return;
      for (std::size_t k = 0; k < n; ++k) env[k] = std::max(env[k], std::min(plane(k), v[k]));
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return env;
}

// 1D: min over all chords (i, k) spanning j of the interpolated value.
inline std::vector<double> lower_hull_by_chords(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> env(v);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      for (std::size_t k = j + 1; k < n; ++k) {
        const double t = static_cast<double>(j - i) / static_cast<double>(k - i);
        env[j] = std::min(env[j], (1.0 - t) * v[i] + t * v[k]);
      }
  return env;
}

// Is p in the convex hull of pts (d <= 2)? Brute force over segments and
// triangles.
inline bool in_hull_small(const std::vector<std::vector<double>>& pts, const std::vector<double>& p) {
  const double eps = 1e-12;
  const std::size_t d = p.size();
  for (const auto& q : pts) {
    double s = 0.0;
    for (std::size_t c = 0; c < d; ++c) s += std::abs(q[c] - p[c]);
    if (s <= eps) return true;
  }
  if (d == 1) {
    bool lo = false, hi = false;
    for (const auto& q : pts) lo = lo || q[0] <= p[0] + eps, hi = hi || q[0] >= p[0] - eps;
    return lo && hi;
  }
  auto cross = [](const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto &a = pts[i], &b = pts[j];
      const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
      if (std::abs(cross(a, b, p)) <= eps * (1.0 + len)) {
        const double t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) / (len * len);
        if (t >= -eps && t <= 1.0 + eps) return true;
      }
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const auto& c = pts[k];
        const double d1 = cross(a, b, p), d2 = cross(b, c, p), d3 = cross(c, a, p);
        const bool neg = d1 < -eps || d2 < -eps || d3 < -eps;
        const bool pos = d1 > eps || d2 > eps || d3 > eps;
        if (!(neg && pos) && std::abs(cross(a, b, c)) > eps) return true;
      }
    }
  return false;
}

// Level-convex lsc envelope (plus-infinity mode, d <= 2): the least sampled
// level whose sublevel hull holds the node.
inline std::vector<double> lslc_by_levels(const SampledFunction& f) {
  const auto x = node_coords(f.grid());
  std::vector<double> levels = f.values();
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (double t : levels) {
      std::vector<std::vector<double>> sub;
      for (std::size_t j = 0; j < x.size(); ++j)
        if (f.value(j) <= t) sub.push_back(x[j]);
      if (in_hull_small(sub, x[k])) {
        out[k] = t;
        break;
      }
    }
  }
  return out;
}

inline std::vector<double> pasch_hausdorff_direct(const SampledFunction& f, double lambda) {
  const auto x = node_coords(f.grid());
  const double m = std::min(0.0, *std::min_element(f.values().begin(), f.values().end()));
  std::vector<double> out(x.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < x[i].size(); ++c) s += (x[i][c] - x[j][c]) * (x[i][c] - x[j][c]);
      out[i] = std::min(out[i], std::max(f.value(j) - m, lambda * std::sqrt(s)));
    }
    out[i] += m;
  }
  return out;
}

// ((clamp^p)**)^{1/p} on [-R, R] with the plus-infinity extension: zero on
// [-R, 0], then t^p up to the tangency point t0 of the line through (R, 1),
// then that line.
inline double clamp_power_envelope(double t, double p, double R) {
  if (t <= 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (lo + hi);
    const double g = p * std::pow(m, p - 1.0) * (R - m) - (1.0 - std::pow(m, p));
    (g < 0.0 ? lo : hi) = m;
  }
  const double t0 = 0.5 * (lo + hi);
  double e;
  if (t <= t0) e = std::pow(t, p);
  else e = std::pow(t0, p) + (t - t0) * (1.0 - std::pow(t0, p)) / (R - t0);
  return std::pow(e, 1.0 / p);
}

inline SampledFunction random_function(const GridSpec& g, std::mt19937_64& rng, supcon::OutsideMode mode,
                                       double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  std::vector<double> v(g.point_count());
  for (double& x : v) x = U(rng);
  return SampledFunction(g, std::move(v), mode);
}

}  // namespace oracle
