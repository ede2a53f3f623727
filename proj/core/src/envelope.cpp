#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "envelope_kernels.hpp"
#include "simplex.hpp"
#include "supcon/envelope.hpp"
#include "supcon/error.hpp"
#include "supcon/parallel.hpp"

namespace supcon {

namespace {

double global_min(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

// ---- exact planar hull on integer index coordinates ----

struct P2 {
  long long x, y;
};

long long cross(const P2& o, const P2& a, const P2& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

std::vector<P2> hull_ccw(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const P2& a, const P2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<P2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

bool on_segment(const P2& a, const P2& b, const P2& p) {
  return cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool in_convex_polygon(const std::vector<P2>& h, const P2& p) {
  if (h.empty()) return false;
  if (h.size() == 1) return h[0].x == p.x && h[0].y == p.y;
  if (h.size() == 2) return on_segment(h[0], h[1], p);
  const std::size_t n = h.size();
  if (cross(h[0], h[1], p) < 0 || cross(h[0], h[n - 1], p) > 0) return false;
  std::size_t lo = 1, hi = n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (cross(h[0], h[mid], p) >= 0)
      lo = mid;
    else
      hi = mid;
  }
  return cross(h[lo], h[lo + 1], p) >= 0;
}

struct Levels {
  std::vector<double> value;          // distinct, ascending
  std::vector<std::size_t> rank;      // per node
  std::vector<std::size_t> by_value;  // nodes sorted by value
  std::vector<std::size_t> count;     // nodes with rank <= l
};

Levels make_levels(const std::vector<double>& v) {
  Levels L;
  L.by_value.resize(v.size());
  std::iota(L.by_value.begin(), L.by_value.end(), std::size_t{0});
  std::stable_sort(L.by_value.begin(), L.by_value.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  L.rank.resize(v.size());
  for (std::size_t i = 0; i < L.by_value.size(); ++i) {
    const double x = v[L.by_value[i]];
    if (L.value.empty() || x != L.value.back()) {
      if (!L.value.empty()) L.count.push_back(i);
      L.value.push_back(x);
    }
    L.rank[L.by_value[i]] = L.value.size() - 1;
  }
  L.count.push_back(v.size());
  return L;
}

std::vector<double> lslc_1d(const std::vector<double>& v) {
  const std::size_t m = v.size();
  std::vector<double> pre(m), suf(m), out(m);
  for (std::size_t k = 0; k < m; ++k) pre[k] = k ? std::min(pre[k - 1], v[k]) : v[k];
  for (std::size_t k = m; k-- > 0;) suf[k] = k + 1 < m ? std::min(suf[k + 1], v[k]) : v[k];
  for (std::size_t k = 0; k < m; ++k) out[k] = std::max(pre[k], suf[k]);
  return out;
}

std::vector<double> lslc_planar(const GridSpec& g, const std::vector<double>& v) {
  const Levels L = make_levels(v);
  std::vector<double> out(v.size());
  std::vector<std::size_t> open;
  for (std::size_t k = 0; k < v.size(); ++k) open.push_back(k);
  std::vector<P2> hull;
  std::size_t next = 0;
  auto pt = [&](std::size_t node) {
    auto idx = g.multi_index(node);
    return P2{static_cast<long long>(idx[0]), static_cast<long long>(idx[1])};
  };
  for (std::size_t l = 0; l < L.value.size() && !open.empty(); ++l) {
    std::vector<P2> pts = hull;
    for (; next < L.count[l]; ++next) pts.push_back(pt(L.by_value[next]));
    hull = hull_ccw(std::move(pts));
    long long x0 = hull[0].x, x1 = x0, y0 = hull[0].y, y1 = y0;
    for (const auto& p : hull) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    std::vector<std::size_t> still;
    still.reserve(open.size());
    for (std::size_t node : open) {
      const P2 p = pt(node);
      const bool inside = p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1 && in_convex_polygon(hull, p);
      if (inside)
        out[node] = L.value[l];
      else
        still.push_back(node);
    }
    open.swap(still);
  }
  return out;
}

std::vector<double> lslc_lp(const GridSpec& g, const std::vector<double>& v, bool clamp) {
  const int d = g.d(), m = g.points_per_axis;
  const Levels L = make_levels(v);
  const std::size_t M = v.size();
  std::vector<double> coords(M * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < M; ++i) {
    auto idx = g.multi_index(L.by_value[i]);
    for (int a = 0; a < d; ++a) coords[i * d + a] = idx[static_cast<std::size_t>(a)];
  }
  // Level at which each recession direction -e_a / +e_a becomes available.
  constexpr std::size_t never = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> ray_level(2 * static_cast<std::size_t>(d), never);
  if (clamp)
    for (std::size_t node = 0; node < M; ++node) {
      auto idx = g.multi_index(node);
      for (int a = 0; a < d; ++a) {
        if (idx[static_cast<std::size_t>(a)] == 0) ray_level[2 * a] = std::min(ray_level[2 * a], L.rank[node]);
        if (idx[static_cast<std::size_t>(a)] == m - 1)
          ray_level[2 * a + 1] = std::min(ray_level[2 * a + 1], L.rank[node]);
      }
    }
  auto feasible = [&](std::size_t l, const std::vector<double>& b) {
    std::vector<double> rays;
    for (int a = 0; a < d; ++a)
      for (int side = 0; side < 2; ++side)
        if (ray_level[2 * a + side] <= l)
          for (int c = 0; c < d; ++c) rays.push_back(c == a ? (side ? 1.0 : -1.0) : 0.0);
    return detail::in_hull_with_rays(d, coords.data(), L.count[l], rays, b);
  };
  std::vector<double> out(M);
  parallel_for(
      M,
      [&](std::size_t node) {
        std::size_t hi = L.rank[node], lo = 0;
        if (hi == 0) {
          out[node] = L.value[0];
          return;
        }
        auto idx = g.multi_index(node);
        std::vector<double> b(idx.begin(), idx.end());
        while (lo < hi) {
          const std::size_t mid = (lo + hi) / 2;
          if (feasible(mid, b))
            hi = mid;
          else
            lo = mid + 1;
        }
        out[node] = L.value[hi];
      },
      8);
  return out;
}

}  // namespace

std::vector<double> lower_hull_1d(const std::vector<double>& values) {
  std::vector<double> out(values.size());
  if (values.empty()) return out;
  std::vector<std::size_t> st;
  detail::lower_hull_line(values.data(), values.size(), 1, out.data(), 1, st);
  return out;
}

SampledFunction convex_envelope(const SampledFunction& f) {
  if (f.outside() == OutsideMode::clamp)
    return f.with_values(std::vector<double>(f.size(), global_min(f.values())));
  return f.with_values(detail::convex_envelope_grid<double>(f.grid(), f.values()));
}

SampledFunction level_convex_lsc_envelope(const SampledFunction& f) {
  const GridSpec& g = f.grid();
  if (g.d() == 1) return f.with_values(lslc_1d(f.values()));
  if (g.d() == 2 && f.outside() == OutsideMode::plus_infinity) return f.with_values(lslc_planar(g, f.values()));
  return f.with_values(lslc_lp(g, f.values(), f.outside() == OutsideMode::clamp));
}

SampledFunction pasch_hausdorff(const SampledFunction& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::invalid_argument, "lambda must be positive");
  const GridSpec& g = f.grid();
  const int d = g.d();
  const double shift = std::min(0.0, global_min(f.values()));
  std::vector<double> v = f.values();
  for (double& x : v) x -= shift;
  const std::size_t M = v.size();
  std::vector<int> idx(M * static_cast<std::size_t>(d));
  for (std::size_t k = 0; k < M; ++k) {
    auto mi = g.multi_index(k);
    std::copy(mi.begin(), mi.end(), idx.begin() + static_cast<std::ptrdiff_t>(k * d));
  }
  std::vector<std::size_t> order(M);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  const double scale = lambda * g.spacing();
  std::vector<double> out(M);
  parallel_for(M, [&](std::size_t k) {
    double best = v[k];
    const int* xk = &idx[k * d];
    for (std::size_t e : order) {
      if (v[e] >= best) break;
      const int* xe = &idx[e * d];
      long long s = 0;
      for (int a = 0; a < d; ++a) {
        const long long t = xk[a] - xe[a];
        s += t * t;
      }
      best = std::min(best, std::max(v[e], scale * std::sqrt(static_cast<double>(s))));
    }
    out[k] = best + shift;
  });
  return f.with_values(std::move(out));
}

}  // namespace supcon
