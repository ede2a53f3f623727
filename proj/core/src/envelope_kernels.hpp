#pragma once

// Envelope kernels templated on the value type; the power-law operator runs
// them in long double so that f^p keeps its relative precision.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "simplex.hpp"
#include "supcon/envelope.hpp"
#include "supcon/parallel.hpp"

namespace supcon::detail {

/// Lower convex hull of (k, v[first + k*stride]), k < m, written to out
/// (same layout), never above the input.
template <class Real>
void lower_hull_line(const Real* v, std::size_t m, std::ptrdiff_t stride, Real* out, std::ptrdiff_t out_stride,
                     std::vector<std::size_t>& st) {
  auto at = [&](std::size_t k) -> Real { return v[static_cast<std::ptrdiff_t>(k) * stride]; };
  st.clear();
  for (std::size_t k = 0; k < m; ++k) {
    const Real vk = at(k);
    while (st.size() >= 2) {
      const std::size_t a = st[st.size() - 2], b = st.back();
      const Real lhs = (at(b) - at(a)) * static_cast<Real>(k - a);
      const Real rhs = (vk - at(a)) * static_cast<Real>(b - a);
      if (lhs >= rhs)
        st.pop_back();
      else
        break;
    }
    st.push_back(k);
  }
  for (std::size_t s = 0; s + 1 < st.size(); ++s) {
    const std::size_t i = st[s], j = st[s + 1];
    const Real vi = at(i), vj = at(j);
    out[static_cast<std::ptrdiff_t>(i) * out_stride] = vi;
    for (std::size_t k = i + 1; k < j; ++k) {
      const Real t = static_cast<Real>(k - i) / static_cast<Real>(j - i);
      const Real h = vi + (vj - vi) * t;
      out[static_cast<std::ptrdiff_t>(k) * out_stride] = std::min(h, at(k));
    }
  }
  out[static_cast<std::ptrdiff_t>(st.back()) * out_stride] = at(st.back());
}

/// Boustrophedon ordering of the grid: consecutive nodes differ by one
/// step along one axis.
inline std::vector<std::size_t> snake_order(const GridSpec& g) {
  const int d = g.d(), m = g.points_per_axis;
  const std::size_t M = g.point_count();
  std::vector<std::size_t> order(M);
  std::vector<int> digit(static_cast<std::size_t>(d), 0), idx(static_cast<std::size_t>(d), 0);
  for (std::size_t t = 0; t < M; ++t) {
    std::size_t rem = t;
    for (int a = d - 1; a >= 0; --a) {
      digit[static_cast<std::size_t>(a)] = static_cast<int>(rem % static_cast<std::size_t>(m));
      rem /= static_cast<std::size_t>(m);
    }
    int parity = 0;
    for (int a = 0; a < d; ++a) {
      const int c = digit[static_cast<std::size_t>(a)];
      idx[static_cast<std::size_t>(a)] = (parity % 2 == 0) ? c : m - 1 - c;
      parity += c;
    }
    order[t] = g.flat_index(idx);
  }
  return order;
}

template <class Real>
std::vector<Real> convex_envelope_grid(const GridSpec& g, const std::vector<Real>& v) {
  const int d = g.d();
  const std::size_t M = v.size();
  std::vector<Real> out(M);
  std::vector<std::size_t> st;
  if (d == 1) {
    lower_hull_line(v.data(), M, 1, out.data(), 1, st);
    return out;
  }
  const int rows = d + 1;
  std::vector<Real> cols(M * static_cast<std::size_t>(rows));
  for (std::size_t j = 0; j < M; ++j) {
    auto idx = g.multi_index(j);
    for (int a = 0; a < d; ++a) cols[j * static_cast<std::size_t>(rows) + static_cast<std::size_t>(a)] = static_cast<Real>(idx[static_cast<std::size_t>(a)]);
    cols[j * static_cast<std::size_t>(rows) + static_cast<std::size_t>(d)] = Real(1);
  }
  DenseSimplex<Real> lp(rows, std::move(cols), v);
  const int m = g.points_per_axis;

  auto rhs_for = [&](std::size_t node) {
    auto idx = g.multi_index(node);
    std::vector<Real> b(static_cast<std::size_t>(rows));
    for (int a = 0; a < d; ++a) b[static_cast<std::size_t>(a)] = static_cast<Real>(idx[static_cast<std::size_t>(a)]);
    b[static_cast<std::size_t>(d)] = Real(1);
    return b;
  };
  auto cold_start = [&](std::size_t node) {
    auto idx = g.multi_index(node);
    std::vector<int> basis{static_cast<int>(node)};
    for (int a = 0; a < d; ++a) {
      auto nb = idx;
      nb[static_cast<std::size_t>(a)] += (nb[static_cast<std::size_t>(a)] + 1 < m) ? 1 : -1;
      basis.push_back(static_cast<int>(g.flat_index(nb)));
    }
    lp.set_rhs(rhs_for(node));
    lp.set_basis(basis);
    return lp.primal();
  };

  const auto order = snake_order(g);
  bool have_basis = false;
  for (std::size_t node : order) {
    LpStatus s = LpStatus::singular;
    if (have_basis) {
      lp.set_rhs(rhs_for(node));
      s = lp.dual(200);
      if (s == LpStatus::optimal) s = lp.primal(200);
    }
    if (s != LpStatus::optimal) s = cold_start(node);
    have_basis = s == LpStatus::optimal;
    const Real val = have_basis ? lp.objective() : v[node];
    out[node] = std::min(val, v[node]);
  }
  return out;
}

struct GridLines {
  std::ptrdiff_t stride = 0;
  std::vector<std::size_t> start;
  std::vector<std::size_t> length;
};

inline std::vector<GridLines> build_lines(const GridSpec& g, const std::vector<std::vector<int>>& dirs) {
  const int d = g.d(), m = g.points_per_axis;
  const std::size_t M = g.point_count();
  std::vector<std::ptrdiff_t> axis_stride(static_cast<std::size_t>(d));
  std::ptrdiff_t s = 1;
  for (int a = d - 1; a >= 0; --a) {
    axis_stride[static_cast<std::size_t>(a)] = s;
    s *= m;
  }
  std::vector<GridLines> out;
  for (const auto& v : dirs) {
    GridLines L;
    for (int a = 0; a < d; ++a) L.stride += v[static_cast<std::size_t>(a)] * axis_stride[static_cast<std::size_t>(a)];
    for (std::size_t node = 0; node < M; ++node) {
      auto idx = g.multi_index(node);
      bool prev_inside = true;
      for (int a = 0; a < d && prev_inside; ++a) {
        int p = idx[static_cast<std::size_t>(a)] - v[static_cast<std::size_t>(a)];
        if (p < 0 || p >= m) prev_inside = false;
      }
      if (prev_inside) continue;
      std::size_t len = static_cast<std::size_t>(-1);
      for (int a = 0; a < d; ++a) {
        const int va = v[static_cast<std::size_t>(a)], x = idx[static_cast<std::size_t>(a)];
        if (va > 0) len = std::min(len, static_cast<std::size_t>((m - 1 - x) / va + 1));
        if (va < 0) len = std::min(len, static_cast<std::size_t>(x / (-va) + 1));
      }
      if (len >= 3) {
        L.start.push_back(node);
        L.length.push_back(len);
      }
    }
    if (!L.start.empty()) out.push_back(std::move(L));
  }
  return out;
}

struct SweepOutcome {
  int sweeps = 0;
  bool converged = false;
  double last_change = 0.0;
};

template <class Real>
SweepOutcome lamination_grid(const GridSpec& g, std::vector<Real>& vals, const LaminationOptions& opts) {
  SweepOutcome res;
  const auto lines = build_lines(g, rank_one_grid_directions(g.dims, opts.max_component));
  std::vector<Real> before;
  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    before = vals;
    for (const auto& L : lines) {
      parallel_for(
          L.start.size(),
          [&](std::size_t i) {
            thread_local std::vector<std::size_t> st;
            thread_local std::vector<Real> buf;
            const std::size_t len = L.length[i];
            Real* base = vals.data() + L.start[i];
            buf.resize(len);
            lower_hull_line(base, len, L.stride, buf.data(), 1, st);
            for (std::size_t k = 0; k < len; ++k) base[static_cast<std::ptrdiff_t>(k) * L.stride] = buf[k];
          },
          16);
    }
    double change = 0.0;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      double a = static_cast<double>(before[k]), b = static_cast<double>(vals[k]);
      if (opts.measure) {
        a = opts.measure(a);
        b = opts.measure(b);
      }
      change = std::max(change, std::abs(a - b));
    }
    res.sweeps = sweep;
    res.last_change = change;
    if (change < opts.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace supcon::detail
