#pragma once

// Dense revised simplex for the small LPs behind the envelope operators:
// few rows (d + 1 <= 6), many columns. The basis inverse is rebuilt from
// scratch after every pivot, which is cheap at this row count and keeps
// rounding from accumulating.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace supcon::detail {

enum class LpStatus { optimal, unbounded, infeasible, iteration_limit, singular };

template <class Real>
class DenseSimplex {
 public:
  /// Columns are stored contiguously: column j occupies A[j*m, (j+1)*m).
  DenseSimplex(int m, std::vector<Real> columns, std::vector<Real> costs)
      : m_(m), A_(std::move(columns)), c_(std::move(costs)) {
    n_ = static_cast<int>(c_.size());
    binv_.assign(static_cast<std::size_t>(m_ * m_), Real(0));
    b_.assign(static_cast<std::size_t>(m_), Real(0));
    xb_.assign(static_cast<std::size_t>(m_), Real(0));
    in_basis_.assign(static_cast<std::size_t>(n_), false);
  }

  int rows() const { return m_; }
  int cols() const { return n_; }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<Real>& basic_values() const { return xb_; }
  long iterations() const { return iterations_; }

  void set_cost(int j, Real c) { c_[static_cast<std::size_t>(j)] = c; }

  bool set_basis(const std::vector<int>& basis) {
    std::fill(in_basis_.begin(), in_basis_.end(), false);
    basis_ = basis;
    for (int j : basis_) in_basis_[static_cast<std::size_t>(j)] = true;
    if (!refactor()) return false;
    solve_xb();
    return true;
  }

  void set_rhs(const std::vector<Real>& b) {
    b_ = b;
    solve_xb();
  }

  Real objective() const {
    Real s = 0;
    for (int i = 0; i < m_; ++i) s += c_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] * xb_[static_cast<std::size_t>(i)];
    return s;
  }

  LpStatus primal(int max_iter = 10000) {
    int degenerate = 0;
    for (int it = 0; it < max_iter; ++it, ++iterations_) {
      compute_duals();
      const bool bland = degenerate > 2 * m_ + 10;
      int q = -1;
      Real best = 0;
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)]) continue;
        Real mag = 0;
        Real ya = column_dot(y_.data(), j, &mag);
        Real r = c_[static_cast<std::size_t>(j)] - ya;
        Real thr = kOpt * (std::abs(c_[static_cast<std::size_t>(j)]) + mag) + kTiny;
        if (r < -thr) {
          if (bland) {
            q = j;
            break;
          }
          if (q < 0 || r < best) {
            q = j;
            best = r;
          }
        }
      }
      if (q < 0) return LpStatus::optimal;
      std::vector<Real> d = ftran(q);
      int r = -1;
      Real theta = 0, dr = 0;
      for (int i = 0; i < m_; ++i) {
        Real di = d[static_cast<std::size_t>(i)];
        if (di <= kPivot) continue;
        Real t = std::max(Real(0), xb_[static_cast<std::size_t>(i)]) / di;
        bool take = r < 0 || t < theta;
        if (!take && t == theta)
          take = bland ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(r)] : di > dr;
        if (take) {
          r = i;
          theta = t;
          dr = di;
        }
      }
      if (r < 0) return LpStatus::unbounded;
      degenerate = theta <= kFeas ? degenerate + 1 : 0;
      if (!pivot(r, q)) return LpStatus::singular;
    }
    return LpStatus::iteration_limit;
  }

  /// Requires a dual feasible basis (all reduced costs >= 0).
  LpStatus dual(int max_iter = 10000) {
    for (int it = 0; it < max_iter; ++it, ++iterations_) {
      int r = -1;
      Real worst = -kFeas;
      for (int i = 0; i < m_; ++i)
        if (xb_[static_cast<std::size_t>(i)] < worst) {
          worst = xb_[static_cast<std::size_t>(i)];
          r = i;
        }
      if (r < 0) return LpStatus::optimal;
      compute_duals();
      const Real* row = &binv_[static_cast<std::size_t>(r * m_)];
      int q = -1;
      Real best = 0, aq = 0;
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)]) continue;
        Real alpha = column_dot(row, j);
        if (alpha >= -kPivot) continue;
        Real rc = std::max(Real(0), c_[static_cast<std::size_t>(j)] - column_dot(y_.data(), j));
        Real ratio = rc / -alpha;
        if (q < 0 || ratio < best || (ratio == best && -alpha > aq)) {
          q = j;
          best = ratio;
          aq = -alpha;
        }
      }
      if (q < 0) return LpStatus::infeasible;
      if (!pivot(r, q)) return LpStatus::singular;
    }
    return LpStatus::iteration_limit;
  }

 private:
  static constexpr Real kOpt = Real(256) * std::numeric_limits<Real>::epsilon();
  static constexpr Real kTiny = std::numeric_limits<Real>::min() * Real(1e6);
  static constexpr Real kPivot = Real(1e-11);
  static constexpr Real kFeas = Real(1e-13);

  Real column_dot(const Real* v, int j, Real* magnitude = nullptr) const {
    const Real* a = &A_[static_cast<std::size_t>(j) * static_cast<std::size_t>(m_)];
    Real s = 0, mag = 0;
    for (int i = 0; i < m_; ++i) {
      s += v[i] * a[i];
      mag += std::abs(v[i] * a[i]);
    }
    if (magnitude) *magnitude = mag;
    return s;
  }

  std::vector<Real> ftran(int j) const {
    const Real* a = &A_[static_cast<std::size_t>(j) * static_cast<std::size_t>(m_)];
    std::vector<Real> d(static_cast<std::size_t>(m_), Real(0));
    for (int i = 0; i < m_; ++i) {
      Real s = 0;
      for (int k = 0; k < m_; ++k) s += binv_[static_cast<std::size_t>(i * m_ + k)] * a[k];
      d[static_cast<std::size_t>(i)] = s;
    }
    return d;
  }

  void compute_duals() {
    y_.assign(static_cast<std::size_t>(m_), Real(0));
    for (int k = 0; k < m_; ++k) {
      Real s = 0;
      for (int i = 0; i < m_; ++i)
        s += c_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] * binv_[static_cast<std::size_t>(i * m_ + k)];
      y_[static_cast<std::size_t>(k)] = s;
    }
  }

  void solve_xb() {
    for (int i = 0; i < m_; ++i) {
      Real s = 0;
      for (int k = 0; k < m_; ++k) s += binv_[static_cast<std::size_t>(i * m_ + k)] * b_[static_cast<std::size_t>(k)];
      xb_[static_cast<std::size_t>(i)] = s;
    }
  }

  bool pivot(int r, int q) {
    in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
    basis_[static_cast<std::size_t>(r)] = q;
    in_basis_[static_cast<std::size_t>(q)] = true;
    if (!refactor()) return false;
    solve_xb();
    return true;
  }

  // Gauss-Jordan inverse of the basis matrix with partial pivoting.
  bool refactor() {
    const auto m = static_cast<std::size_t>(m_);
    std::vector<Real> B(m * m), inv(m * m, Real(0));
    for (std::size_t i = 0; i < m; ++i) {
      const Real* a = &A_[static_cast<std::size_t>(basis_[i]) * m];
      for (std::size_t k = 0; k < m; ++k) B[k * m + i] = a[k];
      inv[i * m + i] = 1;
    }
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < m; ++r)
        if (std::abs(B[r * m + c]) > std::abs(B[p * m + c])) p = r;
      if (std::abs(B[p * m + c]) < Real(1e-14)) return false;
      if (p != c)
        for (std::size_t k = 0; k < m; ++k) {
          std::swap(B[c * m + k], B[p * m + k]);
          std::swap(inv[c * m + k], inv[p * m + k]);
        }
      const Real piv = B[c * m + c];
      for (std::size_t k = 0; k < m; ++k) {
        B[c * m + k] /= piv;
        inv[c * m + k] /= piv;
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (r == c) continue;
        const Real f = B[r * m + c];
        if (f == Real(0)) continue;
        for (std::size_t k = 0; k < m; ++k) {
          B[r * m + k] -= f * B[c * m + k];
          inv[r * m + k] -= f * inv[c * m + k];
        }
      }
    }
    binv_ = std::move(inv);
    return true;
  }

  int m_, n_;
  std::vector<Real> A_, c_, binv_, b_, xb_, y_;
  std::vector<int> basis_;
  std::vector<bool> in_basis_;
  long iterations_ = 0;
};

/// Is b in conv(points) + cone(rays)? Points and rays are packed d
/// coordinates at a time; solved as a phase-one LP.
bool in_hull_with_rays(int d, const double* points, std::size_t npoints, const std::vector<double>& rays,
                       const std::vector<double>& b);

}  // namespace supcon::detail
