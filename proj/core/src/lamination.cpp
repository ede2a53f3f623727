#include <algorithm>
#include <numeric>

#include "envelope_kernels.hpp"
#include "supcon/envelope.hpp"
#include "supcon/error.hpp"

namespace supcon {

namespace {

bool integer_rank_one(const std::vector<int>& v, Dims dims) {
  const int N = dims.rows, n = dims.cols;
  for (int i = 0; i < N; ++i)
    for (int k = i + 1; k < N; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l) {
          const long long m = static_cast<long long>(v[i * n + j]) * v[k * n + l] -
                              static_cast<long long>(v[i * n + l]) * v[k * n + j];
          if (m != 0) return false;
        }
  return true;
}

}  // namespace

std::vector<std::vector<int>> rank_one_grid_directions(Dims dims, int max_component) {
  if (max_component < 1) throw Error(ErrorCode::invalid_argument, "max_component must be >= 1");
  const int d = dims.size();
  const int span = 2 * max_component + 1;
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(span);
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(d));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rem = code;
    for (int a = d - 1; a >= 0; --a) {
      v[static_cast<std::size_t>(a)] = static_cast<int>(rem % span) - max_component;
      rem /= span;
    }
    const auto first = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
    if (first == v.end() || *first < 0) continue;
    int g = 0;
    for (int x : v) g = std::gcd(g, x);
    if (g != 1) continue;
    if (integer_rank_one(v, dims)) out.push_back(v);
  }
  return out;
}

LaminationResult lamination_sweeps(const SampledFunction& f, const LaminationOptions& opts) {
  if (opts.max_sweeps < 1) throw Error(ErrorCode::invalid_argument, "max_sweeps must be >= 1");
  if (f.outside() == OutsideMode::clamp) {
    const double lo = *std::min_element(f.values().begin(), f.values().end());
    return {f.with_values(std::vector<double>(f.size(), lo)), 0, true, 0.0};
  }
  std::vector<double> vals = f.values();
  const auto out = detail::lamination_grid(f.grid(), vals, opts);
  return {f.with_values(std::move(vals)), out.sweeps, out.converged, out.last_change};
}

SampledFunction lamination_hull(const SampledFunction& f, int max_sweeps, double tol) {
  LaminationOptions opts;
  opts.max_sweeps = max_sweeps;
  opts.tol = tol;
  return lamination_sweeps(f, opts).hull;
}

}  // namespace supcon
