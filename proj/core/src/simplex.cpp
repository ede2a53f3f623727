#include "simplex.hpp"

namespace supcon::detail {

bool in_hull_with_rays(int d, const double* points, std::size_t npoints, const std::vector<double>& rays,
                       const std::vector<double>& b) {
  if (npoints == 0) return false;
  const int m = d + 1;
  const std::size_t nrays = rays.size() / static_cast<std::size_t>(d);
  const std::size_t ncols = npoints + nrays + static_cast<std::size_t>(m);
  std::vector<double> cols(ncols * static_cast<std::size_t>(m), 0.0), cost(ncols, 0.0);
  std::size_t j = 0;
  for (std::size_t p = 0; p < npoints; ++p, ++j) {
    for (int a = 0; a < d; ++a) cols[j * m + a] = points[p * d + a];
    cols[j * m + d] = 1.0;
  }
  for (std::size_t r = 0; r < nrays; ++r, ++j)
    for (int a = 0; a < d; ++a) cols[j * m + a] = rays[r * d + a];
  std::vector<double> rhs(b);
  rhs.push_back(1.0);
  double scale = 1.0;
  std::vector<int> basis;
  for (int i = 0; i < m; ++i, ++j) {
    cols[j * m + i] = rhs[static_cast<std::size_t>(i)] >= 0.0 ? 1.0 : -1.0;
    cost[j] = 1.0;
    basis.push_back(static_cast<int>(j));
    scale += std::abs(rhs[static_cast<std::size_t>(i)]);
  }
  DenseSimplex<double> lp(m, std::move(cols), std::move(cost));
  lp.set_rhs(rhs);
  lp.set_basis(basis);
  const LpStatus s = lp.primal(50 * static_cast<int>(ncols) + 100);
  if (s != LpStatus::optimal) return false;
  return lp.objective() <= 1e-9 * scale;
}

}  // namespace supcon::detail
