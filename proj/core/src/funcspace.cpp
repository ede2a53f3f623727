#include "supcon/funcspace.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "supcon/error.hpp"
#include "supcon/parallel.hpp"

namespace supcon {

std::string_view to_string(OutsideMode mode) {
  return mode == OutsideMode::clamp ? "clamp-to-boundary" : "plus-infinity";
}

OutsideMode parse_outside_mode(std::string_view text) {
  if (text == "plus-infinity") return OutsideMode::plus_infinity;
  if (text == "clamp-to-boundary" || text == "clamp") return OutsideMode::clamp;
  throw Error(ErrorCode::invalid_argument, "unknown outside mode " + std::string(text));
}

std::size_t memory_cap_bytes() {
  if (const char* env = std::getenv("SUPCON_MEM_CAP_MB")) {
    char* end = nullptr;
    unsigned long long mb = std::strtoull(env, &end, 10);
    if (end != env && mb > 0) return static_cast<std::size_t>(mb) << 20;
  }
  return std::size_t{1024} << 20;
}

std::size_t GridSpec::point_count() const {
  std::size_t count = 1;
  for (int a = 0; a < d(); ++a) count *= static_cast<std::size_t>(points_per_axis);
  return count;
}

double GridSpec::coordinate(int k) const {
  const int m1 = points_per_axis - 1;
  return radius * static_cast<double>(2 * k - m1) / static_cast<double>(m1);
}

std::vector<int> GridSpec::multi_index(std::size_t node) const {
  std::vector<int> idx(static_cast<std::size_t>(d()));
  const auto m = static_cast<std::size_t>(points_per_axis);
  for (int a = d() - 1; a >= 0; --a) {
    idx[static_cast<std::size_t>(a)] = static_cast<int>(node % m);
    node /= m;
  }
  return idx;
}

std::size_t GridSpec::flat_index(const std::vector<int>& idx) const {
  std::size_t node = 0;
  for (int k : idx) node = node * static_cast<std::size_t>(points_per_axis) + static_cast<std::size_t>(k);
  return node;
}

MatrixPoint GridSpec::node(std::size_t node) const {
  auto idx = multi_index(node);
  std::vector<double> e(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) e[a] = coordinate(idx[a]);
  return MatrixPoint(dims, std::move(e));
}

void GridSpec::validate(std::size_t cap_bytes) const {
  if (dims.rows < 1 || dims.cols < 1) throw Error(ErrorCode::invalid_argument, "grid dims must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::invalid_argument, "grid radius must be positive");
  if (points_per_axis < 3 || points_per_axis % 2 == 0)
    throw Error(ErrorCode::invalid_argument, "points per axis must be odd and >= 3");
  const double count = std::pow(static_cast<double>(points_per_axis), d());
  if (count * static_cast<double>(kBytesPerGridPoint) > static_cast<double>(cap_bytes))
    throw Error(ErrorCode::memory_cap_exceeded,
                std::to_string(points_per_axis) + "^" + std::to_string(d()) + " nodes exceed the cap of " +
                    std::to_string(cap_bytes >> 20) + " MB");
}

GridSpec grid_with_spacing(Dims dims, double radius, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "spacing must be positive");
  long cells = std::lround(2.0 * radius / h);
  if (cells % 2) ++cells;
  if (cells < 2) cells = 2;
  return GridSpec{dims, radius, static_cast<int>(cells + 1)};
}

SampledFunction::SampledFunction(GridSpec grid, std::vector<double> values, OutsideMode outside)
    : grid_(grid), values_(std::move(values)), outside_(outside) {
  if (values_.size() != grid_.point_count())
    throw Error(ErrorCode::dimension_mismatch, "sampled values do not match the grid size");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "sampled values must be finite");
}

SampledFunction SampledFunction::with_values(std::vector<double> values) const {
  return SampledFunction(grid_, std::move(values), outside_);
}

double interpolate(const SampledFunction& f, const MatrixPoint& xi) {
  const GridSpec& g = f.grid();
  if (!(xi.dims() == g.dims)) throw Error(ErrorCode::dimension_mismatch, "query " + xi.dims().str());
  const int d = g.d();
  const int m = g.points_per_axis;
  const double h = g.spacing();
  std::vector<int> base(static_cast<std::size_t>(d));
  std::vector<double> frac(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    double s = (xi[static_cast<std::size_t>(a)] + g.radius) / h;
    if (s < 0.0 || s > m - 1) {
      if (f.outside() == OutsideMode::plus_infinity) return std::numeric_limits<double>::infinity();
      s = std::min(std::max(s, 0.0), static_cast<double>(m - 1));
    }
    const double r = std::round(s);
    if (std::abs(s - r) < 1e-9) s = r;
    int k = static_cast<int>(std::floor(s));
    if (k > m - 2) k = m - 2;
    base[static_cast<std::size_t>(a)] = k;
    frac[static_cast<std::size_t>(a)] = s - k;
  }
  double out = 0.0;
  std::vector<int> idx(base);
  for (unsigned corner = 0; corner < (1u << d); ++corner) {
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      const bool up = (corner >> a) & 1u;
      const double t = frac[static_cast<std::size_t>(a)];
      w *= up ? t : 1.0 - t;
      idx[static_cast<std::size_t>(a)] = base[static_cast<std::size_t>(a)] + (up ? 1 : 0);
    }
    if (w == 0.0) continue;
    out += w * f.value(g.flat_index(idx));
  }
  return out;
}

Supremand as_supremand(const SampledFunction& f, std::string name) {
  return Supremand{std::move(name), f.grid().dims, [f](const MatrixPoint& xi) { return interpolate(f, xi); }, {}};
}

SampledFunction sample(const Supremand& f, const GridSpec& grid, OutsideMode outside) {
  grid.validate();
  if (!(f.dims == grid.dims))
    throw Error(ErrorCode::dimension_mismatch, f.name + " is " + f.dims.str() + ", grid is " + grid.dims.str());
  std::vector<double> values(grid.point_count());
  parallel_for(values.size(), [&](std::size_t i) { values[i] = f(grid.node(i)); }, 256);
  return SampledFunction(grid, std::move(values), outside);
}

SampledFunction sample(const CorpusEntry& entry, const GridSpec& grid) {
  if (!entry.any_dims && !(entry.dims == grid.dims))
    throw Error(ErrorCode::dimension_mismatch, entry.name + " is " + entry.dims.str() + ", grid is " + grid.dims.str());
  return sample(entry.supremand(grid.dims), grid, entry.default_outside());
}

}  // namespace supcon
