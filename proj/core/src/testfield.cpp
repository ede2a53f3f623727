#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>

#include "supcon/error.hpp"
#include "supcon/testfield.hpp"

namespace supcon {

std::string_view to_string(FieldKind k) {
  switch (k) {
    case FieldKind::zero_boundary: return "zero-boundary";
    case FieldKind::periodic: return "periodic";
    case FieldKind::scaled_periodic: return "scaled-periodic";
  }
  return "zero-boundary";
}

std::vector<std::pair<MatrixPoint, double>> TestField::gradient_distribution() const {
  std::map<std::vector<double>, double> acc;
  double total = 0.0;
  for (const auto& c : cells) {
    if (c.volume <= 0.0) continue;
    acc[c.gradient.entries()] += c.volume;
    total += c.volume;
  }
  std::vector<std::pair<MatrixPoint, double>> out;
  for (const auto& [g, v] : acc) out.emplace_back(MatrixPoint(dims, g), v / total);
  return out;
}

double field_ess_sup(const Supremand& f, const MatrixPoint& xi, const TestField& phi) {
  double s = -std::numeric_limits<double>::infinity();
  for (const auto& v : field_values(xi, phi)) s = std::max(s, f(v));
  return s;
}

std::vector<MatrixPoint> field_values(const MatrixPoint& xi, const TestField& phi) {
  std::vector<MatrixPoint> out;
  for (const auto& [g, w] : phi.gradient_distribution()) out.push_back(xi + g);
  return out;
}

void write_field_csv(const TestField& phi, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::io, "cannot write " + path);
  const int n = phi.dims.cols, d = phi.dims.size();
  os << "cell";
  for (int a = 0; a < n; ++a) os << ",x_" << a;
  for (int a = 0; a < d; ++a) os << ",g_" << a;
  os << "\n" << std::setprecision(17);
  for (std::size_t c = 0; c < phi.cells.size(); ++c)
    for (const auto& v : phi.cells[c].vertices) {
      os << c;
      for (double x : v) os << "," << x;
      for (double g : phi.cells[c].gradient.entries()) os << "," << g;
      os << "\n";
    }
  if (!os) throw Error(ErrorCode::io, "write failed for " + path);
}

KuhnMesh::KuhnMesh(int n, int k, bool periodic) : n_(n), k_(k), periodic_(periodic) {
  if (n < 1 || k < 2) throw Error(ErrorCode::invalid_argument, "mesh needs n >= 1 and k >= 2");
  const int side = periodic ? k : k + 1;
  node_count_ = 1;
  for (int a = 0; a < n; ++a) node_count_ *= static_cast<std::size_t>(side);
  double fact = 1.0;
  for (int a = 2; a <= n; ++a) fact *= a;
  simplex_volume_ = std::pow(h(), n) / fact;

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::size_t cubes = 1;
  for (int a = 0; a < n; ++a) cubes *= static_cast<std::size_t>(k);
  for (std::size_t c = 0; c < cubes; ++c) {
    std::vector<int> base(static_cast<std::size_t>(n));
    std::size_t rem = c;
    for (int a = n - 1; a >= 0; --a) {
      base[static_cast<std::size_t>(a)] = static_cast<int>(rem % static_cast<std::size_t>(k));
      rem /= static_cast<std::size_t>(k);
    }
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Simplex s;
      auto idx = base;
      s.nodes.push_back(wrap_index(idx));
      for (int i = 0; i < n; ++i) {
        idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] += 1;
        s.nodes.push_back(wrap_index(idx));
        s.axes.push_back(perm[static_cast<std::size_t>(i)]);
      }
      simplices_.push_back(std::move(s));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  incident_.assign(node_count_, {});
  for (std::size_t c = 0; c < simplices_.size(); ++c) {
    auto nodes = simplices_[c].nodes;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (std::size_t v : nodes) incident_[v].push_back(c);
  }
}

std::size_t KuhnMesh::wrap_index(const std::vector<int>& idx) const {
  const int side = periodic_ ? k_ : k_ + 1;
  std::size_t flat = 0;
  for (int a = 0; a < n_; ++a) {
    int x = idx[static_cast<std::size_t>(a)];
    if (periodic_) x = ((x % k_) + k_) % k_;
    flat = flat * static_cast<std::size_t>(side) + static_cast<std::size_t>(x);
  }
  return flat;
}

std::vector<int> KuhnMesh::node_index(std::size_t node) const {
  const int side = periodic_ ? k_ : k_ + 1;
  std::vector<int> idx(static_cast<std::size_t>(n_));
  for (int a = n_ - 1; a >= 0; --a) {
    idx[static_cast<std::size_t>(a)] = static_cast<int>(node % static_cast<std::size_t>(side));
    node /= static_cast<std::size_t>(side);
  }
  return idx;
}

std::vector<double> KuhnMesh::node_position(std::size_t node) const {
  auto idx = node_index(node);
  std::vector<double> x(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) x[a] = idx[a] * h();
  return x;
}

bool KuhnMesh::on_boundary(std::size_t node) const {
  for (int x : node_index(node))
    if (x == 0 || (!periodic_ && x == k_)) return true;
  return false;
}

void KuhnMesh::gradient_into(std::size_t cell, const std::vector<double>& phi, int N, std::vector<double>& g) const {
  const Simplex& s = simplices_[cell];
  g.assign(static_cast<std::size_t>(N * n_), 0.0);
  const double inv_h = static_cast<double>(k_);
  for (int i = 1; i <= n_; ++i) {
    const std::size_t a = s.nodes[static_cast<std::size_t>(i - 1)], b = s.nodes[static_cast<std::size_t>(i)];
    const int axis = s.axes[static_cast<std::size_t>(i - 1)];
    for (int r = 0; r < N; ++r)
      g[static_cast<std::size_t>(r * n_ + axis)] =
          (phi[b * static_cast<std::size_t>(N) + static_cast<std::size_t>(r)] -
           phi[a * static_cast<std::size_t>(N) + static_cast<std::size_t>(r)]) *
          inv_h;
  }
}

MatrixPoint KuhnMesh::gradient(std::size_t cell, const std::vector<double>& phi, int N) const {
  std::vector<double> g;
  gradient_into(cell, phi, N, g);
  return MatrixPoint(N, n_, std::move(g));
}

TestField KuhnMesh::field(const std::vector<double>& phi, int N, FieldKind kind) const {
  TestField t;
  t.dims = {N, n_};
  t.kind = kind;
  for (std::size_t c = 0; c < simplices_.size(); ++c) {
    FieldCell cell;
    std::vector<int> idx = node_index(simplices_[c].nodes[0]);
    // Vertex positions follow the unwrapped permutation path.
    std::vector<double> x(static_cast<std::size_t>(n_));
    for (int a = 0; a < n_; ++a) x[static_cast<std::size_t>(a)] = idx[static_cast<std::size_t>(a)] * h();
    cell.vertices.push_back(x);
    for (int axis : simplices_[c].axes) {
      x[static_cast<std::size_t>(axis)] += h();
      cell.vertices.push_back(x);
    }
    cell.gradient = gradient(c, phi, N);
    cell.volume = simplex_volume_;
    t.grad_bound = std::max(t.grad_bound, cell.gradient.norm());
    t.cells.push_back(std::move(cell));
  }
  for (std::size_t v = 0; v < node_count_; ++v) {
    double s = 0.0;
    for (int r = 0; r < N; ++r) s += phi[v * static_cast<std::size_t>(N) + static_cast<std::size_t>(r)] * phi[v * static_cast<std::size_t>(N) + static_cast<std::size_t>(r)];
    s = std::sqrt(s);
    t.sup_norm = std::max(t.sup_norm, s);
    if (on_boundary(v)) t.boundary_sup = std::max(t.boundary_sup, s);
  }
  return t;
}

}  // namespace supcon
