#include <algorithm>
#include <cmath>

#include "laminate_detail.hpp"
#include "supcon/error.hpp"
#include "supcon/laminate.hpp"

namespace supcon {

struct Laminate::Node {
  bool leaf = true;
  MatrixPoint xi;
  double lambda = 1.0;
  std::optional<RankOneDirection> dir;
  std::optional<Laminate> left, right;
  int order = 0;
};

Laminate Laminate::leaf(const MatrixPoint& xi) {
  auto n = std::make_shared<Node>();
  n->xi = xi;
  Laminate L;
  L.node_ = std::move(n);
  return L;
}

Laminate Laminate::split(double lambda, Laminate left, Laminate right) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error(ErrorCode::invalid_argument, "split weight must lie in (0,1)");
  if (!(left.dims() == right.dims())) throw Error(ErrorCode::dimension_mismatch, "laminate branches differ in shape");
  const MatrixPoint bl = left.barycenter_recursive(), br = right.barycenter_recursive();
  if (!is_rank_one_connected(bl, br, 1e-9))
    throw Error(ErrorCode::not_rank_one, "laminate branches are not rank-one connected");
  auto n = std::make_shared<Node>();
  n->leaf = false;
  n->xi = axpby(lambda, bl, 1.0 - lambda, br);
  n->lambda = lambda;
  n->dir = RankOneDirection::factor(bl - br);
  n->order = 1 + std::max(left.order(), right.order());
  n->left = std::move(left);
  n->right = std::move(right);
  Laminate L;
  L.node_ = std::move(n);
  return L;
}

Laminate Laminate::simple(const MatrixPoint& xi, const MatrixPoint& eta, double lambda) {
  return split(lambda, leaf(xi), leaf(eta));
}

bool Laminate::is_leaf() const { return node_->leaf; }
const MatrixPoint& Laminate::matrix() const {
  if (!node_->leaf) throw Error(ErrorCode::invalid_argument, "matrix() on a split node");
  return node_->xi;
}
double Laminate::lambda() const { return node_->lambda; }
const RankOneDirection& Laminate::direction() const {
  if (node_->leaf) throw Error(ErrorCode::invalid_argument, "direction() on a leaf");
  return *node_->dir;
}
const Laminate& Laminate::left() const {
  if (node_->leaf) throw Error(ErrorCode::invalid_argument, "left() on a leaf");
  return *node_->left;
}
const Laminate& Laminate::right() const {
  if (node_->leaf) throw Error(ErrorCode::invalid_argument, "right() on a leaf");
  return *node_->right;
}
int Laminate::order() const { return node_->order; }
Dims Laminate::dims() const { return node_->xi.dims(); }

std::vector<std::pair<MatrixPoint, double>> Laminate::atoms() const {
  std::vector<std::pair<MatrixPoint, double>> out;
  std::function<void(const Laminate&, double)> walk = [&](const Laminate& L, double w) {
    if (L.is_leaf()) {
      out.emplace_back(L.matrix(), w);
      return;
    }
    walk(L.left(), w * L.lambda());
    walk(L.right(), w * (1.0 - L.lambda()));
  };
  walk(*this, 1.0);
  return out;
}

MatrixPoint Laminate::barycenter_recursive() const {
  if (is_leaf()) return matrix();
  return axpby(lambda(), left().barycenter_recursive(), 1.0 - lambda(), right().barycenter_recursive());
}

nlohmann::json Laminate::to_json() const {
  if (is_leaf()) return {{"leaf", supcon::to_json(matrix())}};
  return {{"lambda", lambda()},
          {"a", direction().a()},
          {"nu", direction().nu()},
          {"left", left().to_json()},
          {"right", right().to_json()}};
}

MatrixPoint laminate_barycenter(const Laminate& L) {
  std::vector<MatrixPoint> pts;
  std::vector<double> w;
  for (auto& [a, wt] : L.atoms()) {
    pts.push_back(a);
    w.push_back(wt);
  }
  return combine(pts, w);
}

double nu_ess_sup(const Laminate& L, const std::function<double(const MatrixPoint&)>& f) {
  double m = -std::numeric_limits<double>::infinity();
  for (auto& [a, w] : L.atoms())
    if (w > 0.0) m = std::max(m, f(a));
  return m;
}

LaminateSampler::LaminateSampler(Dims dims, double radius, std::uint64_t seed, int max_order)
    : dims_(dims), radius_(radius), max_order_(max_order), sampler_(dims, radius, seed) {
  if (max_order < 1 || max_order > 3) throw Error(ErrorCode::invalid_argument, "laminate order must be 1..3");
}

Laminate LaminateSampler::grow(const MatrixPoint& bar, int order, double scale) {
  if (order <= 0) return Laminate::leaf(bar);
  for (;;) {
    MatrixPoint D;
    if (sampler_.integer(0, 1) == 0) {
      std::vector<double> a(static_cast<std::size_t>(dims_.rows)), b(static_cast<std::size_t>(dims_.cols));
      bool za = true, zb = true;
      for (auto& x : a) {
        x = sampler_.integer(-1, 1);
        za = za && x == 0;
      }
      for (auto& x : b) {
        x = sampler_.integer(-1, 1);
        zb = zb && x == 0;
      }
      if (za || zb) continue;
      std::vector<double> e;
      for (double ai : a)
        for (double bj : b) e.push_back(ai * bj);
      D = MatrixPoint(dims_, std::move(e)) * (sampler_.integer(1, 8) / 4.0 * std::max(scale, 0.25));
    } else {
      D = rank_one_matrix(sampler_.rank_one_direction()) * sampler_.uniform(0.05, 1.0) * scale;
    }
    const double l = sampler_.lambda();
    const int lo = sampler_.integer(0, order - 1);
    const bool left_deep = sampler_.integer(0, 1) == 0;
    const int ol = left_deep ? order - 1 : lo, orr = left_deep ? lo : order - 1;
    Laminate left = grow(axpby(1.0, bar, 1.0 - l, D), ol, scale * 0.5);
    Laminate right = grow(axpby(1.0, bar, -l, D), orr, scale * 0.5);
    try {
      return Laminate::split(l, std::move(left), std::move(right));
    } catch (const Error&) {
      // Rounding in deep subtrees can spoil the rank-one test; draw again.
    }
  }
}

Laminate LaminateSampler::around(const MatrixPoint& barycenter, int order) {
  return grow(barycenter, std::clamp(order, 1, max_order_), radius_ * 0.5);
}

Laminate LaminateSampler::next() {
  const std::size_t k = ++count_;
  const MatrixPoint bar = k % 2 ? sampler_.halton_point(k) : sampler_.lattice_point(1);
  return around(bar, 1 + static_cast<int>(k % static_cast<std::size_t>(max_order_)));
}

Verdict check_curl_young_on_laminates(const Supremand& f, const CheckOptions& opts) {
  WitnessTracker tr(opts.tol);
  auto test = [&](const Laminate& L) {
    const MatrixPoint bar = laminate_barycenter(L);
    std::vector<MatrixPoint> supp;
    std::vector<double> w;
    for (auto& [a, wt] : L.atoms())
      if (wt > 0.0) {
        supp.push_back(a);
        w.push_back(wt);
      }
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& s : supp) m = std::max(m, f(s));
    tr.offer(f(bar) - m, [&] {
      Witness wit;
      wit.reference = bar;
      wit.support = supp;
      wit.weights = w;
      wit.construction = "laminate of order " + std::to_string(L.order());
      wit.detail = {{"laminate", L.to_json()}};
      return wit;
    });
  };
  CheckOptions simple = opts;
  simple.budget = opts.budget / 2;
  std::size_t used = for_each_triple(f.dims, f.anchors, simple, true, [&](const Triple& t) {
    try {
      test(Laminate::simple(t.xi, t.eta, t.lambda));
    } catch (const Error&) {
    }
    return true;
  });
  LaminateSampler ls(f.dims, opts.radius, opts.seed ^ 0x3c6ef372fe94f82bULL);
  for (; used < opts.budget; ++used) test(ls.next());
  return tr.verdict(Notion::curl_young, used, opts.seed);
}

std::vector<double> rotation_to(const std::vector<double>& nu) {
  const std::size_t n = nu.size();
  std::vector<double> R(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) R[i * n + i] = 1.0;
  std::vector<double> w(nu);
  for (auto& x : w) x = -x;
  w[0] += 1.0;
  double ww = 0.0;
  for (double x : w) ww += x * x;
  if (ww < 1e-28) return R;
  // Householder reflection e1 -> nu, then flip the last column for det +1.
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) R[c * n + r] -= 2.0 * w[r] * w[c] / ww;
  if (n >= 2)
    for (std::size_t r = 0; r < n; ++r) R[(n - 1) * n + r] = -R[(n - 1) * n + r];
  return R;
}

double simple_laminate_amplitude(const RankOneDirection& dir, double lambda, int layers) {
  double na = 0.0;
  for (double x : dir.a()) na += x * x;
  return std::sqrt(na) * lambda * (1.0 - lambda) / layers;
}

TestField realize_simple_laminate(const MatrixPoint& xi, const MatrixPoint& eta, double lambda, int layers) {
  if (!(xi.dims() == eta.dims())) throw Error(ErrorCode::dimension_mismatch, "laminate endpoints differ in shape");
  if (layers < 1) throw Error(ErrorCode::invalid_argument, "layers must be >= 1");
  if (!is_rank_one_connected(xi, eta)) throw Error(ErrorCode::not_rank_one, "endpoints are not rank-one connected");
  const Dims dims = xi.dims();
  const int n = dims.cols;
  TestField t;
  t.dims = dims;
  t.layers = layers;
  t.kind = layers == 1 ? FieldKind::periodic : FieldKind::scaled_periodic;

  auto cube_cell = [&](double y0, double y1, const MatrixPoint& g, const std::vector<double>& R) {
    FieldCell c;
    c.gradient = g;
    c.volume = y1 - y0;
    const std::size_t corners = std::size_t{1} << (n - 1);
    for (int side = 0; side < 2; ++side)
      for (std::size_t mask = 0; mask < corners; ++mask) {
        std::vector<double> y(static_cast<std::size_t>(n));
        y[0] = side ? y1 : y0;
        for (int a = 1; a < n; ++a) y[static_cast<std::size_t>(a)] = (mask >> (a - 1)) & 1 ? 1.0 : 0.0;
        if (R.empty()) {
          c.vertices.push_back(y);
          continue;
        }
        std::vector<double> x(static_cast<std::size_t>(n), 0.0);
        for (int col = 0; col < n; ++col)
          for (int r = 0; r < n; ++r) x[static_cast<std::size_t>(r)] += R[static_cast<std::size_t>(col * n + r)] * y[static_cast<std::size_t>(col)];
        c.vertices.push_back(std::move(x));
      }
    return c;
  };

  if (!(lambda > 0.0 && lambda < 1.0)) {
    t.kind = FieldKind::periodic;
    t.cells.push_back(cube_cell(0.0, 1.0, MatrixPoint::zeros(dims), {}));
    return t;
  }
  const MatrixPoint D = xi - eta;
  const RankOneDirection dir = RankOneDirection::factor(D);
  std::vector<double> R = rotation_to(dir.nu());
  bool identity = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) identity = identity && R[static_cast<std::size_t>(i * n + j)] == (i == j ? 1.0 : 0.0);
  if (identity) R.clear();
  t.rotation = R;
  const MatrixPoint g1 = D * (1.0 - lambda), g2 = D * (-lambda);
  for (int l = 0; l < layers; ++l) {
    const double y0 = static_cast<double>(l) / layers;
    const double ym = (l + lambda) / layers;
    const double y1 = static_cast<double>(l + 1) / layers;
    t.cells.push_back(cube_cell(y0, ym, g1, R));
    t.cells.push_back(cube_cell(ym, y1, g2, R));
  }
  t.sup_norm = simple_laminate_amplitude(dir, lambda, layers);
  t.boundary_sup = n == 1 ? 0.0 : t.sup_norm;
  t.grad_bound = std::max(g1.norm(), g2.norm());
  return t;
}

}  // namespace supcon
