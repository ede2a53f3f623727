#include <algorithm>
#include <cmath>

#include "field_search.hpp"
#include "laminate_detail.hpp"
#include "supcon/error.hpp"
#include "supcon/laminate.hpp"
#include "supcon/sampling.hpp"

namespace supcon {

namespace {

double max_f(const Supremand& f, const std::vector<MatrixPoint>& pts) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& p : pts) m = std::max(m, f(p));
  return m;
}

std::vector<double> weights_of(const TestField& t) {
  std::vector<double> w;
  for (const auto& gw : t.gradient_distribution()) w.push_back(gw.second);
  return w;
}

}  // namespace

std::vector<double> default_delta_schedule() {
  std::vector<double> d;
  for (int k = 1; k <= 12; ++k) d.push_back(std::ldexp(1.0, -k));
  return d;
}

Verdict check_periodic_weak_morrey(const Supremand& f, const MatrixPoint& xi, const FieldSearchOptions& opts) {
  if (!(xi.dims() == f.dims)) throw Error(ErrorCode::dimension_mismatch, "base point shape differs from f");
  const int n = xi.cols(), N = xi.rows();
  const double fx = f(xi), target = fx - opts.tol;
  WitnessTracker tr(opts.tol);
  std::mt19937_64 rng(opts.seed);
  std::size_t used = 0;

  const std::size_t random_count = std::min<std::size_t>(opts.budget / 4, 256);
  for (const auto& d : detail::decompositions(f, xi, random_count, opts.radius, rng)) {
    if (used >= opts.budget) break;
    ++used;
    TestField field;
    try {
      field = realize_simple_laminate(d.p, d.q, d.lambda, 1);
    } catch (const Error&) {
      continue;
    }
    const auto vals = field_values(xi, field);
    tr.offer(fx - max_f(f, vals), [&] {
      Witness w;
      w.reference = xi;
      w.support = vals;
      w.weights = weights_of(field);
      w.construction = d.exact ? "simple laminate on anchor points" : "simple laminate";
      const auto dir = RankOneDirection::factor(d.p - d.q);
      w.detail = {{"lambda", d.lambda}, {"a", dir.a()}, {"nu", dir.nu()}, {"layers", 1},
                  {"rotated", !field.rotation.empty()}, {"kind", "periodic"}};
      return w;
    });
  }

  if (!tr.found() && used < opts.budget) {
    const int k = opts.subdivisions > 0 ? opts.subdivisions : default_subdivisions(n);
    const KuhnMesh mesh(n, k, true);
    std::vector<char> free_node(mesh.node_count(), 1);
    free_node[0] = 0;
    const detail::FieldDescent fd(f, xi, mesh, free_node);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::size_t budget = opts.budget - used;
    const int restarts = std::max(1, opts.restarts);
    for (int r = 0; r < restarts && budget > 0 && !tr.found(); ++r) {
      std::vector<double> phi(mesh.node_count() * static_cast<std::size_t>(N), 0.0);
      const double amp = (r + 1) * 0.5 * mesh.h() * std::max(1.0, xi.norm());
      for (std::size_t v = 1; v < mesh.node_count(); ++v)
        for (int c = 0; c < N; ++c) phi[v * static_cast<std::size_t>(N) + static_cast<std::size_t>(c)] = amp * U(rng);
      std::size_t share = budget / static_cast<std::size_t>(restarts - r);
      const std::size_t before = share;
      auto st = fd.descend(fd.evaluate(std::move(phi)), 0.25 * mesh.h() * std::max(1.0, xi.norm()), share, rng,
                           target);
      budget -= before - share;
      used += before - share;
      const TestField field = mesh.field(st.phi, N, FieldKind::periodic);
      const auto vals = field_values(xi, field);
      tr.offer(fx - max_f(f, vals), [&] {
        Witness w;
        w.reference = xi;
        w.support = vals;
        w.weights = weights_of(field);
        w.construction = "periodic piecewise-affine field after coordinate descent";
        w.detail = {{"subdivisions", k}, {"kind", "periodic"}, {"grad_bound", field.grad_bound}};
        return w;
      });
    }
  }
  return tr.verdict(Notion::periodic_weak_morrey, used, opts.seed);
}

Verdict search_strong_morrey_violation(const Supremand& f, const MatrixPoint& xi, const StrongSearchOptions& opts) {
  if (!(xi.dims() == f.dims)) throw Error(ErrorCode::dimension_mismatch, "base point shape differs from f");
  if (!(opts.K > 0.0)) throw Error(ErrorCode::invalid_argument, "K must be positive");
  const std::vector<double> deltas = opts.deltas.empty() ? default_delta_schedule() : opts.deltas;
  for (std::size_t i = 0; i < deltas.size(); ++i)
    if (!(deltas[i] > 0.0) || (i && !(deltas[i] < deltas[i - 1])))
      throw Error(ErrorCode::invalid_argument, "delta schedule must decrease and stay positive");
  const int n = xi.cols();
  const double fx = f(xi), tol = opts.field.tol;
  std::mt19937_64 rng(opts.field.seed);
  std::size_t used = 0;

  // Fixed gradient sets whose boundary deviation can be made as small as
  // wanted by scaling (layers or periods); their gap does not depend on delta.
  struct Fixed {
    std::vector<MatrixPoint> values;
    std::vector<double> weights;
    double gap;
    double amplitude;  // boundary sup of the unscaled field
    std::string how;
    nlohmann::json detail;
  };
  std::vector<Fixed> fixed;
  const std::size_t random_count = std::min<std::size_t>(opts.field.budget / 8, 128);
  for (const auto& d : detail::decompositions(f, xi, random_count, opts.field.radius, rng)) {
    TestField field;
    try {
      field = realize_simple_laminate(d.p, d.q, d.lambda, 1);
    } catch (const Error&) {
      continue;
    }
    ++used;
    if (field.grad_bound > opts.K) continue;
    auto vals = field_values(xi, field);
    const double gap = fx - max_f(f, vals);
    const auto dir = RankOneDirection::factor(d.p - d.q);
    fixed.push_back({std::move(vals), weights_of(field), gap, simple_laminate_amplitude(dir, d.lambda, 1),
                     "scaled simple laminate", {{"lambda", d.lambda}, {"a", dir.a()}, {"nu", dir.nu()}}});
  }
  for (const auto& sf : opts.seed_fields) {
    if (!(sf.dims == xi.dims()) || sf.grad_bound > opts.K) continue;
    ++used;
    auto vals = field_values(xi, sf);
    const double gap = fx - max_f(f, vals);
    const double amp = sf.kind == FieldKind::zero_boundary ? 0.0 : std::max(sf.boundary_sup, sf.sup_norm);
    fixed.push_back({std::move(vals), weights_of(sf), gap, amp, std::string("scaled ") + std::string(to_string(sf.kind)) + " field", {}});
  }
  std::size_t best_fixed = fixed.size();
  for (std::size_t i = 0; i < fixed.size(); ++i)
    if (best_fixed == fixed.size() || fixed[i].gap > fixed[best_fixed].gap) best_fixed = i;

  // Affine probes phi(x) = zeta (x - center), |zeta|_F = 2 delta / sqrt(n).
  std::vector<MatrixPoint> dirs;
  const Dims dims = xi.dims();
  for (int e = 0; e < dims.size(); ++e) {
    std::vector<double> v(static_cast<std::size_t>(dims.size()), 0.0);
    v[static_cast<std::size_t>(e)] = 1.0;
    dirs.emplace_back(dims, v);
    v[static_cast<std::size_t>(e)] = -1.0;
    dirs.emplace_back(dims, v);
  }
  if (xi.norm() > 0.0) {
    dirs.push_back(xi * (1.0 / xi.norm()));
    dirs.push_back(xi * (-1.0 / xi.norm()));
  }
  {
    PointSampler s(dims, 1.0, rng());
    for (int r = 0; r < 4; ++r) {
      MatrixPoint z = s.uniform_point();
      if (z.norm() > 0.0) dirs.push_back(z * (1.0 / z.norm()));
    }
  }

  nlohmann::json per_delta = nlohmann::json::array();
  std::vector<double> gaps;
  std::vector<MatrixPoint> last_support;
  std::vector<double> last_weights;
  std::string last_how;
  nlohmann::json last_detail;
  for (double delta : deltas) {
    double g = -std::numeric_limits<double>::infinity();
    std::string how;
    std::vector<MatrixPoint> support;
    std::vector<double> weights;
    nlohmann::json det;
    if (best_fixed < fixed.size()) {
      const Fixed& F = fixed[best_fixed];
      g = F.gap;
      how = F.how;
      support = F.values;
      weights = F.weights;
      const int layers = F.amplitude > delta ? static_cast<int>(std::ceil(F.amplitude / delta)) : 1;
      det = F.detail;
      det["layers"] = layers;
      det["boundary_sup"] = n == 1 && how == "scaled simple laminate" ? 0.0 : F.amplitude / layers;
    }
    const double scale = 2.0 * delta / std::sqrt(static_cast<double>(n));
    for (const auto& dz : dirs) {
      ++used;
      const MatrixPoint z = dz * scale;
      const MatrixPoint v = xi + z;
      const double gap = fx - f(v);
      if (gap > g) {
        g = gap;
        how = "affine probe";
        support = {v};
        weights = {1.0};
        det = {{"zeta", supcon::to_json(z)}, {"boundary_sup", delta}};
      }
    }
    gaps.push_back(g);
    per_delta.push_back({{"delta", delta}, {"gap", g}, {"construction", how}});
    last_support = std::move(support);
    last_weights = std::move(weights);
    last_how = how;
    last_detail = std::move(det);
  }

  const double min_gap = *std::min_element(gaps.begin(), gaps.end());
  const double epsilon = min_gap - tol;
  const double mid = gaps[gaps.size() / 2], last = gaps.back();
  const bool persistent = last >= 0.5 * mid;
  Verdict v;
  v.notion = Notion::strong_morrey;
  v.seed = opts.field.seed;
  v.tol = tol;
  v.budget_used = used;
  v.detail = {{"K", opts.K}, {"per_delta", per_delta}, {"epsilon", epsilon}, {"persistent", persistent}};
  if (epsilon > tol && persistent) {
    v.outcome = Outcome::violated;
    Witness w;
    w.reference = xi;
    w.support = last_support;
    w.weights = last_weights;
    w.gap = fx - max_f(f, last_support);
    w.construction = last_how;
    w.detail = last_detail;
    w.detail["delta"] = deltas.back();
    w.detail["epsilon"] = epsilon;
    v.witness = w;
  }
  return v;
}

}  // namespace supcon
