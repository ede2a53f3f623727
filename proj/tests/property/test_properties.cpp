// Randomized invariant suites: 1000 trials per property at a fixed seed.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "supcon/classify.hpp"
#include "supcon/envelope.hpp"
#include "supcon/fem1d.hpp"
#include "supcon/laminate.hpp"
#include "supcon/sampling.hpp"

using namespace supcon;

namespace {

constexpr int kTrials = 1000;
constexpr std::uint64_t kSeed = 977;

double max_abs_diff(const SampledFunction& a, const SampledFunction& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.value(k) - b.value(k)));
  return m;
}

GridSpec random_grid(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  switch (pick(rng)) {
    case 0: return GridSpec{{1, 1}, 1.0, 21};
    case 1: return GridSpec{{1, 2}, 1.0, 5};
    default: return GridSpec{{2, 2}, 1.0, 3};
  }
}

// Piecewise-linear scalar function through random values, clamped outside.
Supremand random_scalar(std::mt19937_64& rng, int knots = 9) {
  const auto s = std::make_shared<SampledFunction>(
      oracle::random_function(GridSpec{{1, 1}, 2.0, knots}, rng, OutsideMode::clamp, 0.0, 1.0));
  return Supremand{"random", {1, 1}, [s](const MatrixPoint& x) { return interpolate(*s, x); }, {}};
}

// xi^T A xi + b . xi on 2x2 matrices, often indefinite.
Supremand random_quadratic(std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<double> A(16), b(4);
  for (double& a : A) a = N(rng);
  for (double& c : b) c = N(rng);
  return Supremand{"quadratic", {2, 2}, [A, b](const MatrixPoint& x) {
                     double s = 0.0;
                     for (int i = 0; i < 4; ++i) {
                       s += b[i] * x[i];
                       for (int j = 0; j < 4; ++j) s += x[i] * A[i * 4 + j] * x[j];
                     }
                     return s;
                   },
                   {}};
}

}  // namespace

TEST_CASE("idempotence of the envelope operators") {
  std::mt19937_64 rng(kSeed);
  int conv = 0, lslc = 0, lam = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::random_function(random_grid(rng), rng, OutsideMode::plus_infinity);
    const auto c = convex_envelope(f);
    const auto l = level_convex_lsc_envelope(f);
    conv += max_abs_diff(convex_envelope(c), c) > 1e-9;
    lslc += max_abs_diff(level_convex_lsc_envelope(l), l) != 0.0;
    if (t % 10 == 0) {
      const auto h = lamination_hull(f);
      lam += max_abs_diff(lamination_hull(h), h) > 1e-6;
    }
  }
  CHECK(conv == 0);
  CHECK(lslc == 0);
  CHECK(lam == 0);
}

TEST_CASE("Pasch-Hausdorff: Lipschitz bound and composition bracket") {
  std::mt19937_64 rng(kSeed + 9);
  int lipschitz = 0, bracket = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::random_function(random_grid(rng), rng, OutsideMode::plus_infinity, 0.0, 2.0);
    const double lambda = std::uniform_real_distribution<double>(0.25, 4.0)(rng);
    const auto p = pasch_hausdorff(f, lambda);
    const auto& g = f.grid();
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        const double dist = (g.node(i) - g.node(j)).norm();
        lipschitz += std::abs(p.value(i) - p.value(j)) > lambda * dist * (1.0 + 1e-9);
      }
    // Composing two transforms at lambda lies between the lambda/2 transform and one transform.
    const auto pp = pasch_hausdorff(p, lambda), lo = pasch_hausdorff(f, lambda / 2);
    for (std::size_t k = 0; k < p.size(); ++k) {
      bracket += pp.value(k) > p.value(k);
      bracket += pp.value(k) < lo.value(k) - 1e-12;
    }
  }
  CHECK(lipschitz == 0);
  CHECK(bracket == 0);
}

TEST_CASE("ordering chain: conv <= lamination <= f, conv <= lslc <= f, PH below f and increasing") {
  std::mt19937_64 rng(kSeed + 1);
  int failures = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::random_function(random_grid(rng), rng, OutsideMode::plus_infinity, 0.0, 2.0);
    const auto c = convex_envelope(f);
    const auto l = level_convex_lsc_envelope(f);
    const auto h = lamination_hull(f);
    const auto p1 = pasch_hausdorff(f, 1.0), p2 = pasch_hausdorff(f, 2.0);
    for (std::size_t k = 0; k < f.size(); ++k) {
      failures += c.value(k) > h.value(k) + 1e-9;
      failures += h.value(k) > f.value(k) + 1e-12;
      failures += c.value(k) > l.value(k) + 1e-9;
      failures += l.value(k) > f.value(k);
      failures += p1.value(k) > f.value(k);
      failures += p1.value(k) > p2.value(k);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("laminate barycenter consistency") {
  int failures = 0;
  LaminateSampler s({2, 2}, 2.0, kSeed + 2);
  for (int t = 0; t < kTrials; ++t) {
    const auto L = s.next();
    const auto a = laminate_barycenter(L), b = L.barycenter_recursive();
    for (std::size_t k = 0; k < a.size(); ++k) failures += std::abs(a[k] - b[k]) > 1e-12 * std::max(1.0, b.norm());
    double w = 0.0;
    for (const auto& atom : L.atoms()) {
      failures += !(atom.second > 0.0);
      w += atom.second;
    }
    failures += std::abs(w - 1.0) > 1e-12;
    failures += L.order() > 3;
  }
  CHECK(failures == 0);
}

TEST_CASE("field/measure duality of realized simple laminates") {
  int failures = 0;
  PointSampler ps({2, 2}, 1.5, kSeed + 3);
  const auto arctan = corpus_entry("arctan_det").supremand();
  for (int t = 0; t < kTrials; ++t) {
    const MatrixPoint q = ps.uniform_point();
    const MatrixPoint p = q + rank_one_matrix(ps.rank_one_direction());
    const double lambda = ps.lambda();
    const int layers = 1 + ps.integer(0, 3);
    const auto field = realize_simple_laminate(p, q, lambda, layers);
    const auto dist = field.gradient_distribution();
    if (dist.size() != 2) {
      ++failures;
      continue;
    }
    const MatrixPoint d = p - q;
    for (const auto& [g, w] : dist) {
      const bool first = (g - d * (1.0 - lambda)).norm() <= 1e-12 * (1.0 + d.norm());
      const bool second = (g - d * (-lambda)).norm() <= 1e-12 * (1.0 + d.norm());
      failures += !(first || second);
      failures += std::abs(w - (first ? lambda : 1.0 - lambda)) > 1e-12;
    }
    const MatrixPoint xi = axpby(lambda, p, 1.0 - lambda, q);
    const double lam_sup = nu_ess_sup(Laminate::simple(p, q, lambda), arctan);
    failures += std::abs(field_ess_sup(arctan, xi, field) - lam_sup) > 1e-12;
  }
  CHECK(failures == 0);
}

TEST_CASE("delta-halving of scaled periodic fields") {
  int failures = 0;
  PointSampler ps({1, 1}, 2.0, kSeed + 4);
  PointSampler ps2({2, 2}, 2.0, kSeed + 5);
  for (int t = 0; t < kTrials; ++t) {
    const int k = 1 + ps.integer(0, 7);
    {
      const MatrixPoint q = ps.uniform_point(), p = q + MatrixPoint::scalar(ps.uniform(0.1, 3.0));
      const double lambda = ps.lambda();
      const auto a = realize_simple_laminate(p, q, lambda, k), b = realize_simple_laminate(p, q, lambda, 2 * k);
      failures += b.sup_norm != a.sup_norm / 2;
      failures += b.boundary_sup != a.boundary_sup / 2;
    }
    {
      const MatrixPoint q = ps2.uniform_point(), p = q + rank_one_matrix(ps2.rank_one_direction());
      const double lambda = ps2.lambda();
      const auto a = realize_simple_laminate(p, q, lambda, k), b = realize_simple_laminate(p, q, lambda, 2 * k);
      failures += std::abs(b.boundary_sup - a.boundary_sup / 2) > 1e-12 * (1.0 + a.boundary_sup);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("Jensen over two-atom measures agrees with level convexity; scalar collapse") {
  std::mt19937_64 rng(kSeed + 6);
  int disagreements = 0, collapse = 0, replay = 0;
  CheckOptions o;
  o.budget = 200;
  for (int t = 0; t < kTrials; ++t) {
    const auto f = random_scalar(rng);
    o.seed = kSeed + static_cast<std::uint64_t>(t);
    const auto lc = check_level_convex(f, o);
    const auto j = check_supremal_jensen(f, two_atom_measures(f.dims, f.anchors, o), o.tol, o.seed);
    const auto r1 = check_rank_one_qcx(f, o);
    disagreements += lc.violated() != j.violated();
    collapse += lc.violated() != r1.violated();
    for (const auto* v : {&lc, &j, &r1})
      if (v->violated()) replay += std::abs(replay_gap(*v->witness, f) - v->witness->gap) > 1e-12;
  }
  CHECK(disagreements == 0);
  CHECK(collapse == 0);
  CHECK(replay == 0);
}

TEST_CASE("a rank-one violation is a level-convexity violation") {
  std::mt19937_64 rng(kSeed + 7);
  int failures = 0, rank_one_violations = 0;
  CheckOptions o;
  o.budget = 300;
  for (int t = 0; t < kTrials; ++t) {
    const auto f = random_quadratic(rng);
    o.seed = kSeed + static_cast<std::uint64_t>(t);
    const auto r1 = check_rank_one_qcx(f, o);
    if (!r1.violated()) continue;
    ++rank_one_violations;
    const auto& w = *r1.witness;
    const auto lc = check_supremal_jensen(f, {DiscreteMeasure(w.support, w.weights)}, o.tol);
    failures += !lc.violated();
    failures += std::abs(replay_gap(w, f) - w.gap) > 1e-12;
  }
  CHECK(rank_one_violations > 0);
  CHECK(failures == 0);
}

TEST_CASE("power-law values are nondecreasing in p") {
  std::mt19937_64 rng(kSeed + 8);
  int failures = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::random_function(GridSpec{{1, 1}, 1.0, 21}, rng, OutsideMode::plus_infinity, 0.0, 1.0);
    const auto rep = power_law_envelope(f, {2, 8, 32}, PowerLawMode::convex_lower);
    failures += rep.monotone_violation.has_value();
    failures += rep.max_excess_over_f > 1e-7;
  }
  CHECK(failures == 0);
}

TEST_CASE("minors are affine along rank-one segments") {
  PointSampler ps({3, 3}, 2.0, kSeed + 10);
  int failures = 0;
  for (int t = 0; t < kTrials; ++t) {
    const MatrixPoint xi = ps.uniform_point();
    const MatrixPoint d = rank_one_matrix(ps.rank_one_direction());
    const double l = ps.uniform(0.0, 1.0);
    const auto m0 = minors(xi), m1 = minors(xi + d), ml = minors(axpby(1.0, xi, l, d));
    for (std::size_t k = 0; k < m0.values.size(); ++k) {
      const double affine = (1.0 - l) * m0.values[k] + l * m1.values[k];
      failures += std::abs(ml.values[k] - affine) > 1e-9 * std::max(1.0, std::abs(affine));
    }
    failures += !is_rank_one_connected(xi, xi + d);
  }
  CHECK(failures == 0);
}

TEST_CASE("interpolation stays within the surrounding node values") {
  std::mt19937_64 rng(kSeed + 11);
  int failures = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::random_function(random_grid(rng), rng, OutsideMode::plus_infinity);
    const auto& g = f.grid();
    const double h = g.spacing();
    std::uniform_real_distribution<double> U(-g.radius, g.radius);
    std::vector<double> x(static_cast<std::size_t>(g.d()));
    for (double& c : x) c = U(rng);
    double lo = 1e300, hi = -1e300;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const auto nd = g.node(k);
      bool near = true;
      for (int a = 0; a < g.d(); ++a) near = near && std::abs(nd[a] - x[a]) < h;
      if (!near) continue;
      lo = std::min(lo, f.value(k));
      hi = std::max(hi, f.value(k));
    }
    const double v = interpolate(f, MatrixPoint(g.dims, x));
    failures += v < lo - 1e-12 || v > hi + 1e-12;
  }
  CHECK(failures == 0);
}

TEST_CASE("power-law envelopes preserve coercivity bounds") {
  std::mt19937_64 rng(kSeed + 12);
  int failures = 0;
  const GridSpec g{{1, 1}, 2.0, 41};
  for (int t = 0; t < kTrials; ++t) {
    const double alpha = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    auto f = oracle::random_function(g, rng, OutsideMode::plus_infinity, 0.0, 1.0);
    std::vector<double> v = f.values();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += alpha * g.node(k).norm();
    f = f.with_values(v);
    const auto rep = power_law_envelope(f, {2, 8}, PowerLawMode::convex_lower);
    for (const auto& e : rep.per_p)
      for (std::size_t k = 0; k < e.size(); ++k) failures += e.value(k) < alpha * g.node(k).norm() - 1e-9;
  }
  CHECK(failures == 0);
}
