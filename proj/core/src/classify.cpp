#include <algorithm>
#include <cmath>

#include "supcon/classify.hpp"
#include "supcon/error.hpp"
#include "supcon/laminate.hpp"
#include "supcon/sampling.hpp"

namespace supcon {

namespace {

std::vector<MatrixPoint> structured_points(Dims dims, const std::vector<MatrixPoint>& anchors) {
  std::vector<MatrixPoint> pts;
  auto add = [&](const MatrixPoint& p) {
    if (!(p.dims() == dims)) return;
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  };
  for (const auto& a : anchors) add(a);
  const int d = dims.size();
  const int span = d <= 2 ? 2 : (d <= 6 ? 1 : 0);
  if (span > 0)
    for (const auto& p : lattice_points(dims, span)) add(p);
  return pts;
}

MatrixPoint integer_rank_one(PointSampler& s, int span) {
  const Dims dims = s.dims();
  for (;;) {
    std::vector<double> a(static_cast<std::size_t>(dims.rows)), b(static_cast<std::size_t>(dims.cols));
    bool za = true, zb = true;
    for (auto& x : a) {
      x = s.integer(-span, span);
      za = za && x == 0;
    }
    for (auto& x : b) {
      x = s.integer(-span, span);
      zb = zb && x == 0;
    }
    if (za || zb) continue;
    std::vector<double> e;
    for (double ai : a)
      for (double bj : b) e.push_back(ai * bj);
    return MatrixPoint(dims, std::move(e));
  }
}

double max_over(const Supremand& f, const std::vector<MatrixPoint>& pts) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& p : pts) m = std::max(m, f(p));
  return m;
}

}  // namespace

std::size_t for_each_triple(Dims dims, const std::vector<MatrixPoint>& anchors, const CheckOptions& opts,
                            bool rank_one, const std::function<bool(const Triple&)>& visit) {
  std::size_t used = 0;
  auto emit = [&](const MatrixPoint& a, const MatrixPoint& b, double l) {
    if (used >= opts.budget) return false;
    ++used;
    return visit(Triple{a, b, l});
  };
  const auto pts = structured_points(dims, anchors);
  const auto& lambdas = dyadic_lambdas();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (rank_one && !is_rank_one_connected(pts[i], pts[j])) continue;
      for (double l : lambdas)
        if (!emit(pts[i], pts[j], l)) return used;
    }

  // Every difference is rank-one in the scalar case.
  if (dims.scalar_case()) rank_one = false;
  PointSampler s(dims, opts.radius, opts.seed);
  const double R = opts.radius;
  std::size_t index = 1;
  while (used < opts.budget) {
    const std::size_t k = index++;
    const bool local = k % 3 == 2;
    MatrixPoint xi = (k % 5 == 0 && !pts.empty())
                         ? pts[static_cast<std::size_t>(s.integer(0, static_cast<int>(pts.size()) - 1))]
                         : s.halton_point(k, 0, 2);
    MatrixPoint eta;
    if (!rank_one) {
      eta = local ? xi + s.uniform_point(0.25 * R) : s.halton_point(k, 1, 2);
    } else if (k % 2 == 0) {
      const double t = s.integer(-8, 8) / 4.0;
      if (t == 0.0) continue;
      eta = xi + integer_rank_one(s, 2) * t;
    } else {
      const double t = local ? s.uniform(-0.25 * R, 0.25 * R) : s.uniform(-2.0 * R, 2.0 * R);
      eta = xi + rank_one_matrix(s.rank_one_direction()) * t;
    }
    if (xi == eta) continue;
    if (!emit(xi, eta, s.lambda())) return used;
  }
  return used;
}

namespace {

Verdict two_point_check(const Supremand& f, const CheckOptions& opts, bool rank_one, Notion notion) {
  WitnessTracker tr(opts.tol);
  const std::size_t used = for_each_triple(f.dims, f.anchors, opts, rank_one, [&](const Triple& t) {
    const MatrixPoint z = axpby(t.lambda, t.xi, 1.0 - t.lambda, t.eta);
    const double gap = f(z) - std::max(f(t.xi), f(t.eta));
    tr.offer(gap, [&] {
      Witness w;
      w.reference = z;
      w.support = {t.xi, t.eta};
      w.weights = {t.lambda, 1.0 - t.lambda};
      w.construction = rank_one ? "rank-one segment" : "segment";
      w.detail = {{"lambda", t.lambda}};
      return w;
    });
    return true;
  });
  return tr.verdict(notion, used, opts.seed);
}

}  // namespace

Verdict check_level_convex(const Supremand& f, const CheckOptions& opts) {
  return two_point_check(f, opts, false, Notion::level_convex);
}

Verdict check_rank_one_qcx(const Supremand& f, const CheckOptions& opts) {
  return two_point_check(f, opts, true, Notion::rank_one);
}

std::vector<DiscreteMeasure> two_atom_measures(Dims dims, const std::vector<MatrixPoint>& anchors,
                                               const CheckOptions& opts) {
  std::vector<DiscreteMeasure> out;
  out.reserve(opts.budget);
  for_each_triple(dims, anchors, opts, false, [&](const Triple& t) {
    out.emplace_back(std::vector<MatrixPoint>{t.xi, t.eta}, std::vector<double>{t.lambda, 1.0 - t.lambda});
    return true;
  });
  return out;
}

Verdict check_supremal_jensen(const Supremand& f, const std::vector<DiscreteMeasure>& measures, double tol,
                              std::uint64_t seed) {
  WitnessTracker tr(tol);
  for (const auto& mu : measures) {
    const MatrixPoint bar = mu.barycenter();
    const auto supp = mu.support();
    const double gap = f(bar) - max_over(f, supp);
    tr.offer(gap, [&] {
      Witness w;
      w.reference = bar;
      w.support = supp;
      for (double x : mu.weights())
        if (x > 0.0) w.weights.push_back(x);
      w.construction = "discrete measure";
      return w;
    });
  }
  Verdict v = tr.verdict(Notion::level_convex, measures.size(), seed);
  v.detail["check"] = "supremal-jensen";
  return v;
}

Verdict check_polyquasiconvex_necessary(const Supremand& f, const CheckOptions& opts,
                                        const std::vector<Witness>& seeds) {
  WitnessTracker tr(opts.tol);
  std::size_t used = 0, accepted_tuples = 0, rejected_tuples = 0;
  auto offer_combo = [&](const std::vector<MatrixPoint>& pts, const std::vector<double>& w, const char* how) {
    const MatrixPoint z = combine(pts, w);
    const double gap = f(z) - max_over(f, pts);
    tr.offer(gap, [&] {
      Witness wit;
      wit.reference = z;
      wit.support = pts;
      wit.weights = w;
      wit.construction = how;
      return wit;
    });
  };
  for (const auto& s : seeds) {
    if (s.support.empty() || s.support.size() != s.weights.size()) continue;
    if (!(s.support[0].dims() == f.dims)) continue;
    bool valid = s.support.size() == 1 ||
                 (s.support.size() == 2 && (f.dims.scalar_case() || is_rank_one_connected(s.support[0], s.support[1])));
    if (!valid) continue;
    offer_combo(s.support, s.weights, "seeded rank-one combination");
    ++used;
  }

  // Rank-one pairs: always valid because minors are affine on rank-one lines.
  CheckOptions pair_opts = opts;
  pair_opts.budget = opts.budget > used ? (opts.budget - used) * 2 / 5 : 0;
  used += for_each_triple(f.dims, f.anchors, pair_opts, true, [&](const Triple& t) {
    offer_combo({t.xi, t.eta}, {t.lambda, 1.0 - t.lambda}, "rank-one pair combination");
    return true;
  });

  // Laminate atoms: the barycenter has the averaged minors.
  {
    LaminateSampler ls(f.dims, opts.radius, opts.seed ^ 0x9e3779b97f4a7c15ULL);
    const std::size_t n = opts.budget > used ? (opts.budget - used) / 2 : 0;
    for (std::size_t i = 0; i < n; ++i, ++used) {
      const Laminate L = ls.next();
      std::vector<MatrixPoint> pts;
      std::vector<double> w;
      for (auto& [a, wt] : L.atoms()) {
        pts.push_back(a);
        w.push_back(wt);
      }
      offer_combo(pts, w, "laminate combination");
    }
  }

  // General tuples, accepted only when the higher minors average exactly.
  {
    PointSampler s(f.dims, opts.radius, opts.seed ^ 0x6a09e667f3bcc909ULL);
    const std::size_t t = tau(f.dims.rows, f.dims.cols);
    const std::size_t first = static_cast<std::size_t>(f.dims.size());
    const int max_points = static_cast<int>(std::min<std::size_t>(t + 1, 8));
    std::size_t k = 1;
    while (used < opts.budget) {
      ++used;
      const int m = s.integer(2, std::max(2, max_points));
      std::vector<MatrixPoint> pts;
      std::vector<double> w;
      double sum = 0.0;
      for (int i = 0; i < m; ++i) {
        pts.push_back(k % 2 ? s.lattice_point(2) : s.halton_point(k * 8 + static_cast<std::size_t>(i)));
        w.push_back(s.uniform(0.05, 1.0));
        sum += w.back();
      }
      ++k;
      for (auto& x : w) x /= sum;
      const MatrixPoint z = combine(pts, w);
      bool ok = true;
      if (t > first) {
        const auto Tz = minors(z).values;
        std::vector<double> avg(t, 0.0), mag(t, 0.0);
        for (int i = 0; i < m; ++i) {
          const auto Ti = minors(pts[static_cast<std::size_t>(i)]).values;
          for (std::size_t c = first; c < t; ++c) {
            avg[c] += w[static_cast<std::size_t>(i)] * Ti[c];
            mag[c] += w[static_cast<std::size_t>(i)] * std::abs(Ti[c]);
          }
        }
        for (std::size_t c = first; c < t && ok; ++c) ok = std::abs(Tz[c] - avg[c]) <= 1e-8 * std::max(1.0, mag[c]);
      }
      if (!ok) {
        ++rejected_tuples;
        continue;
      }
      ++accepted_tuples;
      offer_combo(pts, w, "minor-matched tuple");
    }
  }
  Verdict v = tr.verdict(Notion::polyquasiconvex, used, opts.seed);
  v.detail = {{"accepted_tuples", accepted_tuples}, {"rejected_tuples", rejected_tuples}};
  return v;
}

}  // namespace supcon
