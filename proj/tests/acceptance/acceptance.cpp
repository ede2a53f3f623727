// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: acceptance [path-to-test_properties]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "supcon/classify.hpp"
#include "supcon/envelope.hpp"
#include "supcon/fem1d.hpp"
#include "supcon/laminate.hpp"
#include "supcon/report.hpp"

using namespace supcon;

namespace {

struct Result {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [" << what << "]";
    }
  }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Result&)>& body) {
  Result o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s (%.1fs)%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.note.str().c_str());
  std::fflush(stdout);
}

Supremand scalar_supremand(const CorpusEntry& e) { return e.any_dims ? e.supremand(Dims{1, 1}) : e.supremand(); }

std::vector<const CorpusEntry*> scalar_entries(bool continuous_only) {
  std::vector<const CorpusEntry*> out;
  for (const auto& e : corpus())
    if ((e.any_dims || (e.dims.rows == 1 && e.dims.cols == 1)) && (!continuous_only || e.continuous))
      out.push_back(&e);
  return out;
}

SampledFunction sample_scalar(const CorpusEntry& e, double R, double h, OutsideMode mode) {
  return sample(scalar_supremand(e), grid_with_spacing({1, 1}, R, h), mode);
}

MatrixPoint midpoint(const MatrixPoint& a, const MatrixPoint& b) { return axpby(0.5, a, 0.5, b); }

// ((f^p)**(xi))^{1/p} over slopes in [-G, G], by chords between sample points.
double chord_power_envelope(const Supremand& f, double p, double xi, double G, double h) {
  const int n = static_cast<int>(std::lround(2 * G / h)) + 1;
  std::vector<double> x(n), v(n);
  double M = 0.0;
  for (int i = 0; i < n; ++i) {
    x[i] = -G + i * h;
    v[i] = f(MatrixPoint::scalar(x[i]));
    M = std::max(M, v[i]);
  }
  if (M == 0.0) return 0.0;
  for (double& y : v) y = std::pow(y / M, p);
  double best = std::pow(f(MatrixPoint::scalar(xi)) / M, p);
  for (int i = 0; i < n && x[i] <= xi; ++i)
    for (int j = n - 1; j > i && x[j] >= xi; --j) {
      const double t = (xi - x[i]) / (x[j] - x[i]);
      best = std::min(best, (1.0 - t) * v[i] + t * v[j]);
    }
  return M * std::pow(best, 1.0 / p);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string properties = argc > 1 ? argv[1] : "";

  run(1, "hierarchy reproduction on the classification corpus", [](Result& o) {
    ClassifyConfig cfg;
    cfg.budget = 100000;
    const auto t0 = std::chrono::steady_clock::now();
    for (const char* name :
         {"clamp1d", "exampleD_scalar", "arctan_det", "one_minus_chi_pair", "double_well_1d", "chi_det"}) {
      const auto rep = classify_report(corpus_entry(name), cfg);
      o.require(rep.inconsistencies.empty(), std::string(name) + " inconsistent");
      o.require(rep.mismatches.empty(), std::string(name) + " documented flag mismatch");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < 120.0, "runtime " + std::to_string(secs) + "s");
  });

  run(2, "one_minus_chi_pair: weak holds, periodic-weak and strong violated", [](Result& o) {
    const auto& e = corpus_entry("one_minus_chi_pair");
    const auto f = e.supremand();
    const MatrixPoint xi = midpoint(e.anchors[0], e.anchors[1]);
    FieldSearchOptions fo;
    const auto w = search_weak_morrey_violation(f, xi, fo);
    o.require(!w.violated(), "weak-Morrey violated");
    const auto pw = check_periodic_weak_morrey(f, xi, fo);
    o.require(pw.violated(), "periodic-weak not violated");
    if (pw.witness) {
      double sup = 0.0;
      for (const auto& s : pw.witness->support) sup = std::max(sup, f(s));
      o.require(sup == 0.0, "witness ess-sup nonzero");
      o.require(f(xi) == 1.0, "f(xi) != 1");
      o.require(std::abs(pw.witness->gap - 1.0) <= 1e-12, "gap != 1");
      o.require(std::abs(replay_gap(*pw.witness, f) - 1.0) <= 1e-12, "replay gap != 1");
    }
    const auto s = search_strong_morrey_violation(f, xi);
    o.require(s.violated(), "strong-Morrey not violated");
    o.require(s.detail.value("persistent", false), "gap not persistent");
    const auto& per = s.detail.at("per_delta");
    o.require(per.size() == 12, "delta schedule length");
    for (std::size_t k = 0; k < per.size(); ++k) {
      o.require(per[k].at("delta").get<double>() == std::ldexp(1.0, -static_cast<int>(k) - 1), "delta value");
      o.require(per[k].at("gap").get<double>() > 2 * s.tol, "gap vanishes at delta index " + std::to_string(k));
    }
  });

  run(3, "arctan(det): level convexity fails; rank-one and laminate inequalities hold", [](Result& o) {
    const auto f = corpus_entry("arctan_det").supremand();
    CheckOptions co;
    co.budget = 100000;
    const auto lc = check_level_convex(f, co);
    o.require(lc.violated(), "level convexity not violated");
    if (lc.witness) o.require(std::abs(replay_gap(*lc.witness, f) - lc.witness->gap) <= 1e-12, "replay");
    const auto r1 = check_rank_one_qcx(f, co);
    o.require(!r1.violated(), "rank-one violated");
    o.require(r1.budget_used >= 10000, "rank-one samples");
    const auto cy = check_curl_young_on_laminates(f, co);
    o.require(!cy.violated(), "curl-Young violated");
    o.require(cy.budget_used >= 10000, "laminate samples");
  });

  run(4, "power-law convergence for exampleD_scalar", [](Result& o) {
    const auto f = sample_scalar(corpus_entry("exampleD_scalar"), 4.0, 0.01, OutsideMode::plus_infinity);
    const auto rep = power_law_envelope(f, default_p_schedule(), PowerLawMode::convex_lower);
    o.require(rep.p_schedule.back() == 128.0, "schedule ends at 128");
    const auto& e128 = rep.per_p.back();
    double err = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
      if (std::abs(f.grid().node(k)[0]) <= 2.0 + 1e-12) err = std::max(err, std::abs(e128.value(k) - f.value(k)));
    o.require(err <= 0.05, "sup error " + std::to_string(err));
    o.require(!rep.monotone_violation.has_value(), "reported monotone violation");
    for (std::size_t i = 1; i < rep.per_p.size(); ++i)
      for (std::size_t k = 0; k < f.size(); ++k)
        o.require(rep.per_p[i].value(k) >= rep.per_p[i - 1].value(k) - 1e-7, "monotone at node");
  });

  run(5, "power-law gap for clamp1d", [](Result& o) {
    const auto& e = corpus_entry("clamp1d");
    const auto f = sample(e, grid_with_spacing({1, 1}, 10.0, 0.01));
    const auto rep = power_law_envelope(f, default_p_schedule(), PowerLawMode::convex_lower);
    const auto& g = f.grid();
    std::size_t one = 0;
    for (std::size_t k = 0; k < f.size(); ++k)
      if (std::abs(g.node(k)[0] - 1.0) < std::abs(g.node(one)[0] - 1.0)) one = k;
    o.require(std::abs(g.node(one)[0] - 1.0) < 1e-12, "t = 1 is a node");
    o.require(f.value(one) == 1.0, "f(1) = 1");
    o.require(rep.per_p.back().value(one) <= 0.5, "envelope at 1 = " + std::to_string(rep.per_p.back().value(one)));
    o.require(rep.gap_detected, "gap not flagged");
  });

  run(6, "oracle equivalences", [](Result& o) {
    // (a) 1D lamination hull equals the convex envelope.
    for (const auto* e : scalar_entries(false))
      for (OutsideMode mode : {OutsideMode::plus_infinity, OutsideMode::clamp}) {
        const auto f = sample_scalar(*e, 4.0, 0.01, mode);
        const auto c = convex_envelope(f), l = lamination_hull(f);
        double d = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) d = std::max(d, std::abs(c.value(k) - l.value(k)));
        o.require(d <= 1e-9, "(a) " + e->name);
      }
    // (b) finite-element relaxation against the envelope of f^p.
    Mesh1D mesh;
    mesh.cells = 64;
    FeOptions fo;
    double worst = 0.0;
    for (const auto* e : scalar_entries(true))
      for (double p : {2.0, 8.0, 32.0})
        for (double xi : {-1.5, -0.5, 0.5, 1.5}) {
          mesh.xi = xi;
          const auto f = scalar_supremand(*e);
          const auto r = minimize_Fp(f, p, mesh, fo);
          const double fe = std::pow(mesh.length(), -1.0 / p) * r.min_value;
          const double ref = chord_power_envelope(f, p, xi, fo.grad_bound, 0.01);
          const double err = std::abs(fe - ref);
          if (ref > 0.0) worst = std::max(worst, err / ref);
          if (err > std::max(0.02 * ref, 1e-3))
            o.require(false, "(b) " + e->name + " p=" + std::to_string(p) + " xi=" + std::to_string(xi));
        }
    o.note << " (b) worst relative error " << worst << ";";
    // (c) convex envelope against the brute-force epigraph hull.
    std::mt19937_64 rng(31337);
    for (const GridSpec& g : {GridSpec{{1, 1}, 1.0, 1001}, GridSpec{{1, 2}, 1.0, 11}, GridSpec{{1, 3}, 1.0, 4},
                              GridSpec{{2, 2}, 1.0, 3}}) {
      for (int trial = 0; trial < 3; ++trial) {
        const auto f = oracle::random_function(g, rng, OutsideMode::plus_infinity);
        const auto c = convex_envelope(f);
        const auto ref = g.d() == 1 ? oracle::lower_hull_by_chords(f.values()) : oracle::convex_envelope_by_facets(f);
        double d = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) d = std::max(d, std::abs(c.value(k) - ref[k]));
        if (d > 1e-12) o.require(false, "(c) d=" + std::to_string(g.d()) + " diff " + std::to_string(d));
      }
    }
  });

  run(7, "supremal Jensen agrees with level convexity on the corpus", [](Result& o) {
    CheckOptions co;
    co.budget = 100000;
    for (const auto& e : corpus()) {
      const auto f = e.supremand();
      const auto lc = check_level_convex(f, co);
      const auto j = check_supremal_jensen(f, two_atom_measures(f.dims, f.anchors, co), co.tol, co.seed);
      o.require(lc.violated() == j.violated(), e.name);
      if (lc.violated() && j.violated()) o.require(lc.witness->gap == j.witness->gap, e.name + " gap");
    }
  });

  run(8, "Pasch-Hausdorff transforms", [](Result& o) {
    std::vector<std::pair<const CorpusEntry*, SampledFunction>> cases;
    for (const auto& e : corpus()) {
      if (e.any_dims || (e.dims.rows == 1 && e.dims.cols == 1))
        cases.emplace_back(&e, sample_scalar(e, 4.0, 0.01, e.default_outside()));
      else
        cases.emplace_back(&e, sample(e.supremand(), GridSpec{e.dims, 2.0, 7}, e.default_outside()));
    }
    for (const auto& [e, f] : cases) {
      const auto& g = f.grid();
      std::vector<MatrixPoint> nodes;
      for (std::size_t k = 0; k < f.size(); ++k) nodes.push_back(g.node(k));
      std::vector<SampledFunction> fam;
      for (double lambda = 1; lambda <= 64; lambda *= 2) fam.push_back(pasch_hausdorff(f, lambda));
      double lambda = 1;
      for (std::size_t i = 0; i < fam.size(); ++i, lambda *= 2) {
        double slope = 0.0;
        for (std::size_t a = 0; a < f.size(); ++a)
          for (std::size_t b = a + 1; b < f.size(); ++b)
            slope = std::max(slope, std::abs(fam[i].value(a) - fam[i].value(b)) / (nodes[a] - nodes[b]).norm());
        o.require(slope <= lambda * (1 + 1e-9), e->name + " Lipschitz at lambda " + std::to_string(lambda));
        if (i > 0)
          for (std::size_t k = 0; k < f.size(); ++k)
            if (fam[i].value(k) < fam[i - 1].value(k)) {
              o.require(false, e->name + " not nondecreasing in lambda");
              break;
            }
      }
      if (e->continuous) {
        double g32 = 0.0, g64 = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
          g32 = std::max(g32, f.value(k) - fam[5].value(k));
          g64 = std::max(g64, f.value(k) - fam[6].value(k));
        }
        o.require(g64 <= g32, e->name + " gap does not shrink");
      }
    }
  });

  run(9, "invariant suites with 1000 randomized trials", [&](Result& o) {
    o.require(!properties.empty(), "no property binary given");
    if (properties.empty()) return;
    const std::string cmd = "\"" + properties + "\" --no-intro --no-version > /dev/null 2>&1";
    o.require(std::system(cmd.c_str()) == 0, "property suite failed");
  });

  return failures == 0 ? 0 : 1;
}
