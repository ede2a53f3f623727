#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "supcon/error.hpp"
#include "supcon/envelope.hpp"
#include "supcon/fem1d.hpp"

using namespace supcon;

namespace {

Supremand entry(const char* name) { return corpus_entry(name).supremand(Dims{1, 1}); }

double mean(const std::vector<double>& g) { return std::accumulate(g.begin(), g.end(), 0.0) / g.size(); }

}  // namespace

TEST_CASE("global minimum feasible") {
  Mesh1D m;
  m.xi = 0.0;
  const auto r = minimize_Fp(entry("abs"), 4.0, m);
  CHECK(r.min_value == doctest::Approx(0.0));
  for (double g : r.gradient_per_cell) CHECK(g == doctest::Approx(0.0));
}

TEST_CASE("double well oscillates between the wells") {
  for (int cells : {8, 64}) {
    Mesh1D m;
    m.cells = cells;
    m.xi = 0.0;
    const auto r = minimize_Fp(entry("double_well_1d"), 2.0, m);
    CHECK(r.min_value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(mean(r.gradient_per_cell)) <= 1e-12);
  }
}

TEST_CASE("mean constraint holds for every returned profile") {
  for (double xi : {-1.3, 0.0, 0.37, 2.0}) {
    Mesh1D m;
    m.cells = 37;
    m.xi = xi;
    const auto r = minimize_Fp(entry("exampleD_scalar"), 8.0, m);
    CHECK(std::abs(mean(r.gradient_per_cell) - xi) <= 1e-10);
  }
}

TEST_CASE("clamp1d at slope 2 approaches the level-convex lsc envelope") {
  Mesh1D m;
  m.xi = 2.0;
  const double p = 128.0, G = 10.0;
  const auto r = minimize_Fp(entry("clamp1d"), p, m);
  const double normalized = std::pow(m.length(), -1.0 / p) * r.min_value;
  // Two-slope oracle: slope G on a fraction theta, slope s elsewhere.
  double best = 1.0;
  for (int k = 0; k <= 200000; ++k) {
    const double sl = -G + (1.0 + G) * k / 200000.0;
    const double theta = (m.xi - sl) / (G - sl);
    const double fs = std::clamp(sl, 0.0, 1.0);
    best = std::min(best, theta + (1.0 - theta) * std::pow(fs, p));
  }
  const double oracle = std::pow(best, 1.0 / p);
  CHECK(normalized >= oracle - 1e-9);
  CHECK(normalized == doctest::Approx(oracle).epsilon(1e-3));
  CHECK(normalized > 0.98);
}

TEST_CASE("gamma-limit experiment") {
  Mesh1D m;
  {
    const auto& e = corpus_entry("exampleD_scalar");
    FeOptions o;
    o.extension = e.default_outside();
    const auto r = gamma_limit_experiment(e.supremand(), 1.5, default_p_schedule(), m, o);
    CHECK(r.classification() == "consistent-with-curl-infty");
    CHECK(std::abs(r.per_p.back().normalized - r.f_xi) <= 0.05 * r.f_xi);
    CHECK(r.monotone);
  }
  {
    const auto& e = corpus_entry("clamp1d");
    FeOptions o;
    o.extension = e.default_outside();
    const auto r = gamma_limit_experiment(e.supremand(), 1.0, default_p_schedule(), m, o);
    CHECK(r.classification() == "gap-detected");
    CHECK(r.limit_estimate < r.f_xi);
    CHECK(r.lslc_value == doctest::Approx(1.0));
  }
  {
    const Supremand c{"constant", {1, 1}, [](const MatrixPoint&) { return 2.5; }, {}};
    const auto r = gamma_limit_experiment(c, 0.3, {2, 16}, m);
    for (const auto& pt : r.per_p) CHECK(pt.normalized == doctest::Approx(2.5));
    CHECK_FALSE(r.gap_detected);
  }
}

TEST_CASE("argument checks") {
  Mesh1D bad;
  bad.cells = 1;
  CHECK_THROWS_AS(minimize_Fp(entry("abs"), 2.0, bad), Error);
  Mesh1D m;
  CHECK_THROWS_AS(minimize_Fp(entry("abs"), 0.5, m), Error);
  m.xi = 50.0;
  CHECK_THROWS_AS(minimize_Fp(entry("abs"), 2.0, m), Error);
  CHECK_THROWS_AS(gamma_limit_experiment(entry("abs"), 0.0, {4, 2}, Mesh1D{}), Error);
  const Supremand neg{"neg", {1, 1}, [](const MatrixPoint& x) { return x[0]; }, {}};
  CHECK_THROWS_AS(minimize_Fp(neg, 2.0, Mesh1D{}), Error);
}
