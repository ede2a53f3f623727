#include <doctest.h>

#include <cmath>

#include "supcon/error.hpp"
#include "supcon/laminate.hpp"

using namespace supcon;

namespace {

Supremand entry(const char* name) { return corpus_entry(name).supremand(); }
MatrixPoint m22(double a, double b, double c, double d) { return MatrixPoint(2, 2, {a, b, c, d}); }

Supremand constant(Dims d, double c) { return Supremand{"constant", d, [c](const MatrixPoint&) { return c; }, {}}; }

}  // namespace

TEST_CASE("barycenters") {
  const auto xi = m22(1, 0, 0, 0), eta = m22(-1, 0, 0, 0);
  CHECK(laminate_barycenter(Laminate::leaf(xi)) == xi);
  const auto s = Laminate::simple(xi, eta, 0.5);
  CHECK(laminate_barycenter(s) == MatrixPoint::zeros({2, 2}));

  // Second order: split the left atom again along e2 (x) e2.
  const auto inner = Laminate::simple(m22(1, 0, 0, 1), m22(1, 0, 0, -1), 0.25);
  const auto outer = Laminate::split(0.5, inner, Laminate::leaf(m22(-1, 0, 0, -0.5)));
  CHECK(outer.order() == 2);
  const auto a = laminate_barycenter(outer), b = outer.barycenter_recursive();
  for (std::size_t k = 0; k < 4; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
  double total = 0.0;
  for (const auto& [m, w] : outer.atoms()) total += w;
  CHECK(total == doctest::Approx(1.0));

  CHECK_THROWS_AS(Laminate::simple(MatrixPoint::identity(2), MatrixPoint::zeros({2, 2}), 0.5), Error);
  CHECK_THROWS_AS(Laminate::simple(xi, eta, 1.0), Error);
}

TEST_CASE("nu-ess sup") {
  const auto f = entry("arctan_det");
  const auto d = Laminate::leaf(MatrixPoint::identity(2));
  CHECK(nu_ess_sup(d, f) == f(MatrixPoint::identity(2)));
  const auto s = Laminate::simple(m22(2, 0, 0, 1), m22(0, 0, 0, 1), 0.5);
  CHECK(nu_ess_sup(s, f) == std::max(f(m22(2, 0, 0, 1)), f(m22(0, 0, 0, 1))));
}

TEST_CASE("curl-Young on laminates") {
  CHECK_FALSE(check_curl_young_on_laminates(entry("clamp1d")).violated());
  CHECK_FALSE(check_curl_young_on_laminates(entry("arctan_det")).violated());
  const auto pair = entry("one_minus_chi_pair");
  const auto v = check_curl_young_on_laminates(pair);
  REQUIRE(v.violated());
  CHECK(v.witness->gap == 1.0);
}

TEST_CASE("realized simple laminates") {
  SUBCASE("1D hat function") {
    const auto t = realize_simple_laminate(MatrixPoint::scalar(1), MatrixPoint::scalar(-1), 0.5, 1);
    const auto dist = t.gradient_distribution();
    REQUIRE(dist.size() == 2);
    for (const auto& [g, w] : dist) {
      CHECK(std::abs(g[0]) == doctest::Approx(1.0));
      CHECK(w == doctest::Approx(0.5));
    }
    CHECK(t.sup_norm == doctest::Approx(0.5));
    CHECK(t.boundary_sup == 0.0);
  }
  SUBCASE("degenerate lambda gives the zero field") {
    const auto t = realize_simple_laminate(MatrixPoint::scalar(1), MatrixPoint::scalar(-1), 1.0, 1);
    for (const auto& [g, w] : t.gradient_distribution()) CHECK(g[0] == 0.0);
  }
  SUBCASE("doubling layers halves the boundary sup") {
    const auto xi = m22(1, 2, 0, 0), eta = m22(0, 0, 0, 0);
    const auto a = realize_simple_laminate(xi, eta, 0.3, 2), b = realize_simple_laminate(xi, eta, 0.3, 4);
    CHECK(b.boundary_sup == doctest::Approx(a.boundary_sup / 2));
    CHECK_FALSE(a.rotation.empty());
  }
  SUBCASE("not rank-one") {
    CHECK_THROWS_AS(realize_simple_laminate(MatrixPoint::identity(2), MatrixPoint::zeros({2, 2}), 0.5, 1), Error);
  }
}

TEST_CASE("periodic-weak Morrey") {
  const auto pair = entry("one_minus_chi_pair");
  const auto v = check_periodic_weak_morrey(pair, MatrixPoint::zeros({2, 2}));
  REQUIRE(v.violated());
  CHECK(v.witness->gap == 1.0);
  CHECK(std::abs(replay_gap(*v.witness, pair) - 1.0) <= 1e-12);

  for (double t : {-0.5, 0.5, 2.0}) CHECK_FALSE(check_periodic_weak_morrey(entry("clamp1d"), MatrixPoint::scalar(t)).violated());
  CHECK_FALSE(check_periodic_weak_morrey(constant({2, 2}, 3.0), MatrixPoint::identity(2)).violated());
}

TEST_CASE("strong Morrey") {
  const auto pair = entry("one_minus_chi_pair");
  const auto v = search_strong_morrey_violation(pair, MatrixPoint::zeros({2, 2}));
  REQUIRE(v.violated());
  CHECK(v.detail["epsilon"].get<double>() == doctest::Approx(1.0));
  CHECK(v.detail["per_delta"].size() == 12);
  for (const auto& row : v.detail["per_delta"]) CHECK(row["gap"].get<double>() == 1.0);

  for (double t : {0.0, 0.5, 1.0}) CHECK_FALSE(search_strong_morrey_violation(entry("clamp1d"), MatrixPoint::scalar(t)).violated());
  for (const auto& xi : {MatrixPoint::identity(2), m22(1, 0, 0, 0), m22(0.3, 1, -1, 0.2)})
    CHECK_FALSE(search_strong_morrey_violation(entry("arctan_det"), xi).violated());

  // The indicator of {det >= 1} drops to 0 under arbitrarily small affine
  // perturbations of the identity.
  CHECK(search_strong_morrey_violation(entry("chi_det"), MatrixPoint::identity(2)).violated());

  StrongSearchOptions bad;
  bad.K = 0.0;
  CHECK_THROWS_AS(search_strong_morrey_violation(pair, MatrixPoint::zeros({2, 2}), bad), Error);
}
