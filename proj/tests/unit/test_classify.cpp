#include <doctest.h>

#include <cmath>

#include "supcon/classify.hpp"
#include "supcon/report.hpp"

using namespace supcon;

namespace {

Supremand entry(const char* name) { return corpus_entry(name).supremand(); }

MatrixPoint diag2(double a, double b) { return MatrixPoint(2, 2, {a, 0, 0, b}); }

void check_replay(const Verdict& v, const Supremand& f) {
  REQUIRE(v.violated());
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->gap > v.tol);
  CHECK(std::abs(replay_gap(*v.witness, f) - v.witness->gap) <= 1e-12);
}

}  // namespace

TEST_CASE("level convexity") {
  const auto arctan = entry("arctan_det");
  const auto v = check_level_convex(arctan);
  check_replay(v, arctan);
  CHECK(v.seed == kDefaultSeed);

  const DiscreteMeasure mid({diag2(2, 0), diag2(0, 2)}, {0.5, 0.5});
  const auto j = check_supremal_jensen(arctan, {mid});
  check_replay(j, arctan);
  CHECK(j.witness->gap == doctest::Approx(std::atan(1.0)));

  CHECK_FALSE(check_level_convex(entry("clamp1d")).violated());
  CHECK_FALSE(check_level_convex(entry("exampleD_scalar")).violated());

  const auto dw = entry("double_well_1d");
  const DiscreteMeasure wells({MatrixPoint::scalar(-1), MatrixPoint::scalar(1)}, {0.5, 0.5});
  const auto jw = check_supremal_jensen(dw, {wells});
  check_replay(jw, dw);
  CHECK(jw.witness->gap == doctest::Approx(1.0));
  check_replay(check_level_convex(dw), dw);
}

TEST_CASE("supremal Jensen: Dirac measures and the level-convex case") {
  const auto clamp = entry("clamp1d");
  std::vector<DiscreteMeasure> diracs;
  for (double t : {-1.0, 0.2, 0.7, 3.0}) diracs.push_back(DiscreteMeasure::dirac(MatrixPoint::scalar(t)));
  CHECK_FALSE(check_supremal_jensen(clamp, diracs).violated());
  CHECK_FALSE(check_supremal_jensen(entry("double_well_1d"), diracs).violated());
  CHECK_FALSE(check_supremal_jensen(clamp, two_atom_measures({1, 1}, clamp.anchors, {})).violated());
}

TEST_CASE("discrete measures") {
  CHECK_THROWS(DiscreteMeasure({MatrixPoint::scalar(0)}, {0.5}));
  CHECK_THROWS(DiscreteMeasure({MatrixPoint::scalar(0), MatrixPoint::scalar(1)}, {1.5, -0.5}));
  const DiscreteMeasure m({MatrixPoint::scalar(0), MatrixPoint::scalar(4)}, {1.0, 0.0});
  CHECK(m.support().size() == 1);
  CHECK(m.barycenter()[0] == 0.0);
}

TEST_CASE("rank-one quasiconvexity") {
  CHECK_FALSE(check_rank_one_qcx(entry("arctan_det")).violated());
  const auto pair = entry("one_minus_chi_pair");
  const auto v = check_rank_one_qcx(pair);
  check_replay(v, pair);
  REQUIRE(v.witness->support.size() == 2);
  CHECK(is_rank_one_connected(v.witness->support[0], v.witness->support[1]));
  CHECK_FALSE(check_rank_one_qcx(entry("abs")).violated());
}

TEST_CASE("polyquasiconvexity, necessary test") {
  CHECK_FALSE(check_polyquasiconvex_necessary(entry("arctan_det")).violated());
  const auto dw = entry("double_well_1d");
  check_replay(check_polyquasiconvex_necessary(dw), dw);
  const auto pair = entry("one_minus_chi_pair");
  check_replay(check_polyquasiconvex_necessary(pair), pair);
}

TEST_CASE("weak Morrey search") {
  const auto dw = entry("double_well_1d");
  const auto v = search_weak_morrey_violation(dw, MatrixPoint::scalar(0.0));
  check_replay(v, dw);
  CHECK(v.witness->gap == doctest::Approx(1.0));

  CHECK_FALSE(search_weak_morrey_violation(entry("one_minus_chi_pair"), MatrixPoint::zeros({2, 2})).violated());
  const auto arctan = entry("arctan_det");
  for (const auto& xi : {MatrixPoint::identity(2), diag2(1, 0), MatrixPoint(2, 2, {0.5, -1, 0.3, 2})})
    CHECK_FALSE(search_weak_morrey_violation(arctan, xi).violated());
}

TEST_CASE("classify report on three corpus entries") {
  ClassifyConfig cfg;
  cfg.budget = 20000;
  {
    const auto r = classify_report(corpus_entry("clamp1d"), cfg);
    for (const auto& v : r.verdicts) CHECK_FALSE(v.violated());
    CHECK(r.consistent());
  }
  {
    const auto r = classify_report(corpus_entry("arctan_det"), cfg);
    CHECK(r.verdict(Notion::level_convex).violated());
    for (Notion n : {Notion::rank_one, Notion::polyquasiconvex, Notion::weak_morrey})
      CHECK_FALSE(r.verdict(n).violated());
    CHECK(r.consistent());
  }
  {
    const auto r = classify_report(corpus_entry("one_minus_chi_pair"), cfg);
    CHECK_FALSE(r.verdict(Notion::weak_morrey).violated());
    for (Notion n : {Notion::rank_one, Notion::periodic_weak_morrey, Notion::strong_morrey})
      CHECK(r.verdict(n).violated());
    CHECK(r.consistent());
    const auto j = r.to_json();
    CHECK(j["verdicts"].size() == 7);
    CHECK(j["config"]["budget"] == 20000);
  }
}

TEST_CASE("report flags verdicts that contradict the hierarchy") {
  // A function whose documented flags are deliberately wrong.
  const auto f = entry("double_well_1d");
  const std::vector<DocumentedProperty> wrong{{Notion::level_convex, true, "claimed"}};
  ClassifyConfig cfg;
  cfg.budget = 2000;
  cfg.field_points = 2;
  const auto r = classify_report(f, cfg, &wrong);
  CHECK(r.mismatches.size() == 1);
  CHECK_FALSE(r.consistent());
}
