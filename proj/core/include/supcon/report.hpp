#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "supcon/funcspace.hpp"
#include "supcon/notions.hpp"
#include "supcon/verdict.hpp"

namespace supcon {

struct ClassifyConfig {
  /// Samples for each pointwise checker (triples, combinations, laminates).
  std::size_t budget = 100000;
  double tol = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  double radius = 2.0;
  /// Moves per base point for the field searches.
  std::size_t field_budget = 4000;
  /// Base points that receive the zero-boundary and periodic searches; the
  /// strong search runs on all of them.
  std::size_t field_points = 8;
  double K = 4.0;

  nlohmann::json to_json() const;
};

struct Report {
  std::string name;
  Dims dims;
  /// The six hierarchy notions in report order, then curl-Young on laminates.
  std::vector<Verdict> verdicts;
  std::vector<MatrixPoint> base_points;
  /// Hierarchy violations among the checkers' own verdicts.
  std::vector<std::string> inconsistencies;
  /// Documented flags contradicted by a violated verdict, or documented
  /// violations the searches did not reproduce.
  std::vector<std::string> mismatches;
  ClassifyConfig config;

  const Verdict& verdict(Notion n) const;
  bool consistent() const { return inconsistencies.empty() && mismatches.empty(); }
  nlohmann::json to_json() const;
};

/// Runs every checker on f and cross-checks the verdicts against the
/// implication table and, when given, the documented flags.
Report classify_report(const Supremand& f, const ClassifyConfig& config = {},
                       const std::vector<DocumentedProperty>* documented = nullptr,
                       bool lower_semicontinuous = true);
Report classify_report(const CorpusEntry& entry, const ClassifyConfig& config = {});

}  // namespace supcon
