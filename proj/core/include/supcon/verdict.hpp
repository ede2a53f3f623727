#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "supcon/funcspace.hpp"
#include "supcon/matspace.hpp"
#include "supcon/notions.hpp"

namespace supcon {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

enum class Outcome { holds_within_budget, violated };

std::string_view to_string(Outcome o);

/// A finite probability measure on matrices.
class DiscreteMeasure {
 public:
  /// Weights must be >= 0, sum to 1 within 1e-12 and include a positive one.
  DiscreteMeasure(std::vector<MatrixPoint> atoms, std::vector<double> weights);
  static DiscreteMeasure dirac(const MatrixPoint& xi);

  const std::vector<MatrixPoint>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  /// Atoms with strictly positive weight.
  std::vector<MatrixPoint> support() const;
  MatrixPoint barycenter() const;

 private:
  std::vector<MatrixPoint> atoms_;
  std::vector<double> weights_;
};

/// A concrete counterexample: f(reference) exceeds f on every support
/// point by `gap`.
struct Witness {
  MatrixPoint reference;
  std::vector<MatrixPoint> support;
  std::vector<double> weights;
  double gap = 0.0;
  std::string construction;
  nlohmann::json detail = nlohmann::json::object();
};

/// f(reference) - max over support of f.
double replay_gap(const Witness& w, const Supremand& f);

struct Verdict {
  Notion notion = Notion::level_convex;
  Outcome outcome = Outcome::holds_within_budget;
  std::optional<Witness> witness;
  std::size_t budget_used = 0;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-9;
  nlohmann::json detail = nlohmann::json::object();

  bool violated() const { return outcome == Outcome::violated; }
  nlohmann::json to_json() const;
};

nlohmann::json to_json(const MatrixPoint& xi);
MatrixPoint matrix_from_json(const nlohmann::json& j);

/// Keeps the largest-gap witness seen; used by every search loop.
class WitnessTracker {
 public:
  explicit WitnessTracker(double tol) : tol_(tol) {}
  /// Records the candidate if it beats tol and the current best.
  bool offer(double gap, const std::function<Witness()>& make);
  bool found() const { return best_.has_value(); }
  const std::optional<Witness>& best() const { return best_; }
  Verdict verdict(Notion n, std::size_t used, std::uint64_t seed) const;

 private:
  double tol_;
  std::optional<Witness> best_;
};

}  // namespace supcon
