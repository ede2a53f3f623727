#include <algorithm>
#include <cmath>

#include "supcon/error.hpp"
#include "supcon/verdict.hpp"

namespace supcon {

std::string_view to_string(Outcome o) { return o == Outcome::violated ? "violated" : "holds-within-budget"; }

DiscreteMeasure::DiscreteMeasure(std::vector<MatrixPoint> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty() || atoms_.size() != weights_.size())
    throw Error(ErrorCode::invalid_argument, "measure needs one weight per atom");
  double sum = 0.0;
  bool positive = false;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!(weights_[i] >= 0.0)) throw Error(ErrorCode::invalid_argument, "negative measure weight");
    if (!(atoms_[i].dims() == atoms_[0].dims())) throw Error(ErrorCode::dimension_mismatch, "atoms differ in shape");
    sum += weights_[i];
    positive = positive || weights_[i] > 0.0;
  }
  if (!positive || std::abs(sum - 1.0) > 1e-12)
    throw Error(ErrorCode::invalid_argument, "measure weights must sum to 1");
}

DiscreteMeasure DiscreteMeasure::dirac(const MatrixPoint& xi) { return DiscreteMeasure({xi}, {1.0}); }

std::vector<MatrixPoint> DiscreteMeasure::support() const {
  std::vector<MatrixPoint> s;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (weights_[i] > 0.0) s.push_back(atoms_[i]);
  return s;
}

MatrixPoint DiscreteMeasure::barycenter() const { return combine(atoms_, weights_); }

double replay_gap(const Witness& w, const Supremand& f) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : w.support) worst = std::max(worst, f(s));
  return f(w.reference) - worst;
}

nlohmann::json to_json(const MatrixPoint& xi) {
  return {{"rows", xi.rows()}, {"cols", xi.cols()}, {"entries", xi.entries()}};
}

MatrixPoint matrix_from_json(const nlohmann::json& j) {
  return MatrixPoint(j.at("rows").get<int>(), j.at("cols").get<int>(), j.at("entries").get<std::vector<double>>());
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json j;
  j["notion"] = std::string(notion_id(notion));
  j["statement"] = std::string(notion_statement(notion));
  j["outcome"] = std::string(supcon::to_string(outcome));
  j["budget_used"] = budget_used;
  j["seed"] = seed;
  j["tol"] = tol;
  if (witness) {
    nlohmann::json w;
    w["reference"] = supcon::to_json(witness->reference);
    w["support"] = nlohmann::json::array();
    for (const auto& s : witness->support) w["support"].push_back(supcon::to_json(s));
    w["weights"] = witness->weights;
    w["gap"] = witness->gap;
    w["construction"] = witness->construction;
    w["detail"] = witness->detail;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["detail"] = detail;
  return j;
}

bool WitnessTracker::offer(double gap, const std::function<Witness()>& make) {
  if (!(gap > tol_)) return false;
  if (best_ && gap <= best_->gap) return false;
  best_ = make();
  best_->gap = gap;
  return true;
}

Verdict WitnessTracker::verdict(Notion n, std::size_t used, std::uint64_t seed) const {
  Verdict v;
  v.notion = n;
  v.outcome = best_ ? Outcome::violated : Outcome::holds_within_budget;
  v.witness = best_;
  v.budget_used = used;
  v.seed = seed;
  v.tol = tol_;
  return v;
}

}  // namespace supcon
