#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "supcon/classify.hpp"
#include "supcon/matspace.hpp"
#include "supcon/sampling.hpp"
#include "supcon/testfield.hpp"
#include "supcon/verdict.hpp"

namespace supcon {

/// Finite-order laminate: a binary tree of rank-one splittings.
class Laminate {
 public:
  static Laminate leaf(const MatrixPoint& xi);
  /// lambda in (0, 1); barycenter(left) - barycenter(right) must be
  /// rank-one. Throws not_rank_one otherwise.
  static Laminate split(double lambda, Laminate left, Laminate right);
  /// Split(lambda, Leaf(xi), Leaf(eta)).
  static Laminate simple(const MatrixPoint& xi, const MatrixPoint& eta, double lambda);

  bool is_leaf() const;
  const MatrixPoint& matrix() const;  // leaf only
  double lambda() const;
  const RankOneDirection& direction() const;
  const Laminate& left() const;
  const Laminate& right() const;
  int order() const;
  Dims dims() const;

  /// Leaves with their product weights, left to right.
  std::vector<std::pair<MatrixPoint, double>> atoms() const;
  /// lambda * bar(left) + (1 - lambda) * bar(right), recursively.
  MatrixPoint barycenter_recursive() const;
  nlohmann::json to_json() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

/// Sum of weight * atom.
MatrixPoint laminate_barycenter(const Laminate& L);

/// max of f over atoms of positive weight.
double nu_ess_sup(const Laminate& L, const std::function<double(const MatrixPoint&)>& f);

/// Random laminates of order 1..max_order, built top-down from a
/// barycenter by rank-one splittings.
class LaminateSampler {
 public:
  LaminateSampler(Dims dims, double radius, std::uint64_t seed, int max_order = 3);
  Laminate next();
  Laminate around(const MatrixPoint& barycenter, int order);

 private:
  Laminate grow(const MatrixPoint& bar, int order, double scale);
  Dims dims_;
  double radius_;
  int max_order_;
  std::size_t count_ = 0;
  PointSampler sampler_;
};

/// f(barycenter) <= nu-ess sup f over simple laminates on anchor pairs and
/// then sampled laminates of order <= 3.
Verdict check_curl_young_on_laminates(const Supremand& f, const CheckOptions& opts = {});

/// Periodic sawtooth phi with Dphi = (1 - lambda)(xi - eta) on a volume
/// fraction lambda and -lambda (xi - eta) on the rest, built in the cube
/// rotated so that its first axis is the lamination normal. Each of the
/// `layers` periods holds two slabs.
TestField realize_simple_laminate(const MatrixPoint& xi, const MatrixPoint& eta, double lambda, int layers);

/// Exact simple laminates through xi (anchor decompositions, then random
/// ones), then coordinate descent over periodic piecewise-affine fields.
Verdict check_periodic_weak_morrey(const Supremand& f, const MatrixPoint& xi, const FieldSearchOptions& opts = {});

struct StrongSearchOptions {
  double K = 4.0;
  /// Decreasing boundary bounds; empty means 2^-1 .. 2^-12.
  std::vector<double> deltas;
  FieldSearchOptions field;
  /// Zero-boundary or periodic fields found elsewhere; used after scaling.
  std::vector<TestField> seed_fields;
};

std::vector<double> default_delta_schedule();

/// For each delta: the best gap f(xi) - max f(xi + Dphi) over fields with
/// |Dphi| <= K and boundary sup <= delta. Violated iff the smallest of these
/// gaps beats 2 tol and the gap does not decay with delta.
Verdict search_strong_morrey_violation(const Supremand& f, const MatrixPoint& xi,
                                       const StrongSearchOptions& opts = {});

}  // namespace supcon
