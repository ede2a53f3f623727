#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "supcon/funcspace.hpp"
#include "supcon/verdict.hpp"

namespace supcon {

struct CheckOptions {
  double tol = 1e-9;
  std::size_t budget = 100000;
  std::uint64_t seed = kDefaultSeed;
  /// Random points are drawn from [-radius, radius]^{N x n}.
  double radius = 2.0;
};

/// A candidate (xi, eta, lambda) for the two-point inequality.
struct Triple {
  MatrixPoint xi;
  MatrixPoint eta;
  double lambda;
};

/// Visits opts.budget triples: exhaustive pairs of anchors and small lattice
/// points first, then Halton pairs, then random local pairs. With
/// `rank_one`, eta - xi is rank-one in every triple. Stops early when
/// visit returns false; returns the number visited.
std::size_t for_each_triple(Dims dims, const std::vector<MatrixPoint>& anchors, const CheckOptions& opts,
                            bool rank_one, const std::function<bool(const Triple&)>& visit);

Verdict check_level_convex(const Supremand& f, const CheckOptions& opts = {});
Verdict check_rank_one_qcx(const Supremand& f, const CheckOptions& opts = {});

/// Violated iff f(barycenter) > max of f over the support plus tol.
Verdict check_supremal_jensen(const Supremand& f, const std::vector<DiscreteMeasure>& measures, double tol = 1e-9,
                              std::uint64_t seed = kDefaultSeed);

/// The two-atom measures {xi: lambda, eta: 1 - lambda} of the level-convex
/// triple stream with the same options.
std::vector<DiscreteMeasure> two_atom_measures(Dims dims, const std::vector<MatrixPoint>& anchors,
                                               const CheckOptions& opts);

/// Tests f(sum l_i xi_i) <= max f(xi_i) on combinations with
/// T(sum l_i xi_i) = sum l_i T(xi_i): rank-one pairs, laminate atoms, and
/// random tuples that pass a minors-matching rejection test. `seeds` are
/// earlier witnesses whose supports are tried first.
Verdict check_polyquasiconvex_necessary(const Supremand& f, const CheckOptions& opts = {},
                                        const std::vector<Witness>& seeds = {});

/// Zero-boundary field search on the Kuhn mesh.
struct FieldSearchOptions {
  double tol = 1e-9;
  /// Coordinate-descent moves (plus direct laminate evaluations).
  std::size_t budget = 20000;
  std::uint64_t seed = kDefaultSeed;
  int restarts = 4;
  /// Subdivisions per axis; 0 picks 16 for n <= 2, 8 for n = 3, 4 beyond.
  int subdivisions = 0;
  double radius = 2.0;
};

int default_subdivisions(int n);

/// Looks for phi in W^{1,inf}_0 with max f(xi + Dphi) < f(xi) - tol.
Verdict search_weak_morrey_violation(const Supremand& f, const MatrixPoint& xi, const FieldSearchOptions& opts = {});

}  // namespace supcon
