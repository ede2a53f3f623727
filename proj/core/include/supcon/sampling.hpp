#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "supcon/matspace.hpp"

namespace supcon {

/// Fractions used for every convex-combination search before random ones.
const std::vector<double>& dyadic_lambdas();

/// Deterministic point generator for the searches in a box [-R, R]^{N x n}.
class PointSampler {
 public:
  PointSampler(Dims dims, double radius, std::uint64_t seed);

  Dims dims() const { return dims_; }
  double radius() const { return radius_; }
  std::mt19937_64& rng() { return rng_; }

  double uniform(double lo, double hi);
  int integer(int lo, int hi);
  MatrixPoint uniform_point();
  MatrixPoint uniform_point(double radius);
  /// Halton point number `index` (>= 1) using `dims.size() * copies` bases;
  /// copy c selects the c-th block of coordinates.
  MatrixPoint halton_point(std::size_t index, int copy = 0, int copies = 1);
  /// Random point with integer entries in [-span, span].
  MatrixPoint lattice_point(int span);
  /// a (x) nu with a, nu Gaussian (nu normalized).
  RankOneDirection rank_one_direction();
  /// a (x) nu with integer a, nu components in [-span, span], nu normalized.
  RankOneDirection lattice_rank_one(int span = 1);
  /// One of dyadic_lambdas() or, with probability 1/2, uniform in (0.05, 0.95).
  double lambda();

 private:
  Dims dims_;
  double radius_;
  std::mt19937_64 rng_;
};

/// Points with integer entries in [-span, span]^{N x n}.
std::vector<MatrixPoint> lattice_points(Dims dims, int span);

}  // namespace supcon
