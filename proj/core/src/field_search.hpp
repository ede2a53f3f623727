#pragma once

// Shared machinery of the Morrey-type searches: rank-one decompositions of
// a base point and coordinate descent over nodal values on a Kuhn mesh.

#include <cstddef>
#include <random>
#include <vector>

#include "supcon/classify.hpp"
#include "supcon/testfield.hpp"

namespace supcon::detail {

/// xi = lambda p + (1 - lambda) q with p - q rank-one.
struct Decomposition {
  MatrixPoint p, q;
  double lambda;
  bool exact;  // from the anchors, as opposed to random
};

/// Anchor pairs whose segment passes through xi, then `random_count`
/// random rank-one splittings of xi.
std::vector<Decomposition> decompositions(const Supremand& f, const MatrixPoint& xi, std::size_t random_count,
                                          double radius, std::mt19937_64& rng);

class FieldDescent {
 public:
  struct State {
    std::vector<double> phi;
    double max = 0.0;
    double lse = 0.0;
  };

  /// free_node[v] marks nodes whose values may move.
  FieldDescent(const Supremand& f, const MatrixPoint& xi, const KuhnMesh& mesh, std::vector<char> free_node);

  State evaluate(std::vector<double> phi) const;
  /// Coordinate descent with step halving; consumes moves from `budget` and
  /// stops early once the max drops below `target`.
  State descend(State start, double step, std::size_t& budget, std::mt19937_64& rng, double target) const;

  const KuhnMesh& mesh() const { return mesh_; }
  int rows() const { return N_; }

 private:
  double cell_value(std::size_t cell, const std::vector<double>& phi, std::vector<double>& g) const;
  void summarize(const std::vector<double>& vals, double& mx, double& lse) const;

  const Supremand& f_;
  MatrixPoint xi_;
  const KuhnMesh& mesh_;
  int N_;
  std::vector<std::size_t> dofs_;
};

/// Nodal values of a * min(sawtooth(x . nu), mu dist(x, boundary)) for the
/// decomposition (p - q = a (x) nu); exact zero boundary.
std::vector<double> cutoff_laminate(const KuhnMesh& mesh, const Decomposition& d, int layers, double mu,
                                    bool cutoff);

}  // namespace supcon::detail
