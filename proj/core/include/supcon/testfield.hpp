#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supcon/funcspace.hpp"
#include "supcon/matspace.hpp"

namespace supcon {

enum class FieldKind { zero_boundary, periodic, scaled_periodic };

std::string_view to_string(FieldKind k);

/// A cell of the unit cube (or of a rotated copy) on which Dphi is constant.
struct FieldCell {
  std::vector<std::vector<double>> vertices;
  MatrixPoint gradient;
  double volume = 0.0;
};

/// Piecewise-affine phi : Q -> R^N described by its gradient cells.
struct TestField {
  Dims dims;
  FieldKind kind = FieldKind::zero_boundary;
  std::vector<FieldCell> cells;
  double boundary_sup = 0.0;  // max |phi| on the boundary of the cube
  double sup_norm = 0.0;      // max |phi| on the cube
  double grad_bound = 0.0;    // max |Dphi| (Frobenius) over cells
  int layers = 1;
  /// Column-major n x n rotation taking e1 to the lamination normal;
  /// empty for the unrotated cube.
  std::vector<double> rotation;

  /// Distinct gradients with their volume fractions (cells of zero
  /// volume excluded).
  std::vector<std::pair<MatrixPoint, double>> gradient_distribution() const;
};

/// max over cells of positive volume of f(xi + Dphi).
double field_ess_sup(const Supremand& f, const MatrixPoint& xi, const TestField& phi);

/// xi + Dphi over the distinct cell gradients.
std::vector<MatrixPoint> field_values(const MatrixPoint& xi, const TestField& phi);

/// One row per cell vertex: cell, x_0..x_{n-1}, g_0..g_{Nn-1}.
void write_field_csv(const TestField& phi, const std::string& path);

/// The Kuhn (Freudenthal) triangulation of [0,1]^n with k subdivisions per
/// axis. Nodal values live on (k+1)^n nodes, or on k^n nodes when
/// periodic (indices wrap).
class KuhnMesh {
 public:
  KuhnMesh(int n, int k, bool periodic);

  struct Simplex {
    std::vector<std::size_t> nodes;  // v_0..v_n along the permutation path
    std::vector<int> axes;           // axis stepped between v_{i-1} and v_i
  };

  int n() const { return n_; }
  int k() const { return k_; }
  bool periodic() const { return periodic_; }
  double h() const { return 1.0 / k_; }
  std::size_t node_count() const { return node_count_; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  const std::vector<std::size_t>& cells_of(std::size_t node) const { return incident_[node]; }
  double simplex_volume() const { return simplex_volume_; }
  std::vector<int> node_index(std::size_t node) const;
  std::vector<double> node_position(std::size_t node) const;
  bool on_boundary(std::size_t node) const;

  /// phi is node-major: phi[node * N + i].
  MatrixPoint gradient(std::size_t cell, const std::vector<double>& phi, int N) const;
  void gradient_into(std::size_t cell, const std::vector<double>& phi, int N, std::vector<double>& g) const;

  TestField field(const std::vector<double>& phi, int N, FieldKind kind) const;

 private:
  std::size_t wrap_index(const std::vector<int>& idx) const;

  int n_, k_;
  bool periodic_;
  std::size_t node_count_;
  double simplex_volume_;
  std::vector<Simplex> simplices_;
  std::vector<std::vector<std::size_t>> incident_;
};

}  // namespace supcon
