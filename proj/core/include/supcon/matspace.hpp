#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace supcon {

/// Shape N x n of a matrix space R^{N x n}.
struct Dims {
  int rows = 1;
  int cols = 1;

  int size() const { return rows * cols; }
  bool scalar_case() const { return rows == 1 || cols == 1; }
  std::string str() const;
  static Dims parse(const std::string& text);  // "2x2"
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// A point of R^{N x n}, stored dense row-major. Immutable value type.
class MatrixPoint {
 public:
  MatrixPoint() : MatrixPoint(1, 1) {}
  MatrixPoint(int rows, int cols);
  MatrixPoint(int rows, int cols, std::vector<double> entries);
  MatrixPoint(Dims dims, std::vector<double> entries);

  static MatrixPoint scalar(double t);
  static MatrixPoint identity(int n);
  static MatrixPoint diagonal(const std::vector<double>& diag);
  static MatrixPoint zeros(Dims dims);

  int rows() const { return dims_.rows; }
  int cols() const { return dims_.cols; }
  Dims dims() const { return dims_; }
  std::size_t size() const { return entries_.size(); }

  double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * dims_.cols + j)]; }
  double operator[](std::size_t k) const { return entries_[k]; }
  const std::vector<double>& entries() const { return entries_; }

  /// Frobenius norm |xi|.
  double norm() const;
  double max_abs() const;

  MatrixPoint operator+(const MatrixPoint& other) const;
  MatrixPoint operator-(const MatrixPoint& other) const;
  MatrixPoint operator-() const;
  MatrixPoint operator*(double s) const;
  friend MatrixPoint operator*(double s, const MatrixPoint& m) { return m * s; }
  friend bool operator==(const MatrixPoint& a, const MatrixPoint& b) {
    return a.dims_ == b.dims_ && a.entries_ == b.entries_;
  }

  std::string str() const;

 private:
  Dims dims_;
  std::vector<double> entries_;
};

/// a*x + b*y computed entrywise in one pass; every convex combination in the
/// library goes through this so that checkers and replays round identically.
MatrixPoint axpby(double a, const MatrixPoint& x, double b, const MatrixPoint& y);

/// Sum_i w_i * points_i, accumulated left to right.
MatrixPoint combine(const std::vector<MatrixPoint>& points, const std::vector<double>& weights);

/// tau(N, n) = sum_{s=1}^{min(N,n)} C(N,s) C(n,s), the number of minors.
std::size_t tau(int N, int n);

/// T(xi): all s x s minors for s = 1..min(N,n). Within each order s the
/// ordering is lexicographic over (row subset, column subset), so the first
/// N*n components are the entries of xi in row-major order.
struct MinorVector {
  Dims dims;
  std::vector<double> values;
};

MinorVector minors(const MatrixPoint& xi);

/// Determinant of a square matrix (partial-pivot elimination).
double determinant(const MatrixPoint& xi);

/// Singular values, largest first.
std::vector<double> singular_values(const MatrixPoint& xi);

/// rank(xi - eta) == 1 in the relative sense sigma_2 <= tol * sigma_1 with
/// sigma_1 > tol. Equal matrices are not rank-one connected.
bool is_rank_one_connected(const MatrixPoint& xi, const MatrixPoint& eta, double tol = 1e-9);

/// a (x) nu with |nu| = 1 and a != 0.
class RankOneDirection {
 public:
  /// Requires |nu| = 1 within 1e-12 and a != 0.
  RankOneDirection(std::vector<double> a, std::vector<double> nu);
  /// Rescales so that nu is a unit vector; a (x) nu is unchanged.
  static RankOneDirection normalized(std::vector<double> a, std::vector<double> nu);
  /// Factorizes a rank-one matrix; throws not_rank_one otherwise.
  static RankOneDirection factor(const MatrixPoint& d, double tol = 1e-9);

  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& nu() const { return nu_; }
  Dims dims() const { return {static_cast<int>(a_.size()), static_cast<int>(nu_.size())}; }

 private:
  std::vector<double> a_;
  std::vector<double> nu_;
};

MatrixPoint rank_one_matrix(const RankOneDirection& d);

}  // namespace supcon
