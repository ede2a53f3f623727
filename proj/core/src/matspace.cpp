#include "supcon/matspace.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "supcon/error.hpp"

namespace supcon {

std::string Dims::str() const { return std::to_string(rows) + "x" + std::to_string(cols); }

Dims Dims::parse(const std::string& text) {
  auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw Error(ErrorCode::invalid_argument, "dims must look like 2x2: " + text);
  try {
    Dims d{std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    if (d.rows < 1 || d.cols < 1) throw Error(ErrorCode::invalid_argument, "dims must be positive: " + text);
    return d;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::invalid_argument, "dims must look like 2x2: " + text);
  }
}

MatrixPoint::MatrixPoint(int rows, int cols)
    : MatrixPoint(rows, cols, std::vector<double>(static_cast<std::size_t>(std::max(rows * cols, 0)), 0.0)) {}

MatrixPoint::MatrixPoint(int rows, int cols, std::vector<double> entries)
    : dims_{rows, cols}, entries_(std::move(entries)) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::invalid_argument, "matrix dimensions must be positive");
  if (entries_.size() != static_cast<std::size_t>(rows * cols))
    throw Error(ErrorCode::dimension_mismatch,
                "expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(entries_.size()));
  for (double v : entries_)
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "matrix entries must be finite");
}

MatrixPoint::MatrixPoint(Dims dims, std::vector<double> entries)
    : MatrixPoint(dims.rows, dims.cols, std::move(entries)) {}

MatrixPoint MatrixPoint::scalar(double t) { return MatrixPoint(1, 1, {t}); }

MatrixPoint MatrixPoint::identity(int n) {
  std::vector<double> e(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = 1.0;
  return MatrixPoint(n, n, std::move(e));
}

MatrixPoint MatrixPoint::diagonal(const std::vector<double>& diag) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> e(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = diag[static_cast<std::size_t>(i)];
  return MatrixPoint(n, n, std::move(e));
}

MatrixPoint MatrixPoint::zeros(Dims dims) { return MatrixPoint(dims.rows, dims.cols); }

double MatrixPoint::norm() const {
  double s = 0.0;
  for (double v : entries_) s += v * v;
  return std::sqrt(s);
}

double MatrixPoint::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

static void require_same(const MatrixPoint& a, const MatrixPoint& b) {
  if (!(a.dims() == b.dims()))
    throw Error(ErrorCode::dimension_mismatch, a.dims().str() + " vs " + b.dims().str());
}

MatrixPoint axpby(double a, const MatrixPoint& x, double b, const MatrixPoint& y) {
  require_same(x, y);
  std::vector<double> e(x.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = a * x[k] + b * y[k];
  return MatrixPoint(x.dims(), std::move(e));
}

MatrixPoint combine(const std::vector<MatrixPoint>& points, const std::vector<double>& weights) {
  if (points.empty() || points.size() != weights.size())
    throw Error(ErrorCode::invalid_argument, "combine needs matching non-empty points and weights");
  std::vector<double> e(points.front().size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_same(points.front(), points[i]);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += weights[i] * points[i][k];
  }
  return MatrixPoint(points.front().dims(), std::move(e));
}

MatrixPoint MatrixPoint::operator+(const MatrixPoint& o) const { return axpby(1.0, *this, 1.0, o); }
MatrixPoint MatrixPoint::operator-(const MatrixPoint& o) const { return axpby(1.0, *this, -1.0, o); }
MatrixPoint MatrixPoint::operator-() const { return *this * -1.0; }

MatrixPoint MatrixPoint::operator*(double s) const {
  std::vector<double> e(entries_);
  for (double& v : e) v *= s;
  return MatrixPoint(dims_, std::move(e));
}

std::string MatrixPoint::str() const {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (int i = 0; i < rows(); ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols(); ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

static std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::size_t tau(int N, int n) {
  if (N < 1 || n < 1) throw Error(ErrorCode::invalid_argument, "tau needs positive dimensions");
  std::size_t t = 0;
  for (int s = 1; s <= std::min(N, n); ++s) t += binomial(N, s) * binomial(n, s);
  return t;
}

namespace {

// All increasing index tuples of length k from {0..n-1}, lexicographic.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

double det_small(std::vector<double> a, int s) {
  if (s == 1) return a[0];
  if (s == 2) return a[0] * a[3] - a[1] * a[2];
  if (s == 3)
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  double det = 1.0;
  for (int c = 0; c < s; ++c) {
    int piv = c;
    for (int r = c + 1; r < s; ++r)
      if (std::abs(a[static_cast<std::size_t>(r * s + c)]) > std::abs(a[static_cast<std::size_t>(piv * s + c)])) piv = r;
    double p = a[static_cast<std::size_t>(piv * s + c)];
    if (p == 0.0) return 0.0;
    if (piv != c) {
      for (int j = 0; j < s; ++j) std::swap(a[static_cast<std::size_t>(c * s + j)], a[static_cast<std::size_t>(piv * s + j)]);
      det = -det;
    }
    det *= p;
    for (int r = c + 1; r < s; ++r) {
      double f = a[static_cast<std::size_t>(r * s + c)] / p;
      for (int j = c; j < s; ++j) a[static_cast<std::size_t>(r * s + j)] -= f * a[static_cast<std::size_t>(c * s + j)];
    }
  }
  return det;
}

}  // namespace

MinorVector minors(const MatrixPoint& xi) {
  const int N = xi.rows(), n = xi.cols();
  MinorVector out{xi.dims(), {}};
  out.values.reserve(tau(N, n));
  for (int s = 1; s <= std::min(N, n); ++s) {
    auto rs = subsets(N, s);
    auto cs = subsets(n, s);
    std::vector<double> block(static_cast<std::size_t>(s * s));
    for (const auto& r : rs)
      for (const auto& c : cs) {
        for (int i = 0; i < s; ++i)
          for (int j = 0; j < s; ++j)
            block[static_cast<std::size_t>(i * s + j)] = xi(r[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]);
        out.values.push_back(det_small(block, s));
      }
  }
  return out;
}

double determinant(const MatrixPoint& xi) {
  if (xi.rows() != xi.cols()) throw Error(ErrorCode::dimension_mismatch, "determinant of non-square " + xi.dims().str());
  return det_small(xi.entries(), xi.rows());
}

std::vector<double> singular_values(const MatrixPoint& xi) {
  Eigen::MatrixXd m(xi.rows(), xi.cols());
  for (int i = 0; i < xi.rows(); ++i)
    for (int j = 0; j < xi.cols(); ++j) m(i, j) = xi(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

bool is_rank_one_connected(const MatrixPoint& xi, const MatrixPoint& eta, double tol) {
  auto s = singular_values(xi - eta);
  if (s.empty() || !(s[0] > tol)) return false;
  return s.size() < 2 || s[1] <= tol * s[0];
}

RankOneDirection::RankOneDirection(std::vector<double> a, std::vector<double> nu)
    : a_(std::move(a)), nu_(std::move(nu)) {
  if (a_.empty() || nu_.empty()) throw Error(ErrorCode::invalid_argument, "empty rank-one factor");
  double na = 0.0, nn = 0.0;
  for (double v : a_) na += v * v;
  for (double v : nu_) nn += v * v;
  if (!(na > 0.0)) throw Error(ErrorCode::invalid_argument, "rank-one direction needs a != 0");
  if (std::abs(std::sqrt(nn) - 1.0) > 1e-12) throw Error(ErrorCode::invalid_argument, "rank-one direction needs |nu| = 1");
}

RankOneDirection RankOneDirection::normalized(std::vector<double> a, std::vector<double> nu) {
  double nn = 0.0;
  for (double v : nu) nn += v * v;
  nn = std::sqrt(nn);
  if (!(nn > 0.0)) throw Error(ErrorCode::invalid_argument, "rank-one direction needs nu != 0");
  for (double& v : nu) v /= nn;
  for (double& v : a) v *= nn;
  return RankOneDirection(std::move(a), std::move(nu));
}

RankOneDirection RankOneDirection::factor(const MatrixPoint& d, double tol) {
  Eigen::MatrixXd m(d.rows(), d.cols());
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) m(i, j) = d(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (!(s(0) > tol) || (s.size() > 1 && s(1) > tol * s(0)))
    throw Error(ErrorCode::not_rank_one, "matrix " + d.str() + " is not rank one");
  std::vector<double> a(static_cast<std::size_t>(d.rows())), nu(static_cast<std::size_t>(d.cols()));
  // Fix the sign so that the largest component of nu is positive.
  int jmax = 0;
  for (int j = 1; j < d.cols(); ++j)
    if (std::abs(svd.matrixV()(j, 0)) > std::abs(svd.matrixV()(jmax, 0))) jmax = j;
  const double sign = svd.matrixV()(jmax, 0) < 0 ? -1.0 : 1.0;
  for (int i = 0; i < d.rows(); ++i) a[static_cast<std::size_t>(i)] = sign * s(0) * svd.matrixU()(i, 0);
  for (int j = 0; j < d.cols(); ++j) nu[static_cast<std::size_t>(j)] = sign * svd.matrixV()(j, 0);
  return RankOneDirection::normalized(std::move(a), std::move(nu));
}

MatrixPoint rank_one_matrix(const RankOneDirection& d) {
  const auto& a = d.a();
  const auto& nu = d.nu();
  std::vector<double> e(a.size() * nu.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) e[i * nu.size() + j] = a[i] * nu[j];
  return MatrixPoint(static_cast<int>(a.size()), static_cast<int>(nu.size()), std::move(e));
}

}  // namespace supcon
