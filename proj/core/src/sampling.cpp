#include <cmath>

#include "supcon/error.hpp"
#include "supcon/sampling.hpp"

namespace supcon {

namespace {

const int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                       73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151};

double radical_inverse(std::size_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += static_cast<double>(i % static_cast<std::size_t>(base)) * f;
    i /= static_cast<std::size_t>(base);
    f *= inv;
  }
  return r;
}

}  // namespace

const std::vector<double>& dyadic_lambdas() {
  static const std::vector<double> l{0.5, 0.25, 0.75, 1.0 / 3.0, 2.0 / 3.0};
  return l;
}

PointSampler::PointSampler(Dims dims, double radius, std::uint64_t seed)
    : dims_(dims), radius_(radius), rng_(seed) {
  if (!(radius > 0.0)) throw Error(ErrorCode::invalid_argument, "sampler radius must be positive");
}

double PointSampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

int PointSampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

MatrixPoint PointSampler::uniform_point() { return uniform_point(radius_); }

MatrixPoint PointSampler::uniform_point(double radius) {
  std::vector<double> e(static_cast<std::size_t>(dims_.size()));
  for (auto& x : e) x = uniform(-radius, radius);
  return MatrixPoint(dims_, std::move(e));
}

MatrixPoint PointSampler::halton_point(std::size_t index, int copy, int copies) {
  const int d = dims_.size();
  if (d * copies > static_cast<int>(std::size(kPrimes)))
    throw Error(ErrorCode::invalid_argument, "too many Halton coordinates");
  std::vector<double> e(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a)
    e[static_cast<std::size_t>(a)] = radius_ * (2.0 * radical_inverse(index, kPrimes[copy * d + a]) - 1.0);
  return MatrixPoint(dims_, std::move(e));
}

MatrixPoint PointSampler::lattice_point(int span) {
  std::vector<double> e(static_cast<std::size_t>(dims_.size()));
  for (auto& x : e) x = integer(-span, span);
  return MatrixPoint(dims_, std::move(e));
}

RankOneDirection PointSampler::rank_one_direction() {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    std::vector<double> a(static_cast<std::size_t>(dims_.rows)), nu(static_cast<std::size_t>(dims_.cols));
    for (auto& x : a) x = g(rng_);
    for (auto& x : nu) x = g(rng_);
    double na = 0, nn = 0;
    for (double x : a) na += x * x;
    for (double x : nu) nn += x * x;
    if (na > 1e-6 && nn > 1e-6) return RankOneDirection::normalized(std::move(a), std::move(nu));
  }
}

RankOneDirection PointSampler::lattice_rank_one(int span) {
  for (;;) {
    std::vector<double> a(static_cast<std::size_t>(dims_.rows)), nu(static_cast<std::size_t>(dims_.cols));
    bool za = true, zn = true;
    for (auto& x : a) {
      x = integer(-span, span);
      za = za && x == 0;
    }
    for (auto& x : nu) {
      x = integer(-span, span);
      zn = zn && x == 0;
    }
    if (!za && !zn) return RankOneDirection::normalized(std::move(a), std::move(nu));
  }
}

double PointSampler::lambda() {
  const auto& l = dyadic_lambdas();
  if (integer(0, 1) == 0) return l[static_cast<std::size_t>(integer(0, static_cast<int>(l.size()) - 1))];
  return uniform(0.05, 0.95);
}

std::vector<MatrixPoint> lattice_points(Dims dims, int span) {
  const int d = dims.size(), w = 2 * span + 1;
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(w);
  std::vector<MatrixPoint> out;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<double> e(static_cast<std::size_t>(d));
    std::size_t rem = code;
    for (int a = d - 1; a >= 0; --a) {
      e[static_cast<std::size_t>(a)] = static_cast<double>(static_cast<int>(rem % static_cast<std::size_t>(w)) - span);
      rem /= static_cast<std::size_t>(w);
    }
    out.emplace_back(dims, std::move(e));
  }
  return out;
}

}  // namespace supcon
