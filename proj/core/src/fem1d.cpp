#include "supcon/fem1d.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "supcon/envelope.hpp"
#include "supcon/error.hpp"
#include "supcon/parallel.hpp"

namespace supcon {

namespace {

using LD = long double;

// Works with w(g) = (f(g) / scale)^p so that sums stay in range.
class Energy {
 public:
  Energy(const Supremand& f, double p, double scale) : f_(f), p_(p), scale_(scale) {}

  LD w(double g) const {
    const double v = f_(MatrixPoint::scalar(g));
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::invalid_argument, "minimize_Fp needs f finite and nonnegative, got f(" +
                                                   std::to_string(g) + ") = " + std::to_string(v));
    if (scale_ == 0.0) return 0.0L;
    return std::pow(static_cast<LD>(v) / scale_, static_cast<LD>(p_));
  }

 private:
  const Supremand& f_;
  double p_;
  double scale_;
};

double clampg(double g, double G) { return std::min(G, std::max(-G, g)); }

// Euclidean projection onto {mean g = xi, |g_i| <= G}: g_i - tau clipped,
// tau found by bisection, the residual put on one unclipped cell.
void project(std::vector<double>& g, double xi, double G) {
  const double m = static_cast<double>(g.size());
  auto mean_at = [&](double tau) {
    double s = 0.0;
    for (double v : g) s += clampg(v - tau, G);
    return s / m;
  };
  double lo = -2.0 * G - 1.0, hi = 2.0 * G + 1.0;
  for (double v : g) {
    lo = std::min(lo, v - G - 1.0);
    hi = std::max(hi, v + G + 1.0);
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (mean_at(mid) > xi ? lo : hi) = mid;
  }
  const double tau = 0.5 * (lo + hi);
  for (double& v : g) v = clampg(v - tau, G);
  for (int pass = 0; pass < 3; ++pass) {
    double s = 0.0;
    for (double v : g) s += v;
    const double r = s - m * xi;
    if (r == 0.0) break;
    std::size_t best = 0;
    double room = -1.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double rr = r > 0.0 ? g[i] + G : G - g[i];
      if (rr > room) room = rr, best = i;
    }
    g[best] -= r;
  }
}

struct Candidate {
  std::vector<double> g;
  LD sum = std::numeric_limits<LD>::infinity();
};

LD total(const Energy& E, const std::vector<double>& g) {
  LD s = 0.0L;
  for (double v : g) s += E.w(v);
  return s;
}

// k cells at s1 and m - k at s2 with mean xi; s2 follows from s1.
Candidate best_two_slope(const Energy& E, int m, double xi, double G, double spacing) {
  Candidate best;
  best.g.assign(static_cast<std::size_t>(m), xi);
  best.sum = m * E.w(xi);
  const int n = std::max(3, static_cast<int>(std::ceil(2.0 * G / spacing)) + 1);
  std::vector<double> slopes(static_cast<std::size_t>(n));
  std::vector<LD> ws(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    slopes[static_cast<std::size_t>(i)] = -G + 2.0 * G * i / (n - 1);
    ws[static_cast<std::size_t>(i)] = E.w(slopes[static_cast<std::size_t>(i)]);
  }
  auto value = [&](int k, double s1, double& s2) -> LD {
    s2 = (m * xi - k * s1) / (m - k);
    if (std::abs(s2) > G) return std::numeric_limits<LD>::infinity();
    return k * E.w(s1) + (m - k) * E.w(s2);
  };
  int bk = 0;
  double bs1 = xi;
  for (int k = 1; k < m; ++k)
    for (int i = 0; i < n; ++i) {
      const double s1 = slopes[static_cast<std::size_t>(i)];
      if (s1 >= xi) break;
      const double s2 = (m * xi - k * s1) / (m - k);
      if (std::abs(s2) > G) continue;
      const LD v = k * ws[static_cast<std::size_t>(i)] + (m - k) * E.w(s2);
      if (v < best.sum) best.sum = v, bk = k, bs1 = s1;
    }
  if (bk == 0) return best;
  // Golden-section refinement of s1 within one grid cell.
  double lo = std::max(-G, bs1 - spacing), hi = std::min(xi, bs1 + spacing);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double s2;
  for (int it = 0; it < 80; ++it) {
    const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    if (value(bk, x1, s2) <= value(bk, x2, s2)) hi = x2;
    else lo = x1;
  }
  double s1 = 0.5 * (lo + hi);
  LD v = value(bk, s1, s2);
  if (!(v < best.sum)) {
    s1 = bs1;
    v = value(bk, s1, s2);
  }
  if (v <= best.sum) {
    best.g.assign(static_cast<std::size_t>(bk), s1);
    best.g.insert(best.g.end(), static_cast<std::size_t>(m - bk), s2);
    best.sum = v;
  }
  return best;
}

// Moves t between two cells (so the mean is unchanged) while it helps;
// the step halves after a full round without success.
Candidate exchange_descent(const Energy& E, Candidate c, double G, std::size_t max_iter, double tol,
                           std::mt19937_64& rng, std::size_t& iterations, bool& converged) {
  const std::size_t m = c.g.size();
  std::vector<LD> w(m);
  for (std::size_t i = 0; i < m; ++i) w[i] = E.w(c.g[i]);
  double step = 0.25 * G;
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::size_t fails = 0;
  converged = false;
  for (iterations = 0; iterations < max_iter; ++iterations) {
    if (step < tol * std::max(1.0, G)) {
      converged = true;
      break;
    }
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    if (j == i) j = (i + 1) % m;
    bool moved = false;
    for (double t : {step, -step}) {
      const double gi = c.g[i] + t, gj = c.g[j] - t;
      if (std::abs(gi) > G || std::abs(gj) > G) continue;
      const LD wi = E.w(gi), wj = E.w(gj);
      if (wi + wj < w[i] + w[j]) {
        c.g[i] = gi;
        c.g[j] = gj;
        w[i] = wi;
        w[j] = wj;
        moved = true;
        break;
      }
    }
    if (moved) {
      fails = 0;
    } else if (++fails >= 2 * m) {
      step *= 0.5;
      fails = 0;
    }
  }
  c.sum = 0.0L;
  for (LD v : w) c.sum += v;
  return c;
}

}  // namespace

void Mesh1D::validate() const {
  if (!(b > a)) throw Error(ErrorCode::invalid_argument, "mesh interval needs b > a");
  if (cells < 2) throw Error(ErrorCode::invalid_argument, "mesh needs at least 2 cells");
  if (!std::isfinite(xi)) throw Error(ErrorCode::invalid_argument, "boundary slope must be finite");
}

FeMinimizeResult minimize_Fp(const Supremand& f, double p, const Mesh1D& mesh, const FeOptions& opts) {
  mesh.validate();
  if (!(f.dims == Dims{1, 1})) throw Error(ErrorCode::dimension_mismatch, "minimize_Fp needs a scalar supremand");
  if (!(p >= 1.0)) throw Error(ErrorCode::invalid_argument, "p must be at least 1");
  const double G = opts.grad_bound;
  if (!(G > 0.0) || std::abs(mesh.xi) > G)
    throw Error(ErrorCode::invalid_argument, "boundary slope must lie in the gradient box");
  if (opts.restarts < 1) throw Error(ErrorCode::invalid_argument, "restarts must be at least 1");
  const int m = mesh.cells;

  double scale = 0.0;
  {
    const int n = 2001;
    for (int i = 0; i < n; ++i) scale = std::max(scale, f(MatrixPoint::scalar(-G + 2.0 * G * i / (n - 1))));
    scale = std::max(scale, f(MatrixPoint::scalar(mesh.xi)));
  }
  const Energy E(f, p, scale);

  Candidate start = best_two_slope(E, m, mesh.xi, G, opts.oracle_spacing);
  std::vector<Candidate> results(static_cast<std::size_t>(opts.restarts));
  std::vector<std::size_t> iters(results.size(), 0);
  std::vector<char> conv(results.size(), 0);
  parallel_for(results.size(), [&](std::size_t r) {
    std::mt19937_64 rng(opts.seed + 104729 * r);
    Candidate c;
    if (r == 0) {
      c = start;
    } else {
      std::uniform_real_distribution<double> U(-G, G);
      c.g.resize(static_cast<std::size_t>(m));
      const double spread = G * static_cast<double>(r) / opts.restarts;
      for (double& v : c.g) v = clampg(mesh.xi + spread * U(rng) / G, G);
      project(c.g, mesh.xi, G);
    }
    bool ok = false;
    c = exchange_descent(E, std::move(c), G, opts.max_iter, opts.tol, rng, iters[r], ok);
    project(c.g, mesh.xi, G);
    c.sum = total(E, c.g);
    conv[r] = ok;
    results[r] = std::move(c);
  }, 1);

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].sum < results[best].sum) best = r;

  FeMinimizeResult out;
  out.p = p;
  const LD h = mesh.h();
  out.min_value = static_cast<double>(scale * std::pow(h * results[best].sum, 1.0L / static_cast<LD>(p)));
  out.gradient_per_cell = std::move(results[best].g);
  for (auto it : iters) out.iterations += it;
  out.converged = conv[best] != 0;
  return out;
}

namespace {

double envelope_oracle(const SampledFunction& s, double p, double xi) {
  if (p > 1.0) {
    const auto rep = power_law_envelope(s, {p}, PowerLawMode::convex_lower);
    return interpolate(rep.per_p.front(), MatrixPoint::scalar(xi));
  }
  return interpolate(convex_envelope(s), MatrixPoint::scalar(xi));
}

}  // namespace

GammaLimitReport gamma_limit_experiment(const Supremand& f, double xi, const std::vector<double>& p_schedule,
                                        const Mesh1D& mesh, const FeOptions& opts) {
  if (p_schedule.empty()) throw Error(ErrorCode::invalid_argument, "empty p schedule");
  for (std::size_t i = 1; i < p_schedule.size(); ++i)
    if (!(p_schedule[i] > p_schedule[i - 1])) throw Error(ErrorCode::invalid_argument, "p schedule must increase");
  GammaLimitReport rep;
  rep.function = f.name;
  rep.mesh = mesh;
  rep.mesh.xi = xi;
  rep.mesh.validate();
  rep.options = opts;
  rep.f_xi = f(MatrixPoint::scalar(xi));

  const GridSpec grid = grid_with_spacing({1, 1}, opts.grad_bound, opts.oracle_spacing);
  const SampledFunction box = sample(f, grid, OutsideMode::plus_infinity);
  const SampledFunction ext_mode(grid, box.values(), opts.extension);
  rep.lslc_value = interpolate(level_convex_lsc_envelope(ext_mode), MatrixPoint::scalar(xi));

  for (double p : p_schedule) {
    GammaLimitPoint pt;
    pt.p = p;
    const auto r = minimize_Fp(f, p, rep.mesh, opts);
    pt.min_value = r.min_value;
    pt.normalized = std::pow(rep.mesh.length(), -1.0 / p) * r.min_value;
    pt.oracle_value = envelope_oracle(box, p, xi);
    pt.extension_oracle = opts.extension == OutsideMode::plus_infinity ? pt.oracle_value
                                                                        : envelope_oracle(ext_mode, p, xi);
    pt.gap = pt.normalized - pt.oracle_value;
    pt.converged = r.converged;
    pt.gradients = r.gradient_per_cell;
    rep.all_converged = rep.all_converged && r.converged;
    rep.per_p.push_back(std::move(pt));
  }
  for (std::size_t i = 1; i < rep.per_p.size(); ++i)
    if (rep.per_p[i].normalized < rep.per_p[i - 1].normalized - 1e-6 * std::max(1.0, rep.per_p[i - 1].normalized))
      rep.monotone = false;

  const auto& last = rep.per_p.back();
  rep.limit_estimate = std::min(last.normalized, last.extension_oracle);
  rep.gap_detected = rep.f_xi - rep.limit_estimate > 0.05 * std::max(1.0, std::abs(rep.f_xi));
  return rep;
}

nlohmann::json GammaLimitReport::to_json(const std::string& profile_file) const {
  nlohmann::json j;
  j["function"] = function;
  j["mesh"] = {{"a", mesh.a}, {"b", mesh.b}, {"cells", mesh.cells}, {"xi", mesh.xi}};
  j["options"] = {{"grad_bound", options.grad_bound},
                  {"restarts", options.restarts},
                  {"seed", options.seed},
                  {"max_iter", options.max_iter},
                  {"tol", options.tol},
                  {"extension", options.extension == OutsideMode::clamp ? "clamp" : "plus-infinity"},
                  {"oracle_spacing", options.oracle_spacing}};
  j["f_xi"] = f_xi;
  j["lslc_value"] = lslc_value;
  j["statement"] = std::string(notion_statement(Notion::curl_infinity));
  j["per_p"] = nlohmann::json::array();
  for (const auto& pt : per_p)
    j["per_p"].push_back({{"p", pt.p},
                          {"min_value", pt.min_value},
                          {"normalized", pt.normalized},
                          {"oracle_value", pt.oracle_value},
                          {"extension_oracle", pt.extension_oracle},
                          {"gap", pt.gap},
                          {"converged", pt.converged}});
  j["limit_estimate"] = limit_estimate;
  j["classification"] = classification();
  j["monotone"] = monotone;
  j["all_converged"] = all_converged;
  if (!profile_file.empty()) j["profiles"] = profile_file;
  return j;
}

void GammaLimitReport::write_profiles_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  out.precision(17);
  out << "cell,x_mid";
  for (const auto& pt : per_p) out << ",g_p" << pt.p;
  out << "\n";
  for (int c = 0; c < mesh.cells; ++c) {
    out << c << "," << mesh.a + (c + 0.5) * mesh.h();
    for (const auto& pt : per_p) out << "," << pt.gradients[static_cast<std::size_t>(c)];
    out << "\n";
  }
  if (!out) throw Error(ErrorCode::io, "write failed for " + path);
}

}  // namespace supcon
