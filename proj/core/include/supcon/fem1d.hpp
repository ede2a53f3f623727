#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "supcon/funcspace.hpp"
#include "supcon/verdict.hpp"

namespace supcon {

/// Uniform mesh of (a, b) with affine boundary data of slope xi.
struct Mesh1D {
  double a = 0.0;
  double b = 1.0;
  int cells = 64;
  double xi = 0.0;

  double length() const { return b - a; }
  double h() const { return (b - a) / cells; }
  void validate() const;
};

struct FeOptions {
  /// Box |g| <= grad_bound on every cell gradient.
  double grad_bound = 10.0;
  int restarts = 16;
  std::uint64_t seed = kDefaultSeed;
  /// Pair-exchange moves per restart.
  std::size_t max_iter = 20000;
  double tol = 1e-10;
  /// Outside mode for the envelope oracle; the box oracle always uses
  /// [-grad_bound, grad_bound] with plus_infinity.
  OutsideMode extension = OutsideMode::plus_infinity;
  double oracle_spacing = 0.01;
};

struct FeMinimizeResult {
  double p = 1.0;
  /// (sum_i h f(g_i)^p)^{1/p}.
  double min_value = 0.0;
  std::vector<double> gradient_per_cell;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Minimizes (sum_i h f^p(g_i))^{1/p} over cell gradients with mean xi.
/// f must be a 1x1 supremand, nonnegative on the box.
FeMinimizeResult minimize_Fp(const Supremand& f, double p, const Mesh1D& mesh, const FeOptions& opts = {});

struct GammaLimitPoint {
  double p = 0.0;
  double min_value = 0.0;
  /// |b - a|^{-1/p} min_value.
  double normalized = 0.0;
  /// ((f^p)**(xi))^{1/p} with gradients restricted to the box.
  double oracle_value = 0.0;
  /// The same envelope computed in the extension mode.
  double extension_oracle = 0.0;
  double gap = 0.0;  // normalized - oracle_value
  bool converged = false;
  std::vector<double> gradients;
};

struct GammaLimitReport {
  std::string function;
  Mesh1D mesh;
  FeOptions options;
  double f_xi = 0.0;
  /// Level-convex lsc envelope of f at xi.
  double lslc_value = 0.0;
  std::vector<GammaLimitPoint> per_p;
  double limit_estimate = 0.0;
  bool gap_detected = false;
  bool monotone = true;
  bool all_converged = true;

  std::string classification() const { return gap_detected ? "gap-detected" : "consistent-with-curl-infty"; }
  nlohmann::json to_json(const std::string& profile_file = "") const;
  /// Columns cell, x_mid, then one gradient column per p.
  void write_profiles_csv(const std::string& path) const;
};

GammaLimitReport gamma_limit_experiment(const Supremand& f, double xi, const std::vector<double>& p_schedule,
                                        const Mesh1D& mesh, const FeOptions& opts = {});

}  // namespace supcon
