#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "supcon/funcspace.hpp"

namespace supcon {

// All operators act on the grid samples. In plus_infinity mode they return
// the envelope of the box-restricted function; in clamp mode the function
// is taken to be extended by f(proj_box(xi)), which is bounded, so the
// convex and rank-one hulls collapse to the global minimum.

/// Greatest convex minorant of the samples.
SampledFunction convex_envelope(const SampledFunction& f);

/// At each node, the least sampled level t with the node in the closed
/// convex hull of {f <= t}.
SampledFunction level_convex_lsc_envelope(const SampledFunction& f);

/// f_lambda(xi) = min over nodes eta of max{f(eta), lambda |xi - eta|}.
/// A negative minimum m is subtracted first and added back afterwards.
SampledFunction pasch_hausdorff(const SampledFunction& f, double lambda);

/// Lower convex hull of (k, v[k]), k = 0..m-1, evaluated back at every k.
std::vector<double> lower_hull_1d(const std::vector<double>& values);

struct LaminationOptions {
  int max_sweeps = 64;
  double tol = 1e-7;
  int max_component = 2;
  /// Values are compared through this map when measuring the change per
  /// sweep (identity when empty).
  std::function<double(double)> measure;
};

struct LaminationResult {
  SampledFunction hull;
  int sweeps = 0;
  bool converged = false;
  double last_change = 0.0;
};

/// Primitive integer directions in index space (components in
/// [-max_component, max_component], one per +-pair) that are rank-one as
/// N x n matrices.
std::vector<std::vector<int>> rank_one_grid_directions(Dims dims, int max_component = 2);

LaminationResult lamination_sweeps(const SampledFunction& f, const LaminationOptions& opts = {});

/// Fixpoint of 1D convexification along every rank-one grid line. The
/// last iterate is returned if the fixpoint is not reached.
SampledFunction lamination_hull(const SampledFunction& f, int max_sweeps = 64, double tol = 1e-7);

enum class PowerLawMode { convex_lower, lamination_upper };

std::string_view to_string(PowerLawMode mode);
PowerLawMode parse_power_law_mode(std::string_view text);

struct MonotoneViolation {
  double p;
  std::size_t node;
  double gap;
};

struct PowerLawReport {
  PowerLawMode mode = PowerLawMode::convex_lower;
  std::vector<double> p_schedule;
  std::vector<SampledFunction> per_p;
  std::optional<MonotoneViolation> monotone_violation;
  std::optional<SampledFunction> limit_estimate;
  /// min f when negative (subtracted before powers and added back), else 0.
  double shift = 0.0;
  std::vector<std::string> caveats;
  /// Largest excess of the limit over f; within 1e-7 of zero or below.
  double max_excess_over_f = 0.0;
  bool lamination_converged = true;
  /// Largest f - limit over interior nodes (every coordinate within R/2).
  double interior_gap = 0.0;
  std::size_t interior_gap_node = 0;
  /// interior_gap > 0.05 max(1, max |f| on the interior): the limit falls
  /// visibly below f, so f is not curl-infinity quasiconvex.
  bool gap_detected = false;

  /// Serialized with file references for the per-p and limit grids.
  nlohmann::json to_json(const std::vector<std::string>& per_p_files, const std::string& limit_file) const;
};

/// (E((f - shift)^p))^{1/p} + shift for every p in the schedule, with E the
/// convex envelope or the lamination hull. Powers are taken of f / max f in
/// extended precision.
PowerLawReport power_law_envelope(const SampledFunction& f, const std::vector<double>& p_schedule,
                                  PowerLawMode mode, const LaminationOptions& lamination = {});

const std::vector<double>& default_p_schedule();

}  // namespace supcon
