#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "supcon/verdict.hpp"

namespace supcon::cli {

/// Effective settings of one invocation: defaults, then the JSON config
/// file, then command-line flags.
struct RunConfig {
  std::string command;
  std::string corpus;
  std::string input;
  std::optional<double> radius;
  std::optional<int> points;
  std::vector<double> p_schedule;
  std::size_t budget = 100000;
  std::size_t field_budget = 4000;
  std::optional<double> tol;
  std::uint64_t seed = kDefaultSeed;
  std::string expect;
  std::string out = ".";
  unsigned threads = 0;
  std::string kind = "convex";
  std::string mode = "convex-lower";
  double lambda = 1.0;
  std::string xi;
  std::string dims;
  std::string notion;
  int cells = 64;
  double K = 4.0;
  double grad_bound = 10.0;

  nlohmann::json to_json() const;
};

/// Applies the keys of a JSON config object (names as the long flags,
/// with '-' or '_').
void apply_config(RunConfig& cfg, const nlohmann::json& j);

/// Exit status: 0 success, 2 contradicted --expect, 1 usage or IO error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already-parsed configuration.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace supcon::cli
