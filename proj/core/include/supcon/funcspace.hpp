#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supcon/matspace.hpp"
#include "supcon/notions.hpp"

namespace supcon {

/// How a sampled function is extended beyond its box.
enum class OutsideMode { plus_infinity, clamp };

std::string_view to_string(OutsideMode mode);
OutsideMode parse_outside_mode(std::string_view text);

/// Memory cap for grids in bytes, from SUPCON_MEM_CAP_MB (default 1024).
std::size_t memory_cap_bytes();

/// Working-set bytes budgeted per grid node by the envelope operators.
inline constexpr std::size_t kBytesPerGridPoint = 64;

/// Regular grid on [-R, R]^{N*n} with an odd number of nodes per axis, so
/// that the origin is a node. Nodes are numbered row-major: axis 0 varies
/// slowest.
struct GridSpec {
  Dims dims;
  double radius = 1.0;
  int points_per_axis = 3;

  int d() const { return dims.size(); }
  std::size_t point_count() const;
  double spacing() const { return 2.0 * radius / (points_per_axis - 1); }
  /// Coordinate of index k on any axis; symmetric and exact at 0 and +-R.
  double coordinate(int k) const;
  std::vector<int> multi_index(std::size_t node) const;
  std::size_t flat_index(const std::vector<int>& idx) const;
  MatrixPoint node(std::size_t node) const;

  /// Throws invalid_argument or memory_cap_exceeded.
  void validate(std::size_t cap_bytes = memory_cap_bytes()) const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Grid with spacing closest to h (points adjusted to the nearest odd count).
GridSpec grid_with_spacing(Dims dims, double radius, double h);

/// Values of a function on a grid; immutable after construction.
class SampledFunction {
 public:
  SampledFunction(GridSpec grid, std::vector<double> values, OutsideMode outside);

  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t node) const { return values_[node]; }
  std::size_t size() const { return values_.size(); }
  OutsideMode outside() const { return outside_; }

  SampledFunction with_values(std::vector<double> values) const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
  OutsideMode outside_;
};

/// Multilinear interpolation; +infinity outside the box in plus_infinity
/// mode, nearest box point in clamp mode.
double interpolate(const SampledFunction& f, const MatrixPoint& xi);

/// A pointwise supremand together with points where its structure lives
/// (used to seed the counterexample searches).
struct Supremand {
  std::string name;
  Dims dims;
  std::function<double(const MatrixPoint&)> eval;
  std::vector<MatrixPoint> anchors;

  double operator()(const MatrixPoint& xi) const { return eval(xi); }
};

/// View a sampled function as a supremand through interpolation.
Supremand as_supremand(const SampledFunction& f, std::string name = "sampled");

struct CorpusEntry {
  std::string name;
  Dims dims;
  bool any_dims = false;
  bool bounded = false;
  bool coercive = false;
  bool continuous = true;
  bool lower_semicontinuous = true;
  std::string description;
  std::function<double(const MatrixPoint&)> eval;
  std::vector<DocumentedProperty> properties;
  std::vector<MatrixPoint> anchors;

  OutsideMode default_outside() const { return bounded ? OutsideMode::clamp : OutsideMode::plus_infinity; }
  /// Resolves the dimensions (required for any_dims entries unless the
  /// default is wanted) and packages the evaluator.
  Supremand supremand(std::optional<Dims> dims = std::nullopt) const;
};

const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(std::string_view name);
double eval_corpus(std::string_view name, const MatrixPoint& xi);

/// 1 - chi_S with S = {xi0, eta0}.
CorpusEntry one_minus_chi_pair(const MatrixPoint& xi0, const MatrixPoint& eta0);

SampledFunction sample(const Supremand& f, const GridSpec& grid, OutsideMode outside);
SampledFunction sample(const CorpusEntry& entry, const GridSpec& grid);

/// CSV with header axis_0,...,axis_{d-1},value and a JSON sidecar holding
/// the grid and outside mode; the sidecar path is the CSV path with its
/// extension replaced by ".json".
std::string sidecar_path(const std::string& csv_path);
void write_csv(const SampledFunction& f, const std::string& csv_path);
SampledFunction read_csv(const std::string& csv_path);

}  // namespace supcon
