#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "supcon/error.hpp"
#include "supcon/funcspace.hpp"

namespace supcon {

std::string sidecar_path(const std::string& csv_path) {
  return std::filesystem::path(csv_path).replace_extension(".json").string();
}

void write_csv(const SampledFunction& f, const std::string& csv_path) {
  const GridSpec& g = f.grid();
  std::ofstream out(csv_path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + csv_path);
  out.precision(17);
  for (int a = 0; a < g.d(); ++a) out << "axis_" << a << ",";
  out << "value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto idx = g.multi_index(i);
    for (int k : idx) out << g.coordinate(k) << ",";
    out << f.value(i) << "\n";
  }
  if (!out) throw Error(ErrorCode::io, "failed writing " + csv_path);

  nlohmann::json side{{"rows", g.dims.rows},
                      {"cols", g.dims.cols},
                      {"radius", g.radius},
                      {"points_per_axis", g.points_per_axis},
                      {"outside_mode", std::string(to_string(f.outside()))}};
  std::ofstream sj(sidecar_path(csv_path));
  if (!sj) throw Error(ErrorCode::io, "cannot write " + sidecar_path(csv_path));
  sj << side.dump(2) << "\n";
}

SampledFunction read_csv(const std::string& csv_path) {
  std::ifstream sj(sidecar_path(csv_path));
  if (!sj) throw Error(ErrorCode::io, "missing sidecar " + sidecar_path(csv_path));
  GridSpec g;
  OutsideMode mode = OutsideMode::plus_infinity;
  try {
    nlohmann::json side = nlohmann::json::parse(sj);
    g.dims = Dims{side.at("rows").get<int>(), side.at("cols").get<int>()};
    g.radius = side.at("radius").get<double>();
    g.points_per_axis = side.at("points_per_axis").get<int>();
    if (side.contains("outside_mode")) mode = parse_outside_mode(side.at("outside_mode").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::malformed_csv, "bad sidecar " + sidecar_path(csv_path) + ": " + e.what());
  }
  g.validate();

  std::ifstream in(csv_path);
  if (!in) throw Error(ErrorCode::io, "cannot read " + csv_path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::malformed_csv, csv_path + " is empty");
  std::string expected;
  for (int a = 0; a < g.d(); ++a) expected += "axis_" + std::to_string(a) + ",";
  expected += "value";
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected) throw Error(ErrorCode::malformed_csv, "header must be " + expected);

  std::vector<double> values;
  values.reserve(g.point_count());
  const double tol = 1e-9 * std::max(1.0, g.radius);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> fields;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        fields.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::malformed_csv, "row " + std::to_string(row + 1) + ": bad number '" + cell + "'");
      }
    }
    if (fields.size() != static_cast<std::size_t>(g.d() + 1))
      throw Error(ErrorCode::malformed_csv, "row " + std::to_string(row + 1) + " has the wrong field count");
    if (row >= g.point_count()) throw Error(ErrorCode::malformed_csv, "more rows than grid nodes");
    auto idx = g.multi_index(row);
    for (int a = 0; a < g.d(); ++a)
      if (std::abs(fields[static_cast<std::size_t>(a)] - g.coordinate(idx[static_cast<std::size_t>(a)])) > tol)
        throw Error(ErrorCode::malformed_csv, "row " + std::to_string(row + 1) + " is not in row-major node order");
    if (!std::isfinite(fields.back()))
      throw Error(ErrorCode::malformed_csv, "row " + std::to_string(row + 1) + " has a non-finite value");
    values.push_back(fields.back());
    ++row;
  }
  if (values.size() != g.point_count())
    throw Error(ErrorCode::malformed_csv, "expected " + std::to_string(g.point_count()) + " rows, got " +
                                              std::to_string(values.size()));
  return SampledFunction(g, std::move(values), mode);
}

}  // namespace supcon
