#include "supcon/report.hpp"

#include <algorithm>
#include <array>

#include "supcon/classify.hpp"
#include "supcon/error.hpp"
#include "supcon/laminate.hpp"
#include "supcon/parallel.hpp"
#include "supcon/sampling.hpp"

namespace supcon {

namespace {

void add_unique(std::vector<MatrixPoint>& pts, const MatrixPoint& p) {
  for (const auto& q : pts)
    if ((q - p).norm() <= 1e-12 * std::max(1.0, p.norm())) return;
  pts.push_back(p);
}

std::vector<MatrixPoint> base_points(const Supremand& f, const std::vector<Verdict>& pointwise, std::uint64_t seed) {
  std::vector<MatrixPoint> pts;
  add_unique(pts, MatrixPoint::zeros(f.dims));
  for (std::size_t i = 0; i < f.anchors.size(); ++i)
    for (std::size_t j = i + 1; j < f.anchors.size(); ++j)
      add_unique(pts, axpby(0.5, f.anchors[i], 0.5, f.anchors[j]));
  for (const auto& a : f.anchors) add_unique(pts, a);
  for (const auto& v : pointwise)
    if (v.witness) add_unique(pts, v.witness->reference);
  if (f.dims.size() <= 4)
    for (const auto& p : lattice_points(f.dims, 1)) add_unique(pts, p);
  PointSampler s(f.dims, 1.5, seed);
  for (std::size_t k = 1; k <= 4; ++k) add_unique(pts, s.halton_point(k));
  return pts;
}

// First violated verdict in base-point order, with the budgets summed.
Verdict merge(Notion n, std::vector<Verdict> per_point, std::uint64_t seed, double tol) {
  Verdict out;
  out.notion = n;
  out.seed = seed;
  out.tol = tol;
  std::size_t used = 0, searched = per_point.size();
  for (auto& v : per_point) {
    used += v.budget_used;
    if (v.violated() && !out.violated()) {
      out.outcome = Outcome::violated;
      out.witness = std::move(v.witness);
      out.detail = std::move(v.detail);
    }
  }
  out.budget_used = used;
  out.detail["base_points_searched"] = searched;
  return out;
}

template <class Search>
Verdict over_points(Notion n, const std::vector<MatrixPoint>& pts, std::size_t count, std::uint64_t seed, double tol,
                    Search search) {
  count = std::min(count, pts.size());
  std::vector<Verdict> per(count);
  parallel_for(count, [&](std::size_t i) { per[i] = search(pts[i], seed + 7919 * i); }, 1);
  return merge(n, std::move(per), seed, tol);
}

std::size_t index_of(Notion n) {
  const auto& order = hierarchy_notions();
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == n) return i;
  return order.size();  // curl-Young is stored last
}

std::vector<DocumentedProperty> observed(const std::vector<Verdict>& vs) {
  std::vector<DocumentedProperty> out;
  for (const auto& v : vs) out.push_back({v.notion, !v.violated(), "verdict"});
  return out;
}

}  // namespace

nlohmann::json ClassifyConfig::to_json() const {
  return {{"budget", budget}, {"tol", tol},         {"seed", seed},
          {"radius", radius}, {"field_budget", field_budget}, {"field_points", field_points},
          {"K", K}};
}

const Verdict& Report::verdict(Notion n) const {
  for (const auto& v : verdicts)
    if (v.notion == n) return v;
  throw Error(ErrorCode::unknown_name, "no verdict for " + std::string(notion_id(n)));
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["function"] = name;
  j["dims"] = {dims.rows, dims.cols};
  j["config"] = config.to_json();
  j["verdicts"] = nlohmann::json::array();
  for (const auto& v : verdicts) j["verdicts"].push_back(v.to_json());
  j["base_points"] = nlohmann::json::array();
  for (const auto& p : base_points) j["base_points"].push_back(supcon::to_json(p));
  j["inconsistencies"] = inconsistencies;
  j["documented_mismatches"] = mismatches;
  j["consistent"] = consistent();
  return j;
}

Report classify_report(const Supremand& f, const ClassifyConfig& config,
                       const std::vector<DocumentedProperty>* documented, bool lower_semicontinuous) {
  if (config.budget < 1) throw Error(ErrorCode::invalid_argument, "budget must be at least 1");
  Report r;
  r.name = f.name;
  r.dims = f.dims;
  r.config = config;

  CheckOptions co;
  co.tol = config.tol;
  co.budget = config.budget;
  co.seed = config.seed;
  co.radius = config.radius;

  std::array<Verdict, 3> first;
  parallel_for(3, [&](std::size_t i) {
    if (i == 0) first[0] = check_level_convex(f, co);
    if (i == 1) first[1] = check_rank_one_qcx(f, co);
    if (i == 2) first[2] = check_curl_young_on_laminates(f, co);
  }, 1);
  std::vector<Witness> seeds;
  if (first[1].witness) seeds.push_back(*first[1].witness);
  Verdict pqc = check_polyquasiconvex_necessary(f, co, seeds);

  r.base_points = base_points(f, {first[0], first[1], pqc, first[2]}, config.seed);

  FieldSearchOptions fo;
  fo.tol = config.tol;
  fo.budget = config.field_budget;
  fo.radius = config.radius;
  Verdict weak = over_points(Notion::weak_morrey, r.base_points, config.field_points, config.seed, config.tol,
                             [&](const MatrixPoint& xi, std::uint64_t s) {
                               FieldSearchOptions o = fo;
                               o.seed = s;
                               return search_weak_morrey_violation(f, xi, o);
                             });
  Verdict periodic = over_points(Notion::periodic_weak_morrey, r.base_points, config.field_points, config.seed,
                                 config.tol, [&](const MatrixPoint& xi, std::uint64_t s) {
                                   FieldSearchOptions o = fo;
                                   o.seed = s;
                                   return check_periodic_weak_morrey(f, xi, o);
                                 });
  Verdict strong = over_points(Notion::strong_morrey, r.base_points, r.base_points.size(), config.seed, config.tol,
                               [&](const MatrixPoint& xi, std::uint64_t s) {
                                 StrongSearchOptions o;
                                 o.K = config.K;
                                 o.field = fo;
                                 o.field.seed = s;
                                 return search_strong_morrey_violation(f, xi, o);
                               });

  r.verdicts = {first[0], first[1], pqc, weak, periodic, strong, first[2]};

  r.inconsistencies = hierarchy_conflicts(observed(r.verdicts), f.dims, lower_semicontinuous);

  // A violation of B refutes every A with A => B.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& imp : implications()) {
      if (imp.needs_lsc && !lower_semicontinuous) continue;
      const std::size_t a = index_of(imp.from), b = index_of(imp.to);
      Verdict& va = r.verdicts[a];
      const Verdict& vb = r.verdicts[b];
      if (va.violated() || !vb.violated()) continue;
      va.outcome = Outcome::violated;
      va.witness = vb.witness;
      const std::string from(notion_id(vb.notion));
      va.witness->construction = "implied by the " + from + " witness: " + vb.witness->construction;
      va.detail["implied_by"] = from;
      changed = true;
    }
  }

  if (documented) {
    for (const auto& v : r.verdicts) {
      const auto flag = documented_flag(*documented, v.notion);
      if (!flag) continue;
      const std::string id(notion_id(v.notion));
      if (*flag && v.violated()) r.mismatches.push_back(id + " documented to hold but a witness was found");
      if (!*flag && !v.violated()) r.mismatches.push_back(id + " documented to fail but the search found no witness");
    }
  }
  return r;
}

Report classify_report(const CorpusEntry& entry, const ClassifyConfig& config) {
  return classify_report(entry.supremand(), config, &entry.properties, entry.lower_semicontinuous);
}

}  // namespace supcon
