#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "supcon/classify.hpp"
#include "supcon/envelope.hpp"
#include "supcon/error.hpp"
#include "supcon/fem1d.hpp"
#include "supcon/funcspace.hpp"
#include "supcon/laminate.hpp"
#include "supcon/parallel.hpp"
#include "supcon/report.hpp"

namespace supcon::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kContradicted = 2;

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(ErrorCode::invalid_argument, "not a number: '" + item + "'");
    v.push_back(x);
  }
  return v;
}

fs::path out_file(const RunConfig& cfg, const std::string& name) {
  fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create output directory " + cfg.out);
  return dir / name;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::io, "cannot write " + path.string());
  f << j.dump(2) << "\n";
  if (!f) throw Error(ErrorCode::io, "write failed for " + path.string());
}

json envelope_json(const RunConfig& cfg) {
  json j;
  j["timestamp"] = timestamp();
  j["command"] = cfg.command;
  j["config"] = cfg.to_json();
  return j;
}

// A corpus entry or a sampled CSV, packaged for the checkers.
struct Target {
  Supremand f;
  const CorpusEntry* entry = nullptr;
  std::optional<SampledFunction> sampled;
  double default_tol = 1e-9;
};

Target load_target(const RunConfig& cfg) {
  if (cfg.corpus.empty() == cfg.input.empty())
    throw Error(ErrorCode::invalid_argument, "give exactly one of --corpus and --input");
  Target t;
  if (!cfg.corpus.empty()) {
    t.entry = &corpus_entry(cfg.corpus);
    std::optional<Dims> d;
    if (!cfg.dims.empty()) d = Dims::parse(cfg.dims);
    t.f = t.entry->supremand(d);
  } else {
    t.sampled = read_csv(cfg.input);
    t.f = as_supremand(*t.sampled, fs::path(cfg.input).stem().string());
    t.default_tol = 1e-6;
  }
  return t;
}

GridSpec grid_for(const RunConfig& cfg, Dims dims) {
  const double R = cfg.radius.value_or(dims.size() == 1 ? 4.0 : 2.0);
  if (cfg.points) return GridSpec{dims, R, *cfg.points};
  if (dims.size() == 1) return grid_with_spacing(dims, R, 0.01);
  const int per_axis = dims.size() == 2 ? 101 : dims.size() == 3 ? 41 : 15;
  return GridSpec{dims, R, per_axis};
}

SampledFunction sampled_target(const RunConfig& cfg, const Target& t) {
  if (t.sampled) return *t.sampled;
  GridSpec g = grid_for(cfg, t.f.dims);
  g.validate();
  return sample(t.f, g, t.entry->default_outside());
}

MatrixPoint parse_xi(const RunConfig& cfg, const Supremand& f) {
  if (cfg.xi.empty()) {
    if (f.anchors.size() >= 2) return axpby(0.5, f.anchors[0], 0.5, f.anchors[1]);
    return MatrixPoint::zeros(f.dims);
  }
  auto v = parse_list(cfg.xi);
  if (static_cast<int>(v.size()) != f.dims.size())
    throw Error(ErrorCode::dimension_mismatch,
                "--xi needs " + std::to_string(f.dims.size()) + " entries for " + f.dims.str());
  return MatrixPoint(f.dims, std::move(v));
}

// Returns kContradicted when --expect disagrees with a verdict.
int check_expect(const RunConfig& cfg, const std::vector<Verdict>& verdicts, std::ostream& err) {
  if (cfg.expect.empty()) return kOk;
  const bool want_violation = cfg.expect == "violated";
  std::optional<Notion> only;
  if (!cfg.notion.empty()) only = parse_notion(cfg.notion);
  int status = kOk;
  for (const auto& v : verdicts) {
    if (only && v.notion != *only) continue;
    if (v.violated() != want_violation) {
      err << "expectation '" << cfg.expect << "' contradicted for " << notion_id(v.notion) << "\n";
      status = kContradicted;
    }
  }
  return status;
}

void print_verdicts(std::ostream& out, const std::vector<Verdict>& vs) {
  for (const auto& v : vs) {
    out << std::left << std::setw(22) << notion_id(v.notion) << std::setw(21) << to_string(v.outcome);
    if (v.witness) out << "gap " << v.witness->gap << " (" << v.witness->construction << ")";
    out << "\n";
  }
}

int cmd_corpus(const RunConfig& cfg, std::ostream& out) {
  json all = json::array();
  for (const auto& e : corpus()) {
    out << std::left << std::setw(20) << e.name << std::setw(6) << (e.any_dims ? "any" : e.dims.str()) << " "
        << e.description << "\n";
    json props = json::object();
    for (const auto& p : e.properties)
      props[std::string(notion_id(p.notion))] = {{"holds", p.holds}, {"basis", p.basis}};
    all.push_back({{"name", e.name},
                   {"dims", e.any_dims ? "any" : e.dims.str()},
                   {"description", e.description},
                   {"bounded", e.bounded},
                   {"coercive", e.coercive},
                   {"continuous", e.continuous},
                   {"lower_semicontinuous", e.lower_semicontinuous},
                   {"documented_properties", props}});
  }
  json j = envelope_json(cfg);
  j["corpus"] = all;
  write_json(out_file(cfg, "corpus.json"), j);
  return kOk;
}

int cmd_envelope(const RunConfig& cfg, std::ostream& out) {
  const Target t = load_target(cfg);
  const SampledFunction f = sampled_target(cfg, t);
  SampledFunction env = f;
  json extra = json::object();
  if (cfg.kind == "convex") {
    env = convex_envelope(f);
  } else if (cfg.kind == "lslc") {
    env = level_convex_lsc_envelope(f);
  } else if (cfg.kind == "lamination") {
    const auto r = lamination_sweeps(f);
    env = r.hull;
    extra = {{"sweeps", r.sweeps}, {"converged", r.converged}, {"last_change", r.last_change}};
  } else if (cfg.kind == "pasch-hausdorff") {
    env = pasch_hausdorff(f, cfg.lambda);
    extra = {{"lambda", cfg.lambda}};
  } else {
    throw Error(ErrorCode::invalid_argument,
                "unknown envelope kind '" + cfg.kind + "' (convex, lslc, lamination, pasch-hausdorff)");
  }
  const auto csv = out_file(cfg, "envelope_" + cfg.kind + ".csv");
  write_csv(env, csv.string());
  json j = envelope_json(cfg);
  j["function"] = t.f.name;
  j["kind"] = cfg.kind;
  j["grid"] = {{"dims", f.grid().dims.str()}, {"radius", f.grid().radius}, {"points_per_axis", f.grid().points_per_axis}};
  j["outside"] = f.outside() == OutsideMode::clamp ? "clamp" : "plus-infinity";
  j["result"] = csv.filename().string();
  j["detail"] = extra;
  write_json(out_file(cfg, "envelope.json"), j);
  out << "wrote " << csv.string() << "\n";
  return kOk;
}

ClassifyConfig classify_config(const RunConfig& cfg, const Target& t) {
  ClassifyConfig c;
  c.budget = cfg.budget;
  c.tol = cfg.tol.value_or(t.default_tol);
  c.seed = cfg.seed;
  c.radius = cfg.radius.value_or(2.0);
  if (t.sampled) c.radius = std::min(c.radius, t.sampled->grid().radius);
  c.field_budget = cfg.field_budget;
  c.K = cfg.K;
  return c;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Target t = load_target(cfg);
  const ClassifyConfig c = classify_config(cfg, t);
  const Report r = t.entry ? classify_report(t.f, c, &t.entry->properties, t.entry->lower_semicontinuous)
                           : classify_report(t.f, c);
  json j = envelope_json(cfg);
  j["report"] = r.to_json();
  write_json(out_file(cfg, "classify_" + r.name + ".json"), j);
  out << r.name << " (" << r.dims.str() << ")\n";
  print_verdicts(out, r.verdicts);
  for (const auto& s : r.inconsistencies) out << "inconsistency: " << s << "\n";
  for (const auto& s : r.mismatches) out << "documented mismatch: " << s << "\n";
  return check_expect(cfg, r.verdicts, err);
}

int cmd_powerlaw(const RunConfig& cfg, std::ostream& out) {
  const Target t = load_target(cfg);
  const SampledFunction f = sampled_target(cfg, t);
  const auto schedule = cfg.p_schedule.empty() ? default_p_schedule() : cfg.p_schedule;
  const auto rep = power_law_envelope(f, schedule, parse_power_law_mode(cfg.mode));
  std::vector<std::string> files;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    std::ostringstream name;
    name << "powerlaw_p" << schedule[i] << ".csv";
    write_csv(rep.per_p[i], out_file(cfg, name.str()).string());
    files.push_back(name.str());
  }
  write_csv(*rep.limit_estimate, out_file(cfg, "powerlaw_limit.csv").string());
  json j = envelope_json(cfg);
  j["function"] = t.f.name;
  j["report"] = rep.to_json(files, "powerlaw_limit.csv");
  write_json(out_file(cfg, "powerlaw.json"), j);
  out << t.f.name << ": " << (rep.gap_detected ? "gap-detected" : "consistent-with-curl-infty")
      << ", largest interior gap " << rep.interior_gap << "\n";
  return kOk;
}

int cmd_gamma1d(const RunConfig& cfg, std::ostream& out) {
  const Target t = load_target(cfg);
  if (!(t.f.dims == Dims{1, 1})) throw Error(ErrorCode::dimension_mismatch, "gamma1d needs a scalar function");
  const double xi = parse_xi(cfg, t.f)[0];
  Mesh1D mesh;
  mesh.cells = cfg.cells;
  mesh.xi = xi;
  FeOptions o;
  o.seed = cfg.seed;
  o.grad_bound = cfg.grad_bound;
  if (t.entry) o.extension = t.entry->default_outside();
  if (t.sampled) o.extension = t.sampled->outside();
  const auto schedule = cfg.p_schedule.empty() ? default_p_schedule() : cfg.p_schedule;
  const auto rep = gamma_limit_experiment(t.f, xi, schedule, mesh, o);
  rep.write_profiles_csv(out_file(cfg, "gamma1d_profiles.csv").string());
  json j = envelope_json(cfg);
  j["report"] = rep.to_json("gamma1d_profiles.csv");
  write_json(out_file(cfg, "gamma1d.json"), j);
  out << t.f.name << " at " << xi << ": " << rep.classification() << ", limit " << rep.limit_estimate << " vs f "
      << rep.f_xi << "\n";
  return kOk;
}

int cmd_laminate_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Target t = load_target(cfg);
  CheckOptions o;
  o.budget = cfg.budget;
  o.seed = cfg.seed;
  o.tol = cfg.tol.value_or(t.default_tol);
  o.radius = cfg.radius.value_or(2.0);
  const Verdict v = check_curl_young_on_laminates(t.f, o);
  json j = envelope_json(cfg);
  j["function"] = t.f.name;
  j["verdict"] = v.to_json();
  write_json(out_file(cfg, "laminate_check.json"), j);
  print_verdicts(out, {v});
  return check_expect(cfg, {v}, err);
}

// Rebuilds the simple-laminate field behind a two-atom witness, if any.
std::optional<TestField> witness_field(const Verdict& v) {
  if (!v.witness || v.witness->support.size() != 2 || !v.witness->detail.contains("lambda")) return std::nullopt;
  const auto& w = *v.witness;
  const double lam = w.detail["lambda"].get<double>();
  const int layers = w.detail.value("layers", 1);
  for (int order = 0; order < 2; ++order) {
    const MatrixPoint& p = w.support[static_cast<std::size_t>(order)];
    const MatrixPoint& q = w.support[static_cast<std::size_t>(1 - order)];
    if ((axpby(lam, p, 1.0 - lam, q) - w.reference).norm() <= 1e-9 * std::max(1.0, w.reference.norm())) {
      try {
        return realize_simple_laminate(p, q, lam, layers);
      } catch (const Error&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

int cmd_morrey(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Target t = load_target(cfg);
  const MatrixPoint xi = parse_xi(cfg, t.f);
  FieldSearchOptions fo;
  fo.budget = cfg.field_budget;
  fo.seed = cfg.seed;
  fo.tol = cfg.tol.value_or(t.default_tol);
  fo.radius = cfg.radius.value_or(2.0);
  std::vector<Notion> which{Notion::weak_morrey, Notion::periodic_weak_morrey, Notion::strong_morrey};
  if (!cfg.notion.empty()) which = {parse_notion(cfg.notion)};
  std::vector<Verdict> vs;
  for (Notion n : which) {
    if (n == Notion::weak_morrey) {
      vs.push_back(search_weak_morrey_violation(t.f, xi, fo));
    } else if (n == Notion::periodic_weak_morrey) {
      vs.push_back(check_periodic_weak_morrey(t.f, xi, fo));
    } else if (n == Notion::strong_morrey) {
      StrongSearchOptions so;
      so.K = cfg.K;
      so.field = fo;
      vs.push_back(search_strong_morrey_violation(t.f, xi, so));
    } else {
      throw Error(ErrorCode::invalid_argument, "morrey-search covers weak-Morrey, periodic-weak and strong-Morrey");
    }
  }
  json j = envelope_json(cfg);
  j["function"] = t.f.name;
  j["xi"] = to_json(xi);
  j["verdicts"] = json::array();
  for (const auto& v : vs) {
    json jv = v.to_json();
    if (auto field = witness_field(v)) {
      const std::string name = "field_" + std::string(notion_id(v.notion)) + ".csv";
      write_field_csv(*field, out_file(cfg, name).string());
      jv["field_csv"] = name;
    }
    j["verdicts"].push_back(jv);
  }
  write_json(out_file(cfg, "morrey_search.json"), j);
  print_verdicts(out, vs);
  return check_expect(cfg, vs, err);
}

template <class T>
void take(const json& j, std::initializer_list<const char*> keys, T& dst) {
  for (const char* k : keys)
    if (j.contains(k)) dst = j.at(k).get<T>();
}

}  // namespace

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["corpus"] = corpus;
  j["input"] = input;
  j["radius"] = radius ? json(*radius) : json(nullptr);
  j["points"] = points ? json(*points) : json(nullptr);
  j["p_schedule"] = p_schedule;
  j["budget"] = budget;
  j["field_budget"] = field_budget;
  j["tol"] = tol ? json(*tol) : json(nullptr);
  j["seed"] = seed;
  j["expect"] = expect;
  j["out"] = out;
  j["threads"] = threads;
  j["kind"] = kind;
  j["mode"] = mode;
  j["lambda"] = lambda;
  j["xi"] = xi;
  j["dims"] = dims;
  j["notion"] = notion;
  j["cells"] = cells;
  j["K"] = K;
  j["grad_bound"] = grad_bound;
  return j;
}

void apply_config(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "config file must hold a JSON object");
  try {
    take(j, {"corpus"}, cfg.corpus);
    take(j, {"input"}, cfg.input);
    if (j.contains("radius")) cfg.radius = j.at("radius").get<double>();
    if (j.contains("points")) cfg.points = j.at("points").get<int>();
    if (j.contains("p-schedule") || j.contains("p_schedule")) {
      const json& v = j.contains("p-schedule") ? j.at("p-schedule") : j.at("p_schedule");
      cfg.p_schedule = v.is_string() ? parse_list(v.get<std::string>()) : v.get<std::vector<double>>();
    }
    take(j, {"budget"}, cfg.budget);
    take(j, {"field-budget", "field_budget"}, cfg.field_budget);
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    take(j, {"seed"}, cfg.seed);
    take(j, {"expect"}, cfg.expect);
    take(j, {"out"}, cfg.out);
    take(j, {"threads"}, cfg.threads);
    take(j, {"kind"}, cfg.kind);
    take(j, {"mode"}, cfg.mode);
    take(j, {"lambda"}, cfg.lambda);
    take(j, {"xi"}, cfg.xi);
    take(j, {"dims"}, cfg.dims);
    take(j, {"notion"}, cfg.notion);
    take(j, {"cells"}, cfg.cells);
    take(j, {"K"}, cfg.K);
    take(j, {"grad-bound", "grad_bound"}, cfg.grad_bound);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("bad config value: ") + e.what());
  }
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.expect.empty() && cfg.expect != "holds" && cfg.expect != "violated")
    throw Error(ErrorCode::invalid_argument, "--expect takes holds or violated");
  set_max_threads(cfg.threads);
  if (cfg.command == "corpus") return cmd_corpus(cfg, out);
  if (cfg.command == "envelope") return cmd_envelope(cfg, out);
  if (cfg.command == "classify") return cmd_classify(cfg, out, err);
  if (cfg.command == "powerlaw") return cmd_powerlaw(cfg, out);
  if (cfg.command == "gamma1d") return cmd_gamma1d(cfg, out);
  if (cfg.command == "laminate-check") return cmd_laminate_check(cfg, out, err);
  if (cfg.command == "morrey-search") return cmd_morrey(cfg, out, err);
  throw Error(ErrorCode::unknown_name, "unknown command '" + cfg.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supremal convexity notions: envelopes, checkers and power-law experiments", "supcon"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig flags;
  std::string config_path, p_text, radius_text, tol_text;
  int points = 0;
  auto* o_config = app.add_option("--config", config_path, "JSON file with default settings");
  auto* o_corpus = app.add_option("--corpus", flags.corpus, "corpus entry name");
  auto* o_input = app.add_option("--input", flags.input, "sampled function CSV");
  auto* o_radius = app.add_option("--radius", radius_text, "box radius R of [-R, R]^d");
  auto* o_points = app.add_option("--points", points, "grid points per axis (odd)");
  auto* o_p = app.add_option("--p-schedule", p_text, "comma-separated increasing p values");
  auto* o_budget = app.add_option("--budget", flags.budget, "samples per pointwise checker");
  auto* o_fbudget = app.add_option("--field-budget", flags.field_budget, "moves per base point in field searches");
  auto* o_tol = app.add_option("--tol", tol_text, "violation tolerance");
  auto* o_seed = app.add_option("--seed", flags.seed, "random seed");
  auto* o_expect = app.add_option("--expect", flags.expect, "holds or violated");
  auto* o_out = app.add_option("--out", flags.out, "output directory");
  auto* o_threads = app.add_option("--threads", flags.threads, "worker thread cap (0 = all cores)");
  auto* o_kind = app.add_option("--kind", flags.kind, "envelope kind: convex, lslc, lamination, pasch-hausdorff");
  auto* o_mode = app.add_option("--mode", flags.mode, "power-law mode: convex-lower or lamination-upper");
  auto* o_lambda = app.add_option("--lambda", flags.lambda, "Pasch-Hausdorff Lipschitz constant");
  auto* o_xi = app.add_option("--xi", flags.xi, "base point, comma-separated row-major entries");
  auto* o_dims = app.add_option("--dims", flags.dims, "matrix shape NxM for shape-generic entries");
  auto* o_notion = app.add_option("--notion", flags.notion, "restrict to one notion");
  auto* o_cells = app.add_option("--cells", flags.cells, "finite-element cells");
  auto* o_K = app.add_option("--K", flags.K, "gradient bound of the strong Morrey search");
  auto* o_gb = app.add_option("--grad-bound", flags.grad_bound, "slope box of the 1D experiment");

  std::string corpus_action;
  auto* corpus_cmd = app.add_subcommand("corpus", "list the built-in functions");
  corpus_cmd->add_option("action", corpus_action, "list")->required();
  app.add_subcommand("envelope", "compute an envelope on a grid");
  app.add_subcommand("classify", "run every checker and cross-check the hierarchy");
  app.add_subcommand("powerlaw", "p-th root envelopes of f^p");
  app.add_subcommand("gamma1d", "1D finite-element power-law experiment");
  app.add_subcommand("laminate-check", "curl-Young inequality on finite-order laminates");
  app.add_subcommand("morrey-search", "weak, periodic and strong Morrey searches at a point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    if (*o_config) {
      std::ifstream f(config_path);
      if (!f) throw Error(ErrorCode::io, "cannot read config " + config_path);
      json j;
      try {
        f >> j;
      } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_argument, std::string("config is not valid JSON: ") + e.what());
      }
      apply_config(cfg, j);
    }
    if (*o_corpus) cfg.corpus = flags.corpus;
    if (*o_input) cfg.input = flags.input;
    if (*o_radius) cfg.radius = parse_list(radius_text).at(0);
    if (*o_points) cfg.points = points;
    if (*o_p) cfg.p_schedule = parse_list(p_text);
    if (*o_budget) cfg.budget = flags.budget;
    if (*o_fbudget) cfg.field_budget = flags.field_budget;
    if (*o_tol) cfg.tol = parse_list(tol_text).at(0);
    if (*o_seed) cfg.seed = flags.seed;
    if (*o_expect) cfg.expect = flags.expect;
    if (*o_out) cfg.out = flags.out;
    if (*o_threads) cfg.threads = flags.threads;
    if (*o_kind) cfg.kind = flags.kind;
    if (*o_mode) cfg.mode = flags.mode;
    if (*o_lambda) cfg.lambda = flags.lambda;
    if (*o_xi) cfg.xi = flags.xi;
    if (*o_dims) cfg.dims = flags.dims;
    if (*o_notion) cfg.notion = flags.notion;
    if (*o_cells) cfg.cells = flags.cells;
    if (*o_K) cfg.K = flags.K;
    if (*o_gb) cfg.grad_bound = flags.grad_bound;
    if (cfg.command == "corpus" && corpus_action != "list")
      throw Error(ErrorCode::invalid_argument, "corpus supports only 'list'");
    return execute(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace supcon::cli
