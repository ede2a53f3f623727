#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "supcon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = supcon::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

json load(const fs::path& p) {
  std::ifstream f(p);
  json j;
  f >> j;
  return j;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& sub = "") const { return (path / sub).string(); }
};

}  // namespace

TEST_CASE("corpus list") {
  TempDir d("supcon_cli_corpus");
  const auto r = run({"corpus", "list", "--out", d.str()});
  CHECK(r.status == 0);
  CHECK(r.out.find("arctan_det") != std::string::npos);
  const auto j = load(d.path / "corpus.json");
  CHECK(j["corpus"].size() >= 6);
}

TEST_CASE("classify writes a reproducible report") {
  TempDir a("supcon_cli_a"), b("supcon_cli_b");
  const auto r1 = run({"classify", "--corpus", "arctan_det", "--budget", "20000", "--out", a.str()});
  const auto r2 = run({"classify", "--corpus", "arctan_det", "--budget", "20000", "--out", b.str(), "--threads", "1"});
  REQUIRE(r1.status == 0);
  REQUIRE(r2.status == 0);
  auto j1 = load(a.path / "classify_arctan_det.json"), j2 = load(b.path / "classify_arctan_det.json");
  for (auto* j : {&j1, &j2}) {
    j->erase("timestamp");
    (*j)["config"].erase("out");
    (*j)["config"].erase("threads");
  }
  CHECK(j1 == j2);
  const auto& vs = j1["report"]["verdicts"];
  CHECK(vs[0]["notion"] == "level-convex");
  CHECK(vs[0]["outcome"] == "violated");
  CHECK(vs[1]["outcome"] == "holds-within-budget");
  for (const auto& v : vs) CHECK(v["statement"].get<std::string>().size() > 10);
}

TEST_CASE("expectations and exit codes") {
  TempDir d("supcon_cli_expect");
  CHECK(run({"classify", "--corpus", "arctan_det", "--budget", "5000", "--notion", "level-convex", "--expect",
             "holds", "--out", d.str()})
            .status == 2);
  CHECK(run({"classify", "--corpus", "arctan_det", "--budget", "5000", "--notion", "rank-one", "--expect", "holds",
             "--out", d.str()})
            .status == 0);
  CHECK(run({"laminate-check", "--corpus", "one_minus_chi_pair", "--expect", "violated", "--out", d.str()}).status ==
        0);
  CHECK(run({"frobnicate"}).status == 1);
  CHECK(run({"classify", "--corpus", "no_such_entry", "--out", d.str()}).status == 1);
  CHECK(run({"classify", "--expect", "maybe", "--corpus", "clamp1d", "--out", d.str()}).status == 1);
  {
    std::ofstream bad(d.str("bad.csv"));
    bad << "x,y\n1,2\n";
  }
  const auto r = run({"envelope", "--input", d.str("bad.csv"), "--out", d.str()});
  CHECK(r.status == 1);
  CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("flags override the config file and everything is echoed") {
  TempDir d("supcon_cli_config");
  {
    std::ofstream c(d.str("cfg.json"));
    c << R"({"budget": 3000, "seed": 5, "corpus": "clamp1d", "field-budget": 500})";
  }
  const auto r = run({"classify", "--config", d.str("cfg.json"), "--seed", "9", "--out", d.str()});
  REQUIRE(r.status == 0);
  const auto j = load(d.path / "classify_clamp1d.json");
  CHECK(j["config"]["budget"] == 3000);
  CHECK(j["config"]["seed"] == 9);
  CHECK(j["config"]["field_budget"] == 500);
  CHECK(j["report"]["config"]["seed"] == 9);
}

TEST_CASE("envelope output is re-ingestible") {
  TempDir d("supcon_cli_envelope");
  REQUIRE(run({"envelope", "--corpus", "double_well_1d", "--kind", "lslc", "--radius", "2", "--points", "41", "--out",
               d.str()})
              .status == 0);
  REQUIRE(fs::exists(d.path / "envelope_lslc.csv"));
  REQUIRE(run({"envelope", "--input", d.str("envelope_lslc.csv"), "--kind", "convex", "--out", d.str("again")})
              .status == 0);
  CHECK(fs::exists(d.path / "again" / "envelope_convex.csv"));
  CHECK(run({"envelope", "--corpus", "clamp1d", "--kind", "pasch-hausdorff", "--lambda", "2", "--out", d.str()})
            .status == 0);
  CHECK(run({"envelope", "--corpus", "clamp1d", "--kind", "nonsense", "--out", d.str()}).status == 1);
}

TEST_CASE("powerlaw, gamma1d and morrey-search") {
  TempDir d("supcon_cli_powerlaw");
  const auto r = run({"powerlaw", "--corpus", "clamp1d", "--radius", "10", "--mode", "convex-lower", "--out", d.str()});
  REQUIRE(r.status == 0);
  const auto j = load(d.path / "powerlaw.json");
  CHECK(j["report"]["per_p"].size() == 7);
  CHECK(j["report"]["classification"] == "gap-detected");
  for (const auto& f : j["report"]["per_p"]) CHECK(fs::exists(d.path / f.get<std::string>()));

  REQUIRE(run({"gamma1d", "--corpus", "exampleD_scalar", "--xi", "0.5", "--p-schedule", "2,8", "--out", d.str()})
              .status == 0);
  const auto g = load(d.path / "gamma1d.json");
  CHECK(g["report"]["per_p"].size() == 2);
  CHECK(fs::exists(d.path / "gamma1d_profiles.csv"));

  REQUIRE(run({"morrey-search", "--corpus", "one_minus_chi_pair", "--notion", "periodic-weak", "--out", d.str()})
              .status == 0);
  const auto m = load(d.path / "morrey_search.json");
  CHECK(m["verdicts"][0]["outcome"] == "violated");
  CHECK(fs::exists(d.path / m["verdicts"][0]["field_csv"].get<std::string>()));
}
