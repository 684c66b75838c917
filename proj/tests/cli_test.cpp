#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "origami/cli.hpp"
#include "support.hpp"

using namespace origami;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "origami");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, int expect_code = 0) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run_cli(args);
  EXPECT_EQ(r.code, expect_code) << r.err;
  return nlohmann::json::parse(r.out);
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("origami_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& text = {}) const {
    const auto p = path_ / name;
    if (!text.empty()) std::ofstream(p) << text;
    return p.string();
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string fixture_path(const std::string& name) { return std::string(ORIGAMI_SOURCE_FIXTURES) + "/" + name + ".json"; }

std::vector<long long> longs(const nlohmann::json& a) { return a.get<std::vector<long long>>(); }

const char* kSquareHead = R"({"n": 2, "polytopes": [)";

}  // namespace

TEST(CliValidate, Fixtures) {
  for (const auto& name : origami::testing::all_fixtures()) {
    EXPECT_EQ(run_cli({"validate", fixture_path(name)}).code, 0) << name;
  }
  auto doc = run_json({"validate", fixture_path("t_ring4")});
  EXPECT_EQ(doc["status"], "ok");
  EXPECT_TRUE(doc["violations"].empty());
}

TEST(CliValidate, NonPrimitiveNormalIsAWarning) {
  TempDir dir;
  const auto path = dir.file("wide.json", std::string(kSquareHead) + R"({"facets": [
    {"normal": [2, 0], "offset": 0}, {"normal": [0, 1], "offset": 0},
    {"normal": [-1, 0], "offset": 1}, {"normal": [0, -1], "offset": 1}]}], "edges": []})");
  const auto r = run_cli({"validate", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("divided by 2"), std::string::npos) << r.out;
}

TEST(CliValidate, OverlappingFoldsFail) {
  TempDir dir;
  const std::string square = R"({"facets": [{"normal": [1, 0], "offset": 0}, {"normal": [0, 1], "offset": 0},
    {"normal": [-1, 0], "offset": 1}, {"normal": [0, -1], "offset": 1}]})";
  const auto path = dir.file("overlap.json", std::string(kSquareHead) + square + "," + square + R"(],
    "edges": [{"ends": [{"vertex": 0, "facet": 2}, {"vertex": 1, "facet": 2}]},
              {"ends": [{"vertex": 0, "facet": 3}, {"vertex": 1, "facet": 3}]}]})");
  auto doc = run_json({"validate", path}, 1);
  bool found = false;
  for (const auto& v : doc["violations"]) {
    if (v["code"] == "fold-facets-not-disjoint") {
      found = true;
      EXPECT_FALSE(v["polytope"].is_null());
      EXPECT_EQ(v["edge"], 1);
    }
  }
  EXPECT_TRUE(found);
}

TEST(CliParse, ErrorsExitTwo) {
  TempDir dir;
  const auto broken = dir.file("broken.json", "{\n  \"n\": 2,\n  \"polytopes\": [\n    {\"facets\": ]\n}\n");
  auto r = run_cli({"validate", broken});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":4:"), std::string::npos) << r.err;

  const auto bad_field = dir.file("field.json", std::string(kSquareHead) +
                                                    R"({"facets": [{"normal": [1, 0, 0], "offset": 0}]}]})");
  r = run_cli({"invariants", bad_field});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("polytopes[0].facets[0].normal"), std::string::npos) << r.err;

  EXPECT_EQ(run_cli({"validate", (dir.path() / "missing.json").string()}).code, 2);
  EXPECT_EQ(run_cli({"validate"}).code, 2);
  EXPECT_EQ(run_cli({"invariants", fixture_path("t_ring4"), "--mode", "fast"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
}

TEST(CliInvariants, Ring) {
  auto doc = run_json({"invariants", fixture_path("t_ring4"), "--mode", "both"});
  EXPECT_EQ(longs(doc["f"]), (std::vector<long long>{8, 8}));
  EXPECT_EQ(longs(doc["h"]), (std::vector<long long>{1, 6, 1}));
  EXPECT_EQ(longs(doc["h'"]), (std::vector<long long>{1, 6, 2}));
  EXPECT_EQ(longs(doc["h''"]), (std::vector<long long>{4}));
  EXPECT_EQ(longs(doc["betti (closed form)"]), (std::vector<long long>{1, 1, 8, 1, 1}));
  EXPECT_EQ(longs(doc["betti (inductive)"]), (std::vector<long long>{1, 1, 8, 1, 1}));
  EXPECT_EQ(doc["methods agree"], true);
  EXPECT_EQ(longs(doc["dehn-sommerville residuals"]), (std::vector<long long>{0, 0, 0}));
  EXPECT_EQ(doc["coker rank in degree 2"], 2);
  EXPECT_EQ(doc["ker rank in degree 4"], 1);
  EXPECT_EQ(doc["r_min"], 1);

  const auto text = run_cli({"invariants", fixture_path("t_ring4")});
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("(1,1,8,1,1)"), std::string::npos) << text.out;
}

TEST(CliInvariants, CubeAndModes) {
  auto doc = run_json({"invariants", fixture_path("t_cube2")});
  EXPECT_EQ(longs(doc["betti (closed form)"]), (std::vector<long long>{1, 0, 3, 0, 3, 0, 1}));
  auto closed = run_json({"invariants", fixture_path("t_cube2"), "--mode", "closed"});
  EXPECT_FALSE(closed.contains("betti (inductive)"));
  auto inductive = run_json({"invariants", fixture_path("t_chain4"), "--mode", "inductive"});
  EXPECT_EQ(longs(inductive["betti (inductive)"]), (std::vector<long long>{1, 0, 10, 0, 1}));
  EXPECT_FALSE(inductive.contains("betti (closed form)"));
}

TEST(CliInvariants, RelaxedMode) {
  const auto refused = run_cli({"invariants", fixture_path("t_prismring")});
  EXPECT_EQ(refused.code, 1);
  EXPECT_NE(refused.err.find("--relaxed"), std::string::npos);
  auto doc = run_json({"invariants", fixture_path("t_prismring"), "--relaxed"});
  EXPECT_EQ(doc["relaxed"]["r_min"], 2);
  EXPECT_EQ(doc["relaxed"]["full Betti numbers determined"], false);
  EXPECT_FALSE(doc.contains("betti (closed form)"));
}

TEST(CliHomology, Matches) {
  for (const auto& name : {"t_square", "t_fold2", "t_ring4", "t_cube2", "t_chain4", "t_strips4"}) {
    auto doc = run_json({"homology", fixture_path(name)});
    EXPECT_EQ(doc["match"], true) << name;
    EXPECT_EQ(doc["torsion free"], true) << name;
  }
  auto ring = run_json({"homology", fixture_path("t_ring4")});
  EXPECT_EQ(ring["computed"], "H~0=Z^1, H~1=Z^2");
  auto cube = run_json({"homology", fixture_path("t_cube2")});
  EXPECT_EQ(cube["computed"], "H~0=Z^0, H~1=Z^0, H~2=Z^1");
}

TEST(CliCut, RingEdge) {
  TempDir dir;
  const auto out = dir.file("cut.json");
  auto doc = run_json({"cut", fixture_path("t_ring4"), "--edge", "0", "--out", out});
  EXPECT_EQ(longs(doc["folded facet h"]), (std::vector<long long>{1, 1}));
  EXPECT_EQ(doc["predicted betti change"]["b_2"], 2);
  const auto cut_t = load_template(out);
  EXPECT_EQ(cut_t.edge_count(), 3u);
  EXPECT_EQ(graph_cycle_rank(cut_t), 0u);
  EXPECT_EQ(parse_template(serialize_template(cut_t)), cut_t);
  EXPECT_EQ(run_cli({"invariants", out}).code, 0);
  auto after = run_json({"invariants", out});
  EXPECT_EQ(longs(after["betti (closed form)"]), (std::vector<long long>{1, 0, 10, 0, 1}));
}

TEST(CliCut, BridgesAndPrisms) {
  EXPECT_EQ(run_cli({"cut", fixture_path("t_chain4"), "--edge", "1"}).code, 1);
  EXPECT_EQ(run_cli({"cut", fixture_path("t_chain4"), "--edge", "1", "--allow-bridge"}).code, 0);
  EXPECT_EQ(run_cli({"cut", fixture_path("t_chain4"), "--edge", "9"}).code, 1);
  auto prism = run_json({"cut", fixture_path("t_prismring"), "--edge", "0"});
  EXPECT_EQ(longs(prism["folded facet h"]), (std::vector<long long>{1, 2, 1}));
  EXPECT_EQ(prism["predicted betti change"]["b_2"], 3);
  EXPECT_EQ(prism["predicted betti change"]["b_4"], 3);
  EXPECT_EQ(prism["cut template"]["edges"].size(), 3u);
}

TEST(CliRing, Examples) {
  auto ring = run_json({"ring4d", fixture_path("t_ring4")});
  EXPECT_EQ(ring["degree 2"]["rank"], 6);
  EXPECT_EQ(ring["degree 4"]["rank"], 2);
  EXPECT_EQ(ring["degree 4"]["kernel rank"], 1);
  EXPECT_EQ(ring["degree 4"]["kernel basis"], nlohmann::json::array({"mu1-mu2"}));
  auto sq = run_json({"ring4d", fixture_path("t_square")});
  EXPECT_EQ(sq["degree 2"]["rank"], 2);
  EXPECT_EQ(sq["degree 4"]["rank"], 1);
  EXPECT_TRUE(sq["degree 4"]["kernel basis"].empty());
  EXPECT_EQ(run_cli({"ring4d", fixture_path("t_cube2")}).code, 3);
}

TEST(CliReports, Deterministic) {
  for (const auto& name : origami::testing::acyclic_fixtures()) {
    for (const std::string cmd : {"invariants", "homology"}) {
      const auto a = run_cli({cmd, fixture_path(name)});
      const auto b = run_cli({cmd, fixture_path(name)});
      EXPECT_EQ(a.out, b.out) << cmd << " " << name;
      const auto ja = run_cli({cmd, fixture_path(name), "--format", "json"});
      EXPECT_EQ(ja.out, run_cli({cmd, fixture_path(name), "--format", "json"}).out);
    }
  }
}

TEST(CliFixtures, BundledMatchShippedFiles) {
  for (const auto& name : origami::testing::all_fixtures()) {
    std::ifstream in(fixture_path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(parse_template(ss.str()), load_fixture(name)) << name;
  }
  const auto listed = run_cli({"fixtures"});
  EXPECT_EQ(listed.code, 0);
  EXPECT_NE(listed.out.find("t_prismring"), std::string::npos);
  // a bare fixture name resolves to the bundled copy
  EXPECT_EQ(run_cli({"validate", "t_ring4"}).code, 0);
}

TEST(CliFixtures, EnvironmentOverride) {
  TempDir dir;
  const auto text = std::string(R"({"name": "t_square", "n": 2, "polytopes": [{"label": "big", "facets": [
    {"normal": [1, 0], "offset": 0}, {"normal": [0, 1], "offset": 0},
    {"normal": [-1, 0], "offset": 5}, {"normal": [0, -1], "offset": 5}]}], "edges": []})");
  dir.file("t_square.json", text);
  ::setenv("ORIGAMI_FIXTURE_DIR", dir.path().c_str(), 1);
  const auto t = load_fixture("t_square");
  ::unsetenv("ORIGAMI_FIXTURE_DIR");
  EXPECT_EQ(t.polytope(0).label(), "big");
  EXPECT_EQ(load_fixture("t_square").polytope(0).facet(2).offset, Rational(1));
}

TEST(CliFixtures, ExportRoundTrips) {
  TempDir dir;
  const auto target = (dir.path() / "out").string();
  EXPECT_EQ(run_cli({"fixtures", "--export", target}).code, 0);
  for (const auto& name : origami::testing::all_fixtures()) {
    const auto t = load_template(target + "/" + name + ".json");
    EXPECT_EQ(t, load_fixture(name));
    EXPECT_EQ(parse_template(serialize_template(t)), t);
  }
}
