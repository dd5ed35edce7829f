#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "tprim/constructions.hpp"
#include "tprim/dynamics.hpp"
#include "tprim/pattern_json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tprim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = tprim::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "tprim_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("help and usage errors") {
  auto help = run({"--help"});
  CHECK(help.code == 0);
  for (const char* sub : {"analyze", "construct", "verify", "explore"}) CHECK(help.out.find(sub) != std::string::npos);
  auto ex_help = run({"explore", "--help"});
  CHECK(ex_help.code == 0);
  for (const char* flag : {"--samples", "--seed", "--density", "--workers", "--format", "--exhaustive"})
    CHECK(ex_help.out.find(flag) != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"construct", "nothing"}).code == 2);
  CHECK(run({"analyze", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("construct then analyze reproduces published degrees") {
  auto ak = scratch("ak.json");
  REQUIRE(run({"construct", "ak", "--m", "3", "--n", "5", "--k", "3", "-o", ak.string()}).code == 0);
  auto r = run({"analyze", ak.string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["gamma"] == 8);

  auto m1 = run({"construct", "m1", "--n", "4"});
  REQUIRE(m1.code == 0);
  auto t = tprim::parse_tensor(m1.out);
  CHECK(t.order() == 2);
  CHECK(t.size() == 5);

  auto bt = scratch("bt.json");
  REQUIRE(run({"construct", "bt", "--m", "3", "--n", "4", "--t", "10", "-o", bt.string()}).code == 0);
  CHECK(json::parse(run({"analyze", bt.string()}).out)["gamma"] == 10);

  auto a0 = scratch("a0.json");
  REQUIRE(run({"construct", "a0", "--m", "3", "--n", "5", "-o", a0.string()}).code == 0);
  auto per_j = json::parse(run({"analyze", a0.string(), "--per-j"}).out);
  CHECK(per_j["gamma"] == 17);
  CHECK(per_j["per_j"][3]["gamma_j"] == 13);

  auto ex = scratch("ex415.json");
  REQUIRE(run({"construct", "example415", "-o", ex.string()}).code == 0);
  auto strong = run({"analyze", ex.string(), "--strong", "--verify-oracles"});
  REQUIRE(strong.code == 0);
  auto doc = json::parse(strong.out);
  CHECK(doc["strong"]["eta"] == 4);
  CHECK(doc["gamma"].get<int>() <= 4);
  for (const auto& o : doc["oracles"]) CHECK(o["passed"] == true);

  CHECK(run({"construct", "ak", "--m", "3", "--n", "5", "--k", "99"}).code == 2);
  CHECK(run({"construct", "chain", "--m", "3", "--n", "7"}).code == 2);
}

TEST_CASE("round trip for every family") {
  struct Case {
    std::vector<std::string> args;
    int gamma_j;  // column to check
    int expected;
  };
  std::vector<Case> cases = {
      {{"m1", "--n", "6"}, 0, 26},
      {{"m2", "--n", "6"}, 5, 18},
      {{"a0", "--m", "4", "--n", "6"}, 5, 21},
      {{"chain", "--m", "4", "--n", "7"}, 1, 21},
      {{"exp-matrix", "--n", "5", "--t", "4"}, 0, 4},
  };
  for (auto& c : cases) {
    auto file = scratch("family.json");
    auto args = c.args;
    args.insert(args.begin(), "construct");
    args.push_back("-o");
    args.push_back(file.string());
    REQUIRE(run(args).code == 0);
    auto doc = json::parse(run({"analyze", file.string(), "--per-j"}).out);
    if (c.gamma_j == 0) {
      CHECK(doc["gamma"] == c.expected);
    } else {
      CHECK(doc["per_j"][c.gamma_j - 1]["gamma_j"] == c.expected);
    }
  }
}

TEST_CASE("analyze edge cases") {
  auto empty = scratch("empty.json");
  write(empty, R"({"order":3,"dim":3,"entries":[]})");
  auto r = run({"analyze", empty.string(), "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out.find("not primitive") != std::string::npos);
  auto bad = scratch("bad.json");
  write(bad, R"({"order":3,"dim":3,"entries":[[1,2]]})");
  CHECK(run({"analyze", bad.string()}).code == 2);
  write(bad, "not json");
  CHECK(run({"analyze", bad.string()}).code == 2);
}

TEST_CASE("verify exit codes") {
  auto r = run({"verify", "exponent-set", "--m", "3", "--n", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(run({"verify", "m2", "--n", "5..7"}).code == 0);
  CHECK(run({"verify", "a0", "--m", "3..4", "--n", "3..7"}).code == 0);
  CHECK(run({"verify", "ak", "--m", "2..3"}).code == 2);
  CHECK(run({"verify", "ak", "--n", "7..3"}).code == 2);
  auto j = run({"verify", "chain", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(json::parse(j.out)["passed"] == true);
}

TEST_CASE("explore output and exit codes") {
  auto r2 = run({"explore", "r2", "--n", "4"});
  REQUIRE(r2.code == 0);
  auto doc = json::parse(r2.out);
  CHECK(doc["results"]["max"] == 6);
  for (const char* key : {"params", "results", "violations", "seed", "version"}) CHECK(doc.contains(key));

  auto c45 = run({"explore", "conjecture45", "--m", "3", "--n", "2", "--exhaustive"});
  REQUIRE(c45.code == 0);
  auto c = json::parse(c45.out)["results"]["counters"];
  CHECK(c["classified"] == 256);
  CHECK(c["forward_holds"] == c["primitive"]);

  CHECK(run({"explore", "conjecture45", "--m", "3", "--n", "4"}).code == 2);
  CHECK(run({"explore", "conjecture45", "--m", "3", "--n", "4", "--samples", "200"}).code == 0);

  std::vector<std::string> rj = {"explore", "rj", "--m", "3", "--n", "4", "--j", "1", "--samples", "3000", "--seed", "1"};
  auto a = run(rj);
  auto b = run(rj);
  rj.push_back("--workers");
  rj.push_back("3");
  auto w = run(rj);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == w.out);

  auto csv = run({"explore", "exponent-atlas", "--m", "3", "--n", "4", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("degree,count\n1,1\n", 0) == 0);

  auto replay = scratch("replay.json");
  CHECK(run({"explore", "conjecture45", "--m", "2", "--n", "2", "--replay", replay.string()}).code == 0);
  CHECK(tprim::read_replay_file(replay).empty());

  auto out = scratch("report.txt");
  CHECK(run({"explore", "r2", "--n", "3", "--format", "text", "-o", out.string()}).code == 0);
  std::ifstream f(out);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(text.find("target  r2") != std::string::npos);
}

TEST_CASE("isa flag") {
  auto ex = scratch("isa.json");
  REQUIRE(run({"construct", "a0", "--m", "3", "--n", "6", "-o", ex.string()}).code == 0);
  auto scalar = run({"--isa", "scalar", "analyze", ex.string(), "--per-j"});
  auto best = run({"analyze", ex.string(), "--per-j"});
  CHECK(scalar.code == 0);
  CHECK(scalar.out == best.out);
  CHECK(run({"--isa", "sse9", "analyze", ex.string()}).code == 2);
}
