#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "pilp/json_io.hpp"

using namespace pilp;
using io::Json;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(PILP_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (const std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(PILP_DATA) + "/" + name; }

std::string scratch(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, DecideExitCodes) {
  const CliRun holds = run("--deterministic decide " + data("decide_interval_length_one.json"));
  EXPECT_EQ(holds.code, 0);
  EXPECT_EQ(Json::parse(holds.out), Json::parse(R"({"verdict":"Holds"})"));

  const CliRun fails = run("--deterministic decide " + data("decide_interval_length_half.json"));
  EXPECT_EQ(fails.code, 1);
  const Json out = Json::parse(fails.out);
  std::ifstream in(data("decide_interval_length_half.json"));
  const ForAllExistsInstance inst = io::forall_from(Json::parse(in));
  EXPECT_NO_THROW(verify_counterexample(inst, io::counterexample_from(out["certificate"])));

  EXPECT_EQ(run("decide --bell-scarf " + data("decide_interval_length_half.json")).code, 1);
}

TEST(Cli, GapSubcommand) {
  const CliRun t = run("gap --gamma 1/2 " + data("gap_interval.json"));
  EXPECT_EQ(t.code, 1);
  EXPECT_TRUE(Json::parse(t.out).contains("certificate"));
  EXPECT_EQ(run("gap --gamma 1 " + data("gap_interval.json")).code, 0);
  const CliRun m = run("--deterministic gap --max " + data("gap_unit_box.json"));
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(Json::parse(m.out)["value"], "2");
  EXPECT_EQ(run("gap " + data("gap_interval.json")).code, 2);
}

TEST(Cli, OtherSubcommands) {
  const std::string square = scratch("square.json", R"({"A":[["1","0"],["-1","0"],["0","1"],["0","-1"]],"b":["1","0","1","0"]})");
  const CliRun w = run("--deterministic width " + square);
  EXPECT_EQ(w.code, 0);
  EXPECT_EQ(Json::parse(w.out)["width"], "1");

  const CliRun s = run("--deterministic structure " + square);
  EXPECT_EQ(s.code, 0);
  EXPECT_FALSE(Json::parse(s.out)["points"].empty());

  const CliRun p = run("--deterministic partition " + square);
  EXPECT_EQ(p.code, 0);
  EXPECT_FALSE(Json::parse(p.out)["regions"].empty());

  const std::string open = scratch("open.json", R"({"P":{"arity":1,"constraints":[
      {"a":["2"],"beta":"1"},{"a":["-2"],"beta":"-1","strict":true}]}})");
  EXPECT_EQ(run("feasible " + open).code, 1);
  EXPECT_EQ(run("feasible " + square).code, 2);

  const std::string pts = scratch("pts.json", R"({"A":[["1"],["-1"]],"b":["2","0"],"oracle":{"x":{"lower":["-5"],"upper":["5"]}}})");
  const CliRun o = run("--deterministic oracle --kind points " + pts);
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(Json::parse(o.out)["points"].size(), 3u);
}

TEST(Cli, InputAndLimitErrors) {
  EXPECT_EQ(run("decide " + scratch("bad.json", "{\"A\": [")).code, 2);
  EXPECT_EQ(run("decide " + scratch("arity.json", R"({"A":[["1"],["-1"]],"Q":{"arity":3,"constraints":[]}})")).code, 2);
  EXPECT_EQ(run("gap --max " + scratch("float.json", R"({"A":[["1.5"],["-1"]],"c":["1"]})")).code, 2);
  EXPECT_EQ(run("nonsense").code, 2);
  const std::string flat = scratch("flat.json", R"({"flatness":{"1":"1"}})");
  const std::string simplex = scratch("simplex.json", R"({"A":[["1","0","0"],["0","1","0"],["0","0","1"],["-1","-1","-1"]],
      "Q":{"arity":4,"constraints":[{"a":["-1","-1","-1","-1"],"beta":"-1"}]}})");
  EXPECT_EQ(run("decide " + simplex).code, 3);
  EXPECT_EQ(run("--config " + flat + " structure " + data("decide_rectangles_side_one.json")).code, 3);
}
