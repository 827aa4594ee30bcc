#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "treeavg/discbracket.hpp"
#include "treeavg/driver.hpp"
#include "treeavg/errors.hpp"

using namespace treeavg;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "treeavg_driver_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK_THROWS_AS(parse_rational("x"), UsageError);
  CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
  CHECK_THROWS_AS(parse_rational("-1"), UsageError);
  CHECK(parse_weight_list("1,2/3,5").size() == 3);
  CHECK(parse_weight_list("").empty());
}

TEST_CASE("average command produces canonical output") {
  TempDir dir;
  spit(dir.file("a.db"), "(ROOT (o 0=a 1=b) 2=c)\n(ROOT 0=x 1=y)\n");
  spit(dir.file("b.db"), "(ROOT (o 0=a 1=b) 2=c)\n(ROOT 0=x 1=y)\n");
  spit(dir.file("c.db"), "(ROOT 0=a (o 1=b 2=c))\n(ROOT 0=x 1=y)\n");

  AverageCommand cmd;
  cmd.inputs = {dir.file("a.db"), dir.file("b.db"), dir.file("c.db")};
  cmd.output = dir.file("out.db");
  std::ostringstream err;
  REQUIRE(run_average(cmd, err) == kExitOk);
  CHECK(slurp(dir.file("out.db")) == "(ROOT (o 0=a 1=b) 2=c)\n(ROOT 0=x 1=y)\n");

  // Averaging a treebank against copies of itself reproduces it.
  AverageCommand self;
  self.inputs = {dir.file("a.db"), dir.file("a.db"), dir.file("a.db")};
  self.output = dir.file("self.db");
  REQUIRE(run_average(self, err) == kExitOk);
  CHECK(slurp(dir.file("self.db")) == slurp(dir.file("a.db")));
}

TEST_CASE("weights steer the average") {
  TempDir dir;
  spit(dir.file("a.db"), "(ROOT (o 0=a 1=b) 2=c)\n");
  spit(dir.file("b.db"), "(ROOT 0=a (o 1=b 2=c))\n");
  std::ostringstream err;

  AverageCommand cmd;
  cmd.inputs = {dir.file("a.db"), dir.file("b.db")};
  cmd.weights = "3,1";
  cmd.output = dir.file("out.db");
  REQUIRE(run_average(cmd, err) == kExitOk);
  CHECK(slurp(dir.file("out.db")) == "(ROOT (o 0=a 1=b) 2=c)\n");

  cmd.weights = "1,3";
  REQUIRE(run_average(cmd, err) == kExitOk);
  CHECK(slurp(dir.file("out.db")) == "(ROOT 0=a (o 1=b 2=c))\n");

  // Equal weights: the clashing brackets tie at objective 9/10 and the
  // canonically smaller one wins.
  cmd.weights = "1/2,1/2";
  REQUIRE(run_average(cmd, err) == kExitOk);
  CHECK(slurp(dir.file("out.db")) == "(ROOT (o 0=a 1=b) 2=c)\n");
}

TEST_CASE("average command is deterministic across thread counts") {
  TempDir dir;
  GenCommand gen;
  gen.sentences = 24;
  gen.max_len = 12;
  gen.k = 3;
  gen.fan_out = 2;
  gen.seed = 5;
  gen.out_dir = dir.file("gen");
  std::ostringstream err;
  REQUIRE(run_gen(gen, err) == kExitOk);

  AverageCommand cmd;
  for (int k = 0; k < 3; ++k) {
    cmd.inputs.push_back(dir.file("gen/individual-" + std::to_string(k) +
                                  ".discbracket"));
  }
  cmd.output = dir.file("out1.db");
  cmd.threads = 1;
  REQUIRE(run_average(cmd, err) == kExitOk);
  cmd.output = dir.file("out4.db");
  cmd.threads = 4;
  REQUIRE(run_average(cmd, err) == kExitOk);
  CHECK(slurp(dir.file("out1.db")) == slurp(dir.file("out4.db")));
  CHECK(!slurp(dir.file("out1.db")).empty());
}

TEST_CASE("average command binary mode and dp engine") {
  TempDir dir;
  spit(dir.file("a.db"), "(ROOT 0=a 1=b 2=c 3=d)\n");
  spit(dir.file("b.db"), "(ROOT (o 0=a 1=b) (o 2=c 3=d))\n");

  std::ostringstream err;
  AverageCommand cmd;
  cmd.inputs = {dir.file("a.db"), dir.file("b.db")};
  cmd.mode = "binary";
  cmd.output = dir.file("bin.db");
  REQUIRE(run_average(cmd, err) == kExitOk);
  auto rec = parse_discbracket(
      slurp(dir.file("bin.db")).substr(0, slurp(dir.file("bin.db")).find('\n')));
  CHECK(rec.tree.is_binary());

  AverageCommand dp = cmd;
  dp.mode = "nonbinary";
  dp.engine = "dp";
  dp.output = dir.file("dp.db");
  REQUIRE(run_average(dp, err) == kExitOk);
  AverageCommand mitm = dp;
  mitm.engine = "mitm";
  mitm.output = dir.file("mitm.db");
  REQUIRE(run_average(mitm, err) == kExitOk);
  CHECK(!slurp(dir.file("dp.db")).empty());

  AverageCommand bad = cmd;
  bad.engine = "quantum";
  CHECK(run_average(bad, err) == kExitUsage);
  bad = cmd;
  bad.mode = "ternary";
  CHECK(run_average(bad, err) == kExitUsage);
}

TEST_CASE("average command error paths") {
  TempDir dir;
  spit(dir.file("a.db"), "(ROOT 0=a 1=b)\n");
  spit(dir.file("bad.db"), "(ROOT 0=a 1=b)\n(BROKEN\n");
  spit(dir.file("short.db"), "(ROOT 0=a 1=b)\n(ROOT 0=c 1=d)\n");

  std::ostringstream err;
  AverageCommand cmd;
  cmd.inputs = {dir.file("a.db"), dir.file("bad.db")};
  cmd.output = dir.file("out.db");
  CHECK(run_average(cmd, err) == kExitData);
  CHECK(err.str().find("bad.db:2") != std::string::npos);
  CHECK_FALSE(fs::exists(dir.file("out.db")));  // no partial output

  AverageCommand misaligned;
  misaligned.inputs = {dir.file("a.db"), dir.file("short.db")};
  misaligned.output = dir.file("out.db");
  CHECK(run_average(misaligned, err) == kExitData);

  AverageCommand wrong_weights;
  wrong_weights.inputs = {dir.file("a.db")};
  wrong_weights.weights = "1,2";
  wrong_weights.output = dir.file("out.db");
  CHECK(run_average(wrong_weights, err) == kExitUsage);
}

TEST_CASE("eval command formats") {
  TempDir dir;
  spit(dir.file("g.db"), "(ROOT (o 0=a 1=b) 2=c)\n");
  EvalCommand cmd;
  cmd.pred = dir.file("g.db");
  cmd.gold = dir.file("g.db");
  std::ostringstream out, err;
  REQUIRE(run_eval(cmd, out, err) == kExitOk);
  CHECK(out.str().find("100.0/100.0/0.0") != std::string::npos);

  EvalCommand json = cmd;
  json.format = "json";
  std::ostringstream jout;
  REQUIRE(run_eval(json, jout, err) == kExitOk);
  CHECK(jout.str().find("\"sentences\": 1") != std::string::npos);

  EvalCommand bad = cmd;
  bad.format = "xml";
  CHECK(run_eval(bad, out, err) == kExitUsage);
}

TEST_CASE("gen command writes aligned corpora and a manifest") {
  TempDir dir;
  GenCommand gen;
  gen.sentences = 10;
  gen.max_len = 9;
  gen.k = 2;
  gen.fan_out = 2;
  gen.seed = 99;
  gen.out_dir = dir.file("gen");
  std::ostringstream err;
  REQUIRE(run_gen(gen, err) == kExitOk);
  CHECK(fs::exists(dir.file("gen/manifest.json")));
  auto first = slurp(dir.file("gen/individual-0.discbracket"));
  auto second = slurp(dir.file("gen/individual-1.discbracket"));
  CHECK(std::count(first.begin(), first.end(), '\n') == 10);
  CHECK(std::count(second.begin(), second.end(), '\n') == 10);

  // Re-running with the same seed is byte-identical.
  GenCommand again = gen;
  again.out_dir = dir.file("gen2");
  REQUIRE(run_gen(again, err) == kExitOk);
  CHECK(slurp(dir.file("gen2/individual-0.discbracket")) == first);
}

TEST_CASE("bench command runs every engine") {
  TempDir dir;
  spit(dir.file("a.db"), "(ROOT (o 0=a 1=b) 2=c)\n");
  spit(dir.file("b.db"), "(ROOT 0=a (o 1=b 2=c))\n");
  BenchCommand cmd;
  cmd.inputs = {dir.file("a.db"), dir.file("b.db")};
  std::ostringstream out, err;
  REQUIRE(run_bench(cmd, out, err) == kExitOk);
  CHECK(out.str().find("mitm") != std::string::npos);
  CHECK(out.str().find("survivors") != std::string::npos);
}
