#include <doctest.h>

#include "cli_runner.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / ("clarith-cli-" + std::to_string(getpid()));
  fs::create_directories(p);
  return p;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("parse") {
  auto r = cli::run({"parse", "!x ?y (y = x')"});
  CHECK(r.code == 0);
  CHECK(r.out == "!x ?y (y = x')\n");
  CHECK(cli::run({"parse", "!x ("}).code == 1);
  CHECK(cli::run({"parse", "--nnf", "~(0 = 0 & 1 = 0)"}).out == "~0 = 0 ++ ~1 = 0\n");
  CHECK(cli::run({"parse"}).code == 64);
  CHECK(cli::run({}).code == 64);
  CHECK(cli::run({"frobnicate"}).code == 64);
}

TEST_CASE("classify") {
  auto v = cli::run({"classify", "--discipline", "poly", "!x ?y (y = x')"});
  CHECK(v.code == 2);
  CHECK(contains(v.out, "Violating"));
  auto c = cli::run({"classify", "--discipline", "poly", "?y (|y| <= |x|' /\\ y = 2 * x)"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "Conforming"));
  CHECK(cli::run({"classify", "--discipline", "cla11", "?y (|y| <= |x| * |y0| /\\ y = 0)"}).code == 0);
  CHECK(cli::run({"classify", "--discipline", "cla11", "--grammar", "/no/such/file", "0 = 0"}).code == 1);
  CHECK(cli::run({"classify", "--discipline", "linear", "0 = 0"}).code == 64);
}

TEST_CASE("play") {
  auto s = cli::run({"play", "!x ?y (y = x')", "--strategy", "successor", "--env", "moves:B - 2"});
  CHECK(s.code == 0);
  CHECK(s.out.rfind("B - 2\nT - 3\nverdict: TopWins\n", 0) == 0);

  auto silent = cli::run({"play", "!x ?y (y = x')", "--strategy", "successor", "--env", "silent"});
  CHECK(silent.code == 0);
  CHECK(silent.out.rfind("verdict: TopWins\n", 0) == 0);

  auto prime = cli::run({"play", "--strategy", "primality", "--env", "moves:B - 91"});
  CHECK(prime.code == 0);
  CHECK(contains(prime.out, "T - L\n"));
  CHECK(contains(prime.out, "note: witness y = 7, z = 13\n"));

  auto lose = cli::run({"play", "?y (y = 1)", "--strategy", "pass", "--env", "silent"});
  CHECK(lose.code == 2);

  auto limit = cli::run({"play", "!x ?y (y = x)", "--strategy", "identity", "--env", "random:1", "--max-steps", "1"});
  CHECK(limit.code == 3);

  CHECK(cli::run({"play", "!x ?y (y = 2 * x)", "--strategy", "successor", "--env", "silent"}).code == 1);
  CHECK(cli::run({"play", "!x ?y (y = x')", "--strategy", "successor", "--env", "random:x"}).code == 64);
  CHECK(cli::run({"play", "?y (y = x)", "--strategy", "solver", "--set", "x=4", "--env", "silent"}).code == 0);

  auto quad = cli::run({"play", "--strategy", "quadrupling", "--env", "moves:B - 3"});
  CHECK(quad.code == 0);
  CHECK(contains(quad.out, "T - 12\n"));
  CHECK(contains(quad.out, "compositions: 1\n"));
}

TEST_CASE("extract and verify") {
  fs::path dir = scratch();
  std::string bundle = (dir / "succ.json").string();
  auto e = cli::run({"extract", std::string(CLARITH_CORPUS) + "/successor.json", "-o", bundle});
  CHECK(e.code == 0);
  CHECK(fs::exists(bundle));

  auto v = cli::run({"verify", bundle, "--range", "0..65536"});
  CHECK(v.code == 0);
  CHECK(contains(v.out, "wins: 65537\nlosses: 0\n"));

  auto sab = cli::run({"verify", "successor-sabotaged", "--range", "0..10"});
  CHECK(sab.code == 2);
  CHECK(contains(sab.out, "lost at 0"));

  CHECK(cli::run({"verify", bundle, "--range", "5..4"}).code == 64);
  CHECK(cli::run({"verify", bundle}).code == 64);

  std::string bad = (dir / "false.json").string();
  std::ofstream(bad) << R"({"version": 1, "root": "a", "nodes": [
    {"id": "a", "rule": "elementary-axiom", "conclusion": "0 = 0'"}]})";
  auto f = cli::run({"extract", bad, "-o", (dir / "out.json").string()});
  CHECK(f.code == 1);
  CHECK(contains(f.out, "FAIL a"));

  std::string cyc = (dir / "cycle.json").string();
  std::ofstream(cyc) << R"({"version": 1, "root": "a", "nodes": [
    {"id": "a", "rule": "mp", "conclusion": "0 = 0", "premises": ["b", "b"]},
    {"id": "b", "rule": "mp", "conclusion": "0 = 0", "premises": ["a", "a"]}]})";
  CHECK(cli::run({"extract", cyc, "-o", (dir / "out.json").string()}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("bench") {
  auto b = cli::run({"bench", "successor", "--inputs", "bits:1..16"});
  CHECK(b.code == 0);
  std::istringstream lines(b.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream cols(line);
    std::string input;
    std::uint64_t bits, time, space, out_bits;
    if (!(cols >> input >> bits >> time >> space >> out_bits)) continue;
    CHECK(out_bits <= bits + 1);
    ++rows;
  }
  CHECK(rows == 16);
  CHECK(contains(b.out, "fit amplitude"));

  auto u = cli::run({"bench", "doubling-unary", "--inputs", "0..20"});
  CHECK(u.code == 0);
  CHECK(contains(u.out, "\n20\t5\t"));
}

TEST_CASE("tree") {
  CHECK(cli::run({"tree", "figure1", "Ta", "Bg"}).out == "winner: B\n");
  CHECK(cli::run({"tree", "figure1"}).out == "winner: B\n");
  CHECK(cli::run({"tree", "figure1", "Ta"}).out == "winner: T\n");
  CHECK(cli::run({"tree", "figure1", "--negate", "Ba"}).out == "winner: B\n");
}

TEST_CASE("repeated invocations print the same bytes") {
  fs::path dir = scratch();
  auto commands = cli::corpus_commands(dir);
  for (const auto& c : commands) {
    if (c[0] == "bench" || c[0] == "verify") continue;
    auto a = cli::run(c);
    auto b = cli::run(c);
    INFO(c[0], " ", c.size() > 1 ? c[1] : "");
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
  fs::remove_all(dir);
}
