#include <doctest.h>

#include "clarith/nnf.hpp"
#include "clarith/syntax.hpp"
#include "oracles.hpp"

using namespace clarith;

namespace {
std::string nnf(const char* text) { return print_formula(to_nnf(parse_formula(text))); }
}  // namespace

TEST_CASE("dualities") {
  CHECK(nnf("~(0 = 0 & 1 = 0)") == "~0 = 0 ++ ~1 = 0");
  CHECK(nnf("~(0 = 0 ++ 1 = 0)") == "~0 = 0 & ~1 = 0");
  CHECK(nnf("~(0 = 0 /\\ 1 = 0)") == "~0 = 0 \\/ ~1 = 0");
  CHECK(nnf("~!x (x = 0)") == "?x ~x = 0");
  CHECK(nnf("~?x (x = 0)") == "!x ~x = 0");
  CHECK(nnf("~Ax (x = 0)") == "Ex ~x = 0");
  CHECK(nnf("~~0 = 1") == "0 = 1");
  CHECK(nnf("0 = 0 -> 1 = 0") == "~0 = 0 \\/ 1 = 0");
  CHECK(nnf("~(0 = 0 -> 1 = 0)") == "0 = 0 /\\ ~1 = 0");
}

TEST_CASE("normal form") {
  for (const auto& f : oracle::formula_family()) {
    Formula n = to_nnf(f);
    CHECK(is_nnf(n));
    CHECK(to_nnf(n) == n);
  }
  CHECK_FALSE(is_nnf(parse_formula("~(0 = 0 & 1 = 0)")));
  CHECK(is_nnf(parse_formula("~0 = 0 & 1 = 0")));
}

TEST_CASE("verdicts agree with play on the formula as written") {
  std::size_t runs = 0;
  for (const auto& f : oracle::formula_family()) {
    Formula n = to_nnf(f);
    for (const auto& r : oracle::canonical_runs(f)) {
      ++runs;
      RunVerdict e = evaluate_run(n, r);
      oracle::Outcome o = oracle::play_directly(f, r);
      INFO(print_formula(f), " | ", format_run(r));
      REQUIRE_FALSE(e.verdict.unknown_p());
      CHECK(e.verdict == Verdict::win_for(o.winner));
      CHECK_FALSE(e.illegal_index);
    }
  }
  CHECK(runs > 10000);
}

TEST_CASE("illegal moves are judged alike") {
  Formula f = parse_formula("~!x (x = 1) -> (0 = 0 & 1 = 0)");
  std::vector<Run> runs = {
      {Move{Player::Top, {Side::Left}, Natural(1)}},
      {Move{Player::Bot, {Side::Left}, Natural(1)}},
      {Move{Player::Bot, {Side::Right}, Side::Left}},
      {Move{Player::Top, {Side::Right}, Side::Left}},
      {Move{Player::Bot, {}, Side::Left}},
      {Move{Player::Bot, {Side::Right}, Natural(2)}},
  };
  for (const auto& r : runs) {
    INFO(format_run(r));
    RunVerdict e = evaluate_run(to_nnf(f), r);
    oracle::Outcome o = oracle::play_directly(f, r);
    CHECK(e.verdict == Verdict::win_for(o.winner));
    CHECK(e.illegal_index == o.illegal_index);
  }
}
