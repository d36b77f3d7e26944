#include <doctest.h>

#include "clarith/game.hpp"
#include "clarith/nnf.hpp"
#include "clarith/syntax.hpp"
#include "oracles.hpp"

using namespace clarith;

namespace {

const Address kRoot{};
const Address kL{Side::Left};
const Address kR{Side::Right};

Formula successor() { return parse_formula("!x ?y (y = x')"); }

Move bot(Address a, Payload p) { return {Player::Bot, std::move(a), std::move(p)}; }
Move top(Address a, Payload p) { return {Player::Top, std::move(a), std::move(p)}; }

Verdict verdict(const Formula& f, const Run& r) { return evaluate_run(f, r).verdict; }

}  // namespace

TEST_CASE("legal moves") {
  Position p = initial_position(successor());
  auto b = legal_moves(p, Player::Bot);
  REQUIRE(b.size() == 1);
  CHECK(b[0].address == kRoot);
  CHECK(b[0].target == LegalMove::Target::Quantifier);
  CHECK(legal_moves(p, Player::Top).empty());

  Position q = initial_position(parse_formula("(0 = 0 & 1 = 0) \\/ (0 = 1 ++ 1 = 1)"));
  auto qb = legal_moves(q, Player::Bot);
  auto qt = legal_moves(q, Player::Top);
  REQUIRE(qb.size() == 1);
  REQUIRE(qt.size() == 1);
  CHECK(qb[0].address == kL);
  CHECK(qt[0].address == kR);
  CHECK(legal_moves(q).size() == 2);
}

TEST_CASE("moves resolve choices") {
  Position p = apply_move(initial_position(successor()), bot(kRoot, Natural(2)));
  CHECK(print_formula(p.current()) == "?y (y = 2')");
  CHECK(p.resolutions().size() == 1);
  Position q = apply_move(p, top(kRoot, Natural(3)));
  CHECK(print_formula(q.current()) == "3 = 2'");
  CHECK(q.resolutions().size() == 2);
  CHECK(winner(q) == Verdict::top_wins());
  CHECK(winner(p) == Verdict::bot_wins());
}

TEST_CASE("illegal moves name the violated condition") {
  Position p = initial_position(successor());
  auto reason = [&](const Position& at, const Move& m) {
    try {
      apply_move(at, m);
    } catch (const IllegalMove& e) {
      return e.reason();
    }
    FAIL("legal");
    return IllegalMove::Reason::BadAddress;
  };
  CHECK(reason(p, top(kRoot, Natural(1))) == IllegalMove::Reason::WrongPolarity);
  CHECK(reason(p, bot(kRoot, Side::Left)) == IllegalMove::Reason::WrongPayload);
  CHECK(reason(p, bot(kL, Natural(1))) == IllegalMove::Reason::HiddenTarget);
  Position q = initial_position(parse_formula("0 = 0 /\\ !x (x = 0)"));
  CHECK(reason(q, bot(kRoot, Natural(1))) == IllegalMove::Reason::BadAddress);
  CHECK(reason(q, bot(kL, Natural(1))) == IllegalMove::Reason::BadAddress);
  CHECK(reason(q, bot(Address{Side::Right, Side::Left}, Natural(1))) == IllegalMove::Reason::HiddenTarget);
  CHECK_FALSE(check_move(q, bot(kR, Natural(1))));
  CHECK(check_move(q, top(kR, Natural(1))));
}

TEST_CASE("unvalued free variables are rejected") {
  CHECK_THROWS_AS(initial_position(parse_formula("?y (y = x)")), std::invalid_argument);
  Position p = initial_position(parse_formula("?y (y = x)"), {{"x", 4}});
  CHECK(winner(apply_move(p, top(kRoot, Natural(4)))).top_wins_p());
}

TEST_CASE("elementary evaluation") {
  CHECK(evaluate_elementary(parse_formula("3 = 2'")) == Verdict::top_wins());
  CHECK(evaluate_elementary(parse_formula("Ey>1 Ez>1 (97 = y * z)"), 97) == Verdict::bot_wins());
  CHECK(evaluate_elementary(parse_formula("Ey>1 Ez>1 (91 = y * z)")) == Verdict::top_wins());
  CHECK(evaluate_elementary(parse_formula("Ax (x = x)"), 1000).unknown_p());
  CHECK(evaluate_elementary(parse_formula("Ax (x = 5)")) == Verdict::bot_wins());
  CHECK(evaluate_elementary(parse_formula("Ax (x <= x')")).unknown_p());
  CHECK(evaluate_elementary(parse_formula("Ax (x <= 3 -> x * x <= 9)")) == Verdict::top_wins());
  CHECK(evaluate_elementary(parse_formula("Ex (x * x = 1000000)")) == Verdict::top_wins());
  CHECK(evaluate_elementary(parse_formula("Ex (x * x = 1000001)")) == Verdict::bot_wins());
  CHECK(evaluate_elementary(parse_formula("|x| = 3"), {{"x", 5}}) == Verdict::top_wins());
  CHECK(evaluate_elementary(parse_formula("Ax (0 = 0 \\/ x = 1)")) == Verdict::top_wins());
}

TEST_CASE("run verdicts") {
  Formula f = successor();
  CHECK(verdict(f, {bot(kRoot, Natural(2)), top(kRoot, Natural(3))}) == Verdict::top_wins());
  CHECK(verdict(f, {bot(kRoot, Natural(2)), top(kRoot, Natural(5))}) == Verdict::bot_wins());
  CHECK(verdict(f, {bot(kRoot, Natural(2))}) == Verdict::bot_wins());
  CHECK(verdict(f, {}) == Verdict::top_wins());
  CHECK(verdict(parse_formula("0 = 0"), {}) == Verdict::top_wins());

  RunVerdict r = evaluate_run(f, {bot(kRoot, Natural(2)), bot(kRoot, Natural(3))});
  CHECK(r.verdict == Verdict::top_wins());
  CHECK(r.illegal_index == 1u);
  CHECK_FALSE(r.illegal_reason.empty());
}

TEST_CASE("choice defaults") {
  CHECK(winner(initial_position(parse_formula("!x (x = 7) & 0 = 1"))).top_wins_p());
  CHECK(winner(initial_position(parse_formula("?x (x = x) ++ 0 = 0"))).bot_wins_p());
  CHECK(winner(initial_position(parse_formula("!x (x = 7) /\\ ?x (x = x)"))).bot_wins_p());
  CHECK(winner(initial_position(parse_formula("!x (x = 7) \\/ ?x (x = x)"))).top_wins_p());
}

TEST_CASE("replay is deterministic and grows one resolution per move") {
  Formula f = parse_formula("(!x ?y (y = x + x)) /\\ (0 = 0 ++ 1 = 0)");
  Run r = {bot(kL, Natural(4)), top(kR, Side::Left), top(kL, Natural(8))};
  Position p = initial_position(f);
  for (std::size_t i = 0; i < r.size(); ++i) {
    p = apply_move(p, r[i]);
    CHECK(p.resolutions().size() == i + 1);
  }
  CHECK(winner(p).top_wins_p());
  CHECK(evaluate_run(f, r).verdict == evaluate_run(f, r).verdict);
}

TEST_CASE("transcript format") {
  Run r = {bot(kRoot, Natural(2)), top(Address{Side::Left, Side::Right}, Side::Right)};
  std::string text = format_run(r);
  CHECK(text == "B - 2\nT L/R R\n");
  CHECK(parse_run("# comment\n\nB - 2\nT L/R R\n") == r);
  CHECK(parse_move("B - 123456789012345678901") ==
        bot(kRoot, Natural(parse_natural("123456789012345678901"))));
  CHECK(format_address({}) == "-");
  CHECK(parse_address("L/R/L") == Address{Side::Left, Side::Right, Side::Left});
  CHECK_THROWS(parse_move("X - 2"));
  CHECK_THROWS(parse_move("B L/Q 2"));
  CHECK_THROWS(parse_move("B - -2"));
}

TEST_CASE("choice-only formulas agree with their expanded trees") {
  std::size_t compared = 0;
  for (const auto& f : oracle::formula_family()) {
    if (!oracle::choice_only(f) || !has_choice(f)) continue;
    RawGame g = oracle::expand(f);
    for (const auto& path : oracle::raw_paths(g)) {
      Run r;
      for (const auto& m : path)
        r.push_back({m.by, kRoot,
                     m.name == "L"   ? Payload(Side::Left)
                     : m.name == "R" ? Payload(Side::Right)
                                     : Payload(Natural(std::stoi(m.name)))});
      INFO(print_formula(f), " | ", format_run(r));
      CHECK(evaluate_run(f, r).verdict == Verdict::win_for(tree_winner(g, path)));
      ++compared;
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("a conjunction is won iff both projections are") {
  auto family = oracle::formula_family();
  std::vector<Formula> parts(family.begin(), family.begin() + std::min<std::size_t>(family.size(), 120));
  std::size_t compared = 0;
  for (std::size_t i = 0; i < parts.size(); i += 3)
    for (std::size_t j = 1; j < parts.size(); j += 5) {
      const Formula& a = parts[i];
      const Formula& b = parts[j];
      Formula c = Formula::conj(a, b);
      for (const auto& r : oracle::canonical_runs(c)) {
        Run ra, rb;
        for (const auto& m : r) {
          Move sub{m.by, Address(m.address.begin() + 1, m.address.end()), m.payload};
          (m.address[0] == Side::Left ? ra : rb).push_back(sub);
        }
        bool both = evaluate_run(a, ra).verdict.top_wins_p() && evaluate_run(b, rb).verdict.top_wins_p();
        CHECK(evaluate_run(c, r).verdict.top_wins_p() == both);
        ++compared;
      }
    }
  CHECK(compared > 500);
}

TEST_CASE("position size is the printed length") {
  Position p = initial_position(parse_formula("0 = 0"));
  CHECK(position_size(p) == print_formula(p.current()).size());
}
