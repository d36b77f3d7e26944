#pragma once

// Reference implementations the library is checked against. None of them
// call into the engine beyond the value types.

#include "clarith/game.hpp"
#include "clarith/raw_game.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using namespace clarith;

bool is_prime(std::uint64_t n);
/// sieve(n)[k] is true iff k is prime, for k <= n.
std::vector<bool> sieve(std::uint64_t n);

/// Closed formulas of depth <= 3 over the leaves 0 = 0, 1 = 0, v = 1,
/// v <= 1. Depth 1 is exhaustive; depth 2 applies every unary operator to
/// depth 1 and pairs depth 1 with closed leaves under every binary
/// operator; depth 3 does the same one level up, with the binders ranging
/// over the choice and blind quantifiers on the open depth-2 bodies.
std::vector<Formula> formula_family();

/// Verdict of a run on f played directly on the formula as written:
/// ownership follows polarity (flipped under ~ and in the antecedent of
/// ->), addresses step through /\, \/ and ->, unresolved & and ! read as
/// true, ++ and ? as false, and blind quantifiers range over {0, 1, 2}
/// (every atom compares its variable with 1 only).
struct Outcome {
  Player winner;
  std::optional<std::size_t> illegal_index;
};
Outcome play_directly(const Formula& f, const Run& run);

/// Every run that resolves accessible choices in address order, each slot
/// either resolved (L/R, or 0..max_payload) or left open for good.
std::vector<Run> canonical_runs(const Formula& f, unsigned max_payload = 3);

/// True if f is built from ~ and the choice operators over choice-free
/// subformulas.
bool choice_only(const Formula& f);

/// Explicit tree of a choice-only closed formula, quantifiers truncated
/// to payloads <= max_payload. Edge names are L, R or the numeral.
RawGame expand(const Formula& f, unsigned max_payload = 3);

/// Every path of g (the empty one included).
std::vector<RawRun> raw_paths(const RawGame& g);

/// Trees of depth <= 2 with edges a and b, each owned by either player,
/// and every labeling; plus depth-3 full trees with all 2^15 labelings
/// where a is Top's and b is Bot's.
std::vector<RawGame> raw_games();

/// Classical truth of a choice-free formula, blind quantifiers over {0, 1, 2}.
bool truth(const Formula& f, const Valuation& v = {});

}  // namespace oracle
