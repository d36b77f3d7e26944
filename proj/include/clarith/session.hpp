#pragma once

#include "clarith/strategy.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace clarith {

/// The environment side of play.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual std::optional<Move> propose(const Position& p) = 0;
  virtual void observe(const Move& m) { (void)m; }
};

/// Plays the given moves in order, one per round, then passes.
std::unique_ptr<Environment> scripted_env(Run moves);
/// Never moves.
std::unique_ptr<Environment> silent_env();
/// Uniform choice among legal Bot moves, numbers in [0, bound]; passes
/// with probability 1/8 and when it has no move. Determined by the seed.
std::unique_ptr<Environment> random_env(std::uint64_t seed, std::uint64_t bound);
/// Answers every Bot quantifier with n and every binary Bot choice with L.
std::unique_ptr<Environment> value_env(Natural n);
/// Prompts on `out` and reads moves (`addr payload`) from `in`; an empty
/// line passes, end of input passes forever.
std::unique_ptr<Environment> interactive_env(std::istream& in, std::ostream& out);

struct Limits {
  std::uint64_t max_steps = 100000;
  std::uint64_t budget = kDefaultBudget;
};

struct ComplexityReport {
  /// Polls of either player plus moves forwarded inside compositions.
  std::uint64_t time_steps = 0;
  /// Largest printed size of a position reached.
  std::uint64_t space_peak = 0;
  /// For every Top move: (largest Bot payload length so far, its length).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> amplitude;
  std::uint64_t compositions = 0;
  std::uint64_t internal_steps = 0;

  std::uint64_t max_top_bits() const;
  std::uint64_t max_bot_bits() const;
};

/// Length of a payload: bit length of a number (|0| = 1); 1 for L/R.
std::uint64_t payload_bits(const Payload& p);

struct Transcript {
  Run run;
  Verdict verdict = Verdict::unknown("not played");
  ComplexityReport report;
  std::optional<std::size_t> illegal_index;
  std::string illegal_reason;
  std::vector<std::string> notes;
};

/// Move lines, then `note:`, `illegal:` (if any), `verdict:`, `time:`,
/// `space:`, `compositions:` (if nonzero) and `amplitude:` lines.
std::string format_transcript(const Transcript& t);

/// Incremental play of one game. Each round polls the environment once and
/// then the machine until it passes; play ends after a round in which
/// neither moved.
class Session {
 public:
  /// Throws StrategyMismatch if s does not play f.
  Session(Formula f, Valuation v, Strategy s, Limits limits = {});

  struct Round {
    std::vector<Move> machine_moves;
    bool env_moved = false;
  };

  /// One round with the given environment move (nothing = pass).
  /// An illegal environment move ends the game in Top's favour; use
  /// check() first to reject it instead.
  Round round(const std::optional<Move>& env_move);

  std::optional<IllegalMove> check(const Move& env_move) const;

  bool finished() const { return finished_; }
  const Formula& formula() const { return formula_; }
  const Strategy& strategy() const { return strategy_; }
  const Position& position() const { return position_; }
  const Run& run() const { return transcript_.run; }

  /// Verdict on the run so far (the final one once finished).
  Transcript transcript() const;

 private:
  bool play(const Move& m);
  void finish(Verdict v);

  Formula formula_;
  Strategy strategy_;
  Limits limits_;
  std::unique_ptr<Agent> agent_;
  Position position_;
  Transcript transcript_;
  std::uint64_t polls_ = 0;
  std::uint64_t max_bot_bits_ = 0;
  bool finished_ = false;
};

Transcript run_session(const Formula& f, const Valuation& v, const Strategy& s, Environment& e,
                       const Limits& limits = {});

struct Sample {
  std::uint64_t input_bits;
  std::uint64_t time_steps;
  std::uint64_t space_peak;
  std::uint64_t top_bits;
};

/// Smallest k <= 4 with metric <= c * n^k across the samples, or nothing
/// when no such k fits at the tested scale.
struct GrowthFit {
  std::string metric;
  std::optional<unsigned> degree;
  double constant = 0;
};

/// Needs at least 8 samples with strictly increasing input_bits; throws
/// std::invalid_argument otherwise.
std::vector<GrowthFit> fit_complexity(const std::vector<Sample>& samples);
std::string format_fit(const GrowthFit& g);

}  // namespace clarith
