#pragma once

#include "clarith/formula.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace clarith {

enum class Player { Top, Bot };

inline Player opposite(Player p) { return p == Player::Top ? Player::Bot : Player::Top; }
char player_char(Player p);

enum class Side { Left, Right };

/// Path of L/R tokens through parallel connectives (blind quantifiers are
/// passed through without a token). The empty address is the root.
using Address = std::vector<Side>;

/// Left/Right for a binary choice, a natural number for a choice quantifier.
using Payload = std::variant<Side, Natural>;

struct Move {
  Player by;
  Address address;
  Payload payload;

  bool operator==(const Move&) const = default;
};

/// A move slot: an accessible choice occurrence and the player who owns it.
/// Quantifier slots accept any natural payload.
struct LegalMove {
  enum class Target { Binary, Quantifier };
  Player by;
  Address address;
  Target target;

  bool operator==(const LegalMove&) const = default;
};

using Run = std::vector<Move>;

class Verdict {
 public:
  enum class Kind { TopWins, BotWins, Unknown };

  static Verdict top_wins() { return Verdict(Kind::TopWins, {}, 0); }
  static Verdict bot_wins() { return Verdict(Kind::BotWins, {}, 0); }
  static Verdict unknown(std::string reason, std::uint64_t budget = 0) {
    return Verdict(Kind::Unknown, std::move(reason), budget);
  }
  static Verdict win_for(Player p) { return p == Player::Top ? top_wins() : bot_wins(); }

  Kind kind() const { return kind_; }
  const std::string& reason() const { return reason_; }
  std::uint64_t budget() const { return budget_; }
  bool top_wins_p() const { return kind_ == Kind::TopWins; }
  bool bot_wins_p() const { return kind_ == Kind::BotWins; }
  bool unknown_p() const { return kind_ == Kind::Unknown; }

  bool operator==(const Verdict&) const = default;

 private:
  Verdict(Kind k, std::string reason, std::uint64_t budget) : kind_(k), reason_(std::move(reason)), budget_(budget) {}
  Kind kind_;
  std::string reason_;
  std::uint64_t budget_;
};

/// "TopWins", "BotWins" or "Unknown(<reason>)".
std::string to_string(const Verdict& v);

class IllegalMove : public std::runtime_error {
 public:
  enum class Reason { BadAddress, HiddenTarget, WrongPolarity, WrongPayload };
  IllegalMove(Reason r, const std::string& what) : std::runtime_error(what), reason_(r) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

std::string to_string(IllegalMove::Reason r);

/// Game state: the NNF root, the resolutions made so far (in order), and
/// the residual game they leave. The residual is the root with each
/// resolved choice occurrence replaced by the chosen component.
class Position {
 public:
  const Formula& root() const { return root_; }
  const Formula& current() const { return current_; }
  const Valuation& valuation() const { return valuation_; }
  const std::vector<Move>& resolutions() const { return resolutions_; }

 private:
  friend Position initial_position(const Formula&, const Valuation&);
  friend Position apply_move(const Position&, const Move&);
  Position(Formula root, Valuation v) : root_(root), current_(std::move(root)), valuation_(std::move(v)) {}

  Formula root_;
  Formula current_;
  Valuation valuation_;
  std::vector<Move> resolutions_;
};

/// Throws std::invalid_argument if v leaves a free variable of f unvalued.
Position initial_position(const Formula& f, const Valuation& v = {});

std::vector<LegalMove> legal_moves(const Position& p, Player who);
std::vector<LegalMove> legal_moves(const Position& p);

/// Throws IllegalMove naming the violated condition.
Position apply_move(const Position& p, const Move& m);

/// Same checks as apply_move without building the new position.
std::optional<IllegalMove> check_move(const Position& p, const Move& m);

constexpr std::uint64_t kDefaultBudget = 1u << 16;

/// Truth of an elementary formula (choice occurrences read as their
/// default outcome). Blind quantifiers are decided by bounded search with
/// monotonicity pruning; undecided within `budget` gives Unknown.
Verdict evaluate_elementary(const Formula& f, std::uint64_t budget = kDefaultBudget);
Verdict evaluate_elementary(const Formula& f, const Valuation& v, std::uint64_t budget = kDefaultBudget);

/// Winner if play ended at p.
Verdict winner(const Position& p, std::uint64_t budget = kDefaultBudget);

struct RunVerdict {
  Verdict verdict;
  /// Index of the first illegal move; its author loses.
  std::optional<std::size_t> illegal_index;
  std::string illegal_reason;
};

RunVerdict evaluate_run(const Formula& f, const Run& r, const Valuation& v = {},
                        std::uint64_t budget = kDefaultBudget);

/// The choice occurrence at `a` in the residual, if any.
std::optional<Formula> choice_at(const Position& p, const Address& a);

std::string format_address(const Address& a);
Address parse_address(std::string_view text);
std::string format_payload(const Payload& p);
Payload parse_payload(std::string_view text);

/// `T addr payload` / `B addr payload`.
std::string format_move(const Move& m);
Move parse_move(std::string_view line);
std::string format_run(const Run& r);
/// One move per non-empty line; lines starting with '#' are ignored.
Run parse_run(std::string_view text);

/// Size in symbols of the printed residual game.
std::size_t position_size(const Position& p);

}  // namespace clarith
