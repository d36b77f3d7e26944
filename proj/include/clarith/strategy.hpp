#pragma once

#include "clarith/game.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clarith {

/// Per-session state of a strategy. The runtime shows the agent every move
/// applied to its game (its own included) and asks it for a move whenever
/// the machine is polled.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual void observe(const Move& m) { (void)m; }
  /// A move for Top in p, or nothing to pass.
  virtual std::optional<Move> propose(const Position& p) = 0;

  /// Moves forwarded inside compositions so far.
  virtual std::uint64_t internal_steps() const { return 0; }
  /// Compositions the agent is built from.
  virtual std::uint64_t compositions() const { return 0; }
  /// Remarks produced since the last call (e.g. witnesses).
  virtual std::vector<std::string> take_notes() { return {}; }
};

class StrategyMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownStrategy : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable, shareable recipe for agents. The target may contain free
/// variables; `params` values some of them, so one strategy family can be
/// instantiated at several points.
class Strategy {
 public:
  using Factory = std::function<std::unique_ptr<Agent>(const Strategy&)>;

  Strategy(std::string name, Formula target, Factory factory, Valuation params = {});

  const std::string& name() const { return impl_->name; }
  const Formula& target() const { return impl_->target; }
  const Valuation& params() const { return impl_->params; }

  /// Target with params substituted and closed subterms folded.
  Formula instance() const;

  /// Same strategy with additional parameter values.
  Strategy bind(const Valuation& extra) const;

  std::unique_ptr<Agent> make_agent() const;

  /// Fresh agent replayed through `history`, then asked about p.
  std::optional<Move> propose(const Position& p, const Run& history) const;

 private:
  struct Impl {
    std::string name;
    Formula target;
    Factory factory;
    Valuation params;
  };
  std::shared_ptr<const Impl> impl_;
};

/// True if s plays f under v, up to renaming of bound variables.
bool targets(const Strategy& s, const Formula& f, const Valuation& v = {});

/// Mirrors moves between the two copies of a in a -> a.
Strategy copycat(const Formula& a);

/// Strategy for B from one for A and one for A -> B.
/// Throws StrategyMismatch if tau's antecedent is not sigma's target.
Strategy compose(const Strategy& sigma, const Strategy& tau);

/// Builtin strategies:
///   successor, doubling, addition, multiplication, primality  (fixed targets)
///   solver       answers ?y from an equation y = t in its body, otherwise by
///                small search; picks the ++ side that evaluates true
///   pass         never moves
///   const:K      answers every ?y with K and every ++ with L
///   identity     answers ?y with the last number the environment chose
///   relay:A:B    for F(x) -> G: answers ?y in G with A*w+B once the
///                environment chose w in the antecedent
///   query:A:B    for (!x ?y F) -> (!x ?y G): passes the environment's x
///                to the antecedent and answers with A*w+B for its reply w
///   query-flip   for (!x (q ++ ~q)) -> (!x (p ++ ~p)): asks about the same
///                x and answers with the opposite side
/// Generic builtins take their target from `target`; fixed ones check it.
Strategy builtin(const std::string& name, const std::optional<Formula>& target = std::nullopt);

/// Names accepted by builtin() as written (parameterized ones with their
/// pattern, e.g. "const:K").
std::vector<std::string> builtin_names();

/// The formula a fixed-target builtin plays, if it has one.
std::optional<Formula> builtin_target(const std::string& name);

}  // namespace clarith
