#include "clarith/strategy.hpp"

#include "clarith/syntax.hpp"

#include <map>

namespace clarith {

namespace {

const std::map<std::string, std::string>& fixed_targets() {
  static const std::map<std::string, std::string> table = {
      {"successor", "!x ?y (y = x')"},
      {"doubling", "!x ?y (y = 2 * x)"},
      {"addition", "!x !y ?z (z = x + y)"},
      {"multiplication", "!x !y ?z (z = x * y)"},
      {"primality", "!x (Ey>1 Ez>1 (x = y * z) ++ ~Ey>1 Ez>1 (x = y * z))"},
  };
  return table;
}

// Finds a conjunct y = t (or t = y) with t free of y.
std::optional<Term> defining_term(const Formula& f, const std::string& y) {
  if (f.kind() == Formula::Kind::And) {
    if (auto t = defining_term(f.lhs(), y)) return t;
    return defining_term(f.rhs(), y);
  }
  if (f.kind() != Formula::Kind::Eq) return std::nullopt;
  auto is_y = [&](const Term& t) { return t.kind() == Term::Kind::Var && t.name() == y; };
  if (is_y(f.left_term()) && !occurs_in(f.right_term(), y)) return f.right_term();
  if (is_y(f.right_term()) && !occurs_in(f.left_term(), y)) return f.left_term();
  return std::nullopt;
}

class SolverAgent : public Agent {
 public:
  std::optional<Move> propose(const Position& p) override {
    for (const auto& slot : legal_moves(p, Player::Top)) {
      Formula node = *choice_at(p, slot.address);
      if (slot.target == LegalMove::Target::Binary) {
        Side side = evaluate_elementary(node.lhs(), p.valuation()).top_wins_p() ? Side::Left
                    : evaluate_elementary(node.rhs(), p.valuation()).top_wins_p() ? Side::Right
                                                                                   : Side::Left;
        return Move{Player::Top, slot.address, side};
      }
      if (auto t = defining_term(node.body(), node.var())) {
        try {
          return Move{Player::Top, slot.address, evaluate_term(*t, p.valuation())};
        } catch (const std::out_of_range&) {
          // mentions a variable bound inside the game; fall back to search
        }
      }
      for (unsigned k = 0; k <= kSearch; ++k) {
        Formula candidate = instantiate(node.body(), node.var(), Term::numeral(k));
        if (evaluate_elementary(candidate, p.valuation()).top_wins_p())
          return Move{Player::Top, slot.address, Natural(k)};
      }
    }
    return std::nullopt;
  }

 private:
  static constexpr unsigned kSearch = 64;
};

class PassAgent : public Agent {
 public:
  std::optional<Move> propose(const Position&) override { return std::nullopt; }
};

// Answers every Top slot with a value computed from what it has seen.
class AnswerAgent : public Agent {
 public:
  explicit AnswerAgent(std::function<std::optional<Natural>(const std::optional<Natural>&)> answer)
      : answer_(std::move(answer)) {}

  void observe(const Move& m) override {
    if (m.by == Player::Bot)
      if (const Natural* n = std::get_if<Natural>(&m.payload)) last_ = *n;
  }

  std::optional<Move> propose(const Position& p) override {
    for (const auto& slot : legal_moves(p, Player::Top)) {
      if (slot.target == LegalMove::Target::Binary) return Move{Player::Top, slot.address, Side::Left};
      if (auto n = answer_(last_)) return Move{Player::Top, slot.address, *n};
    }
    return std::nullopt;
  }

 private:
  std::function<std::optional<Natural>(const std::optional<Natural>&)> answer_;
  std::optional<Natural> last_;
};

class PrimalityAgent : public Agent {
 public:
  void observe(const Move& m) override {
    if (m.by == Player::Bot && m.address.empty())
      if (const Natural* n = std::get_if<Natural>(&m.payload)) x_ = *n;
  }

  std::optional<Move> propose(const Position& p) override {
    if (!x_) return std::nullopt;
    for (const auto& slot : legal_moves(p, Player::Top)) {
      if (!slot.address.empty() || slot.target != LegalMove::Target::Binary) continue;
      std::optional<Natural> factor;
      for (Natural d = 2; d * d <= *x_; ++d)
        if (*x_ % d == 0) {
          factor = d;
          break;
        }
      if (!factor) return Move{Player::Top, {}, Side::Right};
      notes_.push_back("witness y = " + to_decimal(*factor) + ", z = " + to_decimal(*x_ / *factor));
      return Move{Player::Top, {}, Side::Left};
    }
    return std::nullopt;
  }

  std::vector<std::string> take_notes() override { return std::exchange(notes_, {}); }

 private:
  std::optional<Natural> x_;
  std::vector<std::string> notes_;
};

// F -> G with Top slots in G answered by a*w+b for the environment's last
// number w chosen inside F.
class RelayAgent : public Agent {
 public:
  RelayAgent(Natural a, Natural b) : a_(std::move(a)), b_(std::move(b)) {}

  void observe(const Move& m) override {
    if (m.by != Player::Bot || m.address.empty() || m.address[0] != Side::Left) return;
    if (const Natural* w = std::get_if<Natural>(&m.payload)) w_ = *w;
  }

  std::optional<Move> propose(const Position& p) override {
    if (!w_) return std::nullopt;
    for (const auto& slot : legal_moves(p, Player::Top))
      if (!slot.address.empty() && slot.address[0] == Side::Right && slot.target == LegalMove::Target::Quantifier)
        return Move{Player::Top, slot.address, a_ * *w_ + b_};
    return std::nullopt;
  }

 private:
  Natural a_, b_;
  std::optional<Natural> w_;
};

// One oracle query per environment input: the input at R is asked at L,
// the reply at L is transformed into the answer at R.
class QueryAgent : public Agent {
 public:
  QueryAgent(Natural a, Natural b, bool flip) : a_(std::move(a)), b_(std::move(b)), flip_(flip) {}

  void observe(const Move& m) override {
    if (m.by != Player::Bot || m.address.size() != 1) return;
    if (m.address[0] == Side::Right && !x_) {
      if (const Natural* x = std::get_if<Natural>(&m.payload)) x_ = *x;
    } else if (m.address[0] == Side::Left && asked_) {
      reply_ = m.payload;
    }
  }

  std::optional<Move> propose(const Position& p) override {
    if (x_ && !asked_) {
      Move q{Player::Top, {Side::Left}, *x_};
      if (check_move(p, q)) return std::nullopt;
      asked_ = true;
      return q;
    }
    if (!reply_ || answered_) return std::nullopt;
    Payload out;
    if (const Natural* w = std::get_if<Natural>(&*reply_)) out = a_ * *w + b_;
    else {
      Side s = std::get<Side>(*reply_);
      out = flip_ ? (s == Side::Left ? Side::Right : Side::Left) : s;
    }
    Move answer{Player::Top, {Side::Right}, out};
    if (check_move(p, answer)) return std::nullopt;
    answered_ = true;
    return answer;
  }

 private:
  Natural a_, b_;
  bool flip_;
  std::optional<Natural> x_;
  bool asked_ = false;
  std::optional<Payload> reply_;
  bool answered_ = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto at = s.find(sep, start);
    out.push_back(s.substr(start, at - start));
    if (at == std::string::npos) return out;
    start = at + 1;
  }
}

Natural numeric_argument(const std::string& name, const std::string& text) {
  try {
    return parse_natural(text);
  } catch (const std::invalid_argument&) {
    throw UnknownStrategy("strategy " + name + ": '" + text + "' is not a natural number");
  }
}

Formula require_target(const std::string& name, const std::optional<Formula>& target) {
  if (!target) throw UnknownStrategy("strategy " + name + " needs a target formula");
  return *target;
}

}  // namespace

std::optional<Formula> builtin_target(const std::string& name) {
  auto it = fixed_targets().find(name);
  if (it == fixed_targets().end()) return std::nullopt;
  return parse_formula(it->second);
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : fixed_targets()) out.push_back(name);
  for (const char* generic : {"solver", "pass", "const:K", "identity", "relay:A:B", "query:A:B", "query-flip"})
    out.push_back(generic);
  return out;
}

Strategy builtin(const std::string& name, const std::optional<Formula>& target) {
  if (auto fixed = builtin_target(name)) {
    if (target && !alpha_equivalent(fold_closed(*target), fold_closed(*fixed)))
      throw StrategyMismatch("strategy " + name + " plays " + print_formula(*fixed) + ", not " +
                             print_formula(*target));
    if (name == "primality")
      return Strategy(name, *fixed, [](const Strategy&) { return std::make_unique<PrimalityAgent>(); });
    return Strategy(name, *fixed, [](const Strategy&) { return std::make_unique<SolverAgent>(); });
  }
  auto parts = split(name, ':');
  const std::string& head = parts[0];
  if (parts.size() == 1) {
    if (head == "solver")
      return Strategy(name, require_target(name, target), [](const Strategy&) { return std::make_unique<SolverAgent>(); });
    if (head == "pass")
      return Strategy(name, require_target(name, target), [](const Strategy&) { return std::make_unique<PassAgent>(); });
    if (head == "identity") {
      Formula f = target ? *target : *builtin_target("successor");
      return Strategy(name, f, [](const Strategy&) {
        return std::make_unique<AnswerAgent>([](const std::optional<Natural>& w) { return w; });
      });
    }
    if (head == "query-flip")
      return Strategy(name, require_target(name, target),
                      [](const Strategy&) { return std::make_unique<QueryAgent>(1, 0, true); });
  }
  if (head == "const" && parts.size() == 2) {
    Natural k = numeric_argument(name, parts[1]);
    return Strategy(name, require_target(name, target), [k](const Strategy&) {
      return std::make_unique<AnswerAgent>([k](const std::optional<Natural>&) { return std::optional<Natural>(k); });
    });
  }
  if ((head == "relay" || head == "query") && parts.size() == 3) {
    Natural a = numeric_argument(name, parts[1]);
    Natural b = numeric_argument(name, parts[2]);
    Formula f = require_target(name, target);
    if (f.kind() != Formula::Kind::Implies)
      throw StrategyMismatch("strategy " + name + " plays implications, not " + print_formula(f));
    if (head == "relay")
      return Strategy(name, f, [a, b](const Strategy&) { return std::make_unique<RelayAgent>(a, b); });
    return Strategy(name, f, [a, b](const Strategy&) { return std::make_unique<QueryAgent>(a, b, false); });
  }
  throw UnknownStrategy("unknown strategy '" + name + "'");
}

}  // namespace clarith
