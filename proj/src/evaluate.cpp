#include "clarith/game.hpp"
#include "clarith/nnf.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace clarith {

namespace {

enum class Tri { True, False, Unknown };

Tri negate(Tri t) {
  return t == Tri::True ? Tri::False : t == Tri::False ? Tri::True : Tri::Unknown;
}

// A literal of the conjunctive (existential) or disjunctive (universal)
// closure of a quantifier body.
struct Literal {
  Formula atom;
  bool positive;
};

struct Closure {
  std::vector<Literal> literals;
  std::set<std::string> inner;               // quantified below the searched variable
  std::vector<std::pair<std::string, Term>> lower;  // inner var >= term
  std::vector<Formula> constants;            // components independent of the searched variables
};

// Decides elementary formulas over an environment of bindings.
//
// A blind quantifier Qx B is decided by scanning x = 0, 1, ... up to the
// budget. Every term is monotone in every variable, which licenses two
// shortcuts computed from the literals that B conjunctively (for E) or
// disjunctively (for A) depends on:
//   * pruning: a literal that is false (for E) / true (for A) at x = v with
//     inner variables at their lower bounds stays so for all x >= v, so the
//     scan can stop with an exact answer;
//   * jumping: a literal f(x) op c with f depending on x alone rules out
//     (for E) or settles (for A) every x with f(x) < c, found by galloping.
class Evaluator {
 public:
  Evaluator(const Valuation& v, std::uint64_t budget) : budget_(budget) {
    for (const auto& [name, value] : v) env_.emplace_back(name, value);
  }

  Tri eval(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Eq: return value(f.left_term()) == value(f.right_term()) ? Tri::True : Tri::False;
      case K::Leq: return value(f.left_term()) <= value(f.right_term()) ? Tri::True : Tri::False;
      case K::Not: return negate(eval(f.operand()));
      case K::And: {
        Tri a = eval(f.lhs());
        if (a == Tri::False) return a;
        Tri b = eval(f.rhs());
        if (b == Tri::False) return b;
        return a == Tri::True && b == Tri::True ? Tri::True : Tri::Unknown;
      }
      case K::Or: {
        Tri a = eval(f.lhs());
        if (a == Tri::True) return a;
        Tri b = eval(f.rhs());
        if (b == Tri::True) return b;
        return a == Tri::False && b == Tri::False ? Tri::False : Tri::Unknown;
      }
      case K::Implies: {
        Tri a = eval(f.lhs());
        if (a == Tri::False) return Tri::True;
        Tri b = eval(f.rhs());
        if (b == Tri::True) return b;
        return a == Tri::True && b == Tri::False ? Tri::False : Tri::Unknown;
      }
      // Unresolved choices: the chooser's opponent wins by default.
      case K::ChAnd:
      case K::ChAll: return Tri::True;
      case K::ChOr:
      case K::ChExists: return Tri::False;
      case K::BlindAll:
      case K::BlindExists: return search(f);
    }
    return Tri::Unknown;
  }

 private:
  Natural value(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Zero: return 0;
      case Term::Kind::Numeral: return t.value();
      case Term::Kind::Var:
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
          if (it->first == t.name()) return it->second;
        throw std::out_of_range("unvalued variable " + t.name());
      case Term::Kind::Succ: return value(t.operand()) + 1;
      case Term::Kind::Plus: return value(t.lhs()) + value(t.rhs());
      case Term::Kind::Times: return value(t.lhs()) * value(t.rhs());
      case Term::Kind::Len: {
        Natural x = value(t.operand());
        for (unsigned i = 0; i < t.depth(); ++i) x = bit_length(x);
        return x;
      }
    }
    return 0;
  }

  struct Scoped {
    Evaluator& e;
    Scoped(Evaluator& ev, const std::string& name, Natural v) : e(ev) { e.env_.emplace_back(name, std::move(v)); }
    ~Scoped() { e.env_.pop_back(); }
  };

  static void collect(const Formula& f, bool existential, const std::string& x, Closure& c) {
    using K = Formula::Kind;
    const K join = existential ? K::And : K::Or;
    const K inner_q = existential ? K::BlindExists : K::BlindAll;
    if (f.kind() == join) {
      collect(f.lhs(), existential, x, c);
      collect(f.rhs(), existential, x, c);
    } else if (f.kind() == inner_q) {
      if (f.var() == x || c.inner.count(f.var())) {
        if (!depends(f, x, c.inner)) c.constants.push_back(f);
        return;  // shadowing: stay conservative
      }
      c.inner.insert(f.var());
      collect(f.body(), existential, x, c);
    } else if (f.is_choice() || !depends(f, x, c.inner)) {
      c.constants.push_back(f);  // an unresolved choice reads as a constant
    } else if (f.is_atom()) {
      c.literals.push_back({f, true});
    } else if (f.kind() == K::Not && f.operand().is_atom()) {
      c.literals.push_back({f.operand(), false});
    }
  }

  static bool depends(const Formula& f, const std::string& x, const std::set<std::string>& inner) {
    for (const auto& v : free_vars(f))
      if (v == x || inner.count(v)) return true;
    return false;
  }

  static bool mentions_any(const Term& t, const std::set<std::string>& names) {
    for (const auto& v : term_vars(t))
      if (names.count(v)) return true;
    return false;
  }

  Closure analyse(const Formula& body, bool existential, const std::string& x) {
    Closure c;
    collect(body, existential, x, c);
    std::set<std::string> bound = c.inner;
    bound.insert(x);
    // Lower bounds: E needs k <= y, A is settled unless k <= y.
    for (const auto& lit : c.literals) {
      if (lit.atom.kind() != Formula::Kind::Leq || lit.positive != existential) continue;
      const Term& k = lit.atom.left_term();
      const Term& y = lit.atom.right_term();
      if (y.kind() == Term::Kind::Var && c.inner.count(y.name()) && !mentions_any(k, bound))
        c.lower.emplace_back(y.name(), k);
    }
    return c;
  }

  // Value of t at x = v with inner variables at their lower bounds.
  Natural minimum(const Term& t, const std::string& x, const Natural& v, const Closure& c) {
    std::size_t mark = env_.size();
    env_.emplace_back(x, v);
    for (const auto& name : c.inner) {
      Natural low = 0;
      for (const auto& [y, k] : c.lower)
        if (y == name) low = std::max(low, value(k));
      env_.emplace_back(name, low);
    }
    Natural out = value(t);
    env_.resize(mark);
    return out;
  }

  // True if the closure shows the body is decided (false for E, true for A)
  // at every x >= v.
  bool settled(const Closure& c, bool existential, const std::string& x, const Natural& v) {
    std::set<std::string> bound = c.inner;
    bound.insert(x);
    auto closed = [&](const Term& t) { return !mentions_any(t, bound); };
    for (const auto& lit : c.literals) {
      const Term& a = lit.atom.left_term();
      const Term& b = lit.atom.right_term();
      const bool eq = lit.atom.kind() == Formula::Kind::Eq;
      // "a exceeds b for good": a grows with x, b is fixed.
      auto exceeds = [&](const Term& lo, const Term& hi) { return closed(hi) && minimum(lo, x, v, c) > value(hi); };
      auto reaches = [&](const Term& fixed, const Term& grows) {
        return closed(fixed) && minimum(grows, x, v, c) >= value(fixed);
      };
      bool hit = false;
      if (existential) {
        if (eq && lit.positive) hit = exceeds(a, b) || exceeds(b, a);
        else if (!eq && lit.positive) hit = exceeds(a, b);   // a <= b fails
        else if (!eq && !lit.positive) hit = reaches(a, b);  // a > b fails
      } else {
        if (eq && !lit.positive) hit = exceeds(a, b) || exceeds(b, a);
        else if (!eq && !lit.positive) hit = exceeds(a, b);  // a > b holds
        else if (!eq && lit.positive) hit = reaches(a, b);   // a <= b holds
      }
      if (hit) return true;
    }
    return false;
  }

  // Smallest x >= from with f(x) >= target, or budget + 1 if none within budget.
  std::uint64_t gallop(const Term& f, const std::string& x, std::uint64_t from, const Natural& target) {
    auto at = [&](std::uint64_t v) {
      Scoped s(*this, x, Natural(v));
      return value(f);
    };
    if (at(from) >= target) return from;
    std::uint64_t lo = from, hi = from, step = 1;
    for (;;) {
      hi = (budget_ - lo < step) ? budget_ + 1 : lo + step;
      if (hi > budget_ || at(hi) >= target) break;
      lo = hi;
      step *= 2;
    }
    // f(lo) < target; hi is the sentinel or satisfies the target.
    while (hi - lo > 1) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      if (at(mid) >= target) hi = mid;
      else lo = mid;
    }
    return hi;
  }

  std::uint64_t jump(const Closure& c, bool existential, const std::string& x, std::uint64_t v) {
    std::set<std::string> others = c.inner;
    std::set<std::string> bound = c.inner;
    bound.insert(x);
    auto only_x = [&](const Term& t) { return occurs_in(t, x) && !mentions_any(t, others); };
    auto closed = [&](const Term& t) { return !mentions_any(t, bound); };
    std::uint64_t best = v;
    for (const auto& lit : c.literals) {
      const Term& a = lit.atom.left_term();
      const Term& b = lit.atom.right_term();
      const bool eq = lit.atom.kind() == Formula::Kind::Eq;
      // Each case: the body is undecided only once grows(x) >= target.
      const Term* grows = nullptr;
      Natural target;
      if (eq && lit.positive == existential) {
        if (only_x(a) && closed(b)) grows = &a, target = value(b);
        else if (only_x(b) && closed(a)) grows = &b, target = value(a);
      } else if (!eq && existential && lit.positive) {  // a <= b needed
        if (only_x(b) && closed(a)) grows = &b, target = value(a);
      } else if (!eq && existential && !lit.positive) {  // a > b needed
        if (only_x(a) && closed(b)) grows = &a, target = value(b) + 1;
      } else if (!eq && !existential && lit.positive) {  // a <= b settles A
        if (only_x(a) && closed(b)) grows = &a, target = value(b) + 1;
      } else if (!eq && !existential && !lit.positive) {  // a > b settles A
        if (only_x(b) && closed(a)) grows = &b, target = value(a);
      }
      if (grows && best <= budget_) best = std::max(best, gallop(*grows, x, best, target));
    }
    return best;
  }

  Tri search(const Formula& q) {
    const bool existential = q.kind() == Formula::Kind::BlindExists;
    const std::string& x = q.var();
    const Formula& body = q.body();
    if (!is_free_in(body, x)) return eval(body);
    // Ax (P /\ Q) is Ax P /\ Ax Q, and dually for E over \/.
    if (body.kind() == (existential ? Formula::Kind::Or : Formula::Kind::And)) {
      Tri a = search(Formula::quantifier(q.kind(), x, body.lhs()));
      if (a == (existential ? Tri::True : Tri::False)) return a;
      Tri b = search(Formula::quantifier(q.kind(), x, body.rhs()));
      if (b == a) return a;
      return b == (existential ? Tri::True : Tri::False) ? b : Tri::Unknown;
    }
    const Closure c = analyse(body, existential, x);
    const Tri decisive = existential ? Tri::True : Tri::False;
    const Tri exhausted = existential ? Tri::False : Tri::True;
    bool undecided = false;
    for (const auto& k : c.constants)
      if (eval(k) == exhausted) return exhausted;
    std::uint64_t v = 0;
    for (;;) {
      for (int i = 0; i < 4; ++i) {
        std::uint64_t next = jump(c, existential, x, v);
        if (next == v) break;
        v = next;
      }
      if (settled(c, existential, x, Natural(v))) return undecided ? Tri::Unknown : exhausted;
      if (v > budget_) return Tri::Unknown;
      Tri r;
      {
        Scoped s(*this, x, Natural(v));
        r = eval(q.body());
      }
      if (r == decisive) return decisive;
      if (r == Tri::Unknown) undecided = true;
      if (v == UINT64_MAX) return Tri::Unknown;
      ++v;
    }
  }

  std::vector<std::pair<std::string, Natural>> env_;
  std::uint64_t budget_;
};

Verdict to_verdict(Tri t, std::uint64_t budget) {
  switch (t) {
    case Tri::True: return Verdict::top_wins();
    case Tri::False: return Verdict::bot_wins();
    case Tri::Unknown: break;
  }
  return Verdict::unknown("undecided within budget " + std::to_string(budget), budget);
}

}  // namespace

Verdict evaluate_elementary(const Formula& f, std::uint64_t budget) { return evaluate_elementary(f, {}, budget); }

Verdict evaluate_elementary(const Formula& f, const Valuation& v, std::uint64_t budget) {
  Evaluator e(v, budget);
  return to_verdict(e.eval(to_nnf(f)), budget);
}

Verdict winner(const Position& p, std::uint64_t budget) {
  Evaluator e(p.valuation(), budget);
  return to_verdict(e.eval(p.current()), budget);
}

}  // namespace clarith
