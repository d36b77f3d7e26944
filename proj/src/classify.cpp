#include "clarith/classify.hpp"

#include "clarith/syntax.hpp"

#include <sstream>
#include <stdexcept>

namespace clarith {

OpSet OpSet::parse(const std::string& ops) {
  OpSet s{false, false, false, false};
  for (char c : ops) {
    switch (c) {
      case '0': s.zero = true; break;
      case '\'': s.succ = true; break;
      case '+': s.plus = true; break;
      case '*': s.times = true; break;
      case ' ': case ',': break;
      default: throw std::invalid_argument(std::string("unknown bound-term operator '") + c + "'");
    }
  }
  return s;
}

std::string OpSet::str() const {
  std::string out;
  if (zero) out += '0';
  if (succ) out += '\'';
  if (plus) out += '+';
  if (times) out += '*';
  return out;
}

BoundDiscipline BoundDiscipline::cla11(TermGrammar time, TermGrammar space, TermGrammar amplitude, Role role) {
  BoundDiscipline d(Kind::Cla11);
  d.time_ = time;
  d.space_ = space;
  d.amplitude_ = amplitude;
  d.role_ = role;
  return d;
}

const TermGrammar& BoundDiscipline::selected() const {
  switch (role_) {
    case Role::Space: return space_;
    case Role::Amplitude: return amplitude_;
    default: return time_;
  }
}

BoundDiscipline cla11_poly_polylog_linear(BoundDiscipline::Role role) {
  return BoundDiscipline::cla11({OpSet::parse("0'+*"), 1}, {OpSet::parse("0'+*"), 2}, {OpSet::parse("0'+"), 1}, role);
}

bool check_bound_term(const Term& t, const TermGrammar& g) {
  switch (t.kind()) {
    case Term::Kind::Zero: return g.ops.zero;
    case Term::Kind::Numeral: return g.ops.zero && g.ops.succ;
    case Term::Kind::Var: return g.var_depth == 0;
    case Term::Kind::Len: return t.operand().kind() == Term::Kind::Var && t.depth() == g.var_depth;
    case Term::Kind::Succ: return g.ops.succ && check_bound_term(t.operand(), g);
    case Term::Kind::Plus: return g.ops.plus && check_bound_term(t.lhs(), g) && check_bound_term(t.rhs(), g);
    case Term::Kind::Times: return g.ops.times && check_bound_term(t.lhs(), g) && check_bound_term(t.rhs(), g);
  }
  return false;
}

namespace {

constexpr unsigned kMaxBarDepth = 2;

// Exponential/polynomial bound-term check; returns a reason or "".
std::string check_discipline_term(const Term& t, bool need_bars, unsigned bars) {
  switch (t.kind()) {
    case Term::Kind::Zero:
    case Term::Kind::Numeral: return "";
    case Term::Kind::Var:
      if (need_bars && bars == 0) return "bound term has bare variable " + t.name() + " (polynomial bounds need |" + t.name() + "|)";
      return "";
    case Term::Kind::Len:
      if (bars + t.depth() > kMaxBarDepth) return "length bars nested deeper than " + std::to_string(kMaxBarDepth);
      return check_discipline_term(t.operand(), need_bars, bars + t.depth());
    case Term::Kind::Succ: return check_discipline_term(t.operand(), need_bars, bars);
    case Term::Kind::Plus:
    case Term::Kind::Times: {
      std::string r = check_discipline_term(t.lhs(), need_bars, bars);
      return r.empty() ? check_discipline_term(t.rhs(), need_bars, bars) : r;
    }
  }
  return "";
}

struct Guard {
  Term bound;
  Formula rest;
};

bool is_size_of(const Term& t, const std::string& z) {
  return t.kind() == Term::Kind::Len && t.depth() == 1 && t.operand().kind() == Term::Kind::Var &&
         t.operand().name() == z;
}

std::optional<Guard> match_guard(const Formula& q) {
  const std::string& z = q.var();
  const Formula& body = q.body();
  auto guard_of = [&](const Formula& atom) -> std::optional<Term> {
    if (atom.kind() == Formula::Kind::Leq && is_size_of(atom.left_term(), z)) return atom.right_term();
    return std::nullopt;
  };
  if (q.kind() == Formula::Kind::ChAll) {
    if (body.kind() == Formula::Kind::Implies) {
      if (auto t = guard_of(body.lhs())) return Guard{*t, body.rhs()};
    }
    if (body.kind() == Formula::Kind::Or && body.lhs().kind() == Formula::Kind::Not) {
      if (auto t = guard_of(body.lhs().operand())) return Guard{*t, body.rhs()};
    }
    return std::nullopt;
  }
  if (body.kind() == Formula::Kind::And) {
    if (auto t = guard_of(body.lhs())) return Guard{*t, body.rhs()};
  }
  return std::nullopt;
}

class Classifier {
 public:
  Classifier(const BoundDiscipline& d) : d_(d) {}

  void visit(const Formula& f, const std::string& path) {
    if (f.is_atom()) return;
    if (f.kind() == Formula::Kind::Not) return visit(f.operand(), child(path, 0));
    if (f.is_binary()) {
      visit(f.lhs(), child(path, 0));
      visit(f.rhs(), child(path, 1));
      return;
    }
    if (f.kind() == Formula::Kind::ChAll || f.kind() == Formula::Kind::ChExists) {
      const char* sym = f.kind() == Formula::Kind::ChAll ? "!" : "?";
      auto guard = match_guard(f);
      if (!guard) {
        report(path, std::string("unguarded choice quantifier ") + sym + f.var());
        return visit(f.body(), child(path, 0));
      }
      if (occurs_in(guard->bound, f.var())) {
        report(path, "bound term mentions the quantified variable " + f.var());
      } else {
        std::string reason = check_bound(guard->bound);
        if (!reason.empty()) report(path, reason + " in guard of " + sym + f.var());
      }
      // Descend into E only; the guard atom holds no choice operators.
      const std::string into_body = child(path, 0);
      return visit(guard->rest, child(into_body, 1));
    }
    visit(f.body(), child(path, 0));
  }

  ClassificationReport result() && { return std::move(report_); }

 private:
  static std::string child(const std::string& path, int i) {
    return path == "-" ? std::to_string(i) : path + "/" + std::to_string(i);
  }

  std::string check_bound(const Term& t) const {
    switch (d_.kind()) {
      case BoundDiscipline::Kind::Exponential: return check_discipline_term(t, false, 0);
      case BoundDiscipline::Kind::Polynomial: return check_discipline_term(t, true, 0);
      case BoundDiscipline::Kind::Cla11: {
        const TermGrammar& g = d_.selected();
        if (check_bound_term(t, g)) return "";
        return "bound term " + print_term(t) + " is not a (" + g.ops.str() + ")-combination of variables under " +
               std::to_string(g.var_depth) + " bar(s)";
      }
    }
    return "";
  }

  void report(const std::string& path, std::string reason) {
    report_.verdict = ClassificationReport::Verdict::Violating;
    report_.violations.push_back({path, std::move(reason)});
  }

  const BoundDiscipline& d_;
  ClassificationReport report_;
};

}  // namespace

ClassificationReport classify_bounded(const Formula& f, const BoundDiscipline& d) {
  Classifier c(d);
  c.visit(f, "-");
  return std::move(c).result();
}

std::string to_string(ClassificationReport::Verdict v) {
  return v == ClassificationReport::Verdict::Conforming ? "Conforming" : "Violating";
}

std::string format_report(const ClassificationReport& r) {
  std::ostringstream out;
  out << "verdict: " << to_string(r.verdict) << "\n";
  for (const auto& v : r.violations) out << "violation: " << v.path << ": " << v.reason << "\n";
  return out.str();
}

}  // namespace clarith
