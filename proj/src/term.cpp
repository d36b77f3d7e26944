#include "clarith/term.hpp"

#include <stdexcept>
#include <vector>

namespace clarith {

struct Term::Node {
  Kind kind;
  std::string name;
  Natural value;
  unsigned depth = 0;
  std::vector<Term> args;
};

Term Term::zero() {
  static const Term z{std::make_shared<const Node>(Node{Kind::Zero, {}, 0, 0, {}})};
  return z;
}

Term Term::numeral(const Natural& n) {
  if (n.is_zero()) return zero();
  if (n < 0) throw std::invalid_argument("negative numeral");
  return Term{std::make_shared<const Node>(Node{Kind::Numeral, {}, n, 0, {}})};
}

Term Term::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return Term{std::make_shared<const Node>(Node{Kind::Var, std::move(name), 0, 0, {}})};
}

Term Term::succ(Term t) {
  return Term{std::make_shared<const Node>(Node{Kind::Succ, {}, 0, 0, {std::move(t)}})};
}

Term Term::plus(Term a, Term b) {
  return Term{std::make_shared<const Node>(Node{Kind::Plus, {}, 0, 0, {std::move(a), std::move(b)}})};
}

Term Term::times(Term a, Term b) {
  return Term{std::make_shared<const Node>(Node{Kind::Times, {}, 0, 0, {std::move(a), std::move(b)}})};
}

Term Term::len(Term t, unsigned depth) {
  if (depth == 0) throw std::invalid_argument("length bar depth must be positive");
  if (t.kind() == Kind::Len) return len(t.operand(), t.depth() + depth);
  return Term{std::make_shared<const Node>(Node{Kind::Len, {}, 0, depth, {std::move(t)}})};
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Natural& Term::value() const { return node_->value; }
unsigned Term::depth() const { return node_->depth; }
const Term& Term::operand() const { return node_->args.at(0); }
const Term& Term::lhs() const { return node_->args.at(0); }
const Term& Term::rhs() const { return node_->args.at(1); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.depth != y.depth) return false;
  switch (x.kind) {
    case Term::Kind::Zero: return true;
    case Term::Kind::Numeral: return x.value == y.value;
    case Term::Kind::Var: return x.name == y.name;
    default: break;
  }
  if (x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!(x.args[i] == y.args[i])) return false;
  return true;
}

namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Zero:
    case Term::Kind::Numeral: return;
    case Term::Kind::Var: out.insert(t.name()); return;
    case Term::Kind::Succ:
    case Term::Kind::Len: collect_vars(t.operand(), out); return;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      collect_vars(t.lhs(), out);
      collect_vars(t.rhs(), out);
      return;
  }
}

}  // namespace

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

bool occurs_in(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case Term::Kind::Zero:
    case Term::Kind::Numeral: return false;
    case Term::Kind::Var: return t.name() == name;
    case Term::Kind::Succ:
    case Term::Kind::Len: return occurs_in(t.operand(), name);
    case Term::Kind::Plus:
    case Term::Kind::Times: return occurs_in(t.lhs(), name) || occurs_in(t.rhs(), name);
  }
  return false;
}

Term substitute_term(const Term& t, const std::string& name, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Zero:
    case Term::Kind::Numeral: return t;
    case Term::Kind::Var: return t.name() == name ? replacement : t;
    case Term::Kind::Succ: return Term::succ(substitute_term(t.operand(), name, replacement));
    case Term::Kind::Len: return Term::len(substitute_term(t.operand(), name, replacement), t.depth());
    case Term::Kind::Plus:
      return Term::plus(substitute_term(t.lhs(), name, replacement), substitute_term(t.rhs(), name, replacement));
    case Term::Kind::Times:
      return Term::times(substitute_term(t.lhs(), name, replacement), substitute_term(t.rhs(), name, replacement));
  }
  return t;
}

Natural evaluate_term(const Term& t, const Valuation& v) {
  switch (t.kind()) {
    case Term::Kind::Zero: return 0;
    case Term::Kind::Numeral: return t.value();
    case Term::Kind::Var: {
      auto it = v.find(t.name());
      if (it == v.end()) throw std::out_of_range("unvalued variable " + t.name());
      return it->second;
    }
    case Term::Kind::Succ: return evaluate_term(t.operand(), v) + 1;
    case Term::Kind::Plus: return evaluate_term(t.lhs(), v) + evaluate_term(t.rhs(), v);
    case Term::Kind::Times: return evaluate_term(t.lhs(), v) * evaluate_term(t.rhs(), v);
    case Term::Kind::Len: {
      Natural x = evaluate_term(t.operand(), v);
      for (unsigned i = 0; i < t.depth(); ++i) x = bit_length(x);
      return x;
    }
  }
  return 0;
}

}  // namespace clarith
