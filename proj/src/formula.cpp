#include "clarith/formula.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace clarith {

struct Formula::Node {
  Kind kind;
  std::vector<Term> terms;
  std::vector<Formula> children;
  std::string var;
};

Formula Formula::eq(Term a, Term b) {
  return Formula{std::make_shared<const Node>(Node{Kind::Eq, {std::move(a), std::move(b)}, {}, {}})};
}

Formula Formula::leq(Term a, Term b) {
  return Formula{std::make_shared<const Node>(Node{Kind::Leq, {std::move(a), std::move(b)}, {}, {}})};
}

Formula Formula::lt(Term a, Term b) { return leq(Term::succ(std::move(a)), std::move(b)); }

Formula Formula::negation(Formula f) {
  return Formula{std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(f)}, {}})};
}

Formula Formula::binary(Kind kind, Formula a, Formula b) {
  switch (kind) {
    case Kind::And: case Kind::Or: case Kind::Implies: case Kind::ChAnd: case Kind::ChOr: break;
    default: throw std::invalid_argument("not a binary connective");
  }
  return Formula{std::make_shared<const Node>(Node{kind, {}, {std::move(a), std::move(b)}, {}})};
}

Formula Formula::quantifier(Kind kind, std::string var, Formula body) {
  switch (kind) {
    case Kind::BlindAll: case Kind::BlindExists: case Kind::ChAll: case Kind::ChExists: break;
    default: throw std::invalid_argument("not a quantifier");
  }
  if (var.empty()) throw std::invalid_argument("empty quantified variable");
  return Formula{std::make_shared<const Node>(Node{kind, {}, {std::move(body)}, std::move(var)})};
}

Formula Formula::truth() {
  static const Formula t = eq(Term::zero(), Term::zero());
  return t;
}

Formula Formula::falsity() {
  static const Formula f = negation(truth());
  return f;
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_binary() const {
  switch (kind()) {
    case Kind::And: case Kind::Or: case Kind::Implies: case Kind::ChAnd: case Kind::ChOr: return true;
    default: return false;
  }
}

bool Formula::is_quantifier() const {
  switch (kind()) {
    case Kind::BlindAll: case Kind::BlindExists: case Kind::ChAll: case Kind::ChExists: return true;
    default: return false;
  }
}

bool Formula::is_choice() const {
  switch (kind()) {
    case Kind::ChAnd: case Kind::ChOr: case Kind::ChAll: case Kind::ChExists: return true;
    default: return false;
  }
}

const Term& Formula::left_term() const { return node_->terms.at(0); }
const Term& Formula::right_term() const { return node_->terms.at(1); }
const Formula& Formula::operand() const { return node_->children.at(0); }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }
const Formula& Formula::body() const { return node_->children.at(0); }
const std::string& Formula::var() const { return node_->var; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.var != y.var) return false;
  if (x.terms.size() != y.terms.size() || x.children.size() != y.children.size()) return false;
  for (std::size_t i = 0; i < x.terms.size(); ++i)
    if (x.terms[i] != y.terms[i]) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (x.children[i] != y.children[i]) return false;
  return true;
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f.is_atom()) {
    for (const auto& v : term_vars(f.left_term()))
      if (!bound.count(v)) out.insert(v);
    for (const auto& v : term_vars(f.right_term()))
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (f.kind() == Formula::Kind::Not) return collect_free(f.operand(), bound, out);
  if (f.is_binary()) {
    collect_free(f.lhs(), bound, out);
    collect_free(f.rhs(), bound, out);
    return;
  }
  const bool fresh = bound.insert(f.var()).second;
  collect_free(f.body(), bound, out);
  if (fresh) bound.erase(f.var());
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    auto a = term_vars(f.left_term());
    auto b = term_vars(f.right_term());
    out.insert(a.begin(), a.end());
    out.insert(b.begin(), b.end());
  } else if (f.kind() == Formula::Kind::Not) {
    collect_names(f.operand(), out);
  } else if (f.is_binary()) {
    collect_names(f.lhs(), out);
    collect_names(f.rhs(), out);
  } else {
    out.insert(f.var());
    collect_names(f.body(), out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

bool is_free_in(const Formula& f, const std::string& x) {
  if (f.is_atom()) return occurs_in(f.left_term(), x) || occurs_in(f.right_term(), x);
  if (f.kind() == Formula::Kind::Not) return is_free_in(f.operand(), x);
  if (f.is_binary()) return is_free_in(f.lhs(), x) || is_free_in(f.rhs(), x);
  return f.var() != x && is_free_in(f.body(), x);
}

bool has_choice(const Formula& f) {
  if (f.is_choice()) return true;
  if (f.is_atom()) return false;
  if (f.kind() == Formula::Kind::Not) return has_choice(f.operand());
  if (f.is_binary()) return has_choice(f.lhs()) || has_choice(f.rhs());
  return has_choice(f.body());
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  std::string stem = base;
  auto underscore = stem.rfind('_');
  if (underscore != std::string::npos && underscore + 1 < stem.size() &&
      std::all_of(stem.begin() + underscore + 1, stem.end(), [](char c) { return c >= '0' && c <= '9'; }))
    stem.resize(underscore);
  for (unsigned k = 1;; ++k) {
    std::string candidate = stem + "_" + std::to_string(k);
    if (!used.count(candidate)) return candidate;
  }
}

Formula instantiate(const Formula& f, const std::string& x, const Term& t) {
  if (f.is_atom()) {
    Term a = substitute_term(f.left_term(), x, t);
    Term b = substitute_term(f.right_term(), x, t);
    return f.kind() == Formula::Kind::Eq ? Formula::eq(a, b) : Formula::leq(a, b);
  }
  if (f.kind() == Formula::Kind::Not) return Formula::negation(instantiate(f.operand(), x, t));
  if (f.is_binary()) return Formula::binary(f.kind(), instantiate(f.lhs(), x, t), instantiate(f.rhs(), x, t));
  if (f.var() == x || !is_free_in(f.body(), x)) return f;
  if (occurs_in(t, f.var())) {
    std::set<std::string> used = all_names(f.body());
    auto tv = term_vars(t);
    used.insert(tv.begin(), tv.end());
    used.insert(x);
    std::string renamed = fresh_name(f.var(), used);
    Formula body = instantiate(f.body(), f.var(), Term::var(renamed));
    return Formula::quantifier(f.kind(), renamed, instantiate(body, x, t));
  }
  return Formula::quantifier(f.kind(), f.var(), instantiate(f.body(), x, t));
}

Formula substitute(const Formula& f, const std::string& x, const Natural& n) {
  if (!is_free_in(f, x)) throw SubstitutionError("variable " + x + " is not free in the formula");
  return instantiate(f, x, Term::numeral(n));
}

Formula apply_valuation(const Formula& f, const Valuation& v) {
  Formula out = f;
  for (const auto& [name, value] : v) out = instantiate(out, name, Term::numeral(value));
  return out;
}

namespace {

Formula rename_rec(const Formula& f, std::set<std::string>& used, std::set<std::string>& binders) {
  if (f.is_atom()) return f;
  if (f.kind() == Formula::Kind::Not) return Formula::negation(rename_rec(f.operand(), used, binders));
  if (f.is_binary())
    return Formula::binary(f.kind(), rename_rec(f.lhs(), used, binders), rename_rec(f.rhs(), used, binders));
  std::string name = f.var();
  Formula body = f.body();
  if (binders.count(name)) {
    std::string renamed = fresh_name(name, used);
    used.insert(renamed);
    body = instantiate(body, name, Term::var(renamed));
    name = renamed;
  }
  binders.insert(name);
  return Formula::quantifier(f.kind(), name, rename_rec(body, used, binders));
}

}  // namespace

Formula rename_apart(const Formula& f) {
  std::set<std::string> used = all_names(f);
  std::set<std::string> binders = free_vars(f);
  return rename_rec(f, used, binders);
}

namespace {

// Bound-variable correspondence for alpha comparison, innermost last.
using Scope = std::vector<std::pair<std::string, std::string>>;

int bound_index(const Scope& scope, const std::string& name, bool left) {
  for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i)
    if ((left ? scope[i].first : scope[i].second) == name) return i;
  return -1;
}

bool alpha_term(const Term& a, const Term& b, const Scope& scope) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Zero: return true;
    case Term::Kind::Numeral: return a.value() == b.value();
    case Term::Kind::Var: {
      int i = bound_index(scope, a.name(), true);
      int j = bound_index(scope, b.name(), false);
      if (i != j) return false;
      return i >= 0 || a.name() == b.name();
    }
    case Term::Kind::Succ: return alpha_term(a.operand(), b.operand(), scope);
    case Term::Kind::Len: return a.depth() == b.depth() && alpha_term(a.operand(), b.operand(), scope);
    case Term::Kind::Plus:
    case Term::Kind::Times: return alpha_term(a.lhs(), b.lhs(), scope) && alpha_term(a.rhs(), b.rhs(), scope);
  }
  return false;
}

bool alpha_rec(const Formula& a, const Formula& b, Scope& scope) {
  if (a.kind() != b.kind()) return false;
  if (a.is_atom())
    return alpha_term(a.left_term(), b.left_term(), scope) && alpha_term(a.right_term(), b.right_term(), scope);
  if (a.kind() == Formula::Kind::Not) return alpha_rec(a.operand(), b.operand(), scope);
  if (a.is_binary()) return alpha_rec(a.lhs(), b.lhs(), scope) && alpha_rec(a.rhs(), b.rhs(), scope);
  scope.emplace_back(a.var(), b.var());
  bool ok = alpha_rec(a.body(), b.body(), scope);
  scope.pop_back();
  return ok;
}

struct InstanceMatcher {
  std::string x;
  std::optional<Term> image;

  bool term(const Term& p, const Term& c, const Scope& scope) {
    if (p.kind() == Term::Kind::Var && p.name() == x && bound_index(scope, x, true) < 0) {
      for (const auto& v : term_vars(c))
        if (bound_index(scope, v, false) >= 0) return false;
      if (image) return *image == c;
      image = c;
      return true;
    }
    if (p.kind() != c.kind()) return false;
    switch (p.kind()) {
      case Term::Kind::Zero: return true;
      case Term::Kind::Numeral: return p.value() == c.value();
      case Term::Kind::Var: return alpha_term(p, c, scope);
      case Term::Kind::Succ: return term(p.operand(), c.operand(), scope);
      case Term::Kind::Len: return p.depth() == c.depth() && term(p.operand(), c.operand(), scope);
      case Term::Kind::Plus:
      case Term::Kind::Times: return term(p.lhs(), c.lhs(), scope) && term(p.rhs(), c.rhs(), scope);
    }
    return false;
  }

  bool formula(const Formula& p, const Formula& c, Scope& scope) {
    if (p.kind() != c.kind()) return false;
    if (p.is_atom()) return term(p.left_term(), c.left_term(), scope) && term(p.right_term(), c.right_term(), scope);
    if (p.kind() == Formula::Kind::Not) return formula(p.operand(), c.operand(), scope);
    if (p.is_binary()) return formula(p.lhs(), c.lhs(), scope) && formula(p.rhs(), c.rhs(), scope);
    scope.emplace_back(p.var(), c.var());
    bool ok = formula(p.body(), c.body(), scope);
    scope.pop_back();
    return ok;
  }
};

}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  Scope scope;
  return alpha_rec(a, b, scope);
}

InstanceMatch match_instance(const Formula& pattern, const std::string& x, const Formula& candidate) {
  InstanceMatcher m{x, std::nullopt};
  Scope scope;
  InstanceMatch out;
  out.matched = m.formula(pattern, candidate, scope);
  if (out.matched) out.image = m.image;
  return out;
}

Term fold_closed(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Zero:
    case Term::Kind::Numeral:
    case Term::Kind::Var: return t;
    default: break;
  }
  if (term_vars(t).empty()) return Term::numeral(evaluate_term(t, {}));
  switch (t.kind()) {
    case Term::Kind::Succ: return Term::succ(fold_closed(t.operand()));
    case Term::Kind::Len: return Term::len(fold_closed(t.operand()), t.depth());
    case Term::Kind::Plus: return Term::plus(fold_closed(t.lhs()), fold_closed(t.rhs()));
    case Term::Kind::Times: return Term::times(fold_closed(t.lhs()), fold_closed(t.rhs()));
    default: return t;
  }
}

Formula fold_closed(const Formula& f) {
  if (f.is_atom()) {
    Term a = fold_closed(f.left_term());
    Term b = fold_closed(f.right_term());
    return f.kind() == Formula::Kind::Eq ? Formula::eq(a, b) : Formula::leq(a, b);
  }
  if (f.kind() == Formula::Kind::Not) return Formula::negation(fold_closed(f.operand()));
  if (f.is_binary()) return Formula::binary(f.kind(), fold_closed(f.lhs()), fold_closed(f.rhs()));
  return Formula::quantifier(f.kind(), f.var(), fold_closed(f.body()));
}

namespace {

// Monomial: sorted atom keys; polynomial: monomial -> coefficient.
using Monomial = std::vector<std::string>;
using Polynomial = std::map<Monomial, Natural>;

std::string atom_key(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.name();
    case Term::Kind::Len: return "|" + std::to_string(t.depth()) + ":" + atom_key(t.operand()) + "|";
    case Term::Kind::Zero: return "0";
    case Term::Kind::Numeral: return t.value().str();
    case Term::Kind::Succ: return "S(" + atom_key(t.operand()) + ")";
    case Term::Kind::Plus: return "(" + atom_key(t.lhs()) + "+" + atom_key(t.rhs()) + ")";
    case Term::Kind::Times: return "(" + atom_key(t.lhs()) + "*" + atom_key(t.rhs()) + ")";
  }
  return "?";
}

void add_into(Polynomial& acc, const Polynomial& p) {
  for (const auto& [m, c] : p) acc[m] += c;
}

Polynomial to_polynomial(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Zero: return {};
    case Term::Kind::Numeral: return {{Monomial{}, t.value()}};
    case Term::Kind::Var:
    case Term::Kind::Len: return {{Monomial{atom_key(t)}, 1}};
    case Term::Kind::Succ: {
      Polynomial p = to_polynomial(t.operand());
      p[Monomial{}] += 1;
      return p;
    }
    case Term::Kind::Plus: {
      Polynomial p = to_polynomial(t.lhs());
      add_into(p, to_polynomial(t.rhs()));
      return p;
    }
    case Term::Kind::Times: {
      Polynomial a = to_polynomial(t.lhs()), b = to_polynomial(t.rhs()), out;
      for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
          Monomial m = ma;
          m.insert(m.end(), mb.begin(), mb.end());
          std::sort(m.begin(), m.end());
          out[m] += ca * cb;
        }
      return out;
    }
  }
  return {};
}

}  // namespace

bool same_polynomial(const Term& a, const Term& b) {
  auto strip = [](Polynomial p) {
    for (auto it = p.begin(); it != p.end();) it = it->second.is_zero() ? p.erase(it) : std::next(it);
    return p;
  };
  return strip(to_polynomial(a)) == strip(to_polynomial(b));
}

}  // namespace clarith
