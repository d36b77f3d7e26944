#pragma once

#include "clarith/term.hpp"

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace clarith {

/// Clarithmetic formula: classical connectives, blind quantifiers, and the
/// choice operators. Immutable with shared structure.
class Formula {
 public:
  enum class Kind {
    Eq, Leq,
    Not, And, Or, Implies,
    BlindAll, BlindExists,
    ChAnd, ChOr, ChAll, ChExists,
  };

  static Formula eq(Term a, Term b);
  static Formula leq(Term a, Term b);
  /// a < b, i.e. a' <= b.
  static Formula lt(Term a, Term b);
  static Formula negation(Formula f);
  static Formula binary(Kind kind, Formula a, Formula b);
  static Formula quantifier(Kind kind, std::string var, Formula body);

  static Formula conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
  static Formula ch_and(Formula a, Formula b) { return binary(Kind::ChAnd, std::move(a), std::move(b)); }
  static Formula ch_or(Formula a, Formula b) { return binary(Kind::ChOr, std::move(a), std::move(b)); }
  static Formula blind_all(std::string x, Formula f) { return quantifier(Kind::BlindAll, std::move(x), std::move(f)); }
  static Formula blind_exists(std::string x, Formula f) { return quantifier(Kind::BlindExists, std::move(x), std::move(f)); }
  static Formula ch_all(std::string x, Formula f) { return quantifier(Kind::ChAll, std::move(x), std::move(f)); }
  static Formula ch_exists(std::string x, Formula f) { return quantifier(Kind::ChExists, std::move(x), std::move(f)); }

  /// 0 = 0 and its negation; used for elementary constants.
  static Formula truth();
  static Formula falsity();

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::Eq || kind() == Kind::Leq; }
  bool is_binary() const;
  bool is_quantifier() const;
  bool is_choice() const;

  const Term& left_term() const;
  const Term& right_term() const;
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const;
  const std::string& var() const;

  /// Identity of the shared node; equal pointers imply equal formulas.
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Thrown by substitute() when the variable is not free; signals a caller bug.
class SubstitutionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

std::set<std::string> free_vars(const Formula& f);
/// Every variable name appearing in f, bound or free.
std::set<std::string> all_names(const Formula& f);
bool is_free_in(const Formula& f, const std::string& x);
bool has_choice(const Formula& f);

/// Replaces the free occurrences of x by the numeral for n.
/// Throws SubstitutionError if x is not free in f.
Formula substitute(const Formula& f, const std::string& x, const Natural& n);

/// Capture-free replacement of free x by t (binders renamed if needed).
/// No-op when x is not free.
Formula instantiate(const Formula& f, const std::string& x, const Term& t);

/// Substitutes numerals for every valued free variable.
Formula apply_valuation(const Formula& f, const Valuation& v);

/// Renames bound variables so that they are distinct from one another and
/// from the free variables of f.
Formula rename_apart(const Formula& f);

/// Structural equality up to consistent renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);

/// Replaces every variable-free subterm by the numeral of its value.
Term fold_closed(const Term& t);
Formula fold_closed(const Formula& f);

/// Result of matching `candidate` against pattern[x := u] for unknown u.
struct InstanceMatch {
  bool matched = false;
  /// The term u; empty when x does not occur in the pattern.
  std::optional<Term> image;
};

/// Decides whether candidate is alpha-equivalent to pattern with free x
/// replaced by some term u, and reports u.
InstanceMatch match_instance(const Formula& pattern, const std::string& x, const Formula& candidate);

/// Polynomial identity of two +,x,'-terms (Len subterms compared
/// structurally as opaque atoms).
bool same_polynomial(const Term& a, const Term& b);

std::string fresh_name(const std::string& base, const std::set<std::string>& used);

}  // namespace clarith
