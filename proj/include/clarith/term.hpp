#pragma once

#include "clarith/natural.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>

namespace clarith {

using Valuation = std::map<std::string, Natural>;

/// Arithmetic term over 0, successor, +, x and the length pseudoterm.
///
/// Terms are immutable and cheap to copy (shared structure). A Len node
/// carries its bar depth, so ||t|| is one node of depth 2; nested Len nodes
/// are merged on construction. Numeral(n) is the compact form of the
/// n-fold successor of 0 and Numeral(0) is always represented as Zero.
class Term {
 public:
  enum class Kind { Zero, Numeral, Var, Succ, Plus, Times, Len };

  static Term zero();
  static Term numeral(const Natural& n);
  static Term var(std::string name);
  static Term succ(Term t);
  static Term plus(Term a, Term b);
  static Term times(Term a, Term b);
  static Term len(Term t, unsigned depth = 1);

  Kind kind() const;
  const std::string& name() const;
  const Natural& value() const;
  unsigned depth() const;
  const Term& operand() const;
  const Term& lhs() const;
  const Term& rhs() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> term_vars(const Term& t);
bool occurs_in(const Term& t, const std::string& name);

/// Replaces every occurrence of variable `name` by `replacement`.
Term substitute_term(const Term& t, const std::string& name, const Term& replacement);

/// Value of t; throws std::out_of_range naming the first unvalued variable.
Natural evaluate_term(const Term& t, const Valuation& v);

}  // namespace clarith
