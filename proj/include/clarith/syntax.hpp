#pragma once

#include "clarith/formula.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace clarith {

/// Syntax error with 1-based line/column and the set of tokens that would
/// have been accepted at the point of failure.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::set<std::string> expected, std::string found);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::set<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::set<std::string> expected_;
  std::string found_;
};

// Surface syntax
//
//   terms     0, decimal numerals, variables [a-z][a-z0-9_]*, postfix '
//             (successor), infix * and +, |t| and ||t|| for lengths
//   atoms     t = u, t <= u, t < u (sugar for t' <= u)
//   unary     ~F, Ax F, Ex F (blind), !x F, ?x F (choice),
//             Ex>t F  ==  Ex (t < x /\ F),   ?x>t F  ==  ?x (t < x /\ F)
//             Ax>t F  ==  Ax (t < x -> F),   !x>t F  ==  !x (t < x -> F)
//   binary    /\  binds tighter than  \/ ++ &  which bind tighter than ->
//             (-> is right associative; a lone + between formulas is ++)
//
// A quantifier or ~ applies to the next unary formula.

/// Parses a formula; bound variables are renamed apart.
Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

}  // namespace clarith
