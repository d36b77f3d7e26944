#pragma once

#include "clarith/formula.hpp"

#include <string>
#include <vector>

namespace clarith {

/// Operators a bound term may be built from.
struct OpSet {
  bool zero = true;
  bool succ = true;
  bool plus = true;
  bool times = true;

  /// Parses a subset of "0'+*" (e.g. "0'+").
  static OpSet parse(const std::string& ops);
  std::string str() const;
  bool operator==(const OpSet&) const = default;
};

/// A bound-term grammar: (ops)-combinations of variables written with
/// exactly `var_depth` length bars (0 = bare x, 1 = |x|, 2 = ||x||).
struct TermGrammar {
  OpSet ops;
  unsigned var_depth = 1;
};

class BoundDiscipline {
 public:
  enum class Kind { Exponential, Polynomial, Cla11 };
  enum class Role { Time, Space, Amplitude };

  static BoundDiscipline exponential() { return BoundDiscipline(Kind::Exponential); }
  static BoundDiscipline polynomial() { return BoundDiscipline(Kind::Polynomial); }
  /// Guards are checked against the grammar selected by `role`.
  static BoundDiscipline cla11(TermGrammar time, TermGrammar space, TermGrammar amplitude, Role role = Role::Time);

  Kind kind() const { return kind_; }
  Role role() const { return role_; }
  const TermGrammar& time() const { return time_; }
  const TermGrammar& space() const { return space_; }
  const TermGrammar& amplitude() const { return amplitude_; }
  const TermGrammar& selected() const;

 private:
  explicit BoundDiscipline(Kind k) : kind_(k) {}
  Kind kind_;
  Role role_ = Role::Time;
  TermGrammar time_, space_, amplitude_;
};

/// The polynomial time / polylogarithmic space / linear amplitude instance.
BoundDiscipline cla11_poly_polylog_linear(BoundDiscipline::Role role = BoundDiscipline::Role::Time);

struct Violation {
  std::string path;  // "/"-joined child indices from the root, "-" for the root
  std::string reason;
};

struct ClassificationReport {
  enum class Verdict { Conforming, Violating };
  Verdict verdict = Verdict::Conforming;
  std::vector<Violation> violations;

  bool conforming() const { return verdict == Verdict::Conforming; }
};

ClassificationReport classify_bounded(const Formula& f, const BoundDiscipline& d);

/// True iff every leaf of t is 0 (when allowed) or a variable under exactly
/// g.var_depth bars, and every operator is one the grammar allows.
bool check_bound_term(const Term& t, const TermGrammar& g);

std::string to_string(ClassificationReport::Verdict v);
std::string format_report(const ClassificationReport& r);

}  // namespace clarith
