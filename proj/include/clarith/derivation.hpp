#pragma once

#include "clarith/session.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clarith {

enum class Rule {
  Premise,
  ElementaryAxiom,
  Copycat,
  ChooseLeft,
  ChooseRight,
  ChooseValue,
  ChAllIntro,
  MP,
  IndBinary,
  IndUnary,
};

std::string to_string(Rule r);
std::optional<Rule> parse_rule(const std::string& name);

/// Side-condition discipline of unary induction.
enum class InductionDiscipline { Poly, Exp, Unrestricted };

struct Derivation;

struct DerivationNode {
  std::string id;
  Rule rule = Rule::Premise;
  Formula conclusion = Formula::truth();
  std::vector<std::string> premises;

  // rule data
  std::optional<std::string> builtin;          // Premise
  std::shared_ptr<const Derivation> external;  // Premise given by a nested derivation
  std::optional<Natural> n;                    // ChooseValue
  std::optional<std::string> var;              // ChAllIntro, IndBinary, IndUnary: premise parameter
  InductionDiscipline discipline = InductionDiscipline::Poly;
  bool trusted = false;
};

/// Acyclic, reference-resolved derivation.
struct Derivation {
  int version = 1;
  std::string root;
  std::vector<DerivationNode> nodes;

  const DerivationNode& node(const std::string& id) const;
  const DerivationNode& root_node() const { return node(root); }
  const Formula& theorem() const { return root_node().conclusion; }
  /// Ids ordered so that premises come before the nodes using them.
  std::vector<std::string> topological_order() const;
};

class DerivationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kDerivationVersion = 1;

/// Parses the JSON document format. Throws DerivationError on unresolved
/// ids, cycles, malformed rule data or bad formulas (ParseError is
/// rewrapped with the node id).
Derivation load_derivation(const std::string& json_text);
std::string save_derivation(const Derivation& d);

struct NodeCheck {
  std::string id;
  Rule rule;
  std::vector<std::string> failures;
  /// Accepted on trust or otherwise worth reporting.
  std::vector<std::string> warnings;
  bool ok() const { return failures.empty(); }
};

struct CheckReport {
  std::vector<NodeCheck> nodes;  // in topological order
  bool ok() const;
  std::vector<std::string> failing_nodes() const;
};

/// Rule shapes, premise matching up to renaming, induction side conditions
/// and elementary axiom truth. A node whose premise failed is not blamed
/// again for not matching it.
CheckReport check_derivation(const Derivation& d, std::uint64_t budget = kDefaultBudget);
std::string format_check(const CheckReport& r);

class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strategy for the theorem. Throws ExtractionError listing the failing
/// nodes when the derivation does not check.
Strategy extract(const Derivation& d);

/// Strategy for one node (no checking).
Strategy extract_node(const Derivation& d, const std::string& id);

struct VerifyPlan {
  /// Inclusive range of inputs; each is played by value_env.
  std::optional<std::pair<Natural, Natural>> range;
  /// Number of random environments, seeds 0..seeds-1.
  std::optional<std::uint64_t> seeds;
  std::uint64_t payload_bound = 1u << 12;
  Limits limits;
};

struct Play {
  std::string input;  // the value or "seed N"
  Verdict verdict = Verdict::unknown("not played");
  ComplexityReport report;
};

struct VerifyReport {
  std::uint64_t wins = 0;
  std::uint64_t losses = 0;
  std::uint64_t unknowns = 0;
  std::vector<Play> plays;
};

/// Plays f with s against every environment of the plan (a single silent
/// environment when the plan names none).
VerifyReport verify_strategy(const Formula& f, const Strategy& s, const VerifyPlan& plan);
std::string format_verify(const VerifyReport& r, std::size_t max_losses_listed = 10);

/// A self-contained extracted strategy: the derivation with metadata.
struct Bundle {
  std::string theorem;
  std::vector<std::string> trusted;
  Derivation derivation;
};

std::string save_bundle(const Derivation& d, const CheckReport& checked);
/// Accepts a bundle or a bare derivation document.
Bundle load_bundle(const std::string& json_text);

}  // namespace clarith
