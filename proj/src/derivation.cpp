#include "clarith/derivation.hpp"

#include "clarith/classify.hpp"
#include "clarith/syntax.hpp"

#include <json.hpp>

#include <functional>
#include <set>

namespace clarith {

using nlohmann::json;

namespace {

const std::map<Rule, std::string>& rule_names() {
  static const std::map<Rule, std::string> names = {
      {Rule::Premise, "premise"},         {Rule::ElementaryAxiom, "elementary-axiom"},
      {Rule::Copycat, "copycat"},         {Rule::ChooseLeft, "choose-left"},
      {Rule::ChooseRight, "choose-right"}, {Rule::ChooseValue, "choose-value"},
      {Rule::ChAllIntro, "chall-intro"},  {Rule::MP, "mp"},
      {Rule::IndBinary, "ind-binary"},    {Rule::IndUnary, "ind-unary"},
  };
  return names;
}

std::size_t expected_premises(Rule r) {
  switch (r) {
    case Rule::Premise:
    case Rule::ElementaryAxiom:
    case Rule::Copycat: return 0;
    case Rule::ChooseLeft:
    case Rule::ChooseRight:
    case Rule::ChooseValue:
    case Rule::ChAllIntro: return 1;
    case Rule::MP:
    case Rule::IndUnary: return 2;
    case Rule::IndBinary: return 3;
  }
  return 0;
}

Derivation from_json(const json& doc);

DerivationNode node_from_json(const json& j) {
  DerivationNode n;
  if (!j.is_object()) throw DerivationError("node is not an object");
  if (!j.contains("id") || !j["id"].is_string()) throw DerivationError("node without a string id");
  n.id = j["id"].get<std::string>();
  auto bad = [&](const std::string& what) { return DerivationError("node " + n.id + ": " + what); };
  if (!j.contains("rule") || !j["rule"].is_string()) throw bad("missing rule");
  auto rule = parse_rule(j["rule"].get<std::string>());
  if (!rule) throw bad("unknown rule '" + j["rule"].get<std::string>() + "'");
  n.rule = *rule;
  if (!j.contains("conclusion") || !j["conclusion"].is_string()) throw bad("missing conclusion");
  try {
    n.conclusion = parse_formula(j["conclusion"].get<std::string>());
  } catch (const ParseError& e) {
    throw bad(std::string("conclusion: ") + e.what());
  }
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) throw bad("premises must be a list");
    for (const auto& p : j["premises"]) {
      if (!p.is_string()) throw bad("premise ids must be strings");
      n.premises.push_back(p.get<std::string>());
    }
  }
  if (n.premises.size() != expected_premises(n.rule))
    throw bad(to_string(n.rule) + " takes " + std::to_string(expected_premises(n.rule)) + " premises, got " +
              std::to_string(n.premises.size()));
  const json data = j.value("data", json::object());
  if (!data.is_object()) throw bad("data must be an object");
  try {
    if (data.contains("builtin")) n.builtin = data["builtin"].get<std::string>();
    if (data.contains("derivation")) n.external = std::make_shared<Derivation>(from_json(data["derivation"]));
    if (data.contains("n")) {
      const json& v = data["n"];
      n.n = v.is_string() ? parse_natural(v.get<std::string>()) : Natural(v.get<std::uint64_t>());
    }
    if (data.contains("var")) n.var = data["var"].get<std::string>();
    if (data.contains("discipline")) {
      std::string d = data["discipline"].get<std::string>();
      if (d == "poly") n.discipline = InductionDiscipline::Poly;
      else if (d == "exp") n.discipline = InductionDiscipline::Exp;
      else if (d == "unrestricted") n.discipline = InductionDiscipline::Unrestricted;
      else throw bad("unknown discipline '" + d + "'");
    }
    if (data.contains("trusted")) n.trusted = data["trusted"].get<bool>();
  } catch (const json::exception& e) {
    throw bad(std::string("malformed data: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw bad(std::string("malformed data: ") + e.what());
  }
  if (n.rule == Rule::Premise && !n.builtin && !n.external) throw bad("premise needs data.builtin or data.derivation");
  if (n.rule == Rule::ChooseValue && !n.n) throw bad("choose-value needs data.n");
  return n;
}

void check_acyclic(const Derivation& d) {
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> mark;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    Mark& m = mark[id];
    if (m == Mark::Done) return;
    if (m == Mark::Active) throw DerivationError("cycle through node " + id);
    m = Mark::Active;
    for (const auto& p : d.node(id).premises) visit(p);
    mark[id] = Mark::Done;
  };
  for (const auto& n : d.nodes) visit(n.id);
}

Derivation from_json(const json& doc) {
  if (!doc.is_object()) throw DerivationError("derivation must be an object");
  Derivation d;
  d.version = doc.value("version", 0);
  if (d.version != kDerivationVersion)
    throw DerivationError("unsupported derivation version " + std::to_string(d.version));
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw DerivationError("missing node list");
  std::set<std::string> ids;
  for (const auto& j : doc["nodes"]) {
    d.nodes.push_back(node_from_json(j));
    if (!ids.insert(d.nodes.back().id).second) throw DerivationError("duplicate node id " + d.nodes.back().id);
  }
  if (!doc.contains("root") || !doc["root"].is_string()) throw DerivationError("missing root");
  d.root = doc["root"].get<std::string>();
  if (!ids.count(d.root)) throw DerivationError("root " + d.root + " is not a node");
  for (const auto& n : d.nodes)
    for (const auto& p : n.premises)
      if (!ids.count(p)) throw DerivationError("node " + n.id + ": unresolved premise " + p);
  check_acyclic(d);
  return d;
}

json to_json(const Derivation& d) {
  json nodes = json::array();
  for (const auto& n : d.nodes) {
    json data = json::object();
    if (n.builtin) data["builtin"] = *n.builtin;
    if (n.external) data["derivation"] = to_json(*n.external);
    if (n.n) data["n"] = to_decimal(*n.n);
    if (n.var) data["var"] = *n.var;
    if (n.rule == Rule::IndUnary)
      data["discipline"] = n.discipline == InductionDiscipline::Poly  ? "poly"
                           : n.discipline == InductionDiscipline::Exp ? "exp"
                                                                      : "unrestricted";
    if (n.trusted) data["trusted"] = true;
    nodes.push_back({{"id", n.id},
                     {"rule", to_string(n.rule)},
                     {"conclusion", print_formula(n.conclusion)},
                     {"premises", n.premises},
                     {"data", data}});
  }
  return {{"version", d.version}, {"root", d.root}, {"nodes", nodes}};
}

}  // namespace

std::string to_string(Rule r) { return rule_names().at(r); }

std::optional<Rule> parse_rule(const std::string& name) {
  for (const auto& [rule, text] : rule_names())
    if (text == name) return rule;
  return std::nullopt;
}

const DerivationNode& Derivation::node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw DerivationError("no node " + id);
}

std::vector<std::string> Derivation::topological_order() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    if (!seen.insert(id).second) return;
    for (const auto& p : node(id).premises) visit(p);
    out.push_back(id);
  };
  for (const auto& n : nodes) visit(n.id);
  return out;
}

Derivation load_derivation(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DerivationError(std::string("not a JSON document: ") + e.what());
  }
  return from_json(doc);
}

std::string save_derivation(const Derivation& d) { return to_json(d).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// checking

namespace {

bool same(const Formula& a, const Formula& b) { return alpha_equivalent(fold_closed(a), fold_closed(b)); }

std::string text(const Formula& f) { return print_formula(f); }

// The body of a ChAll conclusion with its variable renamed to the premise
// parameter.
Formula parameterized_body(const Formula& all, const std::string& param) {
  return instantiate(all.body(), all.var(), Term::var(param));
}

void check_step(NodeCheck& out, const Formula& body, const std::string& x, const Formula& step, const Term& image,
                const std::string& label) {
  if (step.kind() != Formula::Kind::Implies) {
    out.failures.push_back(label + " premise is not an implication: " + text(step));
    return;
  }
  if (!same(step.lhs(), body)) {
    out.failures.push_back(label + " premise antecedent " + text(step.lhs()) + " is not " + text(body));
    return;
  }
  InstanceMatch m = match_instance(body, x, step.rhs());
  if (!m.matched) {
    out.failures.push_back(label + " premise consequent " + text(step.rhs()) + " is not an instance of " + text(body));
    return;
  }
  if (m.image && !same_polynomial(*m.image, image))
    out.failures.push_back(label + " premise consequent instantiates " + x + " with " + print_term(*m.image) +
                           ", expected " + print_term(image));
}

void check_side_condition(NodeCheck& out, const Formula& body, InductionDiscipline discipline, bool trusted) {
  if (discipline == InductionDiscipline::Unrestricted) return;
  BoundDiscipline d = discipline == InductionDiscipline::Poly ? BoundDiscipline::polynomial()
                                                              : BoundDiscipline::exponential();
  ClassificationReport r = classify_bounded(body, d);
  if (r.conforming()) return;
  std::string name = discipline == InductionDiscipline::Poly ? "polynomially" : "exponentially";
  for (const auto& v : r.violations) {
    std::string what = "induction formula is not " + name + " bounded: " + v.path + ": " + v.reason;
    (trusted ? out.warnings : out.failures).push_back(trusted ? what + " (trusted)" : what);
  }
}

}  // namespace

bool CheckReport::ok() const {
  for (const auto& n : nodes)
    if (!n.ok()) return false;
  return true;
}

std::vector<std::string> CheckReport::failing_nodes() const {
  std::vector<std::string> out;
  for (const auto& n : nodes)
    if (!n.ok()) out.push_back(n.id);
  return out;
}

CheckReport check_derivation(const Derivation& d, std::uint64_t budget) {
  CheckReport report;
  std::map<std::string, bool> passed;
  std::map<std::string, std::size_t> index;
  for (const auto& id : d.topological_order()) {
    const DerivationNode& n = d.node(id);
    NodeCheck out{n.id, n.rule, {}, {}};
    const Formula& c = n.conclusion;
    std::vector<Formula> prem;
    bool premises_ok = true;
    for (const auto& p : n.premises) {
      prem.push_back(d.node(p).conclusion);
      premises_ok = premises_ok && passed[p];
    }
    if (!premises_ok) out.warnings.push_back("depends on a failing premise");
    // Link checks against a failing premise are skipped: the fault is there.
    auto premise_ok = [&](std::size_t i) { return passed[n.premises[i]]; };
    // A premise that alone disagrees with an otherwise consistent node is
    // where the fault lies.
    auto blame = [&](std::size_t i, const std::string& what) {
      const std::string& p = n.premises[i];
      report.nodes[index[p]].failures.push_back(what + " (as used by " + n.id + ")");
      passed[p] = false;
      if (premises_ok) out.warnings.push_back("depends on a failing premise");
      premises_ok = false;
    };

    switch (n.rule) {
      case Rule::Premise:
        if (n.builtin) {
          try {
            Strategy s = builtin(*n.builtin, c);
            if (!targets(s, c)) out.failures.push_back("builtin " + *n.builtin + " does not play " + text(c));
          } catch (const std::exception& e) {
            out.failures.push_back(e.what());
          }
        } else {
          CheckReport inner = check_derivation(*n.external, budget);
          if (!inner.ok()) out.failures.push_back("referenced derivation does not check");
          if (!same(n.external->theorem(), c))
            out.failures.push_back("referenced derivation proves " + text(n.external->theorem()) + ", not " + text(c));
        }
        break;
      case Rule::ElementaryAxiom: {
        if (has_choice(c)) {
          out.failures.push_back("not elementary: " + text(c));
          break;
        }
        if (!free_vars(c).empty()) {
          out.failures.push_back("not closed: " + text(c));
          break;
        }
        Verdict v = evaluate_elementary(c, budget);
        if (v.bot_wins_p()) out.failures.push_back("false: " + text(c));
        else if (v.unknown_p()) {
          if (n.trusted) out.warnings.push_back("unverified, accepted as trusted: " + to_string(v));
          else out.failures.push_back("unverified (" + to_string(v) + "); needs the trusted flag");
        }
        break;
      }
      case Rule::Copycat:
        if (c.kind() != Formula::Kind::Implies || !alpha_equivalent(c.lhs(), c.rhs()))
          out.failures.push_back("not of the form A -> A: " + text(c));
        break;
      case Rule::ChooseLeft:
      case Rule::ChooseRight: {
        if (c.kind() != Formula::Kind::ChOr) {
          out.failures.push_back("conclusion is not a choice disjunction: " + text(c));
          break;
        }
        const Formula& side = n.rule == Rule::ChooseLeft ? c.lhs() : c.rhs();
        if (premise_ok(0) && !same(prem[0], side))
          out.failures.push_back("premise " + text(prem[0]) + " is not the chosen component " + text(side));
        break;
      }
      case Rule::ChooseValue: {
        if (c.kind() != Formula::Kind::ChExists) {
          out.failures.push_back("conclusion is not a choice existential: " + text(c));
          break;
        }
        Formula chosen = instantiate(c.body(), c.var(), Term::numeral(*n.n));
        if (premise_ok(0) && !same(prem[0], chosen))
          out.failures.push_back("premise " + text(prem[0]) + " is not " + text(chosen));
        break;
      }
      case Rule::ChAllIntro: {
        if (c.kind() != Formula::Kind::ChAll) {
          out.failures.push_back("conclusion is not a choice universal: " + text(c));
          break;
        }
        std::string x = n.var.value_or(c.var());
        Formula body = parameterized_body(c, x);
        if (premise_ok(0) && !same(prem[0], body))
          out.failures.push_back("premise " + text(prem[0]) + " is not " + text(body));
        break;
      }
      case Rule::MP: {
        if (!premise_ok(1)) break;
        const Formula& imp = prem[1];
        if (imp.kind() != Formula::Kind::Implies) {
          out.failures.push_back("second premise is not an implication: " + text(imp));
          break;
        }
        bool consequent = same(c, imp.rhs());
        if (premise_ok(0) && !same(prem[0], imp.lhs())) {
          std::string what = "first premise " + text(prem[0]) + " is not the antecedent " + text(imp.lhs());
          if (consequent) blame(0, what);
          else out.failures.push_back(what);
        }
        if (!consequent)
          out.failures.push_back("conclusion " + text(c) + " is not the consequent " + text(imp.rhs()));
        break;
      }
      case Rule::IndBinary:
      case Rule::IndUnary: {
        if (c.kind() != Formula::Kind::ChAll) {
          out.failures.push_back("conclusion is not a choice universal: " + text(c));
          break;
        }
        std::string x = n.var.value_or(c.var());
        Formula body = parameterized_body(c, x);
        Formula base = instantiate(c.body(), c.var(), Term::zero());
        bool base_fits = !premise_ok(0) || same(prem[0], base);
        std::size_t before = out.failures.size();
        Term vx = Term::var(x);
        if (n.rule == Rule::IndBinary) {
          Term twice = Term::times(Term::numeral(2), vx);
          if (premise_ok(1)) check_step(out, body, x, prem[1], twice, "even step");
          if (premise_ok(2)) check_step(out, body, x, prem[2], Term::succ(twice), "odd step");
        } else {
          if (premise_ok(1)) check_step(out, body, x, prem[1], Term::succ(vx), "step");
        }
        if (!base_fits) {
          std::string what = "base premise " + text(prem[0]) + " is not " + text(base);
          bool steps_agree = out.failures.size() == before && premise_ok(1) && (n.premises.size() < 3 || premise_ok(2));
          if (steps_agree) blame(0, what);
          else out.failures.insert(out.failures.begin() + before, what);
        }
        check_side_condition(out, body, n.rule == Rule::IndBinary ? InductionDiscipline::Poly : n.discipline,
                             n.trusted);
        break;
      }
    }
    passed[id] = out.ok();
    index[id] = report.nodes.size();
    report.nodes.push_back(std::move(out));
  }
  return report;
}

std::string format_check(const CheckReport& r) {
  std::string out;
  for (const auto& n : r.nodes) {
    out += (n.ok() ? "ok   " : "FAIL ") + n.id + " (" + to_string(n.rule) + ")\n";
    for (const auto& f : n.failures) out += "  error: " + f + "\n";
    for (const auto& w : n.warnings) out += "  warning: " + w + "\n";
  }
  return out;
}

}  // namespace clarith
