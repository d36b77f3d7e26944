#include "clarith/derivation.hpp"

#include "clarith/syntax.hpp"

#include <json.hpp>

namespace clarith {

using nlohmann::json;

namespace {

// Runs an inner agent once it exists; counts and notes come from it.
class DelegateAgent : public Agent {
 public:
  void observe(const Move& m) override {
    if (inner_) inner_->observe(m);
  }
  std::optional<Move> propose(const Position& p) override { return inner_ ? inner_->propose(p) : std::nullopt; }
  std::uint64_t internal_steps() const override { return inner_ ? inner_->internal_steps() : 0; }
  std::uint64_t compositions() const override { return inner_ ? inner_->compositions() : 0; }
  std::vector<std::string> take_notes() override { return inner_ ? inner_->take_notes() : std::vector<std::string>{}; }

 protected:
  std::unique_ptr<Agent> inner_;
};

// Makes the root choice, then plays the premise.
class ChooseAgent : public DelegateAgent {
 public:
  ChooseAgent(Payload choice, Strategy premise) : choice_(std::move(choice)), premise_(std::move(premise)) {}

  std::optional<Move> propose(const Position& p) override {
    if (!inner_) {
      Move m{Player::Top, {}, choice_};
      if (check_move(p, m)) return std::nullopt;
      return m;
    }
    return inner_->propose(p);
  }

  void observe(const Move& m) override {
    if (!inner_) {
      if (m.by == Player::Top && m.address.empty()) inner_ = premise_.make_agent();
      return;
    }
    inner_->observe(m);
  }

 private:
  Payload choice_;
  Strategy premise_;
};

// Waits for the environment's value n at the root, then plays build(n).
class OnInputAgent : public DelegateAgent {
 public:
  explicit OnInputAgent(std::function<Strategy(const Natural&)> build) : build_(std::move(build)) {}

  void observe(const Move& m) override {
    if (!inner_) {
      if (m.by == Player::Bot && m.address.empty())
        if (const Natural* n = std::get_if<Natural>(&m.payload)) inner_ = build_(*n).make_agent();
      return;
    }
    inner_->observe(m);
  }

 private:
  std::function<Strategy(const Natural&)> build_;
};

Strategy binary_chain(const Strategy& base, const Strategy& even, const Strategy& odd, const std::string& x,
                      const Natural& n) {
  Strategy s = base;
  Natural prefix = 0;
  for (std::uint64_t i = bit_width(n); i-- > 0;) {
    bool bit = boost::multiprecision::bit_test(n, static_cast<unsigned>(i));
    s = compose(s, (bit ? odd : even).bind({{x, prefix}}));
    prefix = 2 * prefix + (bit ? 1 : 0);
  }
  return s;
}

Strategy unary_chain(const Strategy& base, const Strategy& step, const std::string& x, const Natural& n) {
  Strategy s = base;
  for (Natural i = 0; i < n; ++i) s = compose(s, step.bind({{x, i}}));
  return s;
}

}  // namespace

Strategy extract_node(const Derivation& d, const std::string& id) {
  const DerivationNode& n = d.node(id);
  const Formula& c = n.conclusion;
  auto premise = [&](std::size_t i) { return extract_node(d, n.premises[i]); };
  switch (n.rule) {
    case Rule::Premise:
      if (n.builtin) return builtin(*n.builtin, c);
      return extract_node(*n.external, n.external->root);
    case Rule::ElementaryAxiom: return builtin("pass", c);
    case Rule::Copycat: return copycat(c.lhs());
    case Rule::ChooseLeft:
    case Rule::ChooseRight:
    case Rule::ChooseValue: {
      Payload choice = n.rule == Rule::ChooseLeft    ? Payload(Side::Left)
                       : n.rule == Rule::ChooseRight ? Payload(Side::Right)
                                                     : Payload(*n.n);
      Strategy inner = premise(0);
      return Strategy(to_string(n.rule) + "(" + inner.name() + ")", c, [choice, inner](const Strategy&) {
        return std::make_unique<ChooseAgent>(choice, inner);
      });
    }
    case Rule::ChAllIntro: {
      Strategy inner = premise(0);
      std::string x = n.var.value_or(c.var());
      return Strategy("chall(" + inner.name() + ")", c, [inner, x](const Strategy&) {
        return std::make_unique<OnInputAgent>([inner, x](const Natural& v) { return inner.bind({{x, v}}); });
      });
    }
    case Rule::MP: return compose(premise(0), premise(1));
    case Rule::IndBinary: {
      Strategy base = premise(0), even = premise(1), odd = premise(2);
      std::string x = n.var.value_or(c.var());
      return Strategy("ind-binary(" + base.name() + ", " + even.name() + ", " + odd.name() + ")", c,
                      [base, even, odd, x](const Strategy&) {
                        return std::make_unique<OnInputAgent>(
                            [=](const Natural& v) { return binary_chain(base, even, odd, x, v); });
                      });
    }
    case Rule::IndUnary: {
      Strategy base = premise(0), step = premise(1);
      std::string x = n.var.value_or(c.var());
      return Strategy("ind-unary(" + base.name() + ", " + step.name() + ")", c, [base, step, x](const Strategy&) {
        return std::make_unique<OnInputAgent>([=](const Natural& v) { return unary_chain(base, step, x, v); });
      });
    }
  }
  throw ExtractionError("unknown rule at node " + id);
}

Strategy extract(const Derivation& d) {
  CheckReport r = check_derivation(d);
  if (!r.ok()) {
    std::string ids;
    for (const auto& id : r.failing_nodes()) ids += (ids.empty() ? "" : ", ") + id;
    throw ExtractionError("derivation does not check; failing nodes: " + ids + "\n" + format_check(r));
  }
  return extract_node(d, d.root);
}

VerifyReport verify_strategy(const Formula& f, const Strategy& s, const VerifyPlan& plan) {
  VerifyReport report;
  auto record = [&](std::string input, Environment& env) {
    Transcript t = run_session(f, {}, s, env, plan.limits);
    if (t.verdict.top_wins_p()) ++report.wins;
    else if (t.verdict.bot_wins_p()) ++report.losses;
    else ++report.unknowns;
    report.plays.push_back({std::move(input), t.verdict, t.report});
  };
  if (plan.range) {
    for (Natural n = plan.range->first; n <= plan.range->second; ++n) {
      auto env = value_env(n);
      record(to_decimal(n), *env);
    }
  }
  if (plan.seeds) {
    for (std::uint64_t seed = 0; seed < *plan.seeds; ++seed) {
      auto env = random_env(seed, plan.payload_bound);
      record("seed " + std::to_string(seed), *env);
    }
  }
  if (!plan.range && !plan.seeds) {
    auto env = silent_env();
    record("silent", *env);
  }
  return report;
}

std::string format_verify(const VerifyReport& r, std::size_t max_losses_listed) {
  std::string out = "plays: " + std::to_string(r.plays.size()) + "\nwins: " + std::to_string(r.wins) +
                    "\nlosses: " + std::to_string(r.losses) + "\nunknown: " + std::to_string(r.unknowns) + "\n";
  std::size_t listed = 0;
  for (const auto& p : r.plays) {
    if (p.verdict.top_wins_p()) continue;
    if (listed++ == max_losses_listed) {
      out += "...\n";
      break;
    }
    out += (p.verdict.bot_wins_p() ? "lost at " : "undecided at ") + p.input + ": " + to_string(p.verdict) + "\n";
  }
  return out;
}

std::string save_bundle(const Derivation& d, const CheckReport& checked) {
  json trusted = json::array();
  for (const auto& n : checked.nodes)
    if (d.node(n.id).trusted) trusted.push_back(n.id);
  json doc = {{"format", "clarith-bundle"},
              {"version", 1},
              {"theorem", print_formula(d.theorem())},
              {"trusted", trusted},
              {"derivation", json::parse(save_derivation(d))}};
  return doc.dump(2) + "\n";
}

Bundle load_bundle(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DerivationError(std::string("not a JSON document: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", std::string()) != "clarith-bundle") {
    Derivation d = load_derivation(json_text);
    return {print_formula(d.theorem()), {}, std::move(d)};
  }
  if (doc.value("version", 0) != 1) throw DerivationError("unsupported bundle version");
  Bundle b;
  b.theorem = doc.value("theorem", std::string());
  for (const auto& t : doc.value("trusted", json::array())) b.trusted.push_back(t.get<std::string>());
  if (!doc.contains("derivation")) throw DerivationError("bundle without a derivation");
  b.derivation = load_derivation(doc["derivation"].dump());
  return b;
}

}  // namespace clarith
