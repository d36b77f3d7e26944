#include "clarith/strategy.hpp"

#include "clarith/syntax.hpp"

#include <deque>

namespace clarith {

Strategy::Strategy(std::string name, Formula target, Factory factory, Valuation params)
    : impl_(std::make_shared<Impl>(Impl{std::move(name), std::move(target), std::move(factory), std::move(params)})) {}

Formula Strategy::instance() const { return fold_closed(apply_valuation(target(), params())); }

Strategy Strategy::bind(const Valuation& extra) const {
  Valuation merged = params();
  for (const auto& [k, v] : extra) merged[k] = v;
  return Strategy(name(), target(), impl_->factory, std::move(merged));
}

std::unique_ptr<Agent> Strategy::make_agent() const { return impl_->factory(*this); }

std::optional<Move> Strategy::propose(const Position& p, const Run& history) const {
  auto agent = make_agent();
  Position replay = initial_position(p.root(), p.valuation());
  for (const auto& m : history) {
    if (m.by == Player::Top) agent->propose(replay);
    replay = apply_move(replay, m);
    agent->observe(m);
  }
  return agent->propose(p);
}

bool targets(const Strategy& s, const Formula& f, const Valuation& v) {
  return alpha_equivalent(fold_closed(apply_valuation(s.instance(), v)), fold_closed(apply_valuation(f, v)));
}

namespace {

Address prefixed(Side head, const Address& a) {
  Address out{head};
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

class CopycatAgent : public Agent {
 public:
  void observe(const Move& m) override {
    if (m.by != Player::Bot || m.address.empty()) return;
    Move echo{Player::Top, m.address, m.payload};
    echo.address[0] = m.address[0] == Side::Left ? Side::Right : Side::Left;
    pending_.push_back(std::move(echo));
  }

  std::optional<Move> propose(const Position& p) override {
    while (!pending_.empty()) {
      Move m = pending_.front();
      pending_.pop_front();
      if (!check_move(p, m)) return m;
    }
    return std::nullopt;
  }

 private:
  std::deque<Move> pending_;
};

// Plays B by running tau on A -> B (read as ~A \/ B) against sigma on A.
class ComposeAgent : public Agent {
 public:
  ComposeAgent(const Strategy& sigma, const Strategy& tau)
      : sigma_(sigma.make_agent()),
        tau_(tau.make_agent()),
        a_(initial_position(sigma.instance())),
        ab_(initial_position(tau.instance())) {}

  void observe(const Move& m) override {
    if (m.by != Player::Bot) return;  // own moves were applied when emitted
    feed_tau({Player::Bot, prefixed(Side::Right, m.address), m.payload});
    ++steps_;
  }

  std::optional<Move> propose(const Position&) override {
    for (std::size_t guard = 0; guard < kMaxForwards; ++guard) {
      if (auto m = tau_->propose(ab_)) {
        if (m->address.empty() || check_move(ab_, *m)) return std::nullopt;
        feed_tau(*m);
        Address inner(m->address.begin() + 1, m->address.end());
        if (m->address[0] == Side::Right) return Move{Player::Top, inner, m->payload};
        Move query{Player::Bot, inner, m->payload};
        if (check_move(a_, query)) return std::nullopt;
        feed_sigma(query);
        ++steps_;
        continue;
      }
      if (auto m = sigma_->propose(a_)) {
        if (check_move(a_, *m)) return std::nullopt;
        feed_sigma(*m);
        Move answer{Player::Bot, prefixed(Side::Left, m->address), m->payload};
        if (check_move(ab_, answer)) return std::nullopt;
        feed_tau(answer);
        ++steps_;
        continue;
      }
      return std::nullopt;
    }
    return std::nullopt;
  }

  std::uint64_t internal_steps() const override {
    return steps_ + sigma_->internal_steps() + tau_->internal_steps();
  }
  std::uint64_t compositions() const override { return 1 + sigma_->compositions() + tau_->compositions(); }

  std::vector<std::string> take_notes() override {
    auto notes = tau_->take_notes();
    for (auto& n : sigma_->take_notes()) notes.push_back(std::move(n));
    return notes;
  }

 private:
  static constexpr std::size_t kMaxForwards = 1 << 20;

  void feed_tau(const Move& m) {
    ab_ = apply_move(ab_, m);
    tau_->observe(m);
  }
  void feed_sigma(const Move& m) {
    a_ = apply_move(a_, m);
    sigma_->observe(m);
  }

  std::unique_ptr<Agent> sigma_, tau_;
  Position a_, ab_;
  std::uint64_t steps_ = 0;
};

}  // namespace

Strategy copycat(const Formula& a) {
  return Strategy("copycat", Formula::implies(a, a), [](const Strategy&) { return std::make_unique<CopycatAgent>(); });
}

Strategy compose(const Strategy& sigma, const Strategy& tau) {
  Formula implication = tau.instance();
  if (implication.kind() != Formula::Kind::Implies)
    throw StrategyMismatch("strategy " + tau.name() + " does not play an implication: " + print_formula(implication));
  Formula premise = sigma.instance();
  if (!alpha_equivalent(premise, implication.lhs()))
    throw StrategyMismatch("cannot compose: " + sigma.name() + " plays " + print_formula(premise) + " but " +
                           tau.name() + " consumes " + print_formula(implication.lhs()));
  return Strategy("(" + sigma.name() + " ; " + tau.name() + ")", implication.rhs(),
                  [sigma, tau](const Strategy&) { return std::make_unique<ComposeAgent>(sigma, tau); });
}

}  // namespace clarith
