#include "clarith/session.hpp"

#include "clarith/syntax.hpp"

#include <iostream>
#include <sstream>

namespace clarith {

std::uint64_t payload_bits(const Payload& p) {
  if (const Natural* n = std::get_if<Natural>(&p)) return bit_length(*n);
  return 1;
}

std::uint64_t ComplexityReport::max_top_bits() const {
  std::uint64_t m = 0;
  for (const auto& [in, out] : amplitude) m = std::max(m, out);
  return m;
}

std::uint64_t ComplexityReport::max_bot_bits() const {
  std::uint64_t m = 0;
  for (const auto& [in, out] : amplitude) m = std::max(m, in);
  return m;
}

namespace {

class ScriptedEnv : public Environment {
 public:
  explicit ScriptedEnv(Run moves) : moves_(std::move(moves)) {}
  std::optional<Move> propose(const Position&) override {
    if (next_ == moves_.size()) return std::nullopt;
    return moves_[next_++];
  }

 private:
  Run moves_;
  std::size_t next_ = 0;
};

class SilentEnv : public Environment {
 public:
  std::optional<Move> propose(const Position&) override { return std::nullopt; }
};

class RandomEnv : public Environment {
 public:
  RandomEnv(std::uint64_t seed, std::uint64_t bound) : rng_(seed), bound_(bound) {}
  std::optional<Move> propose(const Position& p) override {
    auto slots = legal_moves(p, Player::Bot);
    if (slots.empty() || rng_() % 8 == 0) return std::nullopt;
    const LegalMove& slot = slots[rng_() % slots.size()];
    if (slot.target == LegalMove::Target::Binary)
      return Move{Player::Bot, slot.address, rng_() % 2 ? Side::Right : Side::Left};
    std::uint64_t n = bound_ == UINT64_MAX ? rng_() : rng_() % (bound_ + 1);
    return Move{Player::Bot, slot.address, Natural(n)};
  }

 private:
  std::mt19937_64 rng_;
  std::uint64_t bound_;
};

class ValueEnv : public Environment {
 public:
  explicit ValueEnv(Natural n) : n_(std::move(n)) {}
  std::optional<Move> propose(const Position& p) override {
    auto slots = legal_moves(p, Player::Bot);
    if (slots.empty()) return std::nullopt;
    const LegalMove& slot = slots.front();
    if (slot.target == LegalMove::Target::Binary) return Move{Player::Bot, slot.address, Side::Left};
    return Move{Player::Bot, slot.address, n_};
  }

 private:
  Natural n_;
};

class InteractiveEnv : public Environment {
 public:
  InteractiveEnv(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::optional<Move> propose(const Position& p) override {
    auto slots = legal_moves(p, Player::Bot);
    if (slots.empty() || !in_) return std::nullopt;
    out_ << "position: " << print_formula(p.current()) << "\n";
    for (const auto& s : slots)
      out_ << "  B " << format_address(s.address)
           << (s.target == LegalMove::Target::Binary ? " L|R" : " <number>") << "\n";
    for (;;) {
      out_ << "move ([address] payload, empty to pass)> " << std::flush;
      std::string line;
      if (!std::getline(in_, line)) return std::nullopt;
      if (line.find_first_not_of(" \t\r") == std::string::npos) return std::nullopt;
      try {
        // a lone payload goes to the root
        std::istringstream words(line);
        std::string first, second;
        words >> first >> second;
        Move m = parse_move(second.empty() ? "B - " + first : "B " + line);
        if (auto error = check_move(p, m)) {
          out_ << "illegal: " << error->what() << "\n";
          continue;
        }
        return m;
      } catch (const std::exception& e) {
        out_ << "error: " << e.what() << "\n";
      }
    }
  }

 private:
  std::istream& in_;
  std::ostream& out_;
};

}  // namespace

std::unique_ptr<Environment> scripted_env(Run moves) { return std::make_unique<ScriptedEnv>(std::move(moves)); }
std::unique_ptr<Environment> silent_env() { return std::make_unique<SilentEnv>(); }
std::unique_ptr<Environment> random_env(std::uint64_t seed, std::uint64_t bound) {
  return std::make_unique<RandomEnv>(seed, bound);
}
std::unique_ptr<Environment> value_env(Natural n) { return std::make_unique<ValueEnv>(std::move(n)); }
std::unique_ptr<Environment> interactive_env(std::istream& in, std::ostream& out) {
  return std::make_unique<InteractiveEnv>(in, out);
}

std::string format_transcript(const Transcript& t) {
  std::string out = format_run(t.run);
  for (const auto& n : t.notes) out += "note: " + n + "\n";
  if (t.illegal_index) out += "illegal: move " + std::to_string(*t.illegal_index + 1) + ": " + t.illegal_reason + "\n";
  out += "verdict: " + to_string(t.verdict) + "\n";
  out += "time: " + std::to_string(t.report.time_steps) + "\n";
  out += "space: " + std::to_string(t.report.space_peak) + "\n";
  if (t.report.compositions) out += "compositions: " + std::to_string(t.report.compositions) + "\n";
  out += "amplitude:";
  for (const auto& [in, o] : t.report.amplitude) out += " (" + std::to_string(in) + ", " + std::to_string(o) + ")";
  out += "\n";
  return out;
}

Session::Session(Formula f, Valuation v, Strategy s, Limits limits)
    : formula_(std::move(f)),
      strategy_(std::move(s)),
      limits_(limits),
      position_(initial_position(formula_, v)) {
  if (!targets(strategy_, formula_, v))
    throw StrategyMismatch("strategy " + strategy_.name() + " plays " + print_formula(strategy_.instance()) +
                           ", not " + print_formula(formula_));
  agent_ = strategy_.make_agent();
  transcript_.report.space_peak = position_size(position_);
}

std::optional<IllegalMove> Session::check(const Move& env_move) const {
  if (env_move.by != Player::Bot)
    return IllegalMove(IllegalMove::Reason::WrongPolarity, "the environment moves as B");
  return check_move(position_, env_move);
}

bool Session::play(const Move& m) {
  if (auto error = check_move(position_, m)) {
    transcript_.illegal_index = transcript_.run.size();
    transcript_.illegal_reason = error->what();
    transcript_.run.push_back(m);
    finish(Verdict::win_for(opposite(m.by)));
    return false;
  }
  position_ = apply_move(position_, m);
  transcript_.run.push_back(m);
  auto& report = transcript_.report;
  report.space_peak = std::max<std::uint64_t>(report.space_peak, position_size(position_));
  if (m.by == Player::Bot) max_bot_bits_ = std::max(max_bot_bits_, payload_bits(m.payload));
  else report.amplitude.emplace_back(max_bot_bits_, payload_bits(m.payload));
  agent_->observe(m);
  return true;
}

void Session::finish(Verdict v) {
  transcript_.verdict = std::move(v);
  finished_ = true;
}

Session::Round Session::round(const std::optional<Move>& env_move) {
  Round r;
  if (finished_) return r;
  auto out_of_steps = [&] {
    if (polls_ < limits_.max_steps) return false;
    finish(Verdict::unknown("step limit", limits_.max_steps));
    return true;
  };
  if (out_of_steps()) return r;
  ++polls_;
  if (env_move) {
    if (env_move->by != Player::Bot) {
      transcript_.illegal_index = transcript_.run.size();
      transcript_.illegal_reason = "the environment moves as B";
      transcript_.run.push_back(*env_move);
      finish(Verdict::top_wins());
      return r;
    }
    r.env_moved = true;
    if (!play(*env_move)) return r;
  }
  for (;;) {
    if (out_of_steps()) return r;
    ++polls_;
    auto m = agent_->propose(position_);
    for (auto& n : agent_->take_notes()) transcript_.notes.push_back(std::move(n));
    if (!m) break;
    if (m->by != Player::Top) {
      transcript_.illegal_index = transcript_.run.size();
      transcript_.illegal_reason = "the machine moves as T";
      transcript_.run.push_back(*m);
      finish(Verdict::bot_wins());
      return r;
    }
    r.machine_moves.push_back(*m);
    if (!play(*m)) return r;
  }
  if (!r.env_moved && r.machine_moves.empty()) finish(winner(position_, limits_.budget));
  return r;
}

Transcript Session::transcript() const {
  Transcript t = transcript_;
  if (!finished_) t.verdict = winner(position_, limits_.budget);
  t.report.internal_steps = agent_->internal_steps();
  t.report.compositions = agent_->compositions();
  t.report.time_steps = polls_ + t.report.internal_steps;
  return t;
}

Transcript run_session(const Formula& f, const Valuation& v, const Strategy& s, Environment& e,
                       const Limits& limits) {
  Session session(f, v, s, limits);
  while (!session.finished()) {
    auto m = e.propose(session.position());
    auto r = session.round(m);
    if (r.env_moved) e.observe(*m);
    for (const auto& reply : r.machine_moves) e.observe(reply);
  }
  return session.transcript();
}

}  // namespace clarith
