#include "clarith/game.hpp"

#include "clarith/nnf.hpp"
#include "clarith/syntax.hpp"

#include <sstream>

namespace clarith {

char player_char(Player p) { return p == Player::Top ? 'T' : 'B'; }

std::string to_string(const Verdict& v) {
  switch (v.kind()) {
    case Verdict::Kind::TopWins: return "TopWins";
    case Verdict::Kind::BotWins: return "BotWins";
    case Verdict::Kind::Unknown: break;
  }
  return "Unknown(" + v.reason() + ")";
}

std::string to_string(IllegalMove::Reason r) {
  switch (r) {
    case IllegalMove::Reason::BadAddress: return "bad address";
    case IllegalMove::Reason::HiddenTarget: return "hidden target";
    case IllegalMove::Reason::WrongPolarity: return "wrong polarity";
    case IllegalMove::Reason::WrongPayload: return "wrong payload";
  }
  return "illegal move";
}

namespace {

bool is_blind(const Formula& f) {
  return f.kind() == Formula::Kind::BlindAll || f.kind() == Formula::Kind::BlindExists;
}

Player owner(const Formula& choice) {
  switch (choice.kind()) {
    case Formula::Kind::ChAnd:
    case Formula::Kind::ChAll: return Player::Bot;
    default: return Player::Top;
  }
}

bool binary_choice(const Formula& f) {
  return f.kind() == Formula::Kind::ChAnd || f.kind() == Formula::Kind::ChOr;
}

void frontier(const Formula& f, Address& at, std::vector<LegalMove>& out) {
  if (is_blind(f)) return frontier(f.body(), at, out);
  if (f.is_choice()) {
    out.push_back({owner(f), at, binary_choice(f) ? LegalMove::Target::Binary : LegalMove::Target::Quantifier});
    return;
  }
  if (f.kind() == Formula::Kind::And || f.kind() == Formula::Kind::Or) {
    at.push_back(Side::Left);
    frontier(f.lhs(), at, out);
    at.back() = Side::Right;
    frontier(f.rhs(), at, out);
    at.pop_back();
  }
}

// Locates the target of `a`, or explains why there is none.
struct Located {
  std::optional<Formula> target;
  std::optional<IllegalMove> error;
};

Located locate(const Formula& root, const Address& a) {
  Formula node = root;
  for (std::size_t i = 0;; ++i) {
    while (is_blind(node)) node = node.body();
    if (i == a.size()) {
      if (!node.is_choice())
        return {std::nullopt, IllegalMove(IllegalMove::Reason::BadAddress,
                                          "address " + format_address(a) + " does not name a choice occurrence")};
      return {node, std::nullopt};
    }
    if (node.is_choice())
      return {std::nullopt,
              IllegalMove(IllegalMove::Reason::HiddenTarget,
                          "address " + format_address(a) + " passes through an unresolved choice occurrence")};
    if (node.kind() != Formula::Kind::And && node.kind() != Formula::Kind::Or)
      return {std::nullopt,
              IllegalMove(IllegalMove::Reason::BadAddress, "address " + format_address(a) + " leaves the game tree")};
    node = a[i] == Side::Left ? node.lhs() : node.rhs();
  }
}

std::optional<IllegalMove> validate(const Formula& target, const Move& m) {
  if (owner(target) != m.by)
    return IllegalMove(IllegalMove::Reason::WrongPolarity,
                       std::string("the choice at ") + format_address(m.address) + " belongs to " +
                           player_char(owner(target)) + ", not " + player_char(m.by));
  const bool want_side = binary_choice(target);
  if (want_side != std::holds_alternative<Side>(m.payload))
    return IllegalMove(IllegalMove::Reason::WrongPayload,
                       std::string("the choice at ") + format_address(m.address) +
                           (want_side ? " takes L or R" : " takes a natural number"));
  return std::nullopt;
}

Formula resolve(const Formula& node, const Address& a, std::size_t i, const Payload& payload) {
  if (is_blind(node)) return Formula::quantifier(node.kind(), node.var(), resolve(node.body(), a, i, payload));
  if (i == a.size()) {
    if (binary_choice(node)) return std::get<Side>(payload) == Side::Left ? node.lhs() : node.rhs();
    return instantiate(node.body(), node.var(), Term::numeral(std::get<Natural>(payload)));
  }
  if (a[i] == Side::Left) return Formula::binary(node.kind(), resolve(node.lhs(), a, i + 1, payload), node.rhs());
  return Formula::binary(node.kind(), node.lhs(), resolve(node.rhs(), a, i + 1, payload));
}

}  // namespace

Position initial_position(const Formula& f, const Valuation& v) {
  for (const auto& x : free_vars(f))
    if (!v.count(x)) throw std::invalid_argument("free variable " + x + " has no value");
  return Position(to_nnf(f), v);
}

std::vector<LegalMove> legal_moves(const Position& p) {
  std::vector<LegalMove> out;
  Address at;
  frontier(p.current(), at, out);
  return out;
}

std::vector<LegalMove> legal_moves(const Position& p, Player who) {
  std::vector<LegalMove> out;
  for (auto& m : legal_moves(p))
    if (m.by == who) out.push_back(std::move(m));
  return out;
}

std::optional<Formula> choice_at(const Position& p, const Address& a) { return locate(p.current(), a).target; }

std::optional<IllegalMove> check_move(const Position& p, const Move& m) {
  Located found = locate(p.current(), m.address);
  if (found.error) return found.error;
  return validate(*found.target, m);
}

Position apply_move(const Position& p, const Move& m) {
  if (auto error = check_move(p, m)) throw *error;
  Position next = p;
  next.current_ = resolve(p.current(), m.address, 0, m.payload);
  next.resolutions_.push_back(m);
  return next;
}

RunVerdict evaluate_run(const Formula& f, const Run& r, const Valuation& v, std::uint64_t budget) {
  Position p = initial_position(f, v);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (auto error = check_move(p, r[i]))
      return {Verdict::win_for(opposite(r[i].by)), i, error->what()};
    p = apply_move(p, r[i]);
  }
  return {winner(p, budget), std::nullopt, {}};
}

std::string format_address(const Address& a) {
  if (a.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += '/';
    out += a[i] == Side::Left ? 'L' : 'R';
  }
  return out;
}

Address parse_address(std::string_view text) {
  if (text == "-") return {};
  Address a;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == 'L') a.push_back(Side::Left);
    else if (text[i] == 'R') a.push_back(Side::Right);
    else throw std::invalid_argument("bad address '" + std::string(text) + "'");
    ++i;
    if (i < text.size()) {
      if (text[i] != '/' || i + 1 == text.size()) throw std::invalid_argument("bad address '" + std::string(text) + "'");
      ++i;
    }
  }
  if (a.empty()) throw std::invalid_argument("empty address");
  return a;
}

std::string format_payload(const Payload& p) {
  if (const Side* s = std::get_if<Side>(&p)) return *s == Side::Left ? "L" : "R";
  return to_decimal(std::get<Natural>(p));
}

Payload parse_payload(std::string_view text) {
  if (text == "L") return Side::Left;
  if (text == "R") return Side::Right;
  return parse_natural(text);
}

std::string format_move(const Move& m) {
  return std::string(1, player_char(m.by)) + " " + format_address(m.address) + " " + format_payload(m.payload);
}

Move parse_move(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string who, addr, payload, extra;
  if (!(in >> who >> addr >> payload) || (in >> extra))
    throw std::invalid_argument("malformed move line '" + std::string(line) + "'");
  Player by;
  if (who == "T") by = Player::Top;
  else if (who == "B") by = Player::Bot;
  else throw std::invalid_argument("move must start with T or B: '" + std::string(line) + "'");
  return {by, parse_address(addr), parse_payload(payload)};
}

std::string format_run(const Run& r) {
  std::string out;
  for (const auto& m : r) out += format_move(m) + "\n";
  return out;
}

Run parse_run(std::string_view text) {
  Run r;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    r.push_back(parse_move(line));
  }
  return r;
}

std::size_t position_size(const Position& p) { return print_formula(p.current()).size(); }

}  // namespace clarith
