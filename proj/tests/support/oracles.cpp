#include "oracles.hpp"

#include <functional>

namespace oracle {

using K = Formula::Kind;

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<bool> sieve(std::uint64_t n) {
  std::vector<bool> p(n + 1, true);
  p[0] = false;
  if (n >= 1) p[1] = false;
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (p[i])
      for (std::uint64_t j = i * i; j <= n; j += i) p[j] = false;
  return p;
}

namespace {

Formula num_eq(unsigned a, unsigned b) { return Formula::eq(Term::numeral(a), Term::numeral(b)); }

const std::vector<K> kUnary = {K::Not, K::ChAll, K::ChExists, K::BlindAll, K::BlindExists};
const std::vector<K> kBinary = {K::And, K::Or, K::Implies, K::ChAnd, K::ChOr};

Formula unary(K k, const Formula& f) {
  return k == K::Not ? Formula::negation(f) : Formula::quantifier(k, "v", f);
}

bool closed(const Formula& f) { return free_vars(f).empty(); }

}  // namespace

std::vector<Formula> formula_family() {
  Term v = Term::var("v"), one = Term::numeral(1);
  std::vector<Formula> closed_leaves = {num_eq(0, 0), num_eq(1, 0)};
  std::vector<Formula> leaves = closed_leaves;
  leaves.push_back(Formula::eq(v, one));
  leaves.push_back(Formula::leq(v, one));

  std::vector<Formula> d1;
  for (K u : kUnary)
    for (const auto& l : leaves) d1.push_back(unary(u, l));
  for (K b : kBinary)
    for (const auto& l : leaves)
      for (const auto& r : leaves) d1.push_back(Formula::binary(b, l, r));

  std::vector<Formula> d2;
  for (K u : kUnary)
    for (const auto& f : d1) d2.push_back(unary(u, f));
  for (K b : kBinary)
    for (const auto& f : d1)
      for (const auto& c : closed_leaves) {
        d2.push_back(Formula::binary(b, f, c));
        d2.push_back(Formula::binary(b, c, f));
      }

  std::vector<Formula> d3;
  for (const auto& f : d2) {
    if (closed(f)) continue;
    for (K u : kUnary)
      if (u != K::Not) d3.push_back(unary(u, f));
  }

  std::vector<Formula> out;
  for (const auto* level : {&leaves, &d1, &d2, &d3})
    for (const auto& f : *level)
      if (closed(f)) out.push_back(f);
  return out;
}

bool truth(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case K::Eq: return evaluate_term(f.left_term(), v) == evaluate_term(f.right_term(), v);
    case K::Leq: return evaluate_term(f.left_term(), v) <= evaluate_term(f.right_term(), v);
    case K::Not: return !truth(f.operand(), v);
    case K::And: return truth(f.lhs(), v) && truth(f.rhs(), v);
    case K::Or: return truth(f.lhs(), v) || truth(f.rhs(), v);
    case K::Implies: return !truth(f.lhs(), v) || truth(f.rhs(), v);
    case K::ChAnd:
    case K::ChAll: return true;
    case K::ChOr:
    case K::ChExists: return false;
    case K::BlindAll:
    case K::BlindExists: {
      bool all = f.kind() == K::BlindAll;
      for (unsigned k = 0; k <= 2; ++k) {
        Valuation w = v;
        w[f.var()] = k;
        if (truth(f.body(), w) != all) return !all;
      }
      return all;
    }
  }
  return false;
}

namespace {

// Choice occurrence reached by a path in the formula as written.
struct Slot {
  Player owner;
  bool binary;
};

Player choice_owner(const Formula& c, bool positive) {
  bool bot = c.kind() == K::ChAnd || c.kind() == K::ChAll;
  return bot == positive ? Player::Bot : Player::Top;
}

// Replaces the choice at `a` by `with(choice, owner)`; nullopt if the
// address does not lead to an accessible choice.
std::optional<Formula> rewrite(const Formula& f, const Address& a, std::size_t i, bool positive,
                               const std::function<std::optional<Formula>(const Formula&, Slot)>& with) {
  switch (f.kind()) {
    case K::Not: {
      auto r = rewrite(f.operand(), a, i, !positive, with);
      if (!r) return std::nullopt;
      return Formula::negation(*r);
    }
    case K::BlindAll:
    case K::BlindExists: {
      auto r = rewrite(f.body(), a, i, positive, with);
      if (!r) return std::nullopt;
      return Formula::quantifier(f.kind(), f.var(), *r);
    }
    case K::And:
    case K::Or:
    case K::Implies: {
      if (i == a.size()) return std::nullopt;
      bool left = a[i] == Side::Left;
      bool flip = left && f.kind() == K::Implies;
      auto r = rewrite(left ? f.lhs() : f.rhs(), a, i + 1, flip ? !positive : positive, with);
      if (!r) return std::nullopt;
      return Formula::binary(f.kind(), left ? *r : f.lhs(), left ? f.rhs() : *r);
    }
    case K::ChAnd:
    case K::ChOr:
    case K::ChAll:
    case K::ChExists:
      if (i != a.size()) return std::nullopt;
      return with(f, {choice_owner(f, positive), f.kind() == K::ChAnd || f.kind() == K::ChOr});
    default: return std::nullopt;
  }
}

std::optional<Formula> resolve(const Formula& f, const Move& m) {
  return rewrite(f, m.address, 0, true, [&](const Formula& c, Slot s) -> std::optional<Formula> {
    if (s.owner != m.by) return std::nullopt;
    if (s.binary) {
      const Side* side = std::get_if<Side>(&m.payload);
      if (!side) return std::nullopt;
      return *side == Side::Left ? c.lhs() : c.rhs();
    }
    const Natural* n = std::get_if<Natural>(&m.payload);
    if (!n) return std::nullopt;
    if (!is_free_in(c.body(), c.var())) return c.body();
    return substitute(c.body(), c.var(), *n);
  });
}

void slots(const Formula& f, Address& at, bool positive, std::vector<std::pair<Address, Slot>>& out) {
  switch (f.kind()) {
    case K::Not: return slots(f.operand(), at, !positive, out);
    case K::BlindAll:
    case K::BlindExists: return slots(f.body(), at, positive, out);
    case K::And:
    case K::Or:
    case K::Implies:
      at.push_back(Side::Left);
      slots(f.lhs(), at, f.kind() == K::Implies ? !positive : positive, out);
      at.back() = Side::Right;
      slots(f.rhs(), at, positive, out);
      at.pop_back();
      return;
    case K::ChAnd:
    case K::ChOr:
    case K::ChAll:
    case K::ChExists:
      out.push_back({at, {choice_owner(f, positive), f.kind() == K::ChAnd || f.kind() == K::ChOr}});
      return;
    default: return;
  }
}

bool prefix_of(const Address& p, const Address& a) {
  return p.size() <= a.size() && std::equal(p.begin(), p.end(), a.begin());
}

}  // namespace

Outcome play_directly(const Formula& f, const Run& run) {
  Formula cur = f;
  for (std::size_t i = 0; i < run.size(); ++i) {
    auto next = resolve(cur, run[i]);
    if (!next) return {opposite(run[i].by), i};
    cur = *next;
  }
  return {truth(cur) ? Player::Top : Player::Bot, std::nullopt};
}

std::vector<Run> canonical_runs(const Formula& f, unsigned max_payload) {
  std::vector<Run> out;
  // `closed` holds addresses left open for good; their subgames stay hidden.
  std::function<void(const Formula&, Run&, std::vector<Address>&)> go = [&](const Formula& cur, Run& run,
                                                                              std::vector<Address>& shut) {
    std::vector<std::pair<Address, Slot>> found;
    Address at;
    slots(cur, at, true, found);
    const std::pair<Address, Slot>* next = nullptr;
    for (const auto& s : found) {
      bool skipped = false;
      for (const auto& c : shut) skipped = skipped || prefix_of(c, s.first);
      if (!skipped) {
        next = &s;
        break;
      }
    }
    if (!next) {
      out.push_back(run);
      return;
    }
    Address a = next->first;
    Player by = next->second.owner;
    std::vector<Payload> options;
    if (next->second.binary) {
      options = {Side::Left, Side::Right};
    } else {
      for (unsigned k = 0; k <= max_payload; ++k) options.push_back(Natural(k));
    }
    for (const auto& p : options) {
      Move m{by, a, p};
      auto after = resolve(cur, m);
      run.push_back(m);
      go(*after, run, shut);
      run.pop_back();
    }
    shut.push_back(a);
    go(cur, run, shut);
    shut.pop_back();
  };
  Run run;
  std::vector<Address> shut;
  go(f, run, shut);
  return out;
}

bool choice_only(const Formula& f) {
  if (!has_choice(f)) return true;
  switch (f.kind()) {
    case K::Not: return choice_only(f.operand());
    case K::ChAnd:
    case K::ChOr: return choice_only(f.lhs()) && choice_only(f.rhs());
    case K::ChAll:
    case K::ChExists: return choice_only(f.body());
    default: return false;
  }
}

RawGame expand(const Formula& f, unsigned max_payload) {
  if (!has_choice(f)) return RawGame{truth(f) ? Player::Top : Player::Bot, {}};
  if (f.kind() == K::Not) return negate(expand(f.operand(), max_payload));
  bool bot_owns = f.kind() == K::ChAnd || f.kind() == K::ChAll;
  Player mover = bot_owns ? Player::Bot : Player::Top;
  RawGame g{bot_owns ? Player::Top : Player::Bot, {}};
  if (f.kind() == K::ChAnd || f.kind() == K::ChOr) {
    g.children.push_back({{mover, "L"}, expand(f.lhs(), max_payload)});
    g.children.push_back({{mover, "R"}, expand(f.rhs(), max_payload)});
  } else {
    for (unsigned k = 0; k <= max_payload; ++k) {
      Formula body = is_free_in(f.body(), f.var()) ? substitute(f.body(), f.var(), k) : f.body();
      g.children.push_back({{mover, std::to_string(k)}, expand(body, max_payload)});
    }
  }
  return g;
}

std::vector<RawRun> raw_paths(const RawGame& g) {
  std::vector<RawRun> out = {{}};
  for (const auto& e : g.children)
    for (auto tail : raw_paths(e.child)) {
      tail.insert(tail.begin(), e.move);
      out.push_back(std::move(tail));
    }
  return out;
}

namespace {

std::vector<RawGame> trees(unsigned depth) {
  std::vector<RawGame> out = {RawGame{Player::Top, {}}, RawGame{Player::Bot, {}}};
  if (depth == 0) return out;
  auto below = trees(depth - 1);
  for (Player label : {Player::Top, Player::Bot})
    for (Player owner_a : {Player::Top, Player::Bot})
      for (Player owner_b : {Player::Top, Player::Bot})
        for (const auto& a : below)
          for (const auto& b : below)
            out.push_back(RawGame{label, {{{owner_a, "a"}, a}, {{owner_b, "b"}, b}}});
  return out;
}

RawGame full_tree(unsigned depth, std::uint32_t& labels) {
  RawGame g{(labels & 1) ? Player::Top : Player::Bot, {}};
  labels >>= 1;
  if (depth > 0) {
    g.children.push_back({{Player::Top, "a"}, full_tree(depth - 1, labels)});
    g.children.push_back({{Player::Bot, "b"}, full_tree(depth - 1, labels)});
  }
  return g;
}

}  // namespace

std::vector<RawGame> raw_games() {
  std::vector<RawGame> out = trees(2);
  for (std::uint32_t mask = 0; mask < (1u << 15); ++mask) {
    std::uint32_t labels = mask;
    out.push_back(full_tree(3, labels));
  }
  return out;
}

}  // namespace oracle
