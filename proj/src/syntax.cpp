#include "clarith/syntax.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace clarith {

ParseError::ParseError(std::size_t line, std::size_t column, std::set<std::string> expected, std::string found)
    : std::runtime_error([&] {
        std::ostringstream out;
        out << line << ":" << column << ": syntax error at " << found << "; expected one of:";
        for (const auto& e : expected) out << " " << e;
        return out.str();
      }()),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

struct Token {
  enum class Kind { Ident, Number, Symbol, End } kind;
  std::string text;
  std::size_t offset;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of input";
    case Token::Kind::Ident: return "identifier '" + t.text + "'";
    case Token::Kind::Number: return "numeral '" + t.text + "'";
    case Token::Kind::Symbol: return "'" + t.text + "'";
  }
  return "?";
}

struct LineCol {
  std::size_t line, column;
};

LineCol locate(std::string_view text, std::size_t offset) {
  LineCol lc{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++lc.line;
      lc.column = 1;
    } else {
      ++lc.column;
    }
  }
  return lc;
}

std::vector<Token> tokenize(std::string_view text) {
  static const char* const two_char[] = {"++", "<=", "/\\", "\\/", "->"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::islower(static_cast<unsigned char>(text[j])) ||
                                 std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      out.push_back({Token::Kind::Ident, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const char* sym : two_char) {
      if (text.substr(i, 2) == sym) {
        out.push_back({Token::Kind::Symbol, sym, i});
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    static const std::string singles = "()'*+=<>~&|!?AE";
    if (singles.find(c) != std::string::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, c), i});
      ++i;
      continue;
    }
    auto lc = locate(text, i);
    throw ParseError(lc.line, lc.column, {"a token"}, "character '" + std::string(1, c) + "'");
  }
  out.push_back({Token::Kind::End, "", text.size()});
  return out;
}

struct Fail {};

class Parser {
 public:
  Parser(std::string_view text) : text_(text), tokens_(tokenize(text)) {}

  template <typename F>
  auto run(F&& body) {
    try {
      return body();
    } catch (const Fail&) {
      const Token& at = tokens_[far_];
      auto lc = locate(text_, at.offset);
      throw ParseError(lc.line, lc.column, expected_, describe(at));
    }
  }

  Formula formula_document() {
    return run([&] {
      Formula f = formula();
      expect_end();
      return f;
    });
  }

  Term term_document() {
    return run([&] {
      Term t = term();
      expect_end();
      return t;
    });
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  bool at_symbol(std::string_view s) const {
    return peek().kind == Token::Kind::Symbol && peek().text == s;
  }

  void note(const std::string& what) {
    if (pos_ > far_) {
      far_ = pos_;
      expected_.clear();
    }
    if (pos_ == far_) expected_.insert(what);
  }

  bool accept(std::string_view s) {
    if (at_symbol(s)) {
      ++pos_;
      return true;
    }
    note("'" + std::string(s) + "'");
    return false;
  }

  void expect(std::string_view s) {
    if (!accept(s)) throw Fail{};
  }

  void expect_end() {
    if (peek().kind != Token::Kind::End) {
      note("end of input");
      throw Fail{};
    }
  }

  std::string identifier() {
    if (peek().kind != Token::Kind::Ident) {
      note("variable");
      throw Fail{};
    }
    return tokens_[pos_++].text;
  }

  // ---- terms

  Term term() {
    Term t = product();
    for (;;) {
      std::size_t save = pos_;
      if (!accept("+")) return t;
      try {
        t = Term::plus(t, product());
      } catch (const Fail&) {
        pos_ = save;  // a '+' between formulas is choice disjunction
        return t;
      }
    }
  }

  Term product() {
    Term t = postfix();
    while (accept("*")) t = Term::times(t, postfix());
    return t;
  }

  Term postfix() {
    Term t = primary();
    while (accept("'")) t = Term::succ(t);
    return t;
  }

  Term primary() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::Number) {
      ++pos_;
      return Term::numeral(parse_natural(tok.text));
    }
    if (tok.kind == Token::Kind::Ident) {
      ++pos_;
      return Term::var(tok.text);
    }
    if (accept("(")) {
      Term t = term();
      expect(")");
      return t;
    }
    if (accept("|")) {
      Term t = term();
      expect("|");
      return Term::len(t);
    }
    note("numeral");
    note("variable");
    throw Fail{};
  }

  // ---- formulas

  Formula formula() {
    Formula f = mid();
    if (accept("->")) return Formula::implies(f, formula());
    return f;
  }

  Formula mid() {
    Formula f = conj();
    for (;;) {
      if (accept("\\/")) {
        f = Formula::disj(f, conj());
      } else if (accept("++") || accept("+")) {
        f = Formula::ch_or(f, conj());
      } else if (accept("&")) {
        f = Formula::ch_and(f, conj());
      } else {
        return f;
      }
    }
  }

  Formula conj() {
    Formula f = unary();
    while (accept("/\\")) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    if (accept("~")) return Formula::negation(unary());
    for (auto [sym, kind] : {std::pair{"A", Formula::Kind::BlindAll}, std::pair{"E", Formula::Kind::BlindExists},
                             std::pair{"!", Formula::Kind::ChAll}, std::pair{"?", Formula::Kind::ChExists}}) {
      if (accept(sym)) return quantified(kind);
    }
    if (at_symbol("(")) {
      std::size_t save = pos_;
      try {
        return atom();
      } catch (const Fail&) {
        pos_ = save;
      }
      expect("(");
      Formula f = formula();
      expect(")");
      return f;
    }
    return atom();
  }

  Formula quantified(Formula::Kind kind) {
    std::string x = identifier();
    std::optional<Term> lower;
    if (accept(">")) lower = postfix();
    Formula body = unary();
    if (lower) {
      Formula guard = Formula::lt(*lower, Term::var(x));
      bool existential = kind == Formula::Kind::BlindExists || kind == Formula::Kind::ChExists;
      body = existential ? Formula::conj(guard, body) : Formula::implies(guard, body);
    }
    return Formula::quantifier(kind, x, body);
  }

  Formula atom() {
    Term a = term();
    if (accept("=")) return Formula::eq(a, term());
    if (accept("<=")) return Formula::leq(a, term());
    if (accept("<")) return Formula::lt(a, term());
    throw Fail{};
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t far_ = 0;
  std::set<std::string> expected_;
};

// ---- printing

int term_level(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Plus: return 1;
    case Term::Kind::Times: return 2;
    case Term::Kind::Succ: return 3;
    default: return 4;
  }
}

void print_term_at(const Term& t, int required, std::string& out);

void print_term_inner(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Zero: out += "0"; return;
    case Term::Kind::Numeral: out += t.value().str(); return;
    case Term::Kind::Var: out += t.name(); return;
    case Term::Kind::Succ:
      print_term_at(t.operand(), 3, out);
      out += "'";
      return;
    case Term::Kind::Len:
      out.append(t.depth(), '|');
      print_term_at(t.operand(), 0, out);
      out.append(t.depth(), '|');
      return;
    case Term::Kind::Plus:
      print_term_at(t.lhs(), 1, out);
      out += " + ";
      print_term_at(t.rhs(), 2, out);
      return;
    case Term::Kind::Times:
      print_term_at(t.lhs(), 2, out);
      out += " * ";
      print_term_at(t.rhs(), 3, out);
      return;
  }
}

void print_term_at(const Term& t, int required, std::string& out) {
  if (term_level(t) < required) {
    out += "(";
    print_term_inner(t, out);
    out += ")";
  } else {
    print_term_inner(t, out);
  }
}

int formula_level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or:
    case Formula::Kind::ChOr:
    case Formula::Kind::ChAnd: return 2;
    case Formula::Kind::And: return 3;
    default: return 4;
  }
}

void print_formula_at(const Formula& f, int required, std::string& out);

// Quantifier or ~ operand: bare if it is itself a prefix form, else parenthesised.
void print_prefix_operand(const Formula& f, std::string& out) {
  if (f.is_quantifier() || f.kind() == Formula::Kind::Not) {
    print_formula_at(f, 4, out);
  } else {
    out += "(";
    print_formula_at(f, 0, out);
    out += ")";
  }
}

// Recognises the body shapes produced by the `Qx>t` sugar.
std::optional<std::pair<Term, Formula>> sugared_bound(const Formula& q) {
  const Formula& body = q.body();
  bool existential = q.kind() == Formula::Kind::BlindExists || q.kind() == Formula::Kind::ChExists;
  auto wanted = existential ? Formula::Kind::And : Formula::Kind::Implies;
  if (body.kind() != wanted) return std::nullopt;
  const Formula& guard = body.lhs();
  if (guard.kind() != Formula::Kind::Leq) return std::nullopt;
  const Term& low = guard.left_term();
  const Term& high = guard.right_term();
  if (low.kind() != Term::Kind::Succ || high.kind() != Term::Kind::Var || high.name() != q.var())
    return std::nullopt;
  const Term& bound = low.operand();
  if (occurs_in(bound, q.var()) || term_level(bound) < 3) return std::nullopt;
  return std::pair{bound, body.rhs()};
}

void print_formula_inner(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
    case Formula::Kind::Leq:
      print_term_at(f.left_term(), 0, out);
      out += f.kind() == Formula::Kind::Eq ? " = " : " <= ";
      print_term_at(f.right_term(), 0, out);
      return;
    case Formula::Kind::Not:
      out += "~";
      if (f.operand().is_atom())
        print_formula_at(f.operand(), 4, out);
      else
        print_prefix_operand(f.operand(), out);
      return;
    case Formula::Kind::BlindAll:
    case Formula::Kind::BlindExists:
    case Formula::Kind::ChAll:
    case Formula::Kind::ChExists: {
      out += f.kind() == Formula::Kind::BlindAll      ? "A"
             : f.kind() == Formula::Kind::BlindExists ? "E"
             : f.kind() == Formula::Kind::ChAll       ? "!"
                                                      : "?";
      out += f.var();
      if (auto sugar = sugared_bound(f)) {
        out += ">";
        print_term_at(sugar->first, 3, out);
        out += " ";
        print_prefix_operand(sugar->second, out);
      } else {
        out += " ";
        print_prefix_operand(f.body(), out);
      }
      return;
    }
    case Formula::Kind::Implies:
      print_formula_at(f.lhs(), 2, out);
      out += " -> ";
      print_formula_at(f.rhs(), 1, out);
      return;
    default: {
      const char* op = f.kind() == Formula::Kind::And   ? " /\\ "
                       : f.kind() == Formula::Kind::Or  ? " \\/ "
                       : f.kind() == Formula::Kind::ChOr ? " ++ "
                                                         : " & ";
      int level = formula_level(f);
      print_formula_at(f.lhs(), f.lhs().kind() == f.kind() ? level : level + 1, out);
      out += op;
      print_formula_at(f.rhs(), level + 1, out);
      return;
    }
  }
}

void print_formula_at(const Formula& f, int required, std::string& out) {
  if (formula_level(f) < required) {
    out += "(";
    print_formula_inner(f, out);
    out += ")";
  } else {
    print_formula_inner(f, out);
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return rename_apart(Parser(text).formula_document()); }

Term parse_term(std::string_view text) { return Parser(text).term_document(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_formula_at(f, 0, out);
  return out;
}

std::string print_term(const Term& t) {
  std::string out;
  print_term_at(t, 0, out);
  return out;
}

}  // namespace clarith
