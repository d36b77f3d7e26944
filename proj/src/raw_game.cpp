#include "clarith/raw_game.hpp"

#include <sstream>
#include <stdexcept>

namespace clarith {

const RawGame* RawGame::child(const RawMove& m) const {
  for (const auto& e : children)
    if (e.move == m) return &e.child;
  return nullptr;
}

std::size_t RawGame::depth() const {
  std::size_t d = 0;
  for (const auto& e : children) d = std::max(d, 1 + e.child.depth());
  return d;
}

Player tree_winner(const RawGame& g, const RawRun& r) {
  const RawGame* node = &g;
  for (const auto& m : r) {
    node = node->child(m);
    if (!node) return opposite(m.by);
  }
  return node->label;
}

RawGame negate(const RawGame& g) {
  RawGame out;
  out.label = opposite(g.label);
  for (const auto& e : g.children) out.children.push_back({{opposite(e.move.by), e.move.name}, negate(e.child)});
  return out;
}

RawRun flip_prefixes(const RawRun& r) {
  RawRun out;
  for (const auto& m : r) out.push_back({opposite(m.by), m.name});
  return out;
}

std::string format_raw_move(const RawMove& m) { return player_char(m.by) + m.name; }

RawMove parse_raw_move(std::string_view text) {
  if (text.size() < 2 || (text[0] != 'T' && text[0] != 'B'))
    throw std::invalid_argument("move must be T or B followed by a name: '" + std::string(text) + "'");
  return {text[0] == 'T' ? Player::Top : Player::Bot, std::string(text.substr(1))};
}

namespace {

struct Line {
  std::size_t number;
  std::size_t indent;
  std::string text;
};

[[noreturn]] void fail(const Line& l, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(l.number) + ": " + what);
}

RawGame parse_node(const std::vector<Line>& lines, std::size_t& i, std::size_t indent) {
  const Line& head = lines[i];
  if (head.indent != indent) fail(head, "expected a node at column " + std::to_string(indent + 1));
  if (head.text != "T" && head.text != "B") fail(head, "node line must be T or B");
  RawGame node;
  node.label = head.text == "T" ? Player::Top : Player::Bot;
  ++i;
  while (i < lines.size() && lines[i].indent > indent) {
    const Line& edge = lines[i];
    if (edge.indent != indent + 2) fail(edge, "expected an edge at column " + std::to_string(indent + 3));
    RawMove m = parse_raw_move(edge.text);
    if (node.child(m)) fail(edge, "duplicate move " + edge.text);
    ++i;
    if (i == lines.size() || lines[i].indent != indent + 4) fail(edge, "edge " + edge.text + " has no subtree");
    node.children.push_back({m, parse_node(lines, i, indent + 4)});
  }
  return node;
}

void print_node(const RawGame& g, std::size_t indent, std::string& out) {
  out += std::string(indent, ' ') + player_char(g.label) + "\n";
  for (const auto& e : g.children) {
    out += std::string(indent + 2, ' ') + format_raw_move(e.move) + "\n";
    print_node(e.child, indent + 4, out);
  }
}

}  // namespace

RawGame parse_raw_game(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto first = raw.find_first_not_of(' ');
    if (first == std::string::npos || raw[first] == '#') continue;
    auto last = raw.find_last_not_of(' ');
    lines.push_back({n, first, raw.substr(first, last - first + 1)});
  }
  if (lines.empty()) throw std::invalid_argument("empty game");
  std::size_t i = 0;
  RawGame g = parse_node(lines, i, lines[0].indent);
  if (i != lines.size()) fail(lines[i], "text after the root subtree");
  return g;
}

std::string print_raw_game(const RawGame& g) {
  std::string out;
  print_node(g, 0, out);
  return out;
}

RawGame figure1() {
  return parse_raw_game(R"(B
  Ta
    T
      Bb
        T
      Bg
        B
          Tb
            T
          Tg
            B
  Bb
    T
      Ta
        T
  Bg
    B
      Ta
        B
          Tb
            T
          Tg
            B
      Tb
        T
          Ta
            T
      Tg
        B
          Ta
            B
)");
}

}  // namespace clarith
