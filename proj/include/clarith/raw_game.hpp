#pragma once

#include "clarith/game.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace clarith {

/// A move of an explicit game tree: a name prefixed by the player who may
/// make it, written "Ta" or "Bg".
struct RawMove {
  Player by;
  std::string name;

  bool operator==(const RawMove&) const = default;
};

struct RawEdge;

/// Explicit game tree. Each node is labeled with the player who wins if
/// play ends there.
struct RawGame {
  Player label = Player::Top;
  std::vector<RawEdge> children;

  const RawGame* child(const RawMove& m) const;
  std::size_t depth() const;
};

struct RawEdge {
  RawMove move;
  RawGame child;
};

using RawRun = std::vector<RawMove>;

/// Label of the node reached by r. A move that is not an edge of the
/// current node loses for its author.
Player tree_winner(const RawGame& g, const RawRun& r);

/// Interchanges the roles: every label and move prefix is flipped.
RawGame negate(const RawGame& g);
RawRun flip_prefixes(const RawRun& r);

std::string format_raw_move(const RawMove& m);
RawMove parse_raw_move(std::string_view text);

/// Indented text: a node line `T` or `B`, its edges two columns deeper
/// (`Ta`), each edge's subtree two columns deeper still.
RawGame parse_raw_game(std::string_view text);
std::string print_raw_game(const RawGame& g);

/// The game of the introductory tree example: root B with edges Ta, Bb, Bg.
RawGame figure1();

}  // namespace clarith
