#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crystal/graph.hpp"

namespace crystal {

/// Canonical string form of a connected coloured graph.
///
/// Grammar: `<colours> ':' <order> ':' <body>` where colours and order are
/// decimal and body lists, colour by colour, the neighbour of every vertex
/// under the canonical numbering. Each neighbour is written as a fixed-width
/// base-64 number (width 1 for order <= 64, else 2) over the alphabet
/// "-0-9A-Z_a-z", whose ASCII order matches digit order. Two graphs are
/// colour-isomorphic iff their codes are equal.
struct Code {
  std::string text;
  auto operator<=>(const Code&) const = default;
};

class CodeError : public std::invalid_argument {
 public:
  CodeError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A graph relabelled into its canonical numbering.
struct OrderedGraph {
  ColouredGraph graph;               // serializes exactly to code(source)
  std::vector<Vertex> ordering;      // ordering[newVertex] = source vertex
  std::vector<Colour> colourOrder;   // colourOrder[newColour] = source colour
};

/// Minimum over all roots and colour permutations of the breadth-first
/// numbering serialization. Throws std::invalid_argument on disconnected input.
Code code(const ColouredGraph& g);
OrderedGraph canonicalOrder(const ColouredGraph& g);
ColouredGraph decode(const Code& c);
bool isColourIsomorphic(const ColouredGraph& a, const ColouredGraph& b);

}  // namespace crystal

template <>
struct std::hash<crystal::Code> {
  std::size_t operator()(const crystal::Code& c) const noexcept { return std::hash<std::string>{}(c.text); }
};
