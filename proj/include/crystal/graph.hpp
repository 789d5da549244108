#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crystal {

using Vertex = int;
using Colour = int;

/// Bitmask over the colour set {0,...,n}; bit c set means colour c is present.
using ColourSet = std::uint8_t;

constexpr ColourSet colourBit(Colour c) { return static_cast<ColourSet>(1u << c); }
constexpr ColourSet fullColourSet(int colours) { return static_cast<ColourSet>((1u << colours) - 1u); }
int colourCount(ColourSet set);
std::vector<Colour> coloursOf(ColourSet set);

/// A properly edge-coloured regular multigraph on vertices 0..order-1.
///
/// Each colour c is stored as a fixed-point-free involution on the vertex
/// set (the c-neighbour of every vertex). Edges are implicit: an edge is a
/// (vertex, colour) pair, identified with its lower endpoint. The arity
/// (number of colours, 3 or 4) is fixed at construction.
class ColouredGraph {
 public:
  ColouredGraph() = default;

  /// `table` is colour-major: `table[c * order + v]` is the c-neighbour of v.
  /// Throws std::invalid_argument unless every colour is a fixed-point-free
  /// involution and the order is even and positive.
  ColouredGraph(int colours, int order, std::vector<Vertex> table);

  /// One row per colour, each row listing the neighbours of 0..order-1.
  static ColouredGraph fromRows(const std::vector<std::vector<Vertex>>& rows);

  /// The standard 2-vertex crystallization of S^3 (n = 3) or S^2 (n = 2).
  static ColouredGraph dipoleGraph(int colours = 4);

  int colours() const { return colours_; }
  int dimension() const { return colours_ - 1; }
  int order() const { return order_; }
  ColourSet allColours() const { return fullColourSet(colours_); }

  Vertex neighbour(Vertex v, Colour c) const { return table_[static_cast<std::size_t>(c * order_ + v)]; }
  std::span<const Vertex> row(Colour c) const {
    return {table_.data() + static_cast<std::size_t>(c * order_), static_cast<std::size_t>(order_)};
  }
  const std::vector<Vertex>& table() const { return table_; }

  /// Graph obtained by renaming vertex v to perm[v] and colour c to colours[c].
  ColouredGraph relabelled(std::span<const Vertex> perm, std::span<const Colour> colourPerm = {}) const;

  bool operator==(const ColouredGraph&) const = default;

 private:
  int colours_ = 0;
  int order_ = 0;
  std::vector<Vertex> table_;
};

struct Edge {
  Vertex u;
  Vertex v;
  Colour colour;
  bool operator==(const Edge&) const = default;
};

/// All edges of one colour, ordered by lower endpoint.
std::vector<Edge> edgesOfColour(const ColouredGraph& g, Colour c);

struct ResidueLabels {
  std::vector<int> label;  // residue index of each vertex, numbered by least member
  int count = 0;
};

/// Connected components of the subgraph spanned by the colours in `set`.
ResidueLabels residueLabels(const ColouredGraph& g, ColourSet set);

struct Residue {
  ColourSet colours = 0;
  std::vector<Vertex> members;  // sorted
};

/// Throws std::invalid_argument if `set` names a colour outside the graph.
std::vector<Residue> residues(const ColouredGraph& g, ColourSet set);

int residueCount(const ColouredGraph& g, ColourSet set);

bool isConnected(const ColouredGraph& g);

/// Requires a connected graph (std::invalid_argument otherwise).
bool isBipartite(const ColouredGraph& g);

/// Euler characteristic of the coloured pseudocomplex K(g) computed from
/// residue counts. Requires n = 3 and a connected graph.
int eulerCharacteristic(const ColouredGraph& g);

struct ResidueSurface {
  Colour missing;             // the residue uses every colour except this one
  std::vector<Vertex> members;
  int euler;                  // bicoloured cycles - members/2
};

/// Euler characteristic of every (n)-residue, which is a surface gem when n = 3.
std::vector<ResidueSurface> surfaceCheck(const ColouredGraph& g);

/// True iff every (n)-residue is a sphere gem, i.e. g is a closed 3-manifold gem.
bool representsClosedManifold(const ColouredGraph& g);

bool isContracted(const ColouredGraph& g);
bool isCrystallization(const ColouredGraph& g);

/// Graph connected sum: drops x from g1 and y from g2 and welds the hanging
/// edges by colour. Vertices of g1 (minus x) come first, then those of g2.
ColouredGraph connectedSum(const ColouredGraph& g1, const ColouredGraph& g2, Vertex x, Vertex y);

struct SumSplit {
  std::array<Edge, 4> cutEdges;  // u on the left piece, v on the right piece
  ColouredGraph left;            // capped with one new last vertex
  ColouredGraph right;
};

/// Searches edge quadruples (one edge per colour, lexicographic order) whose
/// removal splits g into two pieces, neither of them a single vertex.
std::optional<SumSplit> findSumSplit(const ColouredGraph& g);

std::string describe(const ColouredGraph& g);

}  // namespace crystal
