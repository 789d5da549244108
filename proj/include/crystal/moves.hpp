#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "crystal/graph.hpp"

namespace crystal {

/// Raised when a move is applied to a configuration that does not support it.
class MoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two vertices joined by exactly the edges coloured in `colours` and lying
/// in different residues of the complementary colour set.
struct Dipole {
  Vertex x;
  Vertex y;
  ColourSet colours;
  bool operator==(const Dipole&) const = default;
};

/// Proper dipoles of type k, ordered by (x, y) with x < y.
std::vector<Dipole> findDipoles(const ColouredGraph& g, int k);

ColouredGraph deleteDipole(const ColouredGraph& g, const Dipole& d);

/// Inserts a dipole x, y (appended as the last two vertices) joined by the
/// colours in `colours`. `site` holds one edge for every other colour c:
/// its u end is reattached to x and its v end to y. Rejected unless the new
/// pair is a proper dipole.
ColouredGraph addDipole(const ColouredGraph& g, ColourSet colours, std::span<const Edge> site);

/// An (m,n)-generalized dipole: the {a,b}-cycle `cycle` = x0,x1..xm and the
/// complementary {h,k}-cycle `coCycle` = x0,y1..yn meeting only in x0.
/// x1 is the a-neighbour and y1 the h-neighbour of x0.
struct GenDipole {
  Colour a, b, h, k;
  std::vector<Vertex> cycle;
  std::vector<Vertex> coCycle;
  int m() const { return static_cast<int>(cycle.size()) - 1; }
  int n() const { return static_cast<int>(coCycle.size()) - 1; }
  Vertex base() const { return cycle.front(); }
};

/// Generalized dipoles whose first cycle is {0,i}-coloured with m <= mMax and
/// n <= nMax, ordered by (m*n, base vertex).
std::vector<GenDipole> findGenDipoles(const ColouredGraph& g, Colour i, int mMax, int nMax);

/// Grid cancellation of a generalized dipole. The result has order
/// order - (m + n + 1) + m*n.
ColouredGraph cancelGenDipole(const ColouredGraph& g, const GenDipole& d);

enum class RhoKind { rho2 = 2, rho3 = 3 };

/// Two i-coloured edges, named by their lower endpoints, sharing two (rho2)
/// or three (rho3) bicoloured cycles.
struct RhoPair {
  Colour colour;
  Vertex e;
  Vertex f;
  RhoKind kind;
  bool operator==(const RhoPair&) const = default;
};

std::vector<RhoPair> findRhoPairs(const ColouredGraph& g);

/// Replaces the two edges by the rewiring that splits their shared
/// bicoloured cycles. Throws MoveError if the result would be disconnected.
ColouredGraph switchRhoPair(const ColouredGraph& g, const RhoPair& r);

bool isRigid(const ColouredGraph& g);

struct RigidifyResult {
  ColouredGraph graph;
  int rho3Count = 0;
  /// rho3 switches after which the graph kept its bipartiteness (orientable handle).
  int orientableHandles = 0;
};

/// Deletes proper dipoles and switches rho-pairs (dipoles first, then rho2,
/// then rho3; rescanning after every change) until g is a rigid
/// crystallization. Throws MoveError if the iteration cap is exceeded or
/// only disconnecting rho3 pairs remain.
RigidifyResult rigidify(const ColouredGraph& g);

}  // namespace crystal
