#include "crystal/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace crystal {

int colourCount(ColourSet set) { return std::popcount(static_cast<unsigned>(set)); }

std::vector<Colour> coloursOf(ColourSet set) {
  std::vector<Colour> out;
  for (Colour c = 0; c < 8; ++c)
    if (set & colourBit(c)) out.push_back(c);
  return out;
}

ColouredGraph::ColouredGraph(int colours, int order, std::vector<Vertex> table)
    : colours_(colours), order_(order), table_(std::move(table)) {
  if (colours < 3 || colours > 4) throw std::invalid_argument("coloured graph: arity must be 3 or 4 colours");
  if (order <= 0 || order % 2 != 0) throw std::invalid_argument("coloured graph: order must be even and positive");
  if (table_.size() != static_cast<std::size_t>(colours * order))
    throw std::invalid_argument("coloured graph: adjacency table has the wrong size");
  for (Colour c = 0; c < colours; ++c) {
    for (Vertex v = 0; v < order; ++v) {
      Vertex w = neighbour(v, c);
      if (w < 0 || w >= order) throw std::invalid_argument("coloured graph: neighbour out of range");
      if (w == v) throw std::invalid_argument("coloured graph: colour map has a fixed point");
      if (neighbour(w, c) != v) throw std::invalid_argument("coloured graph: colour map is not an involution");
    }
  }
}

ColouredGraph ColouredGraph::fromRows(const std::vector<std::vector<Vertex>>& rows) {
  if (rows.empty()) throw std::invalid_argument("coloured graph: no colours");
  int order = static_cast<int>(rows.front().size());
  std::vector<Vertex> table;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != order) throw std::invalid_argument("coloured graph: ragged rows");
    table.insert(table.end(), r.begin(), r.end());
  }
  return ColouredGraph(static_cast<int>(rows.size()), order, std::move(table));
}

ColouredGraph ColouredGraph::dipoleGraph(int colours) {
  std::vector<Vertex> table;
  for (int c = 0; c < colours; ++c) {
    table.push_back(1);
    table.push_back(0);
  }
  return ColouredGraph(colours, 2, std::move(table));
}

ColouredGraph ColouredGraph::relabelled(std::span<const Vertex> perm, std::span<const Colour> colourPerm) const {
  std::vector<Vertex> table(table_.size());
  for (Colour c = 0; c < colours_; ++c) {
    Colour nc = colourPerm.empty() ? c : colourPerm[static_cast<std::size_t>(c)];
    for (Vertex v = 0; v < order_; ++v)
      table[static_cast<std::size_t>(nc * order_ + perm[static_cast<std::size_t>(v)])] =
          perm[static_cast<std::size_t>(neighbour(v, c))];
  }
  return ColouredGraph(colours_, order_, std::move(table));
}

std::vector<Edge> edgesOfColour(const ColouredGraph& g, Colour c) {
  std::vector<Edge> out;
  for (Vertex v = 0; v < g.order(); ++v) {
    Vertex w = g.neighbour(v, c);
    if (v < w) out.push_back({v, w, c});
  }
  return out;
}

namespace {

void checkColourSet(const ColouredGraph& g, ColourSet set) {
  if (set & ~g.allColours()) throw std::invalid_argument("residues: colour outside the graph's colour set");
}

}  // namespace

ResidueLabels residueLabels(const ColouredGraph& g, ColourSet set) {
  checkColourSet(g, set);
  const auto cols = coloursOf(set);
  ResidueLabels out;
  out.label.assign(static_cast<std::size_t>(g.order()), -1);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (out.label[static_cast<std::size_t>(s)] >= 0) continue;
    out.label[static_cast<std::size_t>(s)] = out.count;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Colour c : cols) {
        Vertex w = g.neighbour(v, c);
        if (out.label[static_cast<std::size_t>(w)] < 0) {
          out.label[static_cast<std::size_t>(w)] = out.count;
          stack.push_back(w);
        }
      }
    }
    ++out.count;
  }
  return out;
}

std::vector<Residue> residues(const ColouredGraph& g, ColourSet set) {
  auto labels = residueLabels(g, set);
  std::vector<Residue> out(static_cast<std::size_t>(labels.count));
  for (auto& r : out) r.colours = set;
  for (Vertex v = 0; v < g.order(); ++v) out[static_cast<std::size_t>(labels.label[static_cast<std::size_t>(v)])].members.push_back(v);
  return out;
}

int residueCount(const ColouredGraph& g, ColourSet set) { return residueLabels(g, set).count; }

bool isConnected(const ColouredGraph& g) { return residueCount(g, g.allColours()) == 1; }

bool isBipartite(const ColouredGraph& g) {
  if (!isConnected(g)) throw std::invalid_argument("isBipartite: graph is disconnected");
  std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
  std::vector<Vertex> stack{0};
  side[0] = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Colour c = 0; c < g.colours(); ++c) {
      Vertex w = g.neighbour(v, c);
      auto& s = side[static_cast<std::size_t>(w)];
      if (s < 0) {
        s = 1 - side[static_cast<std::size_t>(v)];
        stack.push_back(w);
      } else if (s == side[static_cast<std::size_t>(v)]) {
        return false;
      }
    }
  }
  return true;
}

int eulerCharacteristic(const ColouredGraph& g) {
  if (g.colours() != 4) throw std::invalid_argument("eulerCharacteristic: requires a 4-coloured graph");
  if (!isConnected(g)) throw std::invalid_argument("eulerCharacteristic: graph is disconnected");
  int chi = 0;
  for (ColourSet set = 1; set < 15; ++set) {
    int size = colourCount(set);
    if (size == 3) chi += residueCount(g, set);
    if (size == 2) chi -= residueCount(g, set);
  }
  // 1-residues are the 2 * order edges, 0-residues the vertices.
  chi += 2 * g.order() - g.order();
  return chi;
}

std::vector<ResidueSurface> surfaceCheck(const ColouredGraph& g) {
  const ColourSet all = g.allColours();
  std::vector<ResidueSurface> out;
  for (Colour i = 0; i < g.colours(); ++i) {
    const ColourSet rest = static_cast<ColourSet>(all & ~colourBit(i));
    auto big = residueLabels(g, rest);
    std::vector<int> cycles(static_cast<std::size_t>(big.count), 0);
    for (Colour a : coloursOf(rest)) {
      for (Colour b : coloursOf(rest)) {
        if (b <= a) continue;
        auto small = residueLabels(g, static_cast<ColourSet>(colourBit(a) | colourBit(b)));
        std::vector<char> seen(static_cast<std::size_t>(small.count), 0);
        for (Vertex v = 0; v < g.order(); ++v) {
          auto s = static_cast<std::size_t>(small.label[static_cast<std::size_t>(v)]);
          if (!seen[s]) {
            seen[s] = 1;
            ++cycles[static_cast<std::size_t>(big.label[static_cast<std::size_t>(v)])];
          }
        }
      }
    }
    std::vector<ResidueSurface> local(static_cast<std::size_t>(big.count));
    for (Vertex v = 0; v < g.order(); ++v) local[static_cast<std::size_t>(big.label[static_cast<std::size_t>(v)])].members.push_back(v);
    for (std::size_t r = 0; r < local.size(); ++r) {
      local[r].missing = i;
      local[r].euler = cycles[r] - static_cast<int>(local[r].members.size()) / 2;
      out.push_back(std::move(local[r]));
    }
  }
  return out;
}

bool representsClosedManifold(const ColouredGraph& g) {
  if (g.colours() != 4) return false;
  for (const auto& r : surfaceCheck(g))
    if (r.euler != 2) return false;
  return true;
}

bool isContracted(const ColouredGraph& g) {
  for (Colour i = 0; i < g.colours(); ++i)
    if (residueCount(g, static_cast<ColourSet>(g.allColours() & ~colourBit(i))) != 1) return false;
  return true;
}

bool isCrystallization(const ColouredGraph& g) {
  return g.colours() == 4 && isConnected(g) && isContracted(g) && representsClosedManifold(g);
}

ColouredGraph connectedSum(const ColouredGraph& g1, const ColouredGraph& g2, Vertex x, Vertex y) {
  if (g1.colours() != g2.colours()) throw std::invalid_argument("connectedSum: arity mismatch");
  if (x < 0 || x >= g1.order() || y < 0 || y >= g2.order())
    throw std::invalid_argument("connectedSum: vertex out of range");
  const int n1 = g1.order(), n2 = g2.order(), order = n1 + n2 - 2;
  auto map1 = [&](Vertex v) { return v < x ? v : v - 1; };
  auto map2 = [&](Vertex v) { return n1 - 1 + (v < y ? v : v - 1); };
  std::vector<Vertex> table(static_cast<std::size_t>(g1.colours() * order));
  auto set = [&](Colour c, Vertex a, Vertex b) { table[static_cast<std::size_t>(c * order + a)] = b; };
  for (Colour c = 0; c < g1.colours(); ++c) {
    const Vertex a = g1.neighbour(x, c), b = g2.neighbour(y, c);
    for (Vertex v = 0; v < n1; ++v) {
      if (v == x) continue;
      Vertex w = g1.neighbour(v, c);
      set(c, map1(v), w == x ? map2(b) : map1(w));
    }
    for (Vertex v = 0; v < n2; ++v) {
      if (v == y) continue;
      Vertex w = g2.neighbour(v, c);
      set(c, map2(v), w == y ? map1(a) : map2(w));
    }
  }
  return ColouredGraph(g1.colours(), order, std::move(table));
}

namespace {

// Builds the capped piece on `side` vertices: the side's vertices in order,
// then one new vertex taking the place of the far endpoints of the cut edges.
ColouredGraph capPiece(const ColouredGraph& g, const std::vector<int>& comp, int side,
                       const std::array<Edge, 4>& cut) {
  std::vector<Vertex> index(static_cast<std::size_t>(g.order()), -1);
  int count = 0;
  for (Vertex v = 0; v < g.order(); ++v)
    if (comp[static_cast<std::size_t>(v)] == side) index[static_cast<std::size_t>(v)] = count++;
  const int order = count + 1;
  const Vertex cap = count;
  std::vector<Vertex> table(static_cast<std::size_t>(4 * order));
  for (Colour c = 0; c < 4; ++c) {
    for (Vertex v = 0; v < g.order(); ++v) {
      Vertex iv = index[static_cast<std::size_t>(v)];
      if (iv < 0) continue;
      Vertex w = g.neighbour(v, c);
      Vertex iw = index[static_cast<std::size_t>(w)];
      table[static_cast<std::size_t>(c * order + iv)] = iw < 0 ? cap : iw;
    }
    const Edge& e = cut[static_cast<std::size_t>(c)];
    Vertex inner = comp[static_cast<std::size_t>(e.u)] == side ? e.u : e.v;
    table[static_cast<std::size_t>(c * order + cap)] = index[static_cast<std::size_t>(inner)];
  }
  return ColouredGraph(4, order, std::move(table));
}

}  // namespace

std::optional<SumSplit> findSumSplit(const ColouredGraph& g) {
  if (g.colours() != 4) throw std::invalid_argument("findSumSplit: requires a 4-coloured graph");
  std::array<std::vector<Edge>, 4> edges;
  for (Colour c = 0; c < 4; ++c) edges[static_cast<std::size_t>(c)] = edgesOfColour(g, c);
  const int order = g.order();
  std::vector<int> comp(static_cast<std::size_t>(order));
  std::vector<Vertex> stack;
  std::array<Edge, 4> cut{};

  auto isCut = [&](Vertex v, Colour c) {
    const Edge& e = cut[static_cast<std::size_t>(c)];
    return v == e.u || v == e.v;
  };

  for (const Edge& e0 : edges[0]) {
    cut[0] = e0;
    for (const Edge& e1 : edges[1]) {
      cut[1] = e1;
      for (const Edge& e2 : edges[2]) {
        cut[2] = e2;
        for (const Edge& e3 : edges[3]) {
          cut[3] = e3;
          std::fill(comp.begin(), comp.end(), -1);
          // Flood from e0.u without crossing cut edges.
          comp[static_cast<std::size_t>(e0.u)] = 0;
          stack.assign(1, e0.u);
          int size = 1;
          while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Colour c = 0; c < 4; ++c) {
              if (isCut(v, c)) continue;
              Vertex w = g.neighbour(v, c);
              if (comp[static_cast<std::size_t>(w)] < 0) {
                comp[static_cast<std::size_t>(w)] = 0;
                stack.push_back(w);
                ++size;
              }
            }
          }
          if (comp[static_cast<std::size_t>(e0.v)] == 0) continue;
          if (size < 3 || order - size < 3) continue;
          bool crossing = true;
          for (const Edge& e : cut)
            crossing = crossing && ((comp[static_cast<std::size_t>(e.u)] == 0) != (comp[static_cast<std::size_t>(e.v)] == 0));
          if (!crossing) continue;
          for (auto& x : comp)
            if (x < 0) x = 1;
          // The remainder must be connected too.
          {
            std::vector<char> seen(static_cast<std::size_t>(order), 0);
            Vertex start = e0.v;
            seen[static_cast<std::size_t>(start)] = 1;
            stack.assign(1, start);
            int rest = 1;
            while (!stack.empty()) {
              Vertex v = stack.back();
              stack.pop_back();
              for (Colour c = 0; c < 4; ++c) {
                if (isCut(v, c)) continue;
                Vertex w = g.neighbour(v, c);
                if (!seen[static_cast<std::size_t>(w)]) {
                  seen[static_cast<std::size_t>(w)] = 1;
                  stack.push_back(w);
                  ++rest;
                }
              }
            }
            if (rest != order - size) continue;
          }
          SumSplit split{cut, capPiece(g, comp, 0, cut), capPiece(g, comp, 1, cut)};
          for (auto& e : split.cutEdges)
            if (comp[static_cast<std::size_t>(e.u)] != 0) std::swap(e.u, e.v);
          return split;
        }
      }
    }
  }
  return std::nullopt;
}

std::string describe(const ColouredGraph& g) {
  std::ostringstream out;
  for (Colour c = 0; c < g.colours(); ++c) {
    if (c) out << '/';
    for (Vertex v = 0; v < g.order(); ++v) {
      if (v) out << ',';
      out << g.neighbour(v, c) + 1;
    }
  }
  return out.str();
}

}  // namespace crystal
