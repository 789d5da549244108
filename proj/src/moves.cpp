#include "crystal/moves.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace crystal {

namespace {

std::size_t at(Colour c, int order, Vertex v) { return static_cast<std::size_t>(c * order + v); }

ColourSet joiningColours(const ColouredGraph& g, Vertex x, Vertex y) {
  ColourSet set = 0;
  for (Colour c = 0; c < g.colours(); ++c)
    if (g.neighbour(x, c) == y) set |= colourBit(c);
  return set;
}

// Lazily computed residue labelling for every colour subset.
class ResidueCache {
 public:
  explicit ResidueCache(const ColouredGraph& g) : g_(g) {}
  const ResidueLabels& get(ColourSet set) {
    auto it = cache_.find(set);
    if (it == cache_.end()) it = cache_.emplace(set, residueLabels(g_, set)).first;
    return it->second;
  }

 private:
  const ColouredGraph& g_;
  std::map<ColourSet, ResidueLabels> cache_;
};

bool isProperDipole(const ColouredGraph& g, ResidueCache& cache, Vertex x, Vertex y, ColourSet set) {
  const int k = colourCount(set);
  if (k == 0 || k >= g.colours()) return false;
  const auto& labels = cache.get(static_cast<ColourSet>(g.allColours() & ~set));
  return labels.label[static_cast<std::size_t>(x)] != labels.label[static_cast<std::size_t>(y)];
}

// Removes the vertices flagged in `drop`, keeping the others in order.
ColouredGraph compact(int colours, int order, const std::vector<Vertex>& table, const std::vector<char>& drop) {
  std::vector<Vertex> index(static_cast<std::size_t>(order), -1);
  int count = 0;
  for (Vertex v = 0; v < order; ++v)
    if (!drop[static_cast<std::size_t>(v)]) index[static_cast<std::size_t>(v)] = count++;
  std::vector<Vertex> out(static_cast<std::size_t>(colours * count));
  for (Colour c = 0; c < colours; ++c)
    for (Vertex v = 0; v < order; ++v)
      if (index[static_cast<std::size_t>(v)] >= 0)
        out[at(c, count, index[static_cast<std::size_t>(v)])] = index[static_cast<std::size_t>(table[at(c, order, v)])];
  return ColouredGraph(colours, count, std::move(out));
}

std::vector<Vertex> bicolouredCycle(const ColouredGraph& g, Vertex start, Colour first, Colour second) {
  std::vector<Vertex> cycle{start};
  Vertex v = start;
  Colour c = first;
  while (true) {
    v = g.neighbour(v, c);
    if (v == start) break;
    cycle.push_back(v);
    c = c == first ? second : first;
  }
  return cycle;
}

std::array<Colour, 2> complementPair(Colour a, Colour b) {
  std::array<Colour, 2> out{};
  int n = 0;
  for (Colour c = 0; c < 4; ++c)
    if (c != a && c != b) out[static_cast<std::size_t>(n++)] = c;
  return out;
}

}  // namespace

std::vector<Dipole> findDipoles(const ColouredGraph& g, int k) {
  if (k < 1 || k > g.dimension()) throw std::invalid_argument("findDipoles: type out of range");
  ResidueCache cache(g);
  std::vector<Dipole> out;
  for (Vertex x = 0; x < g.order(); ++x) {
    std::vector<Vertex> seen;
    for (Colour c = 0; c < g.colours(); ++c) {
      Vertex y = g.neighbour(x, c);
      if (y <= x || std::find(seen.begin(), seen.end(), y) != seen.end()) continue;
      seen.push_back(y);
      ColourSet set = joiningColours(g, x, y);
      if (colourCount(set) == k && isProperDipole(g, cache, x, y, set)) out.push_back({x, y, set});
    }
  }
  std::sort(out.begin(), out.end(), [](const Dipole& a, const Dipole& b) { return std::pair(a.x, a.y) < std::pair(b.x, b.y); });
  return out;
}

ColouredGraph deleteDipole(const ColouredGraph& g, const Dipole& d) {
  const int order = g.order();
  if (d.x < 0 || d.y < 0 || d.x >= order || d.y >= order || d.x == d.y) throw MoveError("deleteDipole: bad vertices");
  if (joiningColours(g, d.x, d.y) != d.colours) throw MoveError("deleteDipole: colours do not match the joining edges");
  ResidueCache cache(g);
  if (!isProperDipole(g, cache, d.x, d.y, d.colours)) throw MoveError("deleteDipole: not a proper dipole");
  std::vector<Vertex> table = g.table();
  for (Colour c = 0; c < g.colours(); ++c) {
    if (d.colours & colourBit(c)) continue;
    Vertex a = g.neighbour(d.x, c), b = g.neighbour(d.y, c);
    table[at(c, order, a)] = b;
    table[at(c, order, b)] = a;
  }
  std::vector<char> drop(static_cast<std::size_t>(order), 0);
  drop[static_cast<std::size_t>(d.x)] = drop[static_cast<std::size_t>(d.y)] = 1;
  return compact(g.colours(), order, table, drop);
}

ColouredGraph addDipole(const ColouredGraph& g, ColourSet colours, std::span<const Edge> site) {
  const int k = colourCount(colours);
  if (k < 1 || k > g.dimension() || (colours & ~g.allColours())) throw MoveError("addDipole: bad colour set");
  const int order = g.order() + 2;
  const Vertex x = g.order(), y = g.order() + 1;
  std::vector<Vertex> table(static_cast<std::size_t>(g.colours() * order));
  for (Colour c = 0; c < g.colours(); ++c)
    for (Vertex v = 0; v < g.order(); ++v) table[at(c, order, v)] = g.neighbour(v, c);
  std::vector<char> used(static_cast<std::size_t>(g.colours()), 0);
  for (const Edge& e : site) {
    if (e.colour < 0 || e.colour >= g.colours() || (colours & colourBit(e.colour)) || used[static_cast<std::size_t>(e.colour)])
      throw MoveError("addDipole: site edge has an unexpected colour");
    if (e.u < 0 || e.u >= g.order() || g.neighbour(e.u, e.colour) != e.v)
      throw MoveError("addDipole: site edge is not an edge of the graph");
    used[static_cast<std::size_t>(e.colour)] = 1;
    table[at(e.colour, order, e.u)] = x;
    table[at(e.colour, order, x)] = e.u;
    table[at(e.colour, order, e.v)] = y;
    table[at(e.colour, order, y)] = e.v;
  }
  for (Colour c = 0; c < g.colours(); ++c) {
    if (colours & colourBit(c)) {
      table[at(c, order, x)] = y;
      table[at(c, order, y)] = x;
    } else if (!used[static_cast<std::size_t>(c)]) {
      throw MoveError("addDipole: site is missing an edge");
    }
  }
  ColouredGraph out(g.colours(), order, std::move(table));
  ResidueCache cache(out);
  if (!isProperDipole(out, cache, x, y, colours)) throw MoveError("addDipole: site does not produce a proper dipole");
  return out;
}

std::vector<GenDipole> findGenDipoles(const ColouredGraph& g, Colour i, int mMax, int nMax) {
  if (g.colours() != 4 || i < 1 || i > 3) throw std::invalid_argument("findGenDipoles: need a 4-coloured graph and i in 1..3");
  const auto [h, k] = complementPair(0, i);
  std::vector<GenDipole> out;
  std::vector<int> mark(static_cast<std::size_t>(g.order()), -1);
  for (Vertex x0 = 0; x0 < g.order(); ++x0) {
    auto cycle = bicolouredCycle(g, x0, 0, i);
    if (static_cast<int>(cycle.size()) - 1 > mMax) continue;
    auto coCycle = bicolouredCycle(g, x0, h, k);
    if (static_cast<int>(coCycle.size()) - 1 > nMax) continue;
    for (std::size_t t = 1; t < cycle.size(); ++t) mark[static_cast<std::size_t>(cycle[t])] = x0;
    bool disjoint = true;
    for (std::size_t t = 1; t < coCycle.size(); ++t) disjoint = disjoint && mark[static_cast<std::size_t>(coCycle[t])] != x0;
    if (!disjoint) continue;
    out.push_back(GenDipole{0, i, h, k, std::move(cycle), std::move(coCycle)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const GenDipole& p, const GenDipole& q) { return p.m() * p.n() < q.m() * q.n(); });
  return out;
}

ColouredGraph cancelGenDipole(const ColouredGraph& g, const GenDipole& d) {
  const int m = d.m(), n = d.n();
  if (g.colours() != 4 || m < 1 || n < 1) throw MoveError("cancelGenDipole: malformed dipole");
  if (bicolouredCycle(g, d.base(), d.a, d.b) != d.cycle || bicolouredCycle(g, d.base(), d.h, d.k) != d.coCycle)
    throw MoveError("cancelGenDipole: dipole does not match the graph");
  const int order = g.order();
  // role: 0 outside, 1 base, 2 on the {a,b} cycle, 3 on the {h,k} cycle
  std::vector<int> role(static_cast<std::size_t>(order), 0), pos(static_cast<std::size_t>(order), 0);
  role[static_cast<std::size_t>(d.base())] = 1;
  for (int r = 1; r <= m; ++r) {
    auto v = static_cast<std::size_t>(d.cycle[static_cast<std::size_t>(r)]);
    role[v] = 2;
    pos[v] = r;
  }
  for (int s = 1; s <= n; ++s) {
    auto v = static_cast<std::size_t>(d.coCycle[static_cast<std::size_t>(s)]);
    if (role[v] != 0) throw MoveError("cancelGenDipole: cycles share more than the base vertex");
    role[v] = 3;
    pos[v] = s;
  }

  std::vector<Vertex> index(static_cast<std::size_t>(order), -1);
  int outside = 0;
  for (Vertex v = 0; v < order; ++v)
    if (role[static_cast<std::size_t>(v)] == 0) index[static_cast<std::size_t>(v)] = outside++;
  const int newOrder = outside + m * n;
  auto grid = [&](int r, int s) { return outside + (r - 1) * n + (s - 1); };

  // New endpoint of the external c-edge at a cycle vertex w.
  auto image = [&](Vertex w, Colour c) -> Vertex {
    const auto iw = static_cast<std::size_t>(w);
    if (role[iw] == 2) return grid(pos[iw], c == d.h ? 1 : n);
    return grid(c == d.a ? 1 : m, pos[iw]);
  };
  auto target = [&](Vertex w, Colour c) -> Vertex {
    return role[static_cast<std::size_t>(w)] == 0 ? index[static_cast<std::size_t>(w)] : image(w, c);
  };

  std::vector<Vertex> table(static_cast<std::size_t>(4 * newOrder));
  for (Colour c = 0; c < 4; ++c) {
    for (Vertex v = 0; v < order; ++v)
      if (role[static_cast<std::size_t>(v)] == 0) table[at(c, newOrder, index[static_cast<std::size_t>(v)])] = target(g.neighbour(v, c), c);
    for (int r = 1; r <= m; ++r) {
      for (int s = 1; s <= n; ++s) {
        const Vertex xr = d.cycle[static_cast<std::size_t>(r)], ys = d.coCycle[static_cast<std::size_t>(s)];
        Vertex result;
        if (c == d.a || c == d.b) {
          Vertex w = g.neighbour(xr, c);
          result = role[static_cast<std::size_t>(w)] == 2 ? grid(pos[static_cast<std::size_t>(w)], s) : target(g.neighbour(ys, c), c);
        } else {
          Vertex w = g.neighbour(ys, c);
          result = role[static_cast<std::size_t>(w)] == 3 ? grid(r, pos[static_cast<std::size_t>(w)]) : target(g.neighbour(xr, c), c);
        }
        table[at(c, newOrder, grid(r, s))] = result;
      }
    }
  }
  try {
    return ColouredGraph(4, newOrder, std::move(table));
  } catch (const std::invalid_argument& e) {
    throw MoveError(std::string("cancelGenDipole: result is not properly coloured: ") + e.what());
  }
}

namespace {

struct CycleLabels {
  // labels[i][j] is the {i,j}-cycle labelling (unused on the diagonal)
  std::array<std::array<std::vector<int>, 4>, 4> labels;
  explicit CycleLabels(const ColouredGraph& g) {
    for (Colour i = 0; i < g.colours(); ++i)
      for (Colour j = i + 1; j < g.colours(); ++j) {
        labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            residueLabels(g, static_cast<ColourSet>(colourBit(i) | colourBit(j))).label;
        labels[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
  }
  int of(Colour i, Colour j, Vertex v) const {
    return labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(v)];
  }
};

int cyclesThroughColour(const ColouredGraph& g, Colour i) {
  int total = 0;
  for (Colour j = 0; j < g.colours(); ++j)
    if (j != i) total += residueCount(g, static_cast<ColourSet>(colourBit(i) | colourBit(j)));
  return total;
}

ColouredGraph rewire(const ColouredGraph& g, Colour i, Vertex a, Vertex b, Vertex c, Vertex d) {
  // Replaces i-edges (a,b), (c,d) by (a,c), (b,d).
  std::vector<Vertex> table = g.table();
  const int order = g.order();
  table[at(i, order, a)] = c;
  table[at(i, order, c)] = a;
  table[at(i, order, b)] = d;
  table[at(i, order, d)] = b;
  return ColouredGraph(g.colours(), order, std::move(table));
}

}  // namespace

std::vector<RhoPair> findRhoPairs(const ColouredGraph& g) {
  CycleLabels cycles(g);
  std::vector<RhoPair> out;
  for (Colour i = 0; i < g.colours(); ++i) {
    auto edges = edgesOfColour(g, i);
    for (std::size_t p = 0; p < edges.size(); ++p) {
      for (std::size_t q = p + 1; q < edges.size(); ++q) {
        int shared = 0;
        for (Colour j = 0; j < g.colours(); ++j)
          if (j != i && cycles.of(i, j, edges[p].u) == cycles.of(i, j, edges[q].u)) ++shared;
        if (shared >= 2) out.push_back({i, edges[p].u, edges[q].u, shared == 2 ? RhoKind::rho2 : RhoKind::rho3});
      }
    }
  }
  return out;
}

ColouredGraph switchRhoPair(const ColouredGraph& g, const RhoPair& r) {
  const Colour i = r.colour;
  if (i < 0 || i >= g.colours() || r.e < 0 || r.f < 0 || r.e >= g.order() || r.f >= g.order())
    throw MoveError("switchRhoPair: bad pair");
  const Vertex a = r.e, b = g.neighbour(a, i), c = r.f, d = g.neighbour(c, i);
  if (a == c || a == d) throw MoveError("switchRhoPair: edges coincide");
  auto parallel = rewire(g, i, a, b, c, d);  // (a,c), (b,d)
  auto crossed = rewire(g, i, a, b, d, c);   // (a,d), (b,c)
  const int pc = cyclesThroughColour(parallel, i), cc = cyclesThroughColour(crossed, i);
  const ColouredGraph& chosen = pc >= cc ? parallel : crossed;
  if (!isConnected(chosen)) throw MoveError("switchRhoPair: switching disconnects the graph");
  return chosen;
}

bool isRigid(const ColouredGraph& g) { return findRhoPairs(g).empty(); }

namespace {

std::optional<Dipole> firstDipole(const ColouredGraph& g) {
  for (int k = 1; k <= g.dimension(); ++k) {
    auto ds = findDipoles(g, k);
    if (!ds.empty()) return ds.front();
  }
  return std::nullopt;
}

}  // namespace

RigidifyResult rigidify(const ColouredGraph& start) {
  if (start.colours() != 4) throw std::invalid_argument("rigidify: requires a 4-coloured graph");
  if (!isConnected(start)) throw std::invalid_argument("rigidify: graph is disconnected");
  RigidifyResult result{start, 0, 0};
  ColouredGraph& g = result.graph;
  const long cap = 10L * start.order() + 10;
  for (long step = 0;; ++step) {
    if (step > cap) throw MoveError("rigidify: iteration cap exceeded");
    if (auto d = firstDipole(g)) {
      g = deleteDipole(g, *d);
      continue;
    }
    auto pairs = findRhoPairs(g);
    if (pairs.empty()) break;
    auto rho2 = std::find_if(pairs.begin(), pairs.end(), [](const RhoPair& r) { return r.kind == RhoKind::rho2; });
    if (rho2 != pairs.end()) {
      g = switchRhoPair(g, *rho2);
      continue;
    }
    bool switched = false;
    for (const auto& r : pairs) {
      try {
        const bool before = isBipartite(g);
        ColouredGraph next = switchRhoPair(g, r);
        if (isBipartite(next) == before) ++result.orientableHandles;
        g = std::move(next);
        ++result.rho3Count;
        switched = true;
        break;
      } catch (const MoveError&) {
      }
    }
    if (!switched) throw MoveError("rigidify: only disconnecting rho3 pairs remain");
  }
  return result;
}

}  // namespace crystal
