#include "crystal/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "crystal/moves.hpp"

namespace crystal {

namespace {

constexpr int kUnset = -1;

// Marks with generation stamps, cleared in O(1).
class StampSet {
 public:
  explicit StampSet(std::size_t n) : stamp_(n, 0) {}
  void clear() { ++now_; }
  // true if x was already present
  bool insert(int x) {
    auto& s = stamp_[static_cast<std::size_t>(x)];
    if (s == now_) return true;
    s = now_;
    return false;
  }

 private:
  std::vector<unsigned> stamp_;
  unsigned now_ = 1;
};

// Enumerates rigid 3-coloured sphere gems in breadth-first labelled form:
// vertex 0 is the root, vertices are numbered in discovery order, and slots
// (v, c) are filled in order of v then c. Every colour-isomorphism class
// appears, possibly several times; duplicates are removed by code.
class SeedSearch {
 public:
  explicit SeedSearch(int n)
      : n_(n), side_(static_cast<std::size_t>(n), 0), marks_(static_cast<std::size_t>(n)) {
    for (auto& row : nb_) row.assign(static_cast<std::size_t>(n), kUnset);
  }

  std::vector<SphereGem> run() {
    discovered_ = 1;
    recurse(0);
    std::vector<SphereGem> out;
    for (const auto& c : found_) out.push_back({decode(c), true});
    return out;
  }

 private:
  int at(Colour c, Vertex v) const { return nb_[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)]; }
  void set(Colour c, Vertex v, Vertex w) {
    nb_[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)] = w;
    nb_[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)] = v;
  }
  void unset(Colour c, Vertex v, Vertex w) {
    nb_[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)] = kUnset;
    nb_[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)] = kUnset;
  }

  void recurse(int slot) {
    while (slot < 3 * discovered_ && at(slot % 3, slot / 3) != kUnset) ++slot;
    if (slot == 3 * discovered_) {
      if (discovered_ == n_) leaf();
      return;
    }
    const Vertex v = slot / 3;
    const Colour c = slot % 3;
    for (Vertex u = v + 1; u < discovered_; ++u) {
      if (at(c, u) != kUnset || side_[static_cast<std::size_t>(u)] == side_[static_cast<std::size_t>(v)]) continue;
      tryEdge(slot, v, u, c);
    }
    if (discovered_ < n_) {
      const Vertex u = discovered_++;
      side_[static_cast<std::size_t>(u)] = !side_[static_cast<std::size_t>(v)];
      tryEdge(slot, v, u, c);
      --discovered_;
    }
  }

  void tryEdge(int slot, Vertex v, Vertex u, Colour c) {
    set(c, v, u);
    ++edges_;
    if (rhoFree(v, c) && planar()) recurse(slot + 1);
    --edges_;
    unset(c, v, u);
  }

  // Vertices of the maximal {x,y}-path or cycle through u, in order;
  // `closed` is set when it is a cycle.
  std::vector<Vertex> path(Colour x, Colour y, Vertex u, bool& closed) const {
    std::vector<Vertex> forward{u};
    Vertex w = u;
    Colour c = x;
    closed = false;
    while (true) {
      Vertex next = at(c, w);
      if (next == kUnset) break;
      if (next == u) {
        closed = true;
        return forward;
      }
      forward.push_back(next);
      w = next;
      c = c == x ? y : x;
    }
    std::vector<Vertex> backward;
    w = u;
    c = y;
    while (true) {
      Vertex next = at(c, w);
      if (next == kUnset) break;
      backward.push_back(next);
      w = next;
      c = c == x ? y : x;
    }
    std::reverse(backward.begin(), backward.end());
    backward.insert(backward.end(), forward.begin(), forward.end());
    return backward;
  }

  Vertex pathMin(Colour x, Colour y, Vertex u) const {
    bool closed;
    auto p = path(x, y, u, closed);
    return *std::min_element(p.begin(), p.end());
  }

  // No two edges of one colour lie on a common path of each of their two
  // bicoloured colour pairs.
  bool rhoFree(Vertex v, Colour c) {
    for (Colour d = 0; d < 3; ++d) {
      if (d == c) continue;
      bool closed;
      auto p = path(c, d, v, closed);
      const Colour third = 3 - c - d;
      for (Colour x : {c, d}) {
        marks_.clear();
        for (Vertex u : p) {
          Vertex w = at(x, u);
          if (w == kUnset || w < u) continue;  // visit each x-edge once, from its lower end
          if (std::find(p.begin(), p.end(), w) == p.end()) continue;
          if (marks_.insert(pathMin(x, third, u))) return false;
        }
      }
    }
    return true;
  }

  // The partial surface glued from the discovered triangles embeds in the
  // sphere only if it is planar: chi = 2 - (number of boundary circles).
  bool planar() {
    const int n = discovered_;
    int vertices = 0;  // closed cycles plus open paths, over all colour pairs
    int openCount = 0;
    std::array<std::vector<int>, 3> openId;  // indexed by the colour missing from the pair
    for (Colour missing = 0; missing < 3; ++missing) {
      const Colour x = missing == 0 ? 1 : 0, y = missing == 2 ? 1 : 2;
      auto& ids = openId[static_cast<std::size_t>(missing)];
      ids.assign(static_cast<std::size_t>(n), -2);
      for (Vertex s = 0; s < n; ++s) {
        if (ids[static_cast<std::size_t>(s)] != -2) continue;
        bool closed;
        auto p = path(x, y, s, closed);
        const int id = closed ? -1 : openCount++;
        for (Vertex u : p) ids[static_cast<std::size_t>(u)] = id;
        ++vertices;
      }
    }
    // boundary circles: open paths linked through missing sides
    parent_.resize(static_cast<std::size_t>(openCount));
    for (int k = 0; k < openCount; ++k) parent_[static_cast<std::size_t>(k)] = k;
    int circles = openCount;
    for (Vertex v = 0; v < n; ++v)
      for (Colour c = 0; c < 3; ++c) {
        if (at(c, v) != kUnset) continue;
        // the side opposite c joins the paths missing the two other colours
        const Colour d = (c + 1) % 3, e = (c + 2) % 3;
        int a = find(openId[static_cast<std::size_t>(d)][static_cast<std::size_t>(v)]);
        int b = find(openId[static_cast<std::size_t>(e)][static_cast<std::size_t>(v)]);
        if (a != b) {
          parent_[static_cast<std::size_t>(a)] = b;
          --circles;
        }
      }
    const int chi = vertices - 2 * n + edges_;
    return chi == 2 - circles;
  }

  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) x = parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
    return x;
  }

  void leaf() {
    std::vector<Vertex> table;
    table.reserve(static_cast<std::size_t>(3 * n_));
    for (const auto& row : nb_) table.insert(table.end(), row.begin(), row.end());
    ColouredGraph g(3, n_, std::move(table));
    if (eulerCharacteristicSurface(g) != 2 || !isRigid(g)) return;
    found_.insert(code(g));
  }

  static int eulerCharacteristicSurface(const ColouredGraph& g) {
    int cycles = 0;
    for (ColourSet set : {ColourSet{3}, ColourSet{5}, ColourSet{6}}) cycles += residueCount(g, set);
    return cycles - g.order() / 2;
  }

  int n_;
  std::array<std::vector<Vertex>, 3> nb_;
  std::vector<char> side_;
  int discovered_ = 0;
  int edges_ = 0;
  StampSet marks_;
  std::vector<int> parent_;
  std::set<Code> found_;
};

// Depth-first completion of a seed by a colour-3 perfect matching.
class Extension {
 public:
  explicit Extension(const ColouredGraph& seed)
      : seed_(seed), n_(seed.order()), mate_(static_cast<std::size_t>(n_), kUnset), marks_(static_cast<std::size_t>(n_)) {
    for (Colour c = 0; c < 3; ++c) {
      const Colour a = c == 0 ? 1 : 0, b = c == 2 ? 1 : 2;
      target_[static_cast<std::size_t>(c)] = residueCount(seed, static_cast<ColourSet>(colourBit(a) | colourBit(b)));
    }
    for (Colour x = 0; x < 3; ++x)
      for (Colour y = 0; y < 3; ++y)
        if (x != y) seedCycle_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
            residueLabels(seed, static_cast<ColourSet>(colourBit(x) | colourBit(y))).label;
  }

  std::vector<ColouredGraph> run() {
    recurse(0, n_ / 2);
    std::vector<ColouredGraph> out;
    for (const auto& c : found_) out.push_back(decode(c));
    return out;
  }

 private:
  Vertex mate(Vertex v) const { return mate_[static_cast<std::size_t>(v)]; }

  void recurse(Vertex from, int remaining) {
    Vertex v = from;
    while (v < n_ && mate(v) != kUnset) ++v;
    if (v == n_) {
      leaf();
      return;
    }
    for (Vertex w = v + 1; w < n_; ++w) {
      if (mate(w) != kUnset) continue;
      if (n_ > 2 && adjacentInSeed(v, w)) continue;  // parallel edges force a rho-pair
      mate_[static_cast<std::size_t>(v)] = w;
      mate_[static_cast<std::size_t>(w)] = v;
      std::array<int, 3> closedBefore = closed_;
      if (accept(v, remaining - 1)) recurse(v + 1, remaining - 1);
      closed_ = closedBefore;
      mate_[static_cast<std::size_t>(v)] = kUnset;
      mate_[static_cast<std::size_t>(w)] = kUnset;
    }
  }

  bool adjacentInSeed(Vertex v, Vertex w) const {
    for (Colour c = 0; c < 3; ++c)
      if (seed_.neighbour(v, c) == w) return true;
    return false;
  }

  Vertex step(Vertex u, Colour c) const { return c == 3 ? mate(u) : seed_.neighbour(u, c); }

  // Vertices of the {c,3}-path or cycle through u, in order; `closed` set
  // when it is a cycle.
  std::vector<Vertex> path(Colour c, Vertex u, bool& closed) const {
    std::vector<Vertex> forward{u};
    Vertex w = u;
    Colour x = c;
    closed = false;
    while (true) {
      Vertex next = step(w, x);
      if (next == kUnset) break;
      if (next == u) {
        closed = true;
        return forward;
      }
      forward.push_back(next);
      w = next;
      x = x == c ? 3 : c;
    }
    std::vector<Vertex> backward;
    w = u;
    x = 3;
    while (true) {
      Vertex next = step(w, x);
      if (next == kUnset) break;
      backward.push_back(next);
      w = next;
      x = x == c ? 3 : c;
    }
    std::reverse(backward.begin(), backward.end());
    backward.insert(backward.end(), forward.begin(), forward.end());
    return backward;
  }

  Vertex pathMin(Colour c, Vertex u) const {
    bool closed;
    auto p = path(c, u, closed);
    return *std::min_element(p.begin(), p.end());
  }

  bool accept(Vertex v, int remaining) {
    for (Colour c = 0; c < 3; ++c) {
      bool closed;
      auto p = path(c, v, closed);
      if (closed) ++closed_[static_cast<std::size_t>(c)];
      const int have = closed_[static_cast<std::size_t>(c)], want = target_[static_cast<std::size_t>(c)];
      if (remaining > 0 ? (have >= want || have + remaining < want) : have != want) return false;

      // c-edges sharing this path must lie on distinct seed cycles
      for (Colour e = 0; e < 3; ++e) {
        if (e == c) continue;
        const auto& cyc = seedCycle_[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)];
        marks_.clear();
        for (std::size_t t = 0; t < p.size(); ++t) {
          Vertex u = p[t], w = seed_.neighbour(u, c);
          if (w < u || std::find(p.begin(), p.end(), w) == p.end()) continue;
          if (marks_.insert(cyc[static_cast<std::size_t>(u)])) return false;
        }
      }
      // 3-edges sharing this path must lie on distinct {e,3}-paths
      for (Colour e = 0; e < 3; ++e) {
        if (e == c) continue;
        marks_.clear();
        for (Vertex u : p) {
          Vertex w = mate(u);
          if (w == kUnset || w < u || std::find(p.begin(), p.end(), w) == p.end()) continue;
          if (marks_.insert(pathMin(e, u))) return false;
        }
      }
    }
    return true;
  }

  void leaf() {
    std::vector<Vertex> table = seed_.table();
    table.insert(table.end(), mate_.begin(), mate_.end());
    ColouredGraph g(4, n_, std::move(table));
    if (!isCrystallization(g) || !isRigid(g)) return;
    found_.insert(code(g));
  }

  const ColouredGraph& seed_;
  int n_;
  std::vector<Vertex> mate_;
  std::array<int, 3> closed_{};
  std::array<int, 3> target_{};  // a crystallization has g_{c3} = g_{ab}, {a,b,c} = {0,1,2}
  std::array<std::array<std::vector<int>, 3>, 3> seedCycle_;
  StampSet marks_;
  std::set<Code> found_;
};

int threadCount(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CRYSTAL_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

std::vector<SphereGem> generateSphereGems(int vertices) {
  if (vertices < 2 || vertices % 2) throw std::invalid_argument("generateSphereGems: vertex count must be even and positive");
  return SeedSearch(vertices).run();
}

std::vector<ColouredGraph> extendWithColour3(const SphereGem& seed) {
  if (seed.graph.colours() != 3) throw std::invalid_argument("extendWithColour3: seed must be 3-coloured");
  return Extension(seed.graph).run();
}

Catalogue buildCatalogue(int vertices, int threads) {
  const auto seeds = generateSphereGems(vertices);
  std::vector<std::vector<ColouredGraph>> results(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < seeds.size();) results[k] = extendWithColour3(seeds[k]);
  };
  const int workers = std::min<int>(threadCount(threads), static_cast<int>(std::max<std::size_t>(1, seeds.size())));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::set<Code> bipartite, other;
  for (const auto& list : results)
    for (const auto& g : list) (isBipartite(g) ? bipartite : other).insert(code(g));
  return Catalogue{vertices, {bipartite.begin(), bipartite.end()}, {other.begin(), other.end()}};
}

}  // namespace crystal
