#include <doctest.h>

#include <random>

#include "crystal/canon.hpp"
#include "crystal/census.hpp"
#include "crystal/invariants.hpp"
#include "crystal/moves.hpp"
#include "oracles.hpp"
#include "random_moves.hpp"

using namespace crystal;

namespace {

std::vector<ColouredGraph> smallCatalogue() {
  std::vector<ColouredGraph> out;
  for (int n : {8, 14, 16, 18})
    for (const auto& c : buildCatalogue(n, 1).bipartiteCodes) out.push_back(decode(c));
  for (int n : {14, 16, 18})
    for (const auto& c : buildCatalogue(n, 1).nonBipartiteCodes) out.push_back(decode(c));
  return out;
}

std::vector<Dipole> bruteDipoles(const ColouredGraph& g, int k) {
  std::vector<Dipole> out;
  for (Vertex x = 0; x < g.order(); ++x)
    for (Vertex y = x + 1; y < g.order(); ++y) {
      std::vector<Colour> joined, rest;
      ColourSet set = 0;
      for (Colour c = 0; c < 4; ++c) {
        if (g.neighbour(x, c) == y) {
          joined.push_back(c);
          set |= colourBit(c);
        } else {
          rest.push_back(c);
        }
      }
      if (static_cast<int>(joined.size()) != k) continue;
      auto label = oracle::components(g, rest);
      if (label[static_cast<std::size_t>(x)] != label[static_cast<std::size_t>(y)]) out.push_back({x, y, set});
    }
  return out;
}

}  // namespace

TEST_CASE("dipole search matches exhaustive search") {
  std::mt19937 rng(31);
  int found = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto g = oracle::randomGraph(rng, 4, 2 * (1 + static_cast<int>(rng() % 9)));
    for (int k = 1; k <= 3; ++k) {
      auto ours = findDipoles(g, k);
      CHECK(ours == bruteDipoles(g, k));
      found += static_cast<int>(ours.size());
    }
  }
  CHECK(found > 20);
  CHECK_THROWS(findDipoles(ColouredGraph::dipoleGraph(), 0));
  CHECK_THROWS(findDipoles(ColouredGraph::dipoleGraph(), 4));
}

TEST_CASE("adding then deleting a dipole restores the graph") {
  std::mt19937 rng(7);
  for (const auto& g : smallCatalogue()) {
    auto added = walk::randomAddDipole(rng, g);
    REQUIRE(added);
    CHECK(added->order() == g.order() + 2);
    const Vertex x = added->order() - 2, y = added->order() - 1;
    bool restored = false;
    for (int k = 1; k <= 3; ++k)
      for (const auto& d : findDipoles(*added, k))
        if (d.x == x && d.y == y) restored = code(deleteDipole(*added, d)) == code(g);
    CHECK(restored);
  }
}

TEST_CASE("improper dipole insertion is rejected") {
  // accepted insertions must be proper dipoles by the exhaustive search
  std::mt19937 rng(1);
  int accepted = 0, rejected = 0;
  auto base = smallCatalogue().front();
  for (int trial = 0; trial < 200; ++trial) {
    const ColourSet set = static_cast<ColourSet>(1 + rng() % 14);
    std::vector<Edge> site;
    for (Colour c = 0; c < 4; ++c) {
      if (set & colourBit(c)) continue;
      Vertex u = static_cast<Vertex>(rng() % static_cast<unsigned>(base.order()));
      site.push_back({u, base.neighbour(u, c), c});
    }
    try {
      auto h = addDipole(base, set, site);
      const Vertex x = h.order() - 2;
      bool proper = false;
      for (const auto& d : bruteDipoles(h, colourCount(set)))
        proper = proper || (d.x == x && d.y == x + 1);
      CHECK(proper);
      ++accepted;
    } catch (const MoveError&) {
      ++rejected;
    }
  }
  CHECK(accepted > 0);
  CHECK(rejected > 0);
}

TEST_CASE("rho pairs match the exhaustive count and vanish on rigid graphs") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    auto g = oracle::randomGraph(rng, 4, 2 * (2 + static_cast<int>(rng() % 8)));
    CHECK(static_cast<int>(findRhoPairs(g).size()) == oracle::rhoPairCount(g));
    CHECK(isRigid(g) == (oracle::rhoPairCount(g) == 0));
  }
  for (const auto& g : smallCatalogue()) CHECK(findRhoPairs(g).empty());
}

TEST_CASE("generalized dipole cancellation has the stated order and keeps homology") {
  std::mt19937 rng(23);
  int cancelled = 0;
  for (const auto& start : smallCatalogue()) {
    auto before = walk::fingerprint(start);
    for (Colour i = 1; i <= 3; ++i)
      for (const auto& d : findGenDipoles(start, i, 6, 6)) {
        CHECK(d.cycle.front() == d.coCycle.front());
        auto h = cancelGenDipole(start, d);
        CHECK(h.order() == start.order() - (d.m() + d.n() + 1) + d.m() * d.n());
        CHECK(walk::fingerprint(h) == before);
        ++cancelled;
      }
  }
  CHECK(cancelled > 0);
}

TEST_CASE("random move walks keep the invariants") {
  std::mt19937 rng(99);
  auto cat = smallCatalogue();
  int applied = 0;
  for (int walkIndex = 0; walkIndex < 10; ++walkIndex) {
    auto g = cat[rng() % cat.size()];
    for (int step = 0; step < 25; ++step) {
      auto kind = static_cast<walk::MoveKind>(rng() % 5);
      if (g.order() > 48 && kind != walk::MoveKind::rho2) kind = walk::MoveKind::deleteDipole;
      auto before = walk::fingerprint(g);
      auto next = walk::randomMove(rng, g, kind);
      if (!next) continue;
      INFO(walk::kindName(kind));
      CHECK(walk::checkMove(kind, before, *next) == "");
      g = *next;
      ++applied;
    }
  }
  CHECK(applied > 100);
}

TEST_CASE("rigidify yields a rigid crystallization with the handles split off") {
  std::mt19937 rng(5);
  for (const auto& g : smallCatalogue()) {
    auto h = g;
    for (int t = 0; t < 4; ++t) h = *walk::randomAddDipole(rng, h);
    auto r = rigidify(h);
    CHECK(isRigid(r.graph));
    CHECK(isCrystallization(r.graph));
    auto a = homology(h)[1], b = homology(r.graph)[1];
    CHECK(a.rank == b.rank + r.rho3Count);
    CHECK(a.torsion == b.torsion);
  }
}

TEST_CASE("rigidify removes a handle summand") {
  auto handle = decode(buildCatalogue(14, 1).nonBipartiteCodes.at(0));
  auto base = decode(buildCatalogue(16, 1).nonBipartiteCodes.at(0));
  auto sum = connectedSum(base, handle, 3, 5);
  auto r = rigidify(sum);
  CHECK(isCrystallization(r.graph));
  auto h = homology(r.graph)[1];
  auto full = homology(sum)[1];
  CHECK(full.rank == h.rank + r.rho3Count);
}

TEST_CASE("moves on the two-vertex graph") {
  auto g = ColouredGraph::dipoleGraph();
  for (int k = 1; k <= 3; ++k) CHECK(findDipoles(g, k).empty());
  auto r = rigidify(g);
  CHECK(r.graph == g);
  CHECK(r.rho3Count == 0);
  for (Colour i = 1; i <= 3; ++i) CHECK(findGenDipoles(g, i, 8, 8).empty());
  // a 2-dipole joined by colours 0 and 1, through the 2- and 3-edges
  const std::vector<Edge> site{{0, 1, 2}, {0, 1, 3}};
  auto h = addDipole(g, colourBit(0) | colourBit(1), site);
  CHECK(h.order() == 4);
  std::vector<Dipole> found;
  for (int k = 1; k <= 3; ++k)
    for (const auto& d : findDipoles(h, k)) found.push_back(d);
  REQUIRE(found.size() >= 1);
  bool inserted = false;
  for (const auto& d : found) inserted = inserted || (d.x == 2 && d.y == 3 && d.colours == (colourBit(0) | colourBit(1)));
  CHECK(inserted);
  for (const auto& d : found) CHECK(code(deleteDipole(h, d)) == code(g));
}

TEST_CASE("handles: rho3 bookkeeping on the double handle sum") {
  auto handle = decode(buildCatalogue(14, 1).nonBipartiteCodes.at(0));
  for (auto [x, y] : {std::pair{0, 0}, std::pair{3, 7}, std::pair{13, 1}}) {
    auto sum = connectedSum(handle, handle, x, y);
    auto r = rigidify(sum);
    auto before = homology(sum)[1], after = homology(r.graph)[1];
    CHECK(before.rank == 2);
    CHECK(after.rank + r.rho3Count == 2);
    CHECK(after.torsion == before.torsion);
  }
}
