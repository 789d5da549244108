#include <doctest.h>

#include <random>

#include "crystal/canon.hpp"
#include "crystal/census.hpp"
#include "oracles.hpp"

using namespace crystal;

TEST_CASE("code is invariant under relabelling and colour permutation") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    auto g = oracle::randomGraph(rng, 4, 2 * (1 + static_cast<int>(rng() % 15)));
    auto h = oracle::randomRelabel(rng, g);
    REQUIRE(code(g) == code(h));
  }
}

TEST_CASE("code equality matches brute-force isomorphism") {
  std::mt19937 rng(4);
  int same = 0, different = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int order = trial % 2 ? 4 : 6;
    auto a = oracle::randomGraph(rng, 4, order);
    auto b = trial % 3 == 0 ? oracle::randomRelabel(rng, a) : oracle::randomGraph(rng, 4, order);
    const bool iso = oracle::isomorphicBrute(a, b);
    REQUIRE((code(a) == code(b)) == iso);
    REQUIRE(isColourIsomorphic(a, b) == iso);
    (iso ? same : different)++;
  }
  CHECK(same > 50);
  CHECK(different > 50);
}

TEST_CASE("decode inverts code") {
  std::mt19937 rng(9);
  for (int order : {2, 8, 30, 64, 70}) {
    auto g = oracle::randomGraph(rng, 4, order);
    auto c = code(g);
    auto back = decode(c);
    CHECK(code(back) == c);
    if (order <= 6) CHECK(oracle::isomorphicBrute(g, back));
    CHECK(back.order() == order);
  }
}

TEST_CASE("canonical order serializes to the code") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = oracle::randomGraph(rng, 4, 2 * (1 + static_cast<int>(rng() % 10)));
    auto o = canonicalOrder(g);
    CHECK(code(o.graph) == code(g));
    // ordering maps the canonical graph onto the source
    for (Vertex v = 0; v < g.order(); ++v)
      for (Colour c = 0; c < 4; ++c)
        CHECK(o.ordering[static_cast<std::size_t>(o.graph.neighbour(v, c))] ==
              g.neighbour(o.ordering[static_cast<std::size_t>(v)], o.colourOrder[static_cast<std::size_t>(c)]));
  }
}

TEST_CASE("three-coloured graphs get codes too") {
  std::mt19937 rng(2);
  auto g = oracle::randomGraph(rng, 3, 8);
  CHECK(code(oracle::randomRelabel(rng, g)) == code(g));
  CHECK(decode(code(g)).colours() == 3);
}

TEST_CASE("malformed codes report a position") {
  auto good = code(ColouredGraph::dipoleGraph()).text;
  CHECK_THROWS_AS(decode(Code{""}), CodeError);
  CHECK_THROWS_AS(decode(Code{"garbage"}), CodeError);
  CHECK_THROWS_AS(decode(Code{good + "x"}), CodeError);
  std::string broken = good;
  broken.back() = '~';
  CHECK_THROWS_AS(decode(Code{broken}), CodeError);
  try {
    decode(Code{good.substr(0, good.size() - 1)});
    FAIL("truncated code accepted");
  } catch (const CodeError& e) {
    CHECK(e.position() <= good.size());
  }
}

TEST_CASE("catalogue codes round trip and canonical order is idempotent") {
  for (int n : {14, 16, 18, 20}) {
    auto cat = buildCatalogue(n, 1);
    for (const auto* v : {&cat.bipartiteCodes, &cat.nonBipartiteCodes})
      for (const auto& c : *v) {
        CHECK(code(decode(c)) == c);
        auto once = canonicalOrder(decode(c));
        auto twice = canonicalOrder(once.graph);
        for (std::size_t k = 0; k < twice.ordering.size(); ++k) CHECK(twice.ordering[k] == static_cast<Vertex>(k));
      }
  }
  CHECK_THROWS_AS(decode(Code{"ZZZ"}), CodeError);
}

TEST_CASE("isomorphic graphs get identical canonical tables") {
  std::mt19937 rng(20);
  auto g = oracle::randomGraph(rng, 4, 20);
  auto h = oracle::randomRelabel(rng, g);
  CHECK(canonicalOrder(g).graph == canonicalOrder(h).graph);
  auto s = canonicalOrder(ColouredGraph::dipoleGraph());
  CHECK(s.graph == ColouredGraph::dipoleGraph());
}
