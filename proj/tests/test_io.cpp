#include <doctest.h>

#include <filesystem>
#include <random>

#include "crystal/canon.hpp"
#include "crystal/census.hpp"
#include "crystal/invariants.hpp"
#include "crystal/io.hpp"
#include "crystal/moves.hpp"
#include "oracles.hpp"

using namespace crystal;
namespace fs = std::filesystem;

namespace {

// Two tetrahedra glued along their boundaries by the identity.
const char* kSphereGluing = R"(# two tetrahedra, boundary to boundary
tet 0: face 0 -> tet 1 face 0 perm 123
tet 0: face 1 -> tet 1 face 1 perm 023
tet 0: face 2 -> tet 1 face 2 perm 013
tet 0: face 3 -> tet 1 face 3 perm 012
tet 1: face 0 -> tet 0 face 0 perm 123
tet 1: face 1 -> tet 0 face 1 perm 023
tet 1: face 2 -> tet 0 face 2 perm 013
tet 1: face 3 -> tet 0 face 3 perm 012
)";

std::string messageOf(const std::string& text) {
  try {
    parseFacetGluing(text);
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("catalogue files round trip and reject damage") {
  auto cat = buildCatalogue(16, 1);
  CatalogueFile file{16, true, cat.bipartiteCodes};
  auto text = formatCatalogue(file);
  CHECK(text.rfind("GEMS v1 16 bipartite 3\n", 0) == 0);
  CHECK(parseCatalogue(text) == file);
  CHECK(parseCatalogue(formatCatalogue({24, false, {}})) == CatalogueFile{24, false, {}});
  CHECK_THROWS_AS(parseCatalogue("GEMS v1 16 bipartite 4\n" + text.substr(text.find('\n') + 1)), FormatError);
  CHECK_THROWS_AS(parseCatalogue("GEMS v2 16 bipartite 3\n" + text.substr(text.find('\n') + 1)), FormatError);
  auto reversed = "GEMS v1 16 bipartite 2\n" + cat.bipartiteCodes[1].text + "\n" + cat.bipartiteCodes[0].text + "\n";
  CHECK_THROWS_AS(parseCatalogue(reversed), FormatError);
  auto wrongOrder = "GEMS v1 18 bipartite 1\n" + cat.bipartiteCodes[0].text + "\n";
  CHECK_THROWS_AS(parseCatalogue(wrongOrder), FormatError);
  CHECK_THROWS_AS(parseCatalogue(""), FormatError);
}

TEST_CASE("class files round trip") {
  std::vector<ClassRecord> classes(2);
  classes[0] = {0, {{Code{"a"}, 0}}, Code{"a"}, std::string("M"), 0};
  auto c14 = buildCatalogue(14, 1).nonBipartiteCodes.at(0);
  auto c16 = buildCatalogue(16, 1).nonBipartiteCodes.at(0);
  classes[0] = {0, {{c14, 0}}, c14, std::string("S1xS2-twisted"), 0};
  classes[1] = {1, {{c16, 0}, {c14, 1}}, c16, std::nullopt, 0};
  auto text = formatClasses(classes);
  auto back = parseClasses(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0].members == classes[0].members);
  CHECK(back[0].name == classes[0].name);
  CHECK(back[1].members == classes[1].members);
  CHECK_FALSE(back[1].name);
  CHECK_THROWS_AS(parseClasses("CLASSES v1 3\n" + text.substr(text.find('\n') + 1)), FormatError);
  classes[0].name = "two words";
  CHECK_THROWS_AS(formatClasses(classes), FormatError);
}

TEST_CASE("atomic writes replace the file") {
  auto dir = fs::temp_directory_path() / "crystal_io_test";
  fs::create_directories(dir);
  auto path = dir / "out.txt";
  writeFileAtomically(path, "first\n");
  writeFileAtomically(path, "second\n");
  CHECK(readFile(path) == "second\n");
  CHECK_FALSE(fs::exists(dir / "out.txt.tmp"));
  CHECK_THROWS(readFile(dir / "missing.txt"));
  fs::remove_all(dir);
}

TEST_CASE("two glued tetrahedra give the sphere") {
  auto t = parseFacetGluing(kSphereGluing);
  CHECK(t.tetCount == 2);
  CHECK(parseFacetGluing(formatFacetGluing(t)) == t);
  auto g = barycentricColouredGraph(t);
  CHECK(g.order() == 48);
  CHECK(representsClosedManifold(g));
  CHECK(isBipartite(g));
  auto h = homology(g);
  CHECK(h[1].toString() == "0");
  CHECK(h[3].toString() == "Z");
  auto r = rigidify(g);
  CHECK(r.graph.order() == 2);
}

TEST_CASE("gluing errors name the problem") {
  std::string text = kSphereGluing;
  auto dropLast = text.substr(0, text.rfind("tet 1: face 3"));
  CHECK(messageOf(dropLast).find("dangling face") != std::string::npos);
  auto twisted = text;
  twisted.replace(twisted.find("tet 1: face 3 -> tet 0 face 3 perm 012"), 38, "tet 1: face 3 -> tet 0 face 3 perm 021");
  CHECK(messageOf(twisted).find("non-involutive gluing") != std::string::npos);
  auto badPerm = text;
  badPerm.replace(badPerm.find("perm 012"), 8, "perm 011");
  CHECK(messageOf(badPerm).find("bad permutation") != std::string::npos);
  auto selfGlued = std::string("tet 0: face 0 -> tet 0 face 0 perm 123\n");
  CHECK(messageOf(selfGlued).find("bad permutation") != std::string::npos);
  CHECK(messageOf("tet 0 face 0 -> tet 1 face 0 perm 123\n").find("expected") != std::string::npos);
}

TEST_CASE("graphs survive the trip through a facet gluing") {
  for (auto c : {buildCatalogue(14, 1).nonBipartiteCodes.at(0), buildCatalogue(16, 1).nonBipartiteCodes.at(0),
                 buildCatalogue(12, 1).bipartiteCodes.at(0)}) {
    auto g = decode(c);
    auto t = gluingFromGraph(g);
    CHECK(t.tetCount == g.order());
    CHECK(parseFacetGluing(formatFacetGluing(t)) == t);
    auto b = barycentricColouredGraph(t);
    CHECK(b.order() == 24 * g.order());
    CHECK(representsClosedManifold(b));
    CHECK(homology(b) == homology(g));
    CHECK(isBipartite(b) == isBipartite(g));
    auto r = rigidify(b);
    CHECK(isCrystallization(r.graph));
    CHECK(homology(r.graph)[1] == homology(g)[1]);
  }
}

TEST_CASE("raw rows") {
  auto g = parseRawGraph("2,1/2,1/2,1/2,1");
  CHECK(code(g) == code(ColouredGraph::dipoleGraph()));
  std::mt19937 rng(3);
  auto r = oracle::randomGraph(rng, 4, 10);
  CHECK(parseRawGraph(describe(r)) == r);
  CHECK_THROWS_AS(parseRawGraph("2,1/2,1"), FormatError);
  CHECK_THROWS_AS(parseRawGraph("2,x/2,1/2,1"), FormatError);
  CHECK_THROWS_AS(parseRawGraph("2,3/2,1/2,1"), FormatError);
  CHECK_THROWS_AS(parseRawGraph("1,2/2,1/2,1"), FormatError);
}

TEST_CASE("legacy letter codes") {
  auto bad = decodeLegacyCode("AB");
  CHECK_FALSE(bad.graph);
  CHECK(bad.diagnostic.find("multiple of 4") != std::string::npos);
  CHECK(decodeLegacyCode("ABCz").diagnostic.find("out of range") != std::string::npos);
  auto ok = decodeLegacyCode("DABCGEFJHIMKLONJMOEDNHGKAIFBLCKJgOmjcAMfHDeCLhFnlIBNkEbaoiGd");
  REQUIRE(ok.graph);
  CHECK(ok.graph->order() == 30);
  CHECK(homology(*ok.graph)[1].toString() == "Z + Z8");
}

TEST_CASE("self-glued faces and one-tetrahedron gluings") {
  // face 0 of a lone tetrahedron folded onto itself by swapping vertices 1 and 2
  auto folded = "tet 0: face 0 -> tet 0 face 0 perm 213\n"
                "tet 0: face 1 -> tet 0 face 2 perm 103\n"
                "tet 0: face 2 -> tet 0 face 1 perm 203\n"
                "tet 0: face 3 -> tet 0 face 3 perm 102\n";
  auto t = parseFacetGluing(folded);
  CHECK(t.tetCount == 1);
  auto g = barycentricColouredGraph(t);
  CHECK(g.order() == 24);
  const bool closed = representsClosedManifold(g);
  bool spheres = true;
  for (const auto& s : surfaceCheck(g)) spheres = spheres && s.euler == 2;
  CHECK(closed == spheres);
  CHECK(closed == (eulerCharacteristic(g) == 0 && spheres));
}
