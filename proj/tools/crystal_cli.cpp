// Command-line front end: census generation, classification, invariants,
// connected-sum splitting, triangulation ingestion and code normalization.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "crystal/census.hpp"
#include "crystal/classify.hpp"
#include "crystal/invariants.hpp"
#include "crystal/io.hpp"
#include "crystal/moves.hpp"

using namespace crystal;
namespace fs = std::filesystem;

namespace {

int effectiveThreads(int requested) {
  if (const char* env = std::getenv("CRYSTAL_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return requested;
}

fs::path catalogueName(const std::string& prefix, int vertices, bool bipartite) {
  return prefix + "-" + std::to_string(vertices) + (bipartite ? "-bipartite.gems" : "-nonbipartite.gems");
}

std::optional<CatalogueFile> loadIfValid(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  try {
    return parseCatalogue(readFile(path));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// A code, or a raw row listing when the text has no ':'.
ColouredGraph graphFromText(const std::string& text) {
  if (text.find(':') != std::string::npos) return decode(Code{text});
  return parseRawGraph(text);
}

std::vector<Code> codesFromFile(const fs::path& path) {
  std::string text = readFile(path);
  if (text.rfind("GEMS ", 0) == 0) return parseCatalogue(text).codes;
  std::vector<Code> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string first;
    if (ls >> first && first.front() != '#') out.push_back(Code{first});
  }
  return out;
}

void printHomology(const ColouredGraph& g) {
  auto h = homology(g);
  for (int k = 0; k < 4; ++k) std::cout << "H" << k << " = " << h[static_cast<std::size_t>(k)].toString() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crystallization census and classification tools"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate catalogues of rigid crystallizations");
  int genVertices = 0, genFrom = 2, threads = 0;
  std::string genOut;
  bool resume = false;
  gen->add_option("--vertices", genVertices, "largest vertex count (even)")->required();
  gen->add_option("--from", genFrom, "smallest vertex count")->capture_default_str();
  gen->add_option("--out", genOut, "file prefix; writes PREFIX-<2p>-bipartite.gems and -nonbipartite.gems");
  gen->add_option("--threads", threads, "worker threads (CRYSTAL_THREADS overrides)");
  gen->add_flag("--resume", resume, "skip orders whose catalogue files already exist");

  auto* cls = app.add_subcommand("classify", "classify catalogued crystallizations");
  std::vector<std::string> catalogues;
  std::string knownFile, classOut;
  cls->add_option("--catalogues", catalogues, "catalogue files")->required()->check(CLI::ExistingFile);
  cls->add_option("--known", knownFile, "lines '<code> <name>'")->check(CLI::ExistingFile);
  cls->add_option("--out", classOut, "class file to write");
  cls->add_option("--threads", threads, "worker threads (CRYSTAL_THREADS overrides)");

  auto* inv = app.add_subcommand("invariants", "homology and fundamental group presentation");
  std::string invCode, invFile, pi1;
  auto* codeOpt = inv->add_option("--code", invCode, "code or raw rows");
  auto* fileOpt = inv->add_option("--file", invFile, "file of codes")->check(CLI::ExistingFile);
  codeOpt->excludes(fileOpt);
  inv->add_option("--pi1", pi1, "colour pair i,j for a presentation");

  auto* split = app.add_subcommand("split", "connected-sum factorization");
  std::string splitCode;
  split->add_option("--code", splitCode, "code of a crystallization")->required();

  auto* ingest = app.add_subcommand("ingest", "crystallization from a facet gluing");
  std::string gluingFile, ingestOut;
  ingest->add_option("--gluing", gluingFile, "gluing file")->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", ingestOut, "file to receive the code");

  auto* codeCmd = app.add_subcommand("code", "canonical code of a graph");
  std::string normalize;
  codeCmd->add_option("--normalize", normalize, "raw rows '2,1/2,1/2,1' or a code")->required();

  auto* legacy = app.add_subcommand("legacy", "decode a printed legacy letter code");
  std::string legacyText;
  legacy->add_option("--text", legacyText, "letter code")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error usage " << e.what() << "\n";
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "gen") {
      if (genVertices < 2 || genVertices % 2 || genFrom < 2 || genFrom % 2) throw std::invalid_argument("vertex counts must be even and >= 2");
      for (int n = genFrom; n <= genVertices; n += 2) {
        Catalogue cat;
        std::optional<CatalogueFile> bip, non;
        if (resume && !genOut.empty()) {
          bip = loadIfValid(catalogueName(genOut, n, true));
          non = loadIfValid(catalogueName(genOut, n, false));
        }
        if (bip && non && bip->vertices == n && non->vertices == n) {
          cat = {n, bip->codes, non->codes};
        } else {
          cat = buildCatalogue(n, effectiveThreads(threads));
          if (!genOut.empty()) {
            writeFileAtomically(catalogueName(genOut, n, true), formatCatalogue({n, true, cat.bipartiteCodes}));
            writeFileAtomically(catalogueName(genOut, n, false), formatCatalogue({n, false, cat.nonBipartiteCodes}));
          }
        }
        std::cout << "vertices " << n << " bipartite " << cat.bipartiteCodes.size() << " nonbipartite "
                  << cat.nonBipartiteCodes.size() << std::endl;
      }
    } else if (command == "classify") {
      std::vector<std::pair<int, Code>> ordered;
      for (const auto& f : catalogues)
        for (auto& c : codesFromFile(f)) ordered.emplace_back(decode(c).order(), c);
      std::sort(ordered.begin(), ordered.end());
      ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
      std::vector<Code> list;
      for (auto& [n, c] : ordered) list.push_back(c);
      std::map<Code, std::string> known;
      if (!knownFile.empty()) {
        std::istringstream in(readFile(knownFile));
        for (std::string line; std::getline(in, line);) {
          std::istringstream ls(line);
          std::string c, name;
          if (!(ls >> c) || c.front() == '#') continue;
          if (!(ls >> name)) throw FormatError("known names: missing name for " + c);
          known[code(graphFromText(c))] = name;
        }
      }
      auto classes = classifyList(list, known, effectiveThreads(threads));
      if (!classOut.empty()) writeFileAtomically(classOut, formatClasses(classes));
      std::cout << "graphs " << list.size() << "\nclasses " << classes.size() << "\n";
      for (const auto& c : classes) {
        int maxH = 0;
        for (const auto& m : c.members) maxH = std::max(maxH, m.h);
        std::cout << "class " << c.id << " members " << c.members.size() << " maxh " << maxH << " name "
                  << (c.name ? *c.name : "-") << "\n";
      }
    } else if (command == "invariants") {
      std::vector<ColouredGraph> graphs;
      if (!invCode.empty()) graphs.push_back(graphFromText(invCode));
      else if (!invFile.empty())
        for (const auto& c : codesFromFile(invFile)) graphs.push_back(decode(c));
      else throw std::invalid_argument("give --code or --file");
      std::optional<std::pair<Colour, Colour>> pair;
      if (!pi1.empty()) {
        int i = -1, j = -1;
        char comma = 0;
        std::istringstream ps(pi1);
        if (!(ps >> i >> comma >> j) || comma != ',') throw std::invalid_argument("--pi1 expects i,j");
        pair = std::pair{i, j};
      }
      for (const auto& g : graphs) {
        if (graphs.size() > 1) std::cout << "code " << code(g).text << "\n";
        printHomology(g);
        if (pair) {
          auto p = pi1Presentation(g, pair->first, pair->second);
          std::cout << "pi1 = " << toString(p) << "\n";
          std::cout << "pi1ab = " << abelianize(p).toString() << "\n";
        }
      }
    } else if (command == "split") {
      auto pieces = factorize(decode(Code{splitCode}));
      std::cout << "summands " << pieces.size() << "\n";
      for (const auto& g : pieces) std::cout << code(g).text << "\n";
    } else if (command == "ingest") {
      auto gluing = parseFacetGluing(readFile(gluingFile));
      auto g = barycentricColouredGraph(gluing);
      if (!representsClosedManifold(g)) throw std::invalid_argument("gluing does not triangulate a closed 3-manifold");
      auto reduced = rigidify(g);
      const Code c = code(reduced.graph);
      if (!ingestOut.empty()) writeFileAtomically(ingestOut, c.text + "\n");
      std::cout << "vertices " << reduced.graph.order() << "\ncode " << c.text << "\n";
    } else if (command == "code") {
      std::cout << "code " << code(graphFromText(normalize)).text << "\n";
    } else if (command == "legacy") {
      auto result = decodeLegacyCode(legacyText);
      if (!result.graph) throw std::invalid_argument("legacy code rejected: " + result.diagnostic);
      std::cout << "code " << code(*result.graph).text << "\n";
      printHomology(*result.graph);
    }
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "error " << command << " " << msg << "\n";
    return 1;
  }
  return 0;
}
