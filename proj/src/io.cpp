#include "crystal/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "crystal/moves.hpp"

namespace crystal {

namespace {

std::vector<std::string> splitLines(std::string_view text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw FormatError("line " + std::to_string(line + 1) + ": " + msg);
}

int parseInt(const std::string& token, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    fail(line, std::string("expected ") + what + ", got '" + token + "'");
  }
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

std::string formatCatalogue(const CatalogueFile& file) {
  std::string out = "GEMS v1 " + std::to_string(file.vertices) + (file.bipartite ? " bipartite " : " nonbipartite ") +
                    std::to_string(file.codes.size()) + "\n";
  for (const auto& c : file.codes) out += c.text + "\n";
  return out;
}

CatalogueFile parseCatalogue(std::string_view text) {
  auto lines = splitLines(text);
  if (lines.empty()) throw FormatError("line 1: empty catalogue file");
  auto head = tokens(lines[0]);
  if (head.size() != 5 || head[0] != "GEMS" || head[1] != "v1") fail(0, "expected 'GEMS v1 <2p> <parity> <count>'");
  CatalogueFile file;
  file.vertices = parseInt(head[2], 0, "vertex count");
  if (head[3] != "bipartite" && head[3] != "nonbipartite") fail(0, "parity must be bipartite or nonbipartite");
  file.bipartite = head[3] == "bipartite";
  const int count = parseInt(head[4], 0, "code count");
  if (count < 0 || static_cast<std::size_t>(count) != lines.size() - 1)
    fail(0, "header announces " + head[4] + " codes, file has " + std::to_string(lines.size() - 1));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    Code c{lines[k]};
    try {
      auto g = decode(c);
      if (g.order() != file.vertices) fail(k, "code has " + std::to_string(g.order()) + " vertices");
    } catch (const CodeError& e) {
      fail(k, e.what());
    }
    if (!file.codes.empty() && !(file.codes.back() < c)) fail(k, "codes are not sorted and distinct");
    file.codes.push_back(std::move(c));
  }
  return file;
}

std::string formatClasses(const std::vector<ClassRecord>& classes) {
  std::string out = "CLASSES v1 " + std::to_string(classes.size()) + "\n";
  for (const auto& c : classes) {
    if (c.name && (c.name->empty() || std::any_of(c.name->begin(), c.name->end(), [](unsigned char ch) { return std::isspace(ch); })))
      throw FormatError("class name must be a non-empty word: '" + *c.name + "'");
    out += "class " + std::to_string(c.id) + " " + std::to_string(c.members.size()) + " " + (c.name ? *c.name : "-") + " " +
           std::to_string(c.nameLevel) + "\n";
    for (const auto& m : c.members) out += m.code.text + " " + std::to_string(m.h) + "\n";
  }
  return out;
}

std::vector<ClassRecord> parseClasses(std::string_view text) {
  auto lines = splitLines(text);
  if (lines.empty()) throw FormatError("line 1: empty class file");
  auto head = tokens(lines[0]);
  if (head.size() != 3 || head[0] != "CLASSES" || head[1] != "v1") fail(0, "expected 'CLASSES v1 <count>'");
  const int count = parseInt(head[2], 0, "class count");
  std::vector<ClassRecord> out;
  std::size_t k = 1;
  for (int c = 0; c < count; ++c) {
    if (k >= lines.size()) fail(k, "missing class record");
    auto t = tokens(lines[k]);
    if (t.size() != 5 || t[0] != "class") fail(k, "expected 'class <id> <members> <name|-> <level>'");
    ClassRecord rec;
    rec.id = parseInt(t[1], k, "class id");
    const int members = parseInt(t[2], k, "member count");
    if (members <= 0) fail(k, "a class needs at least one member");
    if (t[3] != "-") rec.name = t[3];
    rec.nameLevel = parseInt(t[4], k, "name level");
    ++k;
    for (int m = 0; m < members; ++m, ++k) {
      if (k >= lines.size()) fail(k, "missing member line");
      auto mt = tokens(lines[k]);
      if (mt.size() != 2) fail(k, "expected '<code> <h>'");
      rec.members.push_back({Code{mt[0]}, parseInt(mt[1], k, "h value")});
    }
    rec.representative = rec.members.front().code;
    out.push_back(std::move(rec));
  }
  if (k != lines.size()) fail(k, "trailing lines after the last class");
  return out;
}

void writeFileAtomically(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FacetGluing parseFacetGluing(std::string_view text) {
  struct Entry {
    FaceGluing target;
    std::size_t line;
    bool set = false;
  };
  std::map<std::pair<int, int>, Entry> entries;
  int maxTet = -1;
  auto lines = splitLines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    auto t = tokens(lines[k]);
    if (t.empty() || t[0].front() == '#') continue;
    // tet <t>: face <f> -> tet <t'> face <f'> perm <abc>
    if (t.size() != 11 || t[0] != "tet" || t[1].back() != ':' || t[2] != "face" || t[4] != "->" || t[5] != "tet" ||
        t[7] != "face" || t[9] != "perm")
      fail(k, "expected 'tet <t>: face <f> -> tet <t'> face <f'> perm <abc>'");
    const int tet = parseInt(t[1].substr(0, t[1].size() - 1), k, "tetrahedron");
    const int face = parseInt(t[3], k, "face");
    FaceGluing g;
    g.tet = parseInt(t[6], k, "tetrahedron");
    g.face = parseInt(t[8], k, "face");
    if (tet < 0 || g.tet < 0) fail(k, "negative tetrahedron index");
    if (face < 0 || face > 3 || g.face < 0 || g.face > 3) fail(k, "face must be 0..3");
    const std::string& perm = t[10];
    if (perm.size() != 3) fail(k, "bad permutation '" + perm + "'");
    g.perm[static_cast<std::size_t>(face)] = g.face;
    std::array<bool, 4> used{};
    used[static_cast<std::size_t>(g.face)] = true;
    int slot = 0;
    for (int v = 0; v < 4; ++v) {
      if (v == face) continue;
      const char ch = perm[static_cast<std::size_t>(slot++)];
      if (ch < '0' || ch > '3' || used[static_cast<std::size_t>(ch - '0')]) fail(k, "bad permutation '" + perm + "'");
      used[static_cast<std::size_t>(ch - '0')] = true;
      g.perm[static_cast<std::size_t>(v)] = ch - '0';
    }
    auto& e = entries[{tet, face}];
    if (e.set) fail(k, "face " + std::to_string(face) + " of tet " + std::to_string(tet) + " glued twice");
    e = {g, k, true};
    maxTet = std::max({maxTet, tet, g.tet});
  }
  if (maxTet < 0) throw FormatError("line 1: no gluings");
  FacetGluing out;
  out.tetCount = maxTet + 1;
  out.gluings.resize(static_cast<std::size_t>(out.tetCount));
  for (int tet = 0; tet < out.tetCount; ++tet)
    for (int face = 0; face < 4; ++face) {
      auto it = entries.find({tet, face});
      if (it == entries.end())
        throw FormatError("dangling face: face " + std::to_string(face) + " of tet " + std::to_string(tet) + " is not glued");
      const auto& g = it->second.target;
      auto back = entries.find({g.tet, g.face});
      if (back == entries.end())
        throw FormatError("dangling face: face " + std::to_string(g.face) + " of tet " + std::to_string(g.tet) + " is not glued");
      bool inverse = back->second.target.tet == tet && back->second.target.face == face;
      for (int v = 0; inverse && v < 4; ++v)
        inverse = back->second.target.perm[static_cast<std::size_t>(g.perm[static_cast<std::size_t>(v)])] == v;
      if (!inverse) fail(it->second.line, "non-involutive gluing");
      if (g.tet == tet && g.face == face) {
        bool identity = true;
        for (int v = 0; v < 4; ++v) identity = identity && g.perm[static_cast<std::size_t>(v)] == v;
        if (identity) fail(it->second.line, "bad permutation: a face glued to itself needs a non-trivial vertex map");
      }
      out.gluings[static_cast<std::size_t>(tet)][static_cast<std::size_t>(face)] = g;
    }
  return out;
}

std::string formatFacetGluing(const FacetGluing& t) {
  std::string out;
  for (int tet = 0; tet < t.tetCount; ++tet)
    for (int face = 0; face < 4; ++face) {
      const auto& g = t.gluings[static_cast<std::size_t>(tet)][static_cast<std::size_t>(face)];
      out += "tet " + std::to_string(tet) + ": face " + std::to_string(face) + " -> tet " + std::to_string(g.tet) + " face " +
             std::to_string(g.face) + " perm ";
      for (int v = 0; v < 4; ++v)
        if (v != face) out += static_cast<char>('0' + g.perm[static_cast<std::size_t>(v)]);
      out += "\n";
    }
  return out;
}

namespace {

// Flags of a tetrahedron as orderings (a0,a1,a2,a3) of its vertex labels:
// vertex a0 < edge a0a1 < face a0a1a2.
struct FlagIndex {
  std::vector<std::array<int, 4>> flags;
  std::map<std::array<int, 4>, int> index;
  FlagIndex() {
    std::array<int, 4> p{0, 1, 2, 3};
    do {
      index[p] = static_cast<int>(flags.size());
      flags.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
};

}  // namespace

ColouredGraph barycentricColouredGraph(const FacetGluing& t) {
  static const FlagIndex flagIndex;
  const int order = 24 * t.tetCount;
  std::vector<Vertex> table(static_cast<std::size_t>(4 * order));
  for (int tet = 0; tet < t.tetCount; ++tet)
    for (int k = 0; k < 24; ++k) {
      const auto& f = flagIndex.flags[static_cast<std::size_t>(k)];
      const Vertex v = 24 * tet + k;
      for (Colour c = 0; c < 3; ++c) {
        auto g = f;
        std::swap(g[static_cast<std::size_t>(c)], g[static_cast<std::size_t>(c + 1)]);
        table[static_cast<std::size_t>(c * order + v)] = 24 * tet + flagIndex.index.at(g);
      }
      // colour 3 leaves through the face a0a1a2, opposite a3
      const auto& glue = t.gluings[static_cast<std::size_t>(tet)][static_cast<std::size_t>(f[3])];
      std::array<int, 4> g{};
      for (std::size_t s = 0; s < 4; ++s) g[s] = glue.perm[static_cast<std::size_t>(f[s])];
      table[static_cast<std::size_t>(3 * order + v)] = 24 * glue.tet + flagIndex.index.at(g);
    }
  return ColouredGraph(4, order, std::move(table));
}

FacetGluing gluingFromGraph(const ColouredGraph& g) {
  if (g.colours() != 4) throw std::invalid_argument("gluingFromGraph: requires a 4-coloured graph");
  FacetGluing t;
  t.tetCount = g.order();
  t.gluings.resize(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v)
    for (Colour c = 0; c < 4; ++c) t.gluings[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = {g.neighbour(v, c), c, {0, 1, 2, 3}};
  return t;
}

// Legacy layout, for a string of 4p letters: uppercase A.. name vertices
// 0..p-1 and lowercase a.. name p..2p-1. Colour 0 joins each uppercase
// vertex to its lowercase twin. The first p letters give, for the k-th
// uppercase vertex, the twin of its colour-1 neighbour's uppercase name;
// the next p letters do the same for colour 2. The last 2p letters list
// colour-3 edges as (x[k], x[k+p]).
LegacyDecode decodeLegacyCode(std::string_view text) {
  LegacyDecode out;
  if (text.empty() || text.size() % 4 != 0) {
    out.diagnostic = "length " + std::to_string(text.size()) + " is not a positive multiple of 4";
    return out;
  }
  const int p = static_cast<int>(text.size() / 4), n = 2 * p;
  auto vertexOf = [&](char ch) -> int {
    if (ch >= 'A' && ch <= 'Z' && ch - 'A' < p) return ch - 'A';
    if (ch >= 'a' && ch <= 'z' && ch - 'a' < p) return p + (ch - 'a');
    return -1;
  };
  for (char ch : text)
    if (vertexOf(ch) < 0) {
      out.diagnostic = std::string("letter '") + ch + "' is out of range for " + std::to_string(n) + " vertices";
      return out;
    }
  std::vector<Vertex> table(static_cast<std::size_t>(4 * n), -1);
  auto join = [&](Colour c, int a, int b) -> bool {
    auto& ta = table[static_cast<std::size_t>(c * n + a)];
    auto& tb = table[static_cast<std::size_t>(c * n + b)];
    if (a == b || ta >= 0 || tb >= 0) return false;
    ta = b;
    tb = a;
    return true;
  };
  for (int k = 0; k < p; ++k) join(0, k, p + k);
  for (Colour c = 1; c <= 2; ++c)
    for (int k = 0; k < p; ++k) {
      const int m = vertexOf(text[static_cast<std::size_t>((c - 1) * p + k)]) % p;
      if (!join(c, k, p + m)) {
        out.diagnostic = "colour " + std::to_string(c) + " is not a perfect matching";
        return out;
      }
    }
  for (int k = 0; k < p; ++k) {
    const int a = vertexOf(text[static_cast<std::size_t>(2 * p + k)]), b = vertexOf(text[static_cast<std::size_t>(3 * p + k)]);
    if (!join(3, a, b)) {
      out.diagnostic = "colour 3 is not a perfect matching";
      return out;
    }
  }
  ColouredGraph g(4, n, std::move(table));
  if (!isConnected(g)) {
    out.diagnostic = "graph is disconnected";
    return out;
  }
  for (const auto& s : surfaceCheck(g))
    if (s.euler != 2) {
      out.diagnostic = "residue missing colour " + std::to_string(s.missing) + " has Euler characteristic " + std::to_string(s.euler);
      return out;
    }
  if (!isCrystallization(g)) {
    out.diagnostic = "graph is not contracted";
    return out;
  }
  if (!isRigid(g)) {
    out.diagnostic = "graph has rho-pairs";
    return out;
  }
  if (isBipartite(g)) {
    out.diagnostic = "graph is bipartite";
    return out;
  }
  out.graph = std::move(g);
  return out;
}

ColouredGraph parseRawGraph(std::string_view text) {
  std::vector<std::vector<Vertex>> rows;
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  std::istringstream in(s);
  for (std::string row; std::getline(in, row, '/');) {
    std::vector<Vertex> r;
    std::istringstream rs(row);
    for (std::string item; std::getline(rs, item, ',');) {
      try {
        std::size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        r.push_back(v - 1);
      } catch (const std::exception&) {
        throw FormatError("raw graph: bad neighbour '" + item + "'");
      }
    }
    rows.push_back(std::move(r));
  }
  if (rows.size() < 3 || rows.size() > 4) throw FormatError("raw graph: expected 3 or 4 colour rows");
  for (const auto& r : rows)
    for (Vertex v : r)
      if (v < 0 || v >= static_cast<int>(r.size())) throw FormatError("raw graph: neighbour out of range");
  try {
    return ColouredGraph::fromRows(rows);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("raw graph: ") + e.what());
  }
}

}  // namespace crystal
