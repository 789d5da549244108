#include "crystal/invariants.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cctype>
#include <limits>

namespace crystal {

namespace {

using BigInt = boost::multiprecision::cpp_int;

std::vector<BigInt> smithDiagonalBig(const IntMatrix<std::int64_t>& m) {
  IntMatrix<BigInt> big(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) big(r, c) = m(r, c);
  return smithDiagonal<BigInt>(std::move(big));
}

// Invariant factors of m as (rank, factors > 1); retries in arbitrary
// precision if 64-bit elimination overflows.
std::pair<int, std::vector<std::int64_t>> invariantFactors(const IntMatrix<std::int64_t>& m) {
  std::vector<std::int64_t> factors;
  int rank = 0;
  try {
    auto diag = smithDiagonal<std::int64_t>(m);
    rank = static_cast<int>(diag.size());
    for (auto d : diag)
      if (d > 1) factors.push_back(d);
  } catch (const std::overflow_error&) {
    auto diag = smithDiagonalBig(m);
    rank = static_cast<int>(diag.size());
    for (const auto& d : diag) {
      if (d <= 1) continue;
      if (d > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("homology: torsion coefficient exceeds 64 bits");
      factors.push_back(d.convert_to<std::int64_t>());
    }
  }
  return {rank, factors};
}

}  // namespace

std::string AbelianGroup::toString() const {
  std::string out;
  auto add = [&](const std::string& part) {
    if (!out.empty()) out += " + ";
    out += part;
  };
  if (rank == 1) add("Z");
  if (rank > 1) add("Z^" + std::to_string(rank));
  for (auto d : torsion) add("Z" + std::to_string(d));
  return out.empty() ? "0" : out;
}

AbelianGroup cokernel(const IntMatrix<std::int64_t>& relations, int generators) {
  if (relations.rows() > 0 && relations.cols() != generators) throw std::invalid_argument("cokernel: column count mismatch");
  AbelianGroup group;
  if (relations.rows() == 0 || generators == 0) {
    group.rank = generators;
    return group;
  }
  auto [rank, factors] = invariantFactors(relations);
  group.rank = generators - rank;
  group.torsion = std::move(factors);
  return group;
}

ChainComplex chainComplex(const ColouredGraph& g) {
  if (g.colours() != 4) throw std::invalid_argument("chainComplex: requires a 4-coloured graph");
  ChainComplex cx;
  // index of the residue containing v, per colour set
  std::array<ResidueLabels, 16> labels;
  std::array<int, 16> offset{};
  for (int h = 0; h <= 3; ++h) {
    int count = 0;
    for (ColourSet set = 0; set < 16; ++set) {
      if (colourCount(set) != 3 - h) continue;
      labels[set] = residueLabels(g, set);
      offset[set] = count;
      count += labels[set].count;
      for (auto& r : residues(g, set)) cx.cells[static_cast<std::size_t>(h)].push_back(std::move(r));
    }
  }
  for (int h = 1; h <= 3; ++h) {
    auto& m = cx.boundary[static_cast<std::size_t>(h)];
    m = IntMatrix<std::int64_t>::Zero(cx.cellCount(h - 1), cx.cellCount(h));
    int col = 0;
    for (const auto& cell : cx.cells[static_cast<std::size_t>(h)]) {
      const Vertex v = cell.members.front();
      int position = 0;
      for (Colour d = 0; d < 4; ++d) {
        if (cell.colours & colourBit(d)) continue;
        const auto face = static_cast<ColourSet>(cell.colours | colourBit(d));
        const int row = offset[face] + labels[face].label[static_cast<std::size_t>(v)];
        m(row, col) += position % 2 == 0 ? 1 : -1;
        ++position;
      }
      ++col;
    }
  }
  for (int h = 2; h <= 3; ++h) {
    const auto& hi = cx.boundary[static_cast<std::size_t>(h)];
    const auto& lo = cx.boundary[static_cast<std::size_t>(h - 1)];
    if (hi.cols() > 0 && lo.rows() > 0 && !(lo * hi).isZero())
      throw std::logic_error("chainComplex: boundary maps do not compose to zero");
  }
  return cx;
}

std::array<AbelianGroup, 4> homology(const ChainComplex& cx) {
  std::array<int, 5> rank{};  // rank[h] = rank of boundary[h]; rank[0] = rank[4] = 0
  std::array<std::vector<std::int64_t>, 5> factors;
  for (int h = 1; h <= 3; ++h) {
    const auto& m = cx.boundary[static_cast<std::size_t>(h)];
    if (m.rows() == 0 || m.cols() == 0) continue;
    auto [r, f] = invariantFactors(m);
    rank[static_cast<std::size_t>(h)] = r;
    factors[static_cast<std::size_t>(h)] = std::move(f);
  }
  std::array<AbelianGroup, 4> out;
  for (int h = 0; h <= 3; ++h) {
    out[static_cast<std::size_t>(h)].rank = cx.cellCount(h) - rank[static_cast<std::size_t>(h)] - rank[static_cast<std::size_t>(h + 1)];
    out[static_cast<std::size_t>(h)].torsion = factors[static_cast<std::size_t>(h + 1)];
  }
  return out;
}

std::array<AbelianGroup, 4> homology(const ColouredGraph& g) { return homology(chainComplex(g)); }

Presentation pi1Presentation(const ColouredGraph& g, Colour i, Colour j) {
  if (g.colours() != 4 || i == j || i < 0 || j < 0 || i > 3 || j > 3)
    throw std::invalid_argument("pi1Presentation: need two distinct colours of a 4-coloured graph");
  Colour h = -1, k = -1;
  for (Colour c = 0; c < 4; ++c) {
    if (c == i || c == j) continue;
    (h < 0 ? h : k) = c;
  }
  const auto gens = residueLabels(g, static_cast<ColourSet>(colourBit(i) | colourBit(j)));
  const auto rels = residues(g, static_cast<ColourSet>(colourBit(h) | colourBit(k)));
  Presentation p;
  p.generators = gens.count - 1;
  for (std::size_t r = 1; r < rels.size(); ++r) {
    std::vector<int> word;
    const Vertex start = rels[r].members.front();
    Vertex v = start;
    Colour next = h;
    do {
      // v is entered along the colour opposite to the one we leave by
      const int sign = next == h ? -1 : 1;
      const int gen = gens.label[static_cast<std::size_t>(v)];
      if (gen != 0) word.push_back(sign * gen);
      v = g.neighbour(v, next);
      next = next == h ? k : h;
    } while (v != start);
    p.relators.push_back(std::move(word));
  }
  return p;
}

AbelianGroup abelianize(const Presentation& p) {
  IntMatrix<std::int64_t> m = IntMatrix<std::int64_t>::Zero(static_cast<Eigen::Index>(p.relators.size()), p.generators);
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (int letter : p.relators[r]) {
      const int gen = letter < 0 ? -letter : letter;
      if (gen < 1 || gen > p.generators) throw std::invalid_argument("abelianize: relator references an unknown generator");
      m(static_cast<Eigen::Index>(r), gen - 1) += letter < 0 ? -1 : 1;
    }
  return cokernel(m, p.generators);
}

namespace {

class PresentationParser {
 public:
  explicit PresentationParser(std::string_view s) : s_(s) {}

  Presentation parse() {
    expect('<');
    Presentation p;
    while (true) {
      skip();
      if (peek() == '|' || peek() == '/') break;
      char ch = take();
      if (ch != static_cast<char>('a' + p.generators)) fail("generators must be a, b, c, ... in order");
      ++p.generators;
      skip();
      if (peek() == ',') ++pos_;
    }
    generators_ = p.generators;
    if (peek() != '|' && peek() != '/') fail("expected '|'");
    ++pos_;
    while (true) {
      skip();
      if (peek() == '>') break;
      p.relators.push_back(word(false));
      skip();
      if (peek() == '=') {
        ++pos_;
        expect('1');
      }
      skip();
      if (peek() == ',') ++pos_;
      else if (peek() != '>') fail("expected ',' or '>'");
    }
    ++pos_;
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return p;
  }

 private:
  std::vector<int> word(bool inBracket) {
    std::vector<int> out;
    while (true) {
      skip();
      char ch = peek();
      std::vector<int> piece;
      if (ch == '[') {
        ++pos_;
        auto x = word(true);
        expect(',');
        auto y = word(true);
        expect(']');
        piece = x;
        piece.insert(piece.end(), y.begin(), y.end());
        auto xi = inverse(x), yi = inverse(y);
        piece.insert(piece.end(), xi.begin(), xi.end());
        piece.insert(piece.end(), yi.begin(), yi.end());
      } else if (ch >= 'a' && ch <= 'z') {
        ++pos_;
        int gen = ch - 'a' + 1;
        if (gen > generators_) fail("unknown generator");
        piece = {gen};
      } else {
        break;
      }
      long power = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        skip();
        bool negative = false;
        if (peek() == '-') {
          negative = true;
          ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
        power = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          power = power * 10 + (take() - '0');
          if (power > 10000) fail("exponent too large");
        }
        if (negative) power = -power;
      }
      auto unit = power < 0 ? inverse(piece) : piece;
      for (long t = 0; t < (power < 0 ? -power : power); ++t) out.insert(out.end(), unit.begin(), unit.end());
    }
    if (out.empty() && !inBracket && peek() != '1') fail("empty relator");
    if (out.empty() && peek() == '1') ++pos_;  // the trivial word written as 1
    return out;
  }

  static std::vector<int> inverse(const std::vector<int>& w) {
    std::vector<int> out(w.rbegin(), w.rend());
    for (auto& x : out) x = -x;
    return out;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char take() {
    if (pos_ >= s_.size()) fail("unexpected end of input");
    return s_[pos_++];
  }
  void expect(char ch) {
    skip();
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("presentation: " + msg + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int generators_ = 0;
};

}  // namespace

Presentation parsePresentation(std::string_view text) { return PresentationParser(text).parse(); }

std::string toString(const Presentation& p) {
  // a..z, then x27, x28, ...
  auto name = [](int gen) { return gen <= 26 ? std::string(1, static_cast<char>('a' + gen - 1)) : "x" + std::to_string(gen); };
  std::string out = "<";
  for (int g = 1; g <= p.generators; ++g) {
    if (g > 1) out += ",";
    out += name(g);
  }
  out += " |";
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    out += r ? ", " : " ";
    if (p.relators[r].empty()) out += "1";
    for (int letter : p.relators[r]) {
      const int gen = letter < 0 ? -letter : letter;
      out += name(gen);
      if (letter < 0) out += "^-1";
    }
  }
  out += ">";
  return out;
}

}  // namespace crystal
