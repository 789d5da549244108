#include "crystal/canon.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace crystal {

namespace {

constexpr std::string_view kAlphabet = "-0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ_abcdefghijklmnopqrstuvwxyz";

int digitValue(char ch) {
  auto pos = kAlphabet.find(ch);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

int symbolWidth(int order) { return order <= 64 ? 1 : 2; }

std::vector<std::vector<Colour>> colourPermutations(int colours) {
  std::vector<Colour> perm(static_cast<std::size_t>(colours));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Colour>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

const std::vector<std::vector<Colour>>& permutationsFor(int colours) {
  static const auto three = colourPermutations(3);
  static const auto four = colourPermutations(4);
  return colours == 3 ? three : four;
}

struct Canonical {
  std::vector<Vertex> table;  // canonical colour-major neighbour table
  std::vector<Vertex> ordering;
  std::vector<Colour> colourOrder;
};

Canonical canonicalize(const ColouredGraph& g) {
  const int order = g.order(), colours = g.colours();
  const auto n = static_cast<std::size_t>(order);
  Canonical best;
  best.table.resize(n * static_cast<std::size_t>(colours));
  bool haveBest = false;

  std::vector<Vertex> seq(n), label(n);
  for (Vertex root = 0; root < order; ++root) {
    for (const auto& perm : permutationsFor(colours)) {
      std::fill(label.begin(), label.end(), -1);
      std::size_t size = 0, head = 0;
      seq[size++] = root;
      label[static_cast<std::size_t>(root)] = 0;
      while (head < size) {
        Vertex v = seq[head++];
        for (Colour c : perm) {
          Vertex w = g.neighbour(v, c);
          if (label[static_cast<std::size_t>(w)] < 0) {
            label[static_cast<std::size_t>(w)] = static_cast<Vertex>(size);
            seq[size++] = w;
          }
        }
      }
      if (size != n) throw std::invalid_argument("code: graph is disconnected");

      // Lexicographic comparison with early abort; once smaller, overwrite.
      int state = haveBest ? 0 : -1;  // -1: writing a new best, 0: tied so far
      for (int k = 0; k < colours && state == 0; ++k) {
        const Colour c = perm[static_cast<std::size_t>(k)];
        for (std::size_t t = 0; t < n; ++t) {
          Vertex value = label[static_cast<std::size_t>(g.neighbour(seq[t], c))];
          Vertex& slot = best.table[static_cast<std::size_t>(k) * n + t];
          if (value > slot) {
            state = 1;
            break;
          }
          if (value < slot) {
            state = -1;
            break;
          }
        }
      }
      if (state != -1) continue;
      for (int k = 0; k < colours; ++k) {
        const Colour c = perm[static_cast<std::size_t>(k)];
        for (std::size_t t = 0; t < n; ++t)
          best.table[static_cast<std::size_t>(k) * n + t] = label[static_cast<std::size_t>(g.neighbour(seq[t], c))];
      }
      best.ordering = seq;
      best.colourOrder = perm;
      haveBest = true;
    }
  }
  return best;
}

std::string serialize(int colours, int order, const std::vector<Vertex>& table) {
  std::string out = std::to_string(colours) + ":" + std::to_string(order) + ":";
  const int width = symbolWidth(order);
  out.reserve(out.size() + table.size() * static_cast<std::size_t>(width));
  for (Vertex v : table) {
    if (width == 2) out.push_back(kAlphabet[static_cast<std::size_t>(v / 64)]);
    out.push_back(kAlphabet[static_cast<std::size_t>(v % 64)]);
  }
  return out;
}

}  // namespace

Code code(const ColouredGraph& g) {
  auto canon = canonicalize(g);
  return Code{serialize(g.colours(), g.order(), canon.table)};
}

OrderedGraph canonicalOrder(const ColouredGraph& g) {
  auto canon = canonicalize(g);
  return OrderedGraph{ColouredGraph(g.colours(), g.order(), std::move(canon.table)), std::move(canon.ordering),
                      std::move(canon.colourOrder)};
}

ColouredGraph decode(const Code& c) {
  const std::string& s = c.text;
  std::size_t pos = 0;
  auto readNumber = [&](const char* what) {
    std::size_t start = pos;
    long value = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      value = value * 10 + (s[pos] - '0');
      if (value > 1'000'000) throw CodeError(std::string("code: ") + what + " too large", start);
      ++pos;
    }
    if (pos == start) throw CodeError(std::string("code: expected ") + what, start);
    if (pos >= s.size() || s[pos] != ':') throw CodeError("code: expected ':'", pos);
    ++pos;
    return static_cast<int>(value);
  };
  const int colours = readNumber("colour count");
  if (colours < 3 || colours > 4) throw CodeError("code: colour count must be 3 or 4", 0);
  const std::size_t orderPos = pos;
  const int order = readNumber("order");
  if (order <= 0 || order % 2) throw CodeError("code: order must be even and positive", orderPos);
  const int width = symbolWidth(order);
  const std::size_t expected = static_cast<std::size_t>(colours * order * width);
  if (s.size() - pos != expected)
    throw CodeError("code: body has length " + std::to_string(s.size() - pos) + ", expected " + std::to_string(expected),
                    pos);
  std::vector<Vertex> table;
  table.reserve(static_cast<std::size_t>(colours * order));
  for (int k = 0; k < colours * order; ++k) {
    int value = 0;
    for (int d = 0; d < width; ++d, ++pos) {
      int digit = digitValue(s[pos]);
      if (digit < 0) throw CodeError("code: invalid symbol", pos);
      value = value * 64 + digit;
    }
    if (value >= order) throw CodeError("code: vertex out of range", pos - static_cast<std::size_t>(width));
    table.push_back(value);
  }
  try {
    return ColouredGraph(colours, order, std::move(table));
  } catch (const std::invalid_argument& e) {
    throw CodeError(std::string("code: ") + e.what(), 0);
  }
}

bool isColourIsomorphic(const ColouredGraph& a, const ColouredGraph& b) {
  if (a.colours() != b.colours() || a.order() != b.order()) return false;
  return code(a) == code(b);
}

}  // namespace crystal
