#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "crystal/graph.hpp"

namespace crystal {

template <typename Scalar>
using IntMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

template <typename Scalar>
Scalar checkedMulSub(const Scalar& a, const Scalar& q, const Scalar& b) {
  // a - q * b
  if constexpr (std::is_integral_v<Scalar>) {
    Scalar prod, out;
    if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out))
      throw std::overflow_error("smith form: integer overflow");
    return out;
  } else {
    return a - q * b;
  }
}

template <typename Scalar>
Scalar absValue(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

}  // namespace detail

/// Nonzero diagonal of the Smith normal form of an integer matrix, in
/// divisibility order and all positive. Throws std::overflow_error when a
/// built-in integer Scalar overflows during elimination.
template <typename Scalar>
std::vector<Scalar> smithDiagonal(IntMatrix<Scalar> a) {
  using detail::absValue;
  using detail::checkedMulSub;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<Scalar> diag;
  Eigen::Index t = 0;
  while (t < rows && t < cols) {
    // pivot: nonzero entry of least absolute value in the trailing block
    Eigen::Index pr = -1, pc = -1;
    Scalar best = 0;
    for (Eigen::Index c = t; c < cols; ++c)
      for (Eigen::Index r = t; r < rows; ++r)
        if (a(r, c) != 0 && (pr < 0 || absValue<Scalar>(a(r, c)) < best)) {
          best = absValue<Scalar>(a(r, c));
          pr = r;
          pc = c;
        }
    if (pr < 0) break;
    a.row(t).swap(a.row(pr));
    a.col(t).swap(a.col(pc));

    bool clean = false;
    while (!clean) {
      clean = true;
      for (Eigen::Index r = t + 1; r < rows; ++r) {
        if (a(r, t) == 0) continue;
        Scalar q = a(r, t) / a(t, t);
        for (Eigen::Index c = t; c < cols; ++c) a(r, c) = checkedMulSub<Scalar>(a(r, c), q, a(t, c));
        if (a(r, t) != 0) {
          a.row(t).swap(a.row(r));
          clean = false;
        }
      }
      for (Eigen::Index c = t + 1; c < cols; ++c) {
        if (a(t, c) == 0) continue;
        Scalar q = a(t, c) / a(t, t);
        for (Eigen::Index r = t; r < rows; ++r) a(r, c) = checkedMulSub<Scalar>(a(r, c), q, a(r, t));
        if (a(t, c) != 0) {
          a.col(t).swap(a.col(c));
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: fold an offending row into the pivot row and repeat
      for (Eigen::Index r = t + 1; r < rows && clean; ++r)
        for (Eigen::Index c = t + 1; c < cols; ++c)
          if (a(r, c) % a(t, t) != 0) {
            for (Eigen::Index k = t; k < cols; ++k) a(t, k) = checkedMulSub<Scalar>(a(t, k), Scalar(-1), a(r, k));
            clean = false;
            break;
          }
    }
    diag.push_back(absValue<Scalar>(a(t, t)));
    ++t;
  }
  return diag;
}

struct AbelianGroup {
  int rank = 0;
  std::vector<std::int64_t> torsion;  // each >= 2, d1 | d2 | ...
  bool operator==(const AbelianGroup&) const = default;
  /// "0", "Z", "Z^2", "Z + Z2", "Z2 + Z2", ...
  std::string toString() const;
};

/// Cokernel of the relation matrix whose rows are relations among
/// `generators` free generators.
AbelianGroup cokernel(const IntMatrix<std::int64_t>& relations, int generators);

struct ChainComplex {
  /// cells[h]: the residues dual to h-cells (colour sets of size 3 - h)
  std::array<std::vector<Residue>, 4> cells;
  /// boundary[h] maps h-chains to (h-1)-chains, rows indexed by (h-1)-cells;
  /// boundary[0] is unused.
  std::array<IntMatrix<std::int64_t>, 4> boundary;
  int cellCount(int h) const { return static_cast<int>(cells[static_cast<std::size_t>(h)].size()); }
};

/// Cellular chain complex of the pseudocomplex K(g). Throws std::logic_error
/// if the boundary maps do not compose to zero.
ChainComplex chainComplex(const ColouredGraph& g);

/// H0..H3 with integer coefficients.
std::array<AbelianGroup, 4> homology(const ColouredGraph& g);
std::array<AbelianGroup, 4> homology(const ChainComplex& complex);

struct Presentation {
  int generators = 0;
  /// each letter is a 1-based generator index, negative for an inverse
  std::vector<std::vector<int>> relators;
  bool operator==(const Presentation&) const = default;
};

/// Fundamental group presentation read off the {i,j}- and complementary
/// {h,k}-coloured cycles of a crystallization. Generators and relators are
/// numbered by least vertex, the cycle through the least vertex dropped.
Presentation pi1Presentation(const ColouredGraph& g, Colour i, Colour j);

AbelianGroup abelianize(const Presentation& p);

/// Parses "<a,b,c | [a^-1,c], bcb^-1ca^-2, ...>". Generators are single
/// lowercase letters; "/" may replace "|"; a relator may end in "=1";
/// [x,y] is x y x^-1 y^-1.
Presentation parsePresentation(std::string_view text);

/// "<a,b | ab^-1, ...>"
std::string toString(const Presentation& p);

}  // namespace crystal
