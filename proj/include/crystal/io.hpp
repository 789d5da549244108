#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crystal/canon.hpp"
#include "crystal/classify.hpp"
#include "crystal/graph.hpp"

namespace crystal {

/// Malformed input text or file; the message names the offending line.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Catalogue files:
//   GEMS v1 <2p> <bipartite|nonbipartite> <count>
//   <code>            (count lines, sorted)
struct CatalogueFile {
  int vertices = 0;
  bool bipartite = false;
  std::vector<Code> codes;
  bool operator==(const CatalogueFile&) const = default;
};

std::string formatCatalogue(const CatalogueFile& file);
CatalogueFile parseCatalogue(std::string_view text);

// Class files:
//   CLASSES v1 <count>
//   class <id> <memberCount> <name|-> <nameLevel>
//   <code> <h>        (memberCount lines)
std::string formatClasses(const std::vector<ClassRecord>& classes);
std::vector<ClassRecord> parseClasses(std::string_view text);

/// Writes through a temporary file in the same directory and renames it.
void writeFileAtomically(const std::filesystem::path& path, std::string_view contents);
std::string readFile(const std::filesystem::path& path);

/// A triangulation by face pairings. Face f of a tetrahedron is the one
/// opposite its vertex f; `perm` maps vertex labels of the source
/// tetrahedron to those of the target (perm[f] is the target face).
struct FaceGluing {
  int tet = 0;
  int face = 0;
  std::array<int, 4> perm{};
  bool operator==(const FaceGluing&) const = default;
};

struct FacetGluing {
  int tetCount = 0;
  std::vector<std::array<FaceGluing, 4>> gluings;  // [tet][face]
  bool operator==(const FacetGluing&) const = default;
};

/// One line per face, 0-based tetrahedra:
///   tet <t>: face <f> -> tet <t'> face <f'> perm <abc>
/// where abc are the images of the face's vertices in ascending order.
/// Blank lines and lines starting with '#' are ignored. Errors mention
/// "dangling face", "non-involutive gluing" or "bad permutation".
FacetGluing parseFacetGluing(std::string_view text);
std::string formatFacetGluing(const FacetGluing& t);

/// Dual graph of the first barycentric subdivision, vertices coloured by the
/// dimension of the simplex they are barycentres of: 24 vertices per
/// tetrahedron, one per flag vertex < edge < face.
ColouredGraph barycentricColouredGraph(const FacetGluing& t);

/// The triangulation K(g) written as face pairings: one tetrahedron per
/// vertex, face c glued along the c-edge with matching labels.
FacetGluing gluingFromGraph(const ColouredGraph& g);

struct LegacyDecode {
  std::optional<ColouredGraph> graph;
  std::string diagnostic;  // why decoding or validation failed
};

/// Reads a letter code in the printed legacy layout (see io.cpp) and keeps
/// the result only if it is a rigid non-bipartite crystallization.
LegacyDecode decodeLegacyCode(std::string_view text);

/// Parses the rows written by describe(): colours separated by '/',
/// 1-based neighbours separated by ','.
ColouredGraph parseRawGraph(std::string_view text);

}  // namespace crystal
