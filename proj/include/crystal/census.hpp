#pragma once

#include <vector>

#include "crystal/canon.hpp"
#include "crystal/graph.hpp"

namespace crystal {

/// A 3-coloured graph representing the 2-sphere.
struct SphereGem {
  ColouredGraph graph;
  bool rigid = false;
};

/// All rigid 3-coloured sphere gems on `vertices` vertices, one per
/// colour-isomorphism class, ordered by code.
std::vector<SphereGem> generateSphereGems(int vertices);

/// All rigid crystallizations obtained by adding a colour-3 perfect matching
/// to the seed, one per colour-isomorphism class, ordered by code.
std::vector<ColouredGraph> extendWithColour3(const SphereGem& seed);

struct Catalogue {
  int vertexCount = 0;
  std::vector<Code> bipartiteCodes;     // sorted
  std::vector<Code> nonBipartiteCodes;  // sorted
};

/// Rigid crystallizations with `vertices` vertices. Seeds are spread over
/// `threads` workers (0: CRYSTAL_THREADS or the hardware concurrency); the
/// result does not depend on the schedule.
Catalogue buildCatalogue(int vertices, int threads = 0);

}  // namespace crystal
