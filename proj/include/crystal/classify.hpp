#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crystal/canon.hpp"
#include "crystal/graph.hpp"

namespace crystal {

struct ReductionResult {
  ColouredGraph reduced;
  int rho3Count = 0;
};

struct ReductionLimits {
  int maxCycle = 8;        // cancel (m,n)-dipoles with m, n < maxCycle + 1
  int orderSlack = 16;     // abandon once the order exceeds the start order by more than this
  int maxCancellations = 256;
};

/// Repeated cancellation of {0,i} generalized dipoles, smallest m*n first
/// and then lowest base vertex, each followed by rigidify. The vertex order
/// of `g.graph` is used as given. theta with i = 0 is the identity.
/// Returns nullopt when the order cap or the cancellation cap is hit, or
/// when rigidify cannot proceed.
std::optional<ReductionResult> theta(const OrderedGraph& g, Colour i, const ReductionLimits& limits = {},
                                     int startOrder = 0);

/// theta applied to the canonically ordered copy of g.
std::optional<ReductionResult> theta(const ColouredGraph& g, Colour i, const ReductionLimits& limits = {});

/// One of the 44 move sequences: the block for permutation k (1-based,
/// lexicographic among permutations of {0,1,2,3} fixing 0) truncated after
/// position i, optionally preceded by the full blocks 1..k-1.
struct MoveSequence {
  int k = 1;
  int i = 0;
  bool chained = false;
  /// theta indices in application order (zeros included)
  std::vector<Colour> steps() const;
  std::string name() const;
  bool operator==(const MoveSequence&) const = default;
};

/// The 44 sequences, unchained ones first, each family ordered by (k, i).
const std::vector<MoveSequence>& moveSequences();

/// Applies the thetas in order, re-canonicalizing before each one. Throws
/// std::invalid_argument for a sequence outside the set.
std::optional<ReductionResult> applySequence(const ColouredGraph& g, const MoveSequence& s,
                                             const ReductionLimits& limits = {});

/// Results for every sequence in moveSequences() order, sharing common prefixes.
std::vector<std::optional<ReductionResult>> applyAllSequences(const ColouredGraph& g, const ReductionLimits& limits = {});

class ClassifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClassMember {
  Code code;
  int h = 0;
  bool operator==(const ClassMember&) const = default;
};

struct ClassRecord {
  int id = 0;                        // position of the representative in the input list
  std::vector<ClassMember> members;  // input order
  Code representative;
  std::optional<std::string> name;   // manifold of the members at level nameLevel
  int nameLevel = 0;
};

/// Splits the ordered list into classes of graphs whose reductions meet,
/// tracking the handle count h of every member. `known` maps codes to
/// manifold names; two different names at one level of a class raise
/// ClassifyError.
std::vector<ClassRecord> classifyList(const std::vector<Code>& list, const std::map<Code, std::string>& known = {},
                                      int threads = 0, const ReductionLimits& limits = {});

/// Members grouped by h, ascending.
std::vector<std::pair<int, std::vector<Code>>> splitByH(const ClassRecord& c);

/// Rigid summands found by repeatedly splitting along four-edge cuts.
std::vector<ColouredGraph> factorize(const ColouredGraph& g);

}  // namespace crystal
