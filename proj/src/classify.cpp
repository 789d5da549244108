#include "crystal/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "crystal/moves.hpp"

namespace crystal {

namespace {

// Permutations of {0,1,2,3} fixing 0, lexicographic.
const std::vector<std::array<Colour, 4>>& fixingZero() {
  static const std::vector<std::array<Colour, 4>> perms = [] {
    std::vector<std::array<Colour, 4>> out;
    std::array<Colour, 4> p{0, 1, 2, 3};
    do {
      out.push_back(p);
    } while (std::next_permutation(p.begin() + 1, p.end()));
    return out;
  }();
  return perms;
}

int workerCount(int requested, std::size_t jobs) {
  int n = requested;
  if (n <= 0) {
    const char* env = std::getenv("CRYSTAL_THREADS");
    n = env ? std::atoi(env) : 0;
  }
  if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::max(1, std::min<int>(n, static_cast<int>(jobs)));
}

}  // namespace

std::optional<ReductionResult> theta(const OrderedGraph& g, Colour i, const ReductionLimits& limits, int startOrder) {
  if (i < 0 || i > 3) throw std::invalid_argument("theta: colour out of range");
  ReductionResult result{g.graph, 0};
  if (i == 0) return result;
  const int cap = (startOrder > 0 ? startOrder : g.graph.order()) + limits.orderSlack;
  for (int done = 0;; ++done) {
    auto candidates = findGenDipoles(result.reduced, i, limits.maxCycle, limits.maxCycle);
    if (candidates.empty()) return result;
    if (done >= limits.maxCancellations) return std::nullopt;
    try {
      auto cancelled = cancelGenDipole(result.reduced, candidates.front());
      if (cancelled.order() > cap) return std::nullopt;
      auto rigid = rigidify(cancelled);
      result.reduced = std::move(rigid.graph);
      result.rho3Count += rigid.rho3Count;
    } catch (const MoveError&) {
      return std::nullopt;
    }
    if (result.reduced.order() > cap) return std::nullopt;
  }
}

std::optional<ReductionResult> theta(const ColouredGraph& g, Colour i, const ReductionLimits& limits) {
  return theta(canonicalOrder(g), i, limits);
}

std::vector<Colour> MoveSequence::steps() const {
  const auto& perms = fixingZero();
  if (k < 1 || k > 6 || i < 0 || i > 3 || (chained && k < 2)) throw std::invalid_argument("move sequence out of range");
  std::vector<Colour> out;
  if (chained)
    for (int b = 0; b < k - 1; ++b) out.insert(out.end(), perms[static_cast<std::size_t>(b)].begin(), perms[static_cast<std::size_t>(b)].end());
  const auto& last = perms[static_cast<std::size_t>(k - 1)];
  out.insert(out.end(), last.begin(), last.begin() + i + 1);
  return out;
}

std::string MoveSequence::name() const {
  std::string s;
  for (Colour c : steps()) s += static_cast<char>('0' + c);
  return s;
}

const std::vector<MoveSequence>& moveSequences() {
  static const std::vector<MoveSequence> all = [] {
    std::vector<MoveSequence> out;
    for (int k = 1; k <= 6; ++k)
      for (int i = 0; i <= 3; ++i) out.push_back({k, i, false});
    for (int k = 2; k <= 6; ++k)
      for (int i = 0; i <= 3; ++i) out.push_back({k, i, true});
    return out;
  }();
  return all;
}

namespace {

// Memoized evaluation of theta chains, keyed on the nonzero steps applied so far.
class SequenceRunner {
 public:
  SequenceRunner(const ColouredGraph& g, const ReductionLimits& limits) : start_(g), limits_(limits) {}

  std::optional<ReductionResult> run(const std::vector<Colour>& steps) {
    std::vector<Colour> key;
    for (Colour c : steps)
      if (c != 0) key.push_back(c);
    return eval(key);
  }

 private:
  std::optional<ReductionResult> eval(const std::vector<Colour>& key) {
    if (key.empty()) return ReductionResult{start_, 0};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Colour> prefix(key.begin(), key.end() - 1);
    auto before = eval(prefix);
    std::optional<ReductionResult> out;
    if (before) {
      auto next = theta(canonicalOrder(before->reduced), key.back(), limits_, start_.order());
      if (next) out = ReductionResult{std::move(next->reduced), before->rho3Count + next->rho3Count};
    }
    memo_.emplace(key, out);
    return out;
  }

  ColouredGraph start_;
  ReductionLimits limits_;
  std::map<std::vector<Colour>, std::optional<ReductionResult>> memo_;
};

}  // namespace

std::optional<ReductionResult> applySequence(const ColouredGraph& g, const MoveSequence& s, const ReductionLimits& limits) {
  const auto& all = moveSequences();
  if (std::find(all.begin(), all.end(), s) == all.end()) throw std::invalid_argument("applySequence: unknown move sequence");
  return SequenceRunner(g, limits).run(s.steps());
}

std::vector<std::optional<ReductionResult>> applyAllSequences(const ColouredGraph& g, const ReductionLimits& limits) {
  SequenceRunner runner(g, limits);
  std::vector<std::optional<ReductionResult>> out;
  for (const auto& s : moveSequences()) out.push_back(runner.run(s.steps()));
  return out;
}

std::vector<ClassRecord> classifyList(const std::vector<Code>& list, const std::map<Code, std::string>& known, int threads,
                                      const ReductionLimits& limits) {
  const std::size_t n = list.size();
  // reduced code and h_epsilon for every (graph, sequence)
  std::vector<std::vector<std::optional<std::pair<Code, int>>>> reduced(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t g; (g = next++) < n;) {
      auto results = applyAllSequences(decode(list[g]), limits);
      for (auto& r : results) {
        if (r) reduced[g].emplace_back(std::pair{code(r->reduced), r->rho3Count});
        else reduced[g].emplace_back(std::nullopt);
      }
    }
  };
  const int workers = workerCount(threads, n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<int> h(n, 0), classOf(n);
  std::vector<std::vector<std::size_t>> members(n);
  std::iota(classOf.begin(), classOf.end(), 0);
  for (std::size_t g = 0; g < n; ++g) members[g] = {g};
  // reduced code -> (earlier graph, h_epsilon') in discovery order
  std::unordered_map<Code, std::vector<std::pair<std::size_t, int>>> store;

  for (std::size_t g = 0; g < n; ++g) {
    for (const auto& entry : reduced[g]) {
      if (!entry) continue;
      auto it = store.find(entry->first);
      if (it == store.end()) continue;
      const int hEps = entry->second;
      for (const auto& [other, hOther] : it->second) {
        const int a = classOf[other], b = classOf[g];
        if (a == b) continue;
        const int left = h[other] - hOther, right = h[g] - hEps;
        if (left >= right) {
          for (auto m : members[static_cast<std::size_t>(b)]) h[m] += left - right;
        } else {
          for (auto m : members[static_cast<std::size_t>(a)]) h[m] += right - left;
        }
        // the merged class keeps the id of its earliest member
        const int keep = std::min(a, b), drop = std::max(a, b);
        for (auto m : members[static_cast<std::size_t>(drop)]) classOf[m] = keep;
        auto& dst = members[static_cast<std::size_t>(keep)];
        dst.insert(dst.end(), members[static_cast<std::size_t>(drop)].begin(), members[static_cast<std::size_t>(drop)].end());
        std::sort(dst.begin(), dst.end());
        members[static_cast<std::size_t>(drop)].clear();
      }
    }
    for (const auto& entry : reduced[g])
      if (entry) store[entry->first].emplace_back(g, entry->second);
  }

  std::vector<ClassRecord> out;
  for (std::size_t c = 0; c < n; ++c) {
    if (members[c].empty()) continue;
    ClassRecord rec;
    rec.id = static_cast<int>(c);
    rec.representative = list[members[c].front()];
    for (auto m : members[c]) {
      rec.members.push_back({list[m], h[m]});
      auto it = known.find(list[m]);
      if (it == known.end()) continue;
      if (rec.name && rec.nameLevel == h[m] && *rec.name != it->second)
        throw ClassifyError("classify: class " + std::to_string(c) + " has conflicting names '" + *rec.name + "' and '" +
                            it->second + "'");
      if (!rec.name || h[m] < rec.nameLevel) {
        rec.name = it->second;
        rec.nameLevel = h[m];
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<std::pair<int, std::vector<Code>>> splitByH(const ClassRecord& c) {
  std::map<int, std::vector<Code>> groups;
  for (const auto& m : c.members) groups[m.h].push_back(m.code);
  return {groups.begin(), groups.end()};
}

std::vector<ColouredGraph> factorize(const ColouredGraph& g) {
  auto split = findSumSplit(g);
  if (!split) return {g};
  std::vector<ColouredGraph> out;
  for (const ColouredGraph* piece : {&split->left, &split->right}) {
    ColouredGraph reducedPiece = *piece;
    try {
      reducedPiece = rigidify(*piece).graph;
    } catch (const MoveError&) {
      // keep the unreduced piece; it still represents the summand
    }
    auto parts = factorize(reducedPiece);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

}  // namespace crystal
