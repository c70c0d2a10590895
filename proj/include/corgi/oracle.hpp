#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "corgi/comparator.hpp"
#include "corgi/deadline.hpp"
#include "corgi/error.hpp"
#include "corgi/facts.hpp"
#include "corgi/matchiter.hpp"
#include "corgi/patterns.hpp"
#include "corgi/relgraph.hpp"

namespace corgi {

/// Duplicate-free matches in canonical (lexicographic binding) order.
struct MatchSet {
  std::vector<Match> matches;

  std::size_t size() const { return matches.size(); }
  bool empty() const { return matches.empty(); }
  bool contains(const Match& m) const {
    return std::binary_search(matches.begin(), matches.end(), m);
  }
  bool operator==(const MatchSet&) const = default;

  static MatchSet from(std::vector<Match> ms) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    return MatchSet{std::move(ms)};
  }
};

inline constexpr std::uint64_t kDefaultOracleLimit = 10'000'000;

/// Whether every literal of `conj` holds for the given bindings.
inline bool satisfies(const Conjunction& conj, const WorkingMemory& wm,
                      const std::vector<FactId>& bindings) {
  for (const auto& lit : conj.literals()) {
    if (auto* a = std::get_if<AlphaLiteral>(&lit)) {
      const Fact& f = wm.get(bindings[a->operand.var]);
      if (!compare(f.values[a->operand.attr], a->cmp, a->constant)) return false;
    } else {
      const auto& b = std::get<BetaLiteral>(lit);
      const Fact& l = wm.get(bindings[b.left.var]);
      const Fact& r = wm.get(bindings[b.right.var]);
      if (!compare(l.values[b.left.attr], b.cmp, r.values[b.right.attr])) return false;
    }
  }
  return true;
}

/// Reference matcher: walk the full typed Cartesian product and keep every
/// tuple satisfying all literals.
inline MatchSet enumerate_all(const Conjunction& conj, const WorkingMemory& wm,
                              std::uint64_t limit = kDefaultOracleLimit, Deadline deadline = {}) {
  const auto vars = conj.vars();
  std::vector<std::vector<FactId>> domains;
  std::uint64_t product = 1;
  for (const auto& v : vars) {
    const auto& ids = wm.facts_of(v.type_name);
    domains.emplace_back(ids.begin(), ids.end());
    if (ids.empty()) {
      product = 0;
    } else if (product != 0) {
      if (product > std::numeric_limits<std::uint64_t>::max() / ids.size())
        product = std::numeric_limits<std::uint64_t>::max();
      else
        product *= ids.size();
    }
  }
  if (product > limit)
    throw Error(Errc::LimitExceeded, std::to_string(product) + " tuples exceed oracle limit " +
                                         std::to_string(limit));
  MatchSet out;
  if (product == 0) return out;

  std::vector<std::size_t> idx(vars.size(), 0);
  std::vector<FactId> tuple(vars.size());
  while (true) {
    if (deadline.poll()) throw Error(Errc::Timeout, "oracle enumeration timed out");
    for (std::size_t v = 0; v < vars.size(); ++v) tuple[v] = domains[v][idx[v]];
    if (satisfies(conj, wm, tuple)) out.matches.push_back(Match{tuple});
    std::size_t k = vars.size();
    while (k > 0) {
      --k;
      if (++idx[k] < domains[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;  // odometer order is already canonical
    }
    if (vars.empty()) return out;
  }
}

/// Drain an iterator into a canonical set.
inline MatchSet collect(MatchIterator& it) {
  std::vector<Match> all;
  while (auto m = it.next()) all.push_back(std::move(*m));
  return MatchSet::from(std::move(all));
}

/// True iff full iteration of `graph` yields exactly the oracle's set.
inline bool equivalent(const RelationGraph& graph, std::uint64_t limit = kDefaultOracleLimit) {
  MatchIterator it(graph);
  std::vector<Match> seen;
  while (auto m = it.next()) seen.push_back(std::move(*m));
  auto got = MatchSet::from(seen);
  if (got.size() != seen.size()) return false;  // duplicates
  return got == enumerate_all(graph.conjunction(), graph.working_memory(), limit);
}

inline bool equivalent(const Conjunction& conj, const WorkingMemory& wm,
                       std::uint64_t limit = kDefaultOracleLimit) {
  auto graph = RelationGraph::compile(conj, wm);
  graph.update();
  return equivalent(graph, limit);
}

}  // namespace corgi
