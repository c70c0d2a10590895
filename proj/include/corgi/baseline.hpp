#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "corgi/comparator.hpp"
#include "corgi/deadline.hpp"
#include "corgi/facts.hpp"
#include "corgi/oracle.hpp"
#include "corgi/patterns.hpp"

namespace corgi {

/// Naive RETE-style contrast matcher. Joins variables left to right in
/// declaration order and keeps every level of grounded partial matches, the
/// way β-memories do. Every stored tuple is accounted as a full K-slot
/// binding record of 8-byte references, K being the pattern's variable count.
namespace baseline {

inline constexpr std::size_t kBytesPerBinding = 8;
inline constexpr std::size_t kDefaultMemoryCap = std::size_t{1} << 30;

struct MemoryOverflow {
  std::size_t level;          // number of variables joined when the cap was hit
  std::size_t tuples_so_far;  // tuples stored across all levels
  std::size_t bytes;
};

struct TimedOut {
  std::size_t level;
  std::size_t tuples_so_far;
};

struct Outcome {
  std::variant<MatchSet, MemoryOverflow, TimedOut> result;
  std::size_t bytes_accounted = 0;
  std::vector<std::size_t> level_sizes;

  bool completed() const { return std::holds_alternative<MatchSet>(result); }
  bool overflowed() const { return std::holds_alternative<MemoryOverflow>(result); }
  bool timed_out() const { return std::holds_alternative<TimedOut>(result); }
  const MatchSet& matches() const { return std::get<MatchSet>(result); }
};

namespace detail {

struct LevelTests {
  std::vector<AlphaLiteral> alphas;
  std::vector<BetaLiteral> unary;
  std::vector<BetaLiteral> joins;  // relate this var to an earlier one
};

inline std::vector<LevelTests> plan(const Conjunction& conj) {
  std::vector<LevelTests> levels(conj.vars().size());
  for (const auto& lit : conj.literals()) {
    if (auto* a = std::get_if<AlphaLiteral>(&lit)) {
      levels[a->operand.var].alphas.push_back(*a);
      continue;
    }
    const auto& b = std::get<BetaLiteral>(lit);
    if (b.unary())
      levels[b.left.var].unary.push_back(b);
    else
      levels[std::max(b.left.var, b.right.var)].joins.push_back(b);
  }
  return levels;
}

}  // namespace detail

inline Outcome build_and_match(const Conjunction& conj, const WorkingMemory& wm,
                               std::size_t memory_cap = kDefaultMemoryCap,
                               Deadline deadline = {}) {
  const std::size_t k = conj.vars().size();
  auto tests = detail::plan(conj);
  Outcome out;

  // α memories
  std::vector<std::vector<const Fact*>> facts(k);
  std::vector<std::vector<FactId>> ids(k);
  for (std::size_t v = 0; v < k; ++v) {
    for (FactId id : wm.facts_of(conj.vars()[v].type_name)) {
      const Fact& f = wm.get(id);
      bool ok = true;
      for (const auto& a : tests[v].alphas) ok = ok && compare(f.values[a.operand.attr], a.cmp, a.constant);
      for (const auto& b : tests[v].unary)
        ok = ok && compare(f.values[b.left.attr], b.cmp, f.values[b.right.attr]);
      if (ok) {
        facts[v].push_back(&f);
        ids[v].push_back(id);
      }
    }
  }

  // β memories: level j holds tuples over vars [0, j], stored flat.
  std::vector<std::vector<std::uint64_t>> memories;
  std::size_t stored = 0;
  std::size_t prev_count = k == 0 ? 1 : 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::uint64_t> next;
    std::size_t count = 0;
    std::size_t in_count = j == 0 ? 1 : prev_count;
    for (std::size_t t = 0; t < in_count; ++t) {
      const std::uint64_t* prefix = j == 0 ? nullptr : memories[j - 1].data() + t * j;
      for (std::uint64_t c = 0; c < facts[j].size(); ++c) {
        if (deadline.poll()) {
          out.result = TimedOut{j + 1, stored + count};
          return out;
        }
        const Fact& cand = *facts[j][c];
        bool ok = true;
        for (const auto& b : tests[j].joins) {
          bool left_is_new = b.left.var == j;
          const Fact& other = *facts[left_is_new ? b.right.var : b.left.var]
                                     [prefix[left_is_new ? b.right.var : b.left.var]];
          ok = left_is_new ? compare(cand.values[b.left.attr], b.cmp, other.values[b.right.attr])
                           : compare(other.values[b.left.attr], b.cmp, cand.values[b.right.attr]);
          if (!ok) break;
        }
        if (!ok) continue;
        out.bytes_accounted += kBytesPerBinding * k;
        if (out.bytes_accounted > memory_cap) {
          out.result = MemoryOverflow{j + 1, stored + count + 1, out.bytes_accounted};
          return out;
        }
        if (j) next.insert(next.end(), prefix, prefix + j);
        next.push_back(c);
        ++count;
      }
    }
    stored += count;
    out.level_sizes.push_back(count);
    memories.push_back(std::move(next));
    prev_count = count;
  }

  static const std::vector<std::uint64_t> kNoTuples;
  const auto& last = k == 0 ? kNoTuples : memories.back();
  std::vector<Match> ms;
  ms.reserve(prev_count);
  for (std::size_t t = 0; t < prev_count; ++t) {
    Match m;
    m.bindings.resize(k);
    for (std::size_t v = 0; v < k; ++v) m.bindings[v] = ids[v][last[t * k + v]];
    ms.push_back(std::move(m));
  }
  out.result = MatchSet::from(std::move(ms));
  return out;
}

}  // namespace baseline
}  // namespace corgi
