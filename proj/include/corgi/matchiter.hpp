#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <optional>
#include <vector>

#include "corgi/bit_table.hpp"
#include "corgi/error.hpp"
#include "corgi/relgraph.hpp"

namespace corgi {

/// One full binding: `bindings[v]` is the fact bound to variable index v
/// (declaration order).
struct Match {
  std::vector<FactId> bindings;

  auto operator<=>(const Match&) const = default;
};

struct IteratorOptions {
  /// Visiting order of candidates per variable: returns true if `a` should be
  /// tried before `b` for variable `var`. Unset means ascending FactId.
  std::function<bool(std::size_t var, FactId a, FactId b)> candidate_order;
};

/// Lazy backward iteration over a relation graph.
///
/// Variables are bound from last to first in graph order, so the last
/// variable is the outermost loop. The candidates of a variable are its edge
/// collection intersected with the mapping of every β node that relates it to
/// an already-bound later variable. Disconnected components of the pattern are
/// iterated independently and combined as a Cartesian product.
///
/// State is one candidate bitset and one cursor per variable; yielded matches
/// are never retained. Any update of the graph invalidates the iterator.
class MatchIterator {
 public:
  explicit MatchIterator(const RelationGraph& graph, IteratorOptions options = {})
      : graph_(&graph), epoch_(graph.epoch()) {
    if (graph.pending())
      throw Error(Errc::PendingChanges, "graph has unconsumed working-memory changes");
    std::size_t nvars = graph.conjunction().vars().size();
    current_.bindings.assign(nvars, SlotIndex::kEmpty);
    bound_slot_.assign(nvars, 0);
    depth_of_.assign(nvars, 0);

    if (options.candidate_order) {
      custom_order_.resize(nvars);
      for (std::size_t v = 0; v < nvars; ++v) {
        const auto& vs = graph.state(v);
        custom_order_[v] = vs.ordered;
        std::stable_sort(custom_order_[v].begin(), custom_order_[v].end(),
                         [&](std::size_t a, std::size_t b) {
                           return options.candidate_order(v, vs.slots.fact_at(a),
                                                          vs.slots.fact_at(b));
                         });
      }
    }

    for (const auto& comp : graph.components()) {
      ComponentState cs;
      for (auto it = comp.vars.rbegin(); it != comp.vars.rend(); ++it) {
        Level lv;
        lv.var = *it;
        depth_of_[*it] = cs.levels.size();
        for (auto bi : graph.state(*it).betas)
          if (graph.beta_nodes()[bi].earlier == *it) lv.constraints.push_back(bi);
        cs.levels.push_back(std::move(lv));
      }
      comps_.push_back(std::move(cs));
    }
    // Innermost first: the component holding the last variable changes slowest.
    std::sort(comps_.begin(), comps_.end(), [&](const ComponentState& a, const ComponentState& b) {
      return graph.position(a.levels.front().var) < graph.position(b.levels.front().var);
    });
  }

  std::optional<Match> next() {
    if (graph_->epoch() != epoch_)
      throw Error(Errc::InvalidatedIterator, "relation graph was updated after iterator creation");
    if (exhausted_) return std::nullopt;
    if (!started_) {
      started_ = true;
      for (auto& cs : comps_) {
        if (!advance(cs)) return finish();
      }
      return yield();
    }
    for (std::size_t i = 0;; ++i) {
      if (i == comps_.size()) return finish();
      if (advance(comps_[i])) break;
      comps_[i].primed = false;
      if (!advance(comps_[i])) return finish();
    }
    return yield();
  }

  std::size_t materialized() const { return materialized_; }
  bool exhausted() const { return exhausted_; }

  std::size_t memory_bytes() const {
    std::size_t total = sizeof(*this) + current_.bindings.capacity() * sizeof(FactId) +
                        bound_slot_.capacity() * sizeof(std::size_t) * 2;
    for (const auto& cs : comps_)
      for (const auto& lv : cs.levels)
        total += lv.buffer.capacity() * sizeof(bits::Word) +
                 lv.constraints.capacity() * sizeof(std::size_t);
    for (const auto& o : custom_order_) total += o.capacity() * sizeof(std::size_t);
    total += scratch_.capacity() * sizeof(bits::Word);
    return total;
  }

 private:
  struct Level {
    std::size_t var = 0;
    std::vector<std::size_t> constraints;  // β nodes with this var as earlier
    std::vector<bits::Word> buffer;
    std::size_t cursor = 0;
  };

  struct ComponentState {
    std::vector<Level> levels;  // outermost (last in graph order) first
    bool primed = false;
  };

  std::optional<Match> yield() {
    ++materialized_;
    return current_;
  }

  std::optional<Match> finish() {
    exhausted_ = true;
    return std::nullopt;
  }

  const std::vector<std::size_t>& visit_order(std::size_t var) const {
    return custom_order_.empty() ? graph_->state(var).ordered : custom_order_[var];
  }

  // Candidates of `lv.var` given the bindings of all shallower levels.
  void fill(std::vector<bits::Word>& out, const Level& lv) const {
    const auto& cand = graph_->state(lv.var).candidates;
    out.assign(cand.begin(), cand.end());
    for (auto bi : lv.constraints) {
      const auto& n = graph_->beta_nodes()[bi];
      bits::and_into(out, n.table.column(bound_slot_[n.later]));
    }
  }

  // After binding level d, give up on this choice if any deeper variable
  // directly related to it is left without candidates.
  bool viable(const ComponentState& cs, std::size_t d) {
    std::size_t var = cs.levels[d].var;
    for (std::size_t k = d + 1; k < cs.levels.size(); ++k) {
      const Level& deeper = cs.levels[k];
      bool related = std::any_of(deeper.constraints.begin(), deeper.constraints.end(),
                                 [&](std::size_t bi) { return graph_->beta_nodes()[bi].later == var; });
      if (!related) continue;
      std::vector<bits::Word>& tmp = scratch_;
      const auto& cand = graph_->state(deeper.var).candidates;
      tmp.assign(cand.begin(), cand.end());
      for (auto bi : deeper.constraints) {
        const auto& n = graph_->beta_nodes()[bi];
        if (depth_of_[n.later] <= d) bits::and_into(tmp, n.table.column(bound_slot_[n.later]));
      }
      if (!bits::any(tmp)) return false;
    }
    return true;
  }

  bool advance(ComponentState& cs) {
    const std::size_t depth = cs.levels.size();
    std::size_t d;
    if (!cs.primed) {
      cs.primed = true;
      fill(cs.levels[0].buffer, cs.levels[0]);
      cs.levels[0].cursor = 0;
      d = 0;
    } else {
      d = depth - 1;
    }
    while (true) {
      Level& lv = cs.levels[d];
      const auto& order = visit_order(lv.var);
      std::optional<std::size_t> pick;
      while (lv.cursor < order.size()) {
        std::size_t s = order[lv.cursor++];
        if (bits::test(lv.buffer, s)) {
          pick = s;
          break;
        }
      }
      if (!pick) {
        if (d == 0) return false;
        --d;
        continue;
      }
      bound_slot_[lv.var] = *pick;
      current_.bindings[lv.var] = graph_->state(lv.var).slots.fact_at(*pick);
      if (!viable(cs, d)) continue;
      if (d + 1 == depth) return true;
      ++d;
      fill(cs.levels[d].buffer, cs.levels[d]);
      cs.levels[d].cursor = 0;
    }
  }

  const RelationGraph* graph_;
  std::uint64_t epoch_;
  std::vector<ComponentState> comps_;
  std::vector<std::vector<std::size_t>> custom_order_;
  std::vector<std::size_t> bound_slot_;
  std::vector<std::size_t> depth_of_;
  std::vector<bits::Word> scratch_;
  Match current_;
  bool started_ = false;
  bool exhausted_ = false;
  std::size_t materialized_ = 0;
};

inline MatchIterator iterate(const RelationGraph& graph, IteratorOptions options = {}) {
  return MatchIterator(graph, std::move(options));
}

/// True iff the graph has at least one match; stops at the first one.
inline bool has_match(const RelationGraph& graph, std::size_t* materialized = nullptr) {
  MatchIterator it(graph);
  bool found = it.next().has_value();
  if (materialized) *materialized = it.materialized();
  return found;
}

}  // namespace corgi
