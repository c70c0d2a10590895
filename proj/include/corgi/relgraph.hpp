#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "corgi/bit_table.hpp"
#include "corgi/comparator.hpp"
#include "corgi/error.hpp"
#include "corgi/facts.hpp"
#include "corgi/patterns.hpp"

namespace corgi {

struct CompileOptions {
  OrderStrategy order = OrderStrategy::Declaration;
  /// Use a value index instead of pairwise evaluation for `==` relations.
  bool use_eq_index = true;
};

struct UpdateStats {
  std::size_t inserts = 0;
  std::size_t retracts = 0;
  std::size_t bits_evaluated = 0;
  std::size_t collection_changes = 0;
};

/// Storage inventory of a graph against its quadratic budget.
struct SpaceAudit {
  std::size_t bits_allocated = 0;
  std::size_t bound_bits = 0;
  std::size_t max_arity = 0;
  bool ok() const { return bits_allocated <= bound_bits && max_arity <= 2; }
};

/// A β-node truth table restricted to the facts still live as candidates,
/// rows and columns in ascending FactId order.
struct TruthTable {
  std::vector<FactId> rows;
  std::vector<FactId> cols;
  std::vector<std::vector<bool>> bits;
};

/// Forward structure of the matcher.
///
/// Each α literal (and each β literal relating two attributes of one
/// variable) is a unary filter node; a variable's filters form a chain whose
/// output is the variable's α-candidates. Each binary β literal is a node
/// holding a bit table over (α-candidates of its earlier variable) ×
/// (α-candidates of its later variable), where earlier/later follow the graph
/// variable order. Bits are maintained incrementally as working memory
/// changes.
///
/// Edge collections are derived from the tables: a fact stays a candidate for
/// its variable only while, at every β node it takes part in, it has a true
/// bit with some candidate of the other variable. Shrinkage is propagated
/// until no collection changes. Nothing in the graph stores tuples of more
/// than two facts.
class RelationGraph {
 public:
  struct NodeRef {
    enum class Kind { Alpha, Beta };
    Kind kind;
    std::size_t index;
    bool operator==(const NodeRef&) const = default;
  };

  struct AlphaNode {
    Literal literal;  // AlphaLiteral, or a BetaLiteral with unary() == true
    std::size_t var;
    std::set<FactId> output;
    std::vector<NodeRef> children;
  };

  struct BetaNode {
    BetaLiteral literal;
    std::size_t earlier;
    std::size_t later;
    std::size_t earlier_attr;
    std::size_t later_attr;
    Comparator cmp;  // earlier.attr cmp later.attr
    std::size_t level;
    BitTable table;
    bool eq_indexed = false;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> earlier_index;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> later_index;
    std::vector<NodeRef> children;
  };

  struct VarState {
    std::size_t var;
    std::string type_name;
    std::size_t position;
    std::size_t component;
    std::vector<std::size_t> alphas;
    std::vector<std::size_t> betas;
    SlotIndex slots;
    std::vector<std::vector<std::int64_t>> keys;  // by attribute, then slot
    std::vector<bits::Word> candidates;           // by slot
    std::vector<std::size_t> ordered;             // candidate slots by ascending FactId
  };

  struct Component {
    std::vector<std::size_t> vars;  // graph order
    std::vector<NodeRef> terminals;
  };

  static RelationGraph compile(const Conjunction& conj, const WorkingMemory& wm,
                               CompileOptions options = {}) {
    return RelationGraph(conj, wm, options);
  }

  /// Drain this graph's pending working-memory changes.
  UpdateStats update() {
    if (wm_->registry().version() != registry_version_)
      throw Error(Errc::StaleGraph, "schema registry changed since compile");
    auto log = wm_->change_log();
    UpdateStats stats;
    if (cursor_ == log.size()) return stats;

    std::vector<std::vector<FactId>> before(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) before[v] = edge_candidates(v);

    for (; cursor_ < log.size(); ++cursor_) {
      const Change& ch = log[cursor_];
      if (ch.op == Change::Op::Insert) {
        const Fact* fact = wm_->find(ch.id);
        if (!fact) continue;  // retracted before we saw it
        ++stats.inserts;
        for (auto& vs : vars_)
          if (vs.type_name == fact->type_name) insert_fact(vs, ch.id, *fact, stats);
      } else {
        ++stats.retracts;
        for (auto& vs : vars_) remove_fact(vs, ch.id, stats);
      }
    }
    propagate();
    ++epoch_;

    for (std::size_t v = 0; v < vars_.size(); ++v) {
      auto after = edge_candidates(v);
      std::vector<FactId> diff;
      std::set_symmetric_difference(before[v].begin(), before[v].end(), after.begin(), after.end(),
                                    std::back_inserter(diff));
      stats.collection_changes += diff.size();
    }
    return stats;
  }

  bool pending() const { return cursor_ < wm_->change_log().size(); }
  std::uint64_t epoch() const { return epoch_; }
  const WorkingMemory& working_memory() const { return *wm_; }

  const Conjunction& conjunction() const { return conj_; }
  std::span<const std::size_t> order() const { return order_; }
  std::size_t position(std::size_t var) const { return state(var).position; }
  std::span<const AlphaNode> alpha_nodes() const { return alphas_; }
  std::span<const BetaNode> beta_nodes() const { return betas_; }
  std::span<const Component> components() const { return components_; }
  const VarState& state(std::size_t var) const {
    if (var >= vars_.size())
      throw Error(Errc::UnknownVar, "variable index " + std::to_string(var) + " not in graph");
    return vars_[var];
  }

  std::vector<NodeRef> terminal_nodes() const {
    std::vector<NodeRef> out;
    for (const auto& c : components_) out.insert(out.end(), c.terminals.begin(), c.terminals.end());
    return out;
  }

  std::size_t var_index(std::string_view name) const {
    auto v = conj_.find_var(name);
    if (!v) throw Error(Errc::UnknownVar, "no variable '" + std::string(name) + "' in graph");
    return *v;
  }

  /// Facts that pass every unary filter of `var` (the β tables' inputs).
  std::vector<FactId> alpha_candidates(std::size_t var) const {
    const auto& vs = state(var);
    return facts_in(vs, vs.slots.occupied());
  }

  /// The collection on the variable's deepest edge: facts not yet ruled out.
  std::vector<FactId> edge_candidates(std::size_t var) const {
    const auto& vs = state(var);
    return facts_in(vs, vs.candidates);
  }
  std::vector<FactId> edge_candidates(std::string_view name) const {
    return edge_candidates(var_index(name));
  }

  /// Output collection of β node `node` for one of its variables: facts of
  /// that variable with a true bit against some live candidate of the other.
  std::vector<FactId> node_output(std::size_t node, std::size_t var) const {
    const auto& n = betas_.at(node);
    const auto& e = vars_[n.earlier];
    const auto& l = vars_[n.later];
    std::vector<bits::Word> out;
    if (var == n.earlier) {
      out.assign(e.candidates.size(), 0);
      bits::for_each_set(l.candidates, [&](std::size_t c) { bits::or_into(out, n.table.column(c)); });
      bits::and_into(out, e.candidates);
      return facts_in(e, out);
    }
    if (var != n.later) throw Error(Errc::UnknownVar, "variable not related by this node");
    out.assign(l.candidates.size(), 0);
    bits::for_each_set(l.slots.occupied(), [&](std::size_t c) {
      if (bits::intersects(n.table.column(c), e.candidates)) bits::set(out, c);
    });
    return facts_in(l, out);
  }

  /// Earlier-variable candidates consistent with a later-variable binding.
  std::vector<FactId> mapping_lookup(std::size_t node, FactId later_binding) const {
    const auto& n = betas_.at(node);
    const auto& l = vars_[n.later];
    auto col = l.slots.slot_of(later_binding);
    if (!col)
      throw Error(Errc::UnknownBinding,
                  "fact " + std::to_string(later_binding) + " is not an input of this node");
    const auto& e = vars_[n.earlier];
    std::vector<bits::Word> hits(e.candidates);
    bits::and_into(hits, n.table.column(*col));
    return facts_in(e, hits);
  }

  TruthTable live_table(std::size_t node) const {
    const auto& n = betas_.at(node);
    const auto& e = vars_[n.earlier];
    const auto& l = vars_[n.later];
    TruthTable t{edge_candidates(n.earlier), edge_candidates(n.later), {}};
    for (FactId r : t.rows) {
      auto& row = t.bits.emplace_back();
      for (FactId c : t.cols) row.push_back(n.table.test(*e.slots.slot_of(r), *l.slots.slot_of(c)));
    }
    return t;
  }

  /// Deterministic text rendering of the full graph state. Independent of
  /// slot assignment and capacity, so an incrementally maintained graph and
  /// one built from scratch over the same facts dump identically.
  std::string dump() const {
    std::ostringstream os;
    auto join = [](const std::vector<FactId>& ids) {
      std::string s = "[";
      for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + std::to_string(ids[i]);
      return s + "]";
    };
    auto ref = [](const NodeRef& r) {
      return (r.kind == NodeRef::Kind::Alpha ? "a" : "b") + std::to_string(r.index);
    };
    auto refs = [&](const std::vector<NodeRef>& rs) {
      std::string s = "[";
      for (std::size_t i = 0; i < rs.size(); ++i) s += (i ? ", " : "") + ref(rs[i]);
      return s + "]";
    };
    os << "order:";
    for (auto v : order_) os << ' ' << conj_.vars()[v].name;
    os << '\n';
    for (std::size_t ci = 0; ci < components_.size(); ++ci) {
      os << "component " << ci << ":";
      for (auto v : components_[ci].vars) os << ' ' << conj_.vars()[v].name;
      os << " terminals=" << refs(components_[ci].terminals) << '\n';
    }
    for (auto v : order_) {
      os << "var " << conj_.vars()[v].name << " : " << vars_[v].type_name
         << " alpha=" << join(alpha_candidates(v)) << " candidates=" << join(edge_candidates(v))
         << '\n';
    }
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
      const auto& a = alphas_[i];
      os << "a" << i << " " << conj_.format(a.literal)
         << " out=" << join({a.output.begin(), a.output.end()}) << " children=" << refs(a.children)
         << '\n';
    }
    for (std::size_t i = 0; i < betas_.size(); ++i) {
      const auto& n = betas_[i];
      const auto& e = vars_[n.earlier];
      const auto& l = vars_[n.later];
      os << "b" << i << " " << conj_.format(Literal{n.literal}) << " map=("
         << conj_.vars()[n.earlier].name << ") <- " << conj_.vars()[n.later].name
         << " level=" << n.level << " children=" << refs(n.children) << '\n';
      auto rows = alpha_candidates(n.earlier);
      auto cols = alpha_candidates(n.later);
      os << "  cols " << join(cols) << '\n';
      for (FactId r : rows) {
        os << "  " << r << " |";
        std::size_t rs = *e.slots.slot_of(r);
        for (FactId c : cols) os << ' ' << (n.table.test(rs, *l.slots.slot_of(c)) ? '1' : '0');
        os << '\n';
      }
    }
    return os.str();
  }

  /// Bits allocated per table must stay within doubling slack of the slots
  /// handed out along each dimension (never below the initial capacity).
  SpaceAudit audit() const {
    SpaceAudit a;
    a.max_arity = 1;  // α outputs, slot maps, candidate sets
    for (const auto& n : betas_) {
      const auto& e = vars_[n.earlier].slots;
      const auto& l = vars_[n.later].slots;
      a.bits_allocated += n.table.bits_allocated();
      std::size_t r = std::max(SlotIndex::kInitialCapacity, e.high_water());
      std::size_t c = std::max(SlotIndex::kInitialCapacity, l.high_water());
      a.bound_bits += 4 * r * c;
      a.max_arity = std::max<std::size_t>(a.max_arity, 2);  // BitTable
    }
    return a;
  }

  std::size_t memory_bytes() const {
    std::size_t total = 0;
    for (const auto& vs : vars_) {
      total += vs.slots.memory_bytes() + vs.candidates.capacity() * sizeof(bits::Word) +
               vs.ordered.capacity() * sizeof(std::size_t);
      for (const auto& k : vs.keys) total += k.capacity() * sizeof(std::int64_t);
    }
    for (const auto& [str, id] : interned_) total += str.capacity() + sizeof(id) + 2 * sizeof(void*);
    for (const auto& a : alphas_) total += a.output.size() * (sizeof(FactId) + 4 * sizeof(void*));
    for (const auto& n : betas_) total += n.table.memory_bytes();
    return total;
  }

 private:
  friend struct GraphTestAccess;

  RelationGraph(const Conjunction& conj, const WorkingMemory& wm, CompileOptions options)
      : wm_(&wm), conj_(conj), registry_version_(wm.registry().version()) {
    for (const auto& v : conj_.vars()) wm.registry().at(v.type_name);
    order_ = conj_.order_variables(options.order);
    vars_.resize(conj_.vars().size());
    for (std::size_t p = 0; p < order_.size(); ++p) {
      auto& vs = vars_[order_[p]];
      vs.var = order_[p];
      vs.type_name = conj_.vars()[order_[p]].type_name;
      vs.position = p;
      vs.candidates.assign(bits::words_for(vs.slots.capacity()), 0);
      vs.keys.assign(wm_->registry().at(vs.type_name).size(), std::vector<std::int64_t>(key_rows(vs.slots)));
    }

    std::vector<std::size_t> beta_lits;
    auto lits = conj_.literals();
    for (std::size_t i = 0; i < lits.size(); ++i) {
      const auto* b = std::get_if<BetaLiteral>(&lits[i]);
      if (b && !b->unary()) {
        beta_lits.push_back(i);
        continue;
      }
      std::size_t var = b ? b->left.var : std::get<AlphaLiteral>(lits[i]).operand.var;
      vars_[var].alphas.push_back(alphas_.size());
      alphas_.push_back(AlphaNode{lits[i], var, {}, {}});
    }

    for (std::size_t i : beta_lits) {
      const auto& b = std::get<BetaLiteral>(lits[i]);
      bool left_first = vars_[b.left.var].position < vars_[b.right.var].position;
      BetaNode n{b,
                 left_first ? b.left.var : b.right.var,
                 left_first ? b.right.var : b.left.var,
                 left_first ? b.left.attr : b.right.attr,
                 left_first ? b.right.attr : b.left.attr,
                 left_first ? b.cmp : mirror(b.cmp),
                 0,
                 BitTable{},
                 false,
                 {},
                 {},
                 {}};
      n.level = vars_[n.later].position;
      n.eq_indexed = options.use_eq_index && n.cmp == Comparator::EQ;
      betas_.push_back(std::move(n));
    }
    std::stable_sort(betas_.begin(), betas_.end(),
                     [](const BetaNode& a, const BetaNode& b) { return a.level < b.level; });
    for (std::size_t i = 0; i < betas_.size(); ++i) {
      vars_[betas_[i].earlier].betas.push_back(i);
      vars_[betas_[i].later].betas.push_back(i);
    }

    link_children();
    build_components();
  }

  // Children of a node are the nodes at the next deeper level that share a
  // variable with it; α chains feed the first β level of their variable.
  void link_children() {
    auto next_level = [&](std::size_t var, std::optional<std::size_t> after) {
      std::optional<std::size_t> best;
      for (auto bi : vars_[var].betas) {
        std::size_t lv = betas_[bi].level;
        if ((!after || lv > *after) && (!best || lv < *best)) best = lv;
      }
      std::vector<NodeRef> out;
      if (!best) return out;
      for (auto bi : vars_[var].betas)
        if (betas_[bi].level == *best) out.push_back({NodeRef::Kind::Beta, bi});
      return out;
    };
    for (auto& vs : vars_) {
      for (std::size_t k = 0; k < vs.alphas.size(); ++k) {
        auto& node = alphas_[vs.alphas[k]];
        if (k + 1 < vs.alphas.size())
          node.children.push_back({NodeRef::Kind::Alpha, vs.alphas[k + 1]});
        else
          node.children = next_level(vs.var, std::nullopt);
      }
    }
    for (auto& n : betas_) {
      for (std::size_t var : {n.earlier, n.later}) {
        for (auto r : next_level(var, n.level))
          if (std::find(n.children.begin(), n.children.end(), r) == n.children.end())
            n.children.push_back(r);
      }
    }
  }

  void build_components() {
    std::vector<std::size_t> parent(vars_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& n : betas_) parent[find(n.earlier)] = find(n.later);
    std::vector<std::optional<std::size_t>> comp_of_root(vars_.size());
    for (auto v : order_) {
      auto root = find(v);
      if (!comp_of_root[root]) {
        comp_of_root[root] = components_.size();
        components_.emplace_back();
      }
      vars_[v].component = *comp_of_root[root];
      components_[*comp_of_root[root]].vars.push_back(v);
    }
    for (std::size_t i = 0; i < alphas_.size(); ++i)
      if (alphas_[i].children.empty())
        components_[vars_[alphas_[i].var].component].terminals.push_back(
            {NodeRef::Kind::Alpha, i});
    for (std::size_t i = 0; i < betas_.size(); ++i)
      if (betas_[i].children.empty())
        components_[vars_[betas_[i].later].component].terminals.push_back(
            {NodeRef::Kind::Beta, i});
  }

  static bool passes(const Literal& lit, const Fact& f) {
    if (auto* a = std::get_if<AlphaLiteral>(&lit))
      return compare(f.values[a->operand.attr], a->cmp, a->constant);
    const auto& b = std::get<BetaLiteral>(lit);
    return compare(f.values[b.left.attr], b.cmp, f.values[b.right.attr]);
  }

  void insert_fact(VarState& vs, FactId id, const Fact& fact, UpdateStats& stats) {
    for (auto ai : vs.alphas) {
      if (!passes(alphas_[ai].literal, fact)) return;
      alphas_[ai].output.insert(id);
    }
    auto [slot, grew] = vs.slots.acquire(id);
    if (grew) {
      vs.candidates.resize(bits::words_for(vs.slots.capacity()), 0);
      for (auto& k : vs.keys) k.resize(key_rows(vs.slots));
      for (auto bi : vs.betas) {
        auto& n = betas_[bi];
        if (n.earlier == vs.var)
          n.table.grow_rows(vs.slots.capacity());
        else
          n.table.grow_cols(vs.slots.capacity());
      }
    }
    for (std::size_t a = 0; a < vs.keys.size(); ++a) vs.keys[a][slot] = key_of(fact.values[a]);

    for (auto bi : vs.betas) {
      auto& n = betas_[bi];
      bool is_row = n.earlier == vs.var;
      const VarState& other = vars_[is_row ? n.later : n.earlier];
      std::int64_t mine = vs.keys[is_row ? n.earlier_attr : n.later_attr][slot];
      if (n.eq_indexed) {
        auto& other_index = is_row ? n.later_index : n.earlier_index;
        if (auto it = other_index.find(mine); it != other_index.end()) {
          for (std::size_t s : it->second) {
            is_row ? n.table.set(slot, s, true) : n.table.set(s, slot, true);
            ++stats.bits_evaluated;
          }
        }
        (is_row ? n.earlier_index : n.later_index)[mine].push_back(slot);
        continue;
      }
      const auto& theirs = other.keys[is_row ? n.later_attr : n.earlier_attr];
      auto occ = other.slots.occupied().first(bits::words_for(other.slots.high_water()));
      // Evaluated as `theirs <cmp> mine`, so a row insert mirrors the comparator.
      Comparator c = is_row ? mirror(n.cmp) : n.cmp;
      if (is_row) {
        scan(occ, theirs, c, mine, [&](std::size_t w, bits::Word m) {
          for (; m; m &= m - 1)
            n.table.set(slot, w * bits::kWordBits + static_cast<std::size_t>(std::countr_zero(m)), true);
        });
      } else {
        auto col = n.table.column(slot);
        scan(occ, theirs, c, mine, [&](std::size_t w, bits::Word m) { col[w] |= m; });
      }
      stats.bits_evaluated += bits::count(occ);
    }
  }

  /// Calls `sink(w, mask)` for each nonzero word of `occ`, where bit j of
  /// mask is `col[64w + j] <c> key` restricted to occupied slots.
  template <typename Sink>
  static void scan(std::span<const bits::Word> occ, const std::vector<std::int64_t>& col, Comparator c,
                   std::int64_t key, Sink&& sink) {
    auto run = [&](auto op) {
      for (std::size_t w = 0; w < occ.size(); ++w) {
        if (!occ[w]) continue;
        const std::int64_t* v = col.data() + w * bits::kWordBits;
        bits::Word m = 0;
        for (std::size_t j = 0; j < bits::kWordBits; ++j) m |= static_cast<bits::Word>(op(v[j], key)) << j;
        if (m &= occ[w]) sink(w, m);
      }
    };
    switch (c) {
      case Comparator::EQ: return run(std::equal_to<>{});
      case Comparator::NE: return run(std::not_equal_to<>{});
      case Comparator::LT: return run(std::less<>{});
      case Comparator::LE: return run(std::less_equal<>{});
      case Comparator::GT: return run(std::greater<>{});
      case Comparator::GE: return run(std::greater_equal<>{});
    }
  }

  static std::size_t key_rows(const SlotIndex& slots) {
    return bits::words_for(slots.capacity()) * bits::kWordBits;
  }

  /// Integers stand for themselves; strings are interned. Strings only ever
  /// meet == and !=, so equal ids are all that matters.
  std::int64_t key_of(const Value& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
    auto [it, fresh] = interned_.try_emplace(std::get<std::string>(v), static_cast<std::int64_t>(interned_.size()));
    return it->second;
  }

  void remove_fact(VarState& vs, FactId id, UpdateStats&) {
    for (auto ai : vs.alphas) alphas_[ai].output.erase(id);
    auto slot = vs.slots.slot_of(id);
    if (!slot) return;
    for (auto bi : vs.betas) {
      auto& n = betas_[bi];
      bool is_row = n.earlier == vs.var;
      if (is_row)
        n.table.clear_row(*slot);
      else
        n.table.clear_col(*slot);
      if (n.eq_indexed) {
        auto& index = is_row ? n.earlier_index : n.later_index;
        std::int64_t key = vs.keys[is_row ? n.earlier_attr : n.later_attr][*slot];
        auto it = index.find(key);
        assert(it != index.end());
        auto& list = it->second;
        list.erase(std::find(list.begin(), list.end(), *slot));
        if (list.empty()) index.erase(it);
      }
    }
    bits::reset(vs.candidates, *slot);
    vs.slots.release(id);
  }

  // Reset every collection to its α-candidates, then prune facts without
  // support at some β node until nothing changes.
  void propagate() {
    for (auto& vs : vars_) {
      auto occ = vs.slots.occupied();
      vs.candidates.assign(occ.begin(), occ.end());
    }
    std::deque<std::size_t> work(betas_.size());
    std::iota(work.begin(), work.end(), 0);
    std::vector<char> queued(betas_.size(), 1);
    std::vector<bits::Word> supported;
    auto requeue = [&](const VarState& vs, std::size_t except) {
      for (auto bi : vs.betas)
        if (bi != except && !queued[bi]) {
          queued[bi] = 1;
          work.push_back(bi);
        }
    };
    while (!work.empty()) {
      std::size_t ni = work.front();
      work.pop_front();
      queued[ni] = 0;
      const auto& n = betas_[ni];
      auto& e = vars_[n.earlier];
      auto& l = vars_[n.later];
      supported.assign(e.candidates.size(), 0);
      bool later_changed = false;
      bits::for_each_set(std::span<const bits::Word>(l.candidates), [&](std::size_t c) {
        auto col = n.table.column(c);
        if (bits::intersects(col, e.candidates)) {
          bits::or_into(supported, col);
        } else {
          bits::reset(l.candidates, c);
          later_changed = true;
        }
      });
      bool earlier_changed = false;
      for (std::size_t w = 0; w < e.candidates.size(); ++w) {
        bits::Word next = e.candidates[w] & supported[w];
        if (next != e.candidates[w]) {
          e.candidates[w] = next;
          earlier_changed = true;
        }
      }
      if (earlier_changed) requeue(e, ni);
      if (later_changed) requeue(l, ni);
    }
    for (auto& vs : vars_) {
      vs.ordered.clear();
      bits::for_each_set(vs.candidates, [&](std::size_t s) { vs.ordered.push_back(s); });
      std::sort(vs.ordered.begin(), vs.ordered.end(), [&](std::size_t a, std::size_t b) {
        return vs.slots.fact_at(a) < vs.slots.fact_at(b);
      });
    }
  }

  static std::vector<FactId> facts_in(const VarState& vs, std::span<const bits::Word> mask) {
    std::vector<FactId> out;
    bits::for_each_set(mask, [&](std::size_t s) {
      if (FactId f = vs.slots.fact_at(s); f != SlotIndex::kEmpty) out.push_back(f);
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  const WorkingMemory* wm_;
  Conjunction conj_;
  std::uint64_t registry_version_;
  std::size_t cursor_ = 0;
  std::uint64_t epoch_ = 0;
  std::vector<std::size_t> order_;
  std::vector<VarState> vars_;
  std::vector<AlphaNode> alphas_;
  std::vector<BetaNode> betas_;
  std::vector<Component> components_;
  std::unordered_map<std::string, std::int64_t> interned_;
};

/// Apply a β literal to the facts bound to its left and right variables.
inline bool beta_eval(const BetaLiteral& lit, const Fact& left, const Fact& right) {
  return compare(left.values[lit.left.attr], lit.cmp, right.values[lit.right.attr]);
}

inline bool alpha_eval(const AlphaLiteral& lit, const Fact& f) {
  return compare(f.values[lit.operand.attr], lit.cmp, lit.constant);
}

}  // namespace corgi
