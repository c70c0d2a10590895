#pragma once

#include <random>
#include <string>
#include <vector>

#include "corgi/corgi.hpp"

namespace corgi {

// Test-only backdoor into a graph's private state.
struct GraphTestAccess {
  static BitTable& table(RelationGraph& g, std::size_t node) { return g.betas_.at(node).table; }
  static std::size_t slot(const RelationGraph& g, std::size_t var, FactId id) {
    return *g.vars_.at(var).slots.slot_of(id);
  }
};

}  // namespace corgi

namespace corgi::gen {

// Two small types with narrow value ranges so that random literals are
// neither always true nor always false.
inline void define_random_schemas(WorkingMemory& wm) {
  wm.define_schema("A", {{"x", Kind::Integer}, {"y", Kind::Integer}, {"s", Kind::String}});
  wm.define_schema("B", {{"x", Kind::Integer}, {"s", Kind::String}});
}

inline const char* kStrings[] = {"p", "q", "r"};

inline Fact random_fact(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(0, 4), pick(0, 2), type(0, 1);
  if (type(rng) == 0)
    return Fact{"A", {std::int64_t{small(rng)}, std::int64_t{small(rng)}, std::string(kStrings[pick(rng)])}};
  return Fact{"B", {std::int64_t{small(rng)}, std::string(kStrings[pick(rng)])}};
}

inline Comparator random_cmp(std::mt19937_64& rng, Kind kind) {
  if (kind == Kind::String) return std::uniform_int_distribution<int>(0, 1)(rng) ? Comparator::EQ : Comparator::NE;
  return static_cast<Comparator>(std::uniform_int_distribution<int>(0, 5)(rng));
}

inline AttrExpr random_attr(std::mt19937_64& rng, const Conjunction& c, const SchemaRegistry& reg,
                            std::size_t var, Kind* kind) {
  const Var& v = c.vars()[var];
  const Schema& s = reg.at(v.type_name);
  std::size_t a = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
  *kind = s.attributes()[a].kind;
  return v[s.attributes()[a].name];
}

// Up to `max_vars` variables and `max_literals` literals, a mix of α literals,
// β literals between distinct variables and same-variable β literals.
inline Conjunction random_conjunction(std::mt19937_64& rng, const SchemaRegistry& reg,
                                      std::size_t max_vars = 4, std::size_t max_literals = 6) {
  Conjunction c;
  std::size_t nvars = std::uniform_int_distribution<std::size_t>(1, max_vars)(rng);
  for (std::size_t i = 0; i < nvars; ++i)
    c.make_var(reg, std::uniform_int_distribution<int>(0, 1)(rng) ? "A" : "B", "v" + std::to_string(i));
  std::size_t nlits = std::uniform_int_distribution<std::size_t>(0, max_literals)(rng);
  std::uniform_int_distribution<std::size_t> var_pick(0, nvars - 1);
  for (std::size_t i = 0; i < nlits; ++i) {
    Kind lk;
    AttrExpr lhs = random_attr(rng, c, reg, var_pick(rng), &lk);
    int shape = std::uniform_int_distribution<int>(0, 9)(rng);
    if (shape < 3) {
      Value constant = lk == Kind::Integer ? Value(std::int64_t{std::uniform_int_distribution<int>(0, 4)(rng)})
                                           : Value(std::string(kStrings[std::uniform_int_distribution<int>(0, 2)(rng)]));
      c.add(LiteralSpec{lhs, random_cmp(rng, lk), constant});
      continue;
    }
    // Retry until the right-hand attribute has the same kind.
    for (int attempt = 0; attempt < 16; ++attempt) {
      Kind rk;
      AttrExpr rhs = random_attr(rng, c, reg, var_pick(rng), &rk);
      if (rk != lk) continue;
      c.add(LiteralSpec{lhs, random_cmp(rng, lk), rhs});
      break;
    }
  }
  return c;
}

inline void fill_random(WorkingMemory& wm, std::mt19937_64& rng, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) wm.insert(random_fact(rng));
}

// Retract a random live fact; returns false if memory is empty.
inline bool retract_random(WorkingMemory& wm, std::mt19937_64& rng) {
  auto ids = wm.live_ids();
  if (ids.empty()) return false;
  wm.retract(ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)]);
  return true;
}

inline MatchSet corgi_matches(const RelationGraph& g) {
  MatchIterator it(g);
  return collect(it);
}

}  // namespace corgi::gen
