#pragma once

#include <optional>
#include <string_view>

#include "corgi/facts.hpp"

namespace corgi {

enum class Comparator { EQ, NE, LT, LE, GT, GE };

constexpr std::string_view symbol(Comparator c) {
  switch (c) {
    case Comparator::EQ: return "==";
    case Comparator::NE: return "!=";
    case Comparator::LT: return "<";
    case Comparator::LE: return "<=";
    case Comparator::GT: return ">";
    case Comparator::GE: return ">=";
  }
  return "?";
}

/// The comparator that gives the same truth value with operands swapped.
constexpr Comparator mirror(Comparator c) {
  switch (c) {
    case Comparator::LT: return Comparator::GT;
    case Comparator::LE: return Comparator::GE;
    case Comparator::GT: return Comparator::LT;
    case Comparator::GE: return Comparator::LE;
    default: return c;
  }
}

constexpr bool is_ordering(Comparator c) { return c != Comparator::EQ && c != Comparator::NE; }

/// Whether `c` may relate operands of kind `k`. Ordering comparators are
/// integer-only.
constexpr bool accepts(Comparator c, Kind k) { return k == Kind::Integer || !is_ordering(c); }

template <typename T>
constexpr bool apply(const T& a, Comparator c, const T& b) {
  switch (c) {
    case Comparator::EQ: return a == b;
    case Comparator::NE: return a != b;
    case Comparator::LT: return a < b;
    case Comparator::LE: return a <= b;
    case Comparator::GT: return a > b;
    case Comparator::GE: return a >= b;
  }
  return false;
}

/// The single comparison routine used by every engine (graph, oracle,
/// baseline). Operands are assumed to be of the same kind; that is enforced
/// when literals are type-checked.
inline bool compare(const Value& a, Comparator c, const Value& b) {
  if (auto* ia = std::get_if<std::int64_t>(&a)) return apply(*ia, c, std::get<std::int64_t>(b));
  return apply(std::get<std::string>(a), c, std::get<std::string>(b));
}

}  // namespace corgi
