#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "corgi/comparator.hpp"
#include "corgi/detail/scanner.hpp"
#include "corgi/error.hpp"
#include "corgi/facts.hpp"

namespace corgi {

/// `V.attr` by name, as written by a user before it is resolved against a
/// conjunction.
struct AttrExpr {
  std::string var;
  std::string attr;
};

struct LiteralSpec {
  AttrExpr lhs;
  Comparator cmp;
  std::variant<Value, AttrExpr> rhs;
};

namespace detail {

template <typename T>
std::variant<Value, AttrExpr> operand(T&& v) {
  using U = std::remove_cvref_t<T>;
  if constexpr (std::is_same_v<U, AttrExpr>) {
    return AttrExpr(std::forward<T>(v));
  } else if constexpr (std::is_integral_v<U> && !std::is_same_v<U, bool>) {
    return Value(static_cast<std::int64_t>(v));
  } else {
    return Value(std::string(std::forward<T>(v)));
  }
}

}  // namespace detail

#define CORGI_DEFINE_LITERAL_OP(op, cmp)                              \
  template <typename T>                                               \
  LiteralSpec operator op(const AttrExpr& lhs, T&& rhs) {             \
    return LiteralSpec{lhs, cmp, detail::operand(std::forward<T>(rhs))}; \
  }
CORGI_DEFINE_LITERAL_OP(==, Comparator::EQ)
CORGI_DEFINE_LITERAL_OP(!=, Comparator::NE)
CORGI_DEFINE_LITERAL_OP(<, Comparator::LT)
CORGI_DEFINE_LITERAL_OP(<=, Comparator::LE)
CORGI_DEFINE_LITERAL_OP(>, Comparator::GT)
CORGI_DEFINE_LITERAL_OP(>=, Comparator::GE)
#undef CORGI_DEFINE_LITERAL_OP

/// A typed pattern variable. `index` is its position in declaration order.
struct Var {
  std::string name;
  std::string type_name;
  std::size_t index = 0;

  AttrExpr operator[](std::string attr) const { return AttrExpr{name, std::move(attr)}; }
  bool operator==(const Var&) const = default;
};

/// A resolved `var.attr` operand.
struct AttrRef {
  std::size_t var;
  std::size_t attr;
  Kind kind;

  bool operator==(const AttrRef&) const = default;
};

/// Unary test: attribute against constant.
struct AlphaLiteral {
  AttrRef operand;
  Comparator cmp;
  Value constant;

  bool operator==(const AlphaLiteral&) const = default;
};

/// Binary relation between two attributes. When both sides name the same
/// variable the literal constrains a single binding and is evaluated as a
/// unary filter.
struct BetaLiteral {
  AttrRef left;
  Comparator cmp;
  AttrRef right;

  bool unary() const { return left.var == right.var; }
  bool operator==(const BetaLiteral&) const = default;
};

using Literal = std::variant<AlphaLiteral, BetaLiteral>;

/// Highest variable index a literal mentions; the literal is printed right
/// after that variable's declaration.
inline std::size_t anchor_of(const Literal& lit) {
  if (auto* a = std::get_if<AlphaLiteral>(&lit)) return a->operand.var;
  const auto& b = std::get<BetaLiteral>(lit);
  return std::max(b.left.var, b.right.var);
}

enum class OrderStrategy { Declaration, DegreeDescending };

/// A flat AND of typed variables, α literals and β literals.
///
/// Literals are kept grouped by anchor variable (stable within a group), which
/// is exactly the standard-form print order, so printing and re-parsing
/// reproduces the same structure.
class Conjunction {
 public:
  const Var& make_var(const SchemaRegistry& registry, std::string_view type_name,
                      std::string_view name) {
    if (find_var(name))
      throw Error(Errc::DuplicateVarName, "variable '" + std::string(name) + "' already declared");
    const Schema& schema = registry.at(type_name);
    vars_.push_back(Var{std::string(name), std::string(type_name), vars_.size()});
    schemas_.push_back(schema);
    return vars_.back();
  }

  Conjunction& add(const LiteralSpec& spec) {
    AttrRef lhs = resolve(spec.lhs);
    if (auto* constant = std::get_if<Value>(&spec.rhs)) {
      if (kind_of(*constant) != lhs.kind)
        throw Error(Errc::TypeMismatch, describe(spec.lhs) + " is " +
                                            std::string(to_string(lhs.kind)) +
                                            " but the constant is not");
      check_cmp(spec.cmp, lhs.kind, spec.lhs);
      insert(AlphaLiteral{lhs, spec.cmp, *constant});
    } else {
      const auto& rexpr = std::get<AttrExpr>(spec.rhs);
      AttrRef rhs = resolve(rexpr);
      if (lhs.kind != rhs.kind)
        throw Error(Errc::TypeMismatch,
                    describe(spec.lhs) + " and " + describe(rexpr) + " have different kinds");
      check_cmp(spec.cmp, lhs.kind, spec.lhs);
      insert(BetaLiteral{lhs, spec.cmp, rhs});
    }
    return *this;
  }

  Conjunction& operator&=(const LiteralSpec& spec) { return add(spec); }
  Conjunction& operator&=(std::initializer_list<LiteralSpec> specs) {
    for (const auto& s : specs) add(s);
    return *this;
  }

  std::span<const Var> vars() const { return vars_; }
  std::span<const Literal> literals() const { return literals_; }
  const Schema& schema_of(std::size_t var) const { return schemas_.at(var); }

  std::vector<AlphaLiteral> alpha_literals() const {
    std::vector<AlphaLiteral> out;
    for (const auto& l : literals_)
      if (auto* a = std::get_if<AlphaLiteral>(&l)) out.push_back(*a);
    return out;
  }

  std::vector<BetaLiteral> beta_literals() const {
    std::vector<BetaLiteral> out;
    for (const auto& l : literals_)
      if (auto* b = std::get_if<BetaLiteral>(&l)) out.push_back(*b);
    return out;
  }

  std::optional<std::size_t> find_var(std::string_view name) const {
    for (const auto& v : vars_)
      if (v.name == name) return v.index;
    return std::nullopt;
  }

  const Var& var(std::string_view name) const {
    if (auto i = find_var(name)) return vars_[*i];
    throw Error(Errc::UndeclaredVar, "no variable '" + std::string(name) + "'");
  }

  const std::string& attr_name(const AttrRef& ref) const {
    return schemas_[ref.var].attributes()[ref.attr].name;
  }

  std::string format(const AttrRef& ref) const {
    return vars_[ref.var].name + "." + attr_name(ref);
  }

  std::string format(const Literal& lit) const {
    if (auto* a = std::get_if<AlphaLiteral>(&lit))
      return format(a->operand) + " " + std::string(symbol(a->cmp)) + " " +
             format_value(a->constant);
    const auto& b = std::get<BetaLiteral>(lit);
    return format(b.left) + " " + std::string(symbol(b.cmp)) + " " + format(b.right);
  }

  /// Number of other variables sharing at least one relation with `var`.
  std::size_t relation_degree(std::size_t var) const {
    if (var >= vars_.size())
      throw Error(Errc::UndeclaredVar, "variable index " + std::to_string(var) + " out of range");
    std::set<std::size_t> peers;
    for (const auto& l : literals_) {
      auto* b = std::get_if<BetaLiteral>(&l);
      if (!b || b->unary()) continue;
      if (b->left.var == var) peers.insert(b->right.var);
      if (b->right.var == var) peers.insert(b->left.var);
    }
    return peers.size();
  }

  std::size_t relation_degree(std::string_view name) const {
    return relation_degree(var(name).index);
  }

  /// Permutation of variable indices. DegreeDescending is a stable sort, so
  /// ties keep declaration order.
  std::vector<std::size_t> order_variables(OrderStrategy strategy) const {
    std::vector<std::size_t> order(vars_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (strategy == OrderStrategy::DegreeDescending) {
      std::vector<std::size_t> degree(vars_.size());
      for (std::size_t i = 0; i < degree.size(); ++i) degree[i] = relation_degree(i);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
    }
    return order;
  }

  bool operator==(const Conjunction& other) const {
    return vars_ == other.vars_ && literals_ == other.literals_;
  }

 private:
  AttrRef resolve(const AttrExpr& e) const {
    auto v = find_var(e.var);
    if (!v) throw Error(Errc::UndeclaredVar, "no variable '" + e.var + "'");
    auto a = schemas_[*v].index_of(e.attr);
    if (!a)
      throw Error(Errc::UnknownAttribute,
                  "'" + schemas_[*v].type_name() + "' has no attribute '" + e.attr + "'");
    return AttrRef{*v, *a, schemas_[*v].attributes()[*a].kind};
  }

  static std::string describe(const AttrExpr& e) { return e.var + "." + e.attr; }

  static void check_cmp(Comparator cmp, Kind kind, const AttrExpr& where) {
    if (!accepts(cmp, kind))
      throw Error(Errc::TypeMismatch, "'" + std::string(symbol(cmp)) + "' is not defined for " +
                                          std::string(to_string(kind)) + " operand " +
                                          describe(where));
  }

  void insert(Literal lit) {
    std::size_t anchor = anchor_of(lit);
    auto pos = std::find_if(literals_.begin(), literals_.end(),
                            [&](const Literal& l) { return anchor_of(l) > anchor; });
    literals_.insert(pos, std::move(lit));
  }

  std::vector<Var> vars_;
  std::vector<Schema> schemas_;
  std::vector<Literal> literals_;
};

/// Print in standard form: each variable declaration followed by the literals
/// anchored on it, one variable per line.
inline std::string to_standard_form(const Conjunction& conj) {
  if (conj.vars().empty()) return "AND()";
  std::string out = "AND(";
  auto lits = conj.literals();
  std::size_t li = 0;
  for (const auto& v : conj.vars()) {
    if (v.index) out += ",\n    ";
    out += v.name + ":=Var(" + v.type_name + ", " + detail::quote(v.name) + ")";
    while (li < lits.size() && anchor_of(lits[li]) == v.index) out += ", " + conj.format(lits[li++]);
  }
  return out + "\n)";
}

/// Parse the standard-form grammar back into a conjunction. Variables must be
/// declared before the literals that mention them.
inline Conjunction parse_pattern(std::string_view text, const SchemaRegistry& registry) {
  detail::Scanner sc(text);
  auto fail = [&](const std::string& what) -> Error {
    return Error(Errc::ParseError, "at offset " + std::to_string(sc.pos()) + ": " + what,
                 sc.pos());
  };
  auto attr_after = [&](std::string var) -> AttrExpr {
    if (!sc.consume(".")) throw fail("expected '.' after '" + var + "'");
    auto attr = sc.identifier();
    if (!attr) throw fail("expected attribute name");
    return AttrExpr{std::move(var), std::move(*attr)};
  };

  Conjunction conj;
  if (!sc.consume("AND")) throw fail("expected 'AND'");
  if (!sc.consume("(")) throw fail("expected '('");
  if (!sc.consume(")")) {
    do {
      auto name = sc.identifier();
      if (!name) throw fail("expected variable name");
      if (sc.consume(":=")) {
        if (!sc.consume("Var") || !sc.consume("(")) throw fail("expected 'Var('");
        auto type = sc.identifier();
        if (!type) throw fail("expected type name");
        if (!sc.consume(",")) throw fail("expected ','");
        auto label = sc.quoted();
        if (!label) throw fail("expected quoted variable name");
        if (*label != *name) throw fail("variable '" + *name + "' labelled '" + *label + "'");
        if (!sc.consume(")")) throw fail("expected ')'");
        conj.make_var(registry, *type, *name);
        continue;
      }
      AttrExpr lhs = attr_after(*name);
      std::optional<Comparator> cmp;
      for (auto c : {Comparator::EQ, Comparator::NE, Comparator::LE, Comparator::GE,
                     Comparator::LT, Comparator::GT}) {
        if (sc.consume(symbol(c))) {
          cmp = c;
          break;
        }
      }
      if (!cmp) throw fail("expected comparator");
      LiteralSpec spec{lhs, *cmp, Value{}};
      if (auto s = sc.quoted()) {
        spec.rhs = Value(std::move(*s));
      } else if (auto i = sc.integer()) {
        spec.rhs = Value(*i);
      } else if (auto rvar = sc.identifier()) {
        spec.rhs = attr_after(std::move(*rvar));
      } else {
        throw fail("expected constant or attribute");
      }
      conj.add(spec);
    } while (sc.consume(","));
    if (!sc.consume(")")) throw fail("expected ')'");
  }
  if (!sc.done()) throw fail("trailing characters");
  return conj;
}

}  // namespace corgi
