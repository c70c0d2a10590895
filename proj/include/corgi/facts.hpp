#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "corgi/detail/scanner.hpp"
#include "corgi/error.hpp"

namespace corgi {

/// Working-memory element identifier. Issued from 1 upward and never reused
/// within one WorkingMemory.
using FactId = std::uint64_t;

enum class Kind { Integer, String };

using Value = std::variant<std::int64_t, std::string>;

inline Kind kind_of(const Value& v) {
  return std::holds_alternative<std::int64_t>(v) ? Kind::Integer : Kind::String;
}

inline std::string_view to_string(Kind k) { return k == Kind::Integer ? "int" : "str"; }

inline std::string format_value(const Value& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return detail::quote(std::get<std::string>(v));
}

struct Attribute {
  std::string name;
  Kind kind;

  bool operator==(const Attribute&) const = default;
};

class Schema {
 public:
  Schema(std::string type_name, std::vector<Attribute> attributes)
      : type_name_(std::move(type_name)), attributes_(std::move(attributes)) {
    if (attributes_.empty())
      throw Error(Errc::EmptyAttributeList, "schema '" + type_name_ + "' has no attributes");
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (attributes_[i].name == attributes_[j].name)
          throw Error(Errc::DuplicateAttribute,
                      "attribute '" + attributes_[i].name + "' repeated in '" + type_name_ + "'");
      }
    }
  }

  const std::string& type_name() const { return type_name_; }
  std::span<const Attribute> attributes() const { return attributes_; }
  std::size_t size() const { return attributes_.size(); }

  std::optional<std::size_t> index_of(std::string_view attr) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i)
      if (attributes_[i].name == attr) return i;
    return std::nullopt;
  }

  bool operator==(const Schema&) const = default;

 private:
  std::string type_name_;
  std::vector<Attribute> attributes_;
};

class SchemaRegistry {
 public:
  const Schema& define(std::string type_name, std::vector<Attribute> attributes) {
    if (schemas_.contains(type_name))
      throw Error(Errc::DuplicateType, "type '" + type_name + "' already registered");
    Schema schema(type_name, std::move(attributes));
    ++version_;
    return schemas_.emplace(std::move(type_name), std::move(schema)).first->second;
  }

  const Schema* find(std::string_view type_name) const {
    auto it = schemas_.find(std::string(type_name));
    return it == schemas_.end() ? nullptr : &it->second;
  }

  const Schema& at(std::string_view type_name) const {
    if (auto* s = find(type_name)) return *s;
    throw Error(Errc::UnknownType, "no schema named '" + std::string(type_name) + "'");
  }

  /// Bumped on every registration; relation graphs use it to detect staleness.
  std::uint64_t version() const { return version_; }

  auto begin() const { return schemas_.begin(); }
  auto end() const { return schemas_.end(); }

 private:
  std::map<std::string, Schema, std::less<>> schemas_;
  std::uint64_t version_ = 0;
};

/// A typed record. `values` follow the attribute order of the fact's schema.
struct Fact {
  std::string type_name;
  std::vector<Value> values;

  bool operator==(const Fact&) const = default;
};

struct Change {
  enum class Op { Insert, Retract };
  Op op;
  FactId id;

  bool operator==(const Change&) const = default;
};

/// Typed working memory with an append-only change log. Each consumer keeps
/// its own cursor into the log, so several relation graphs can observe one
/// working memory independently.
class WorkingMemory {
 public:
  using NamedValues = std::vector<std::pair<std::string, Value>>;

  SchemaRegistry& registry() { return registry_; }
  const SchemaRegistry& registry() const { return registry_; }

  const Schema& define_schema(std::string type_name, std::vector<Attribute> attributes) {
    return registry_.define(std::move(type_name), std::move(attributes));
  }

  /// Insert a fact given as (attribute, value) pairs in any order.
  FactId insert(std::string_view type_name, const NamedValues& named) {
    const Schema& schema = registry_.at(type_name);
    std::vector<std::optional<Value>> slots(schema.size());
    for (const auto& [name, value] : named) {
      auto idx = schema.index_of(name);
      if (!idx)
        throw Error(Errc::SchemaViolation,
                    "'" + schema.type_name() + "' has no attribute '" + name + "'");
      if (slots[*idx])
        throw Error(Errc::SchemaViolation, "attribute '" + name + "' given twice");
      slots[*idx] = value;
    }
    Fact fact{schema.type_name(), {}};
    fact.values.reserve(schema.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i])
        throw Error(Errc::SchemaViolation, "'" + schema.type_name() + "' is missing attribute '" +
                                               schema.attributes()[i].name + "'");
      fact.values.push_back(std::move(*slots[i]));
    }
    return insert(std::move(fact));
  }

  /// Insert a fact whose values are already in schema order.
  FactId insert(Fact fact) {
    const Schema& schema = registry_.at(fact.type_name);
    if (fact.values.size() != schema.size())
      throw Error(Errc::SchemaViolation, "'" + schema.type_name() + "' expects " +
                                             std::to_string(schema.size()) + " values");
    for (std::size_t i = 0; i < schema.size(); ++i) {
      if (kind_of(fact.values[i]) != schema.attributes()[i].kind)
        throw Error(Errc::SchemaViolation, "attribute '" + schema.attributes()[i].name +
                                               "' must be " +
                                               std::string(to_string(schema.attributes()[i].kind)));
    }
    FactId id = next_id_++;
    by_type_[fact.type_name].insert(id);
    store_.emplace(id, std::move(fact));
    log_.push_back({Change::Op::Insert, id});
    return id;
  }

  void retract(FactId id) {
    auto it = store_.find(id);
    if (it == store_.end())
      throw Error(Errc::UnknownFactId, "fact " + std::to_string(id) + " is not live");
    by_type_[it->second.type_name].erase(id);
    store_.erase(it);
    log_.push_back({Change::Op::Retract, id});
  }

  bool contains(FactId id) const { return store_.contains(id); }

  const Fact* find(FactId id) const {
    auto it = store_.find(id);
    return it == store_.end() ? nullptr : &it->second;
  }

  const Fact& get(FactId id) const {
    if (auto* f = find(id)) return *f;
    throw Error(Errc::UnknownFactId, "fact " + std::to_string(id) + " is not live");
  }

  const std::set<FactId>& facts_of(std::string_view type_name) const {
    static const std::set<FactId> kNone;
    auto it = by_type_.find(type_name);
    return it == by_type_.end() ? kNone : it->second;
  }

  /// Live ids in ascending order.
  std::vector<FactId> live_ids() const {
    std::vector<FactId> ids;
    ids.reserve(store_.size());
    for (const auto& [id, _] : store_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  std::size_t size() const { return store_.size(); }

  std::span<const Change> change_log() const { return log_; }

  FactId next_id() const { return next_id_; }

 private:
  SchemaRegistry registry_;
  std::unordered_map<FactId, Fact> store_;
  std::map<std::string, std::set<FactId>, std::less<>> by_type_;
  std::vector<Change> log_;
  FactId next_id_ = 1;
};

/// Render a fact in the fact-file syntax, e.g.
/// `Employee(num=1, home_city="Seattle", dept_num=1)`.
inline std::string format_fact(const Schema& schema, const Fact& fact) {
  std::string out = fact.type_name + "(";
  for (std::size_t i = 0; i < fact.values.size(); ++i) {
    if (i) out += ", ";
    out += schema.attributes()[i].name + "=" + format_value(fact.values[i]);
  }
  return out + ")";
}

/// Parse one non-comment fact line into a type name and named values.
/// A leading `N:` label (as in printed listings) is accepted and ignored.
inline std::pair<std::string, WorkingMemory::NamedValues> parse_fact_line(std::string_view line,
                                                                          std::size_t line_no) {
  auto fail = [&](const std::string& what) -> Error {
    return Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + what, line_no);
  };
  detail::Scanner sc(line);
  {
    detail::Scanner probe(line);
    if (probe.integer() && probe.consume(":")) {
      sc.integer();
      sc.consume(":");
    }
  }
  auto type = sc.identifier();
  if (!type) throw fail("expected type name");
  if (!sc.consume("(")) throw fail("expected '('");
  WorkingMemory::NamedValues values;
  if (!sc.consume(")")) {
    do {
      auto attr = sc.identifier();
      if (!attr) throw fail("expected attribute name");
      if (!sc.consume("=")) throw fail("expected '=' after '" + *attr + "'");
      if (auto s = sc.quoted()) {
        values.emplace_back(*attr, std::move(*s));
      } else if (auto i = sc.integer()) {
        values.emplace_back(*attr, *i);
      } else {
        throw fail("expected integer or quoted string for '" + *attr + "'");
      }
    } while (sc.consume(","));
    if (!sc.consume(")")) throw fail("expected ')'");
  }
  if (!sc.done()) throw fail("trailing characters");
  return {std::move(*type), std::move(values)};
}

/// Load a fact file: one `Type(attr=value, ...)` per line, `#` comments,
/// blank lines ignored. Returns the number of facts inserted.
inline std::size_t load_facts(WorkingMemory& wm, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto [type, values] = parse_fact_line(line, line_no);
    try {
      wm.insert(type, values);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.message(), line_no);
    }
    ++count;
  }
  return count;
}

inline std::size_t load_facts(WorkingMemory& wm, std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_facts(wm, in);
}

inline std::size_t load_facts_file(WorkingMemory& wm, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
  return load_facts(wm, in);
}

}  // namespace corgi
