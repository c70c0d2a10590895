#pragma once

#include <map>
#include <string>
#include <utility>

#include "corgi/error.hpp"
#include "corgi/facts.hpp"
#include "corgi/patterns.hpp"

namespace corgi::bench {

/// Valentine pattern with `valentines` recipient variables V1..Vn.
///
/// Base: a Houston department D, a sender E living elsewhere, and a project P
/// of E. Each recipient Vi lives in a different city from E and has a higher
/// employee number; recipients are pairwise distinct (Vi.num != Vj.num).
/// With `link_dept`, E must also belong to D (E.dept_num == D.num).
inline Conjunction valentine_pattern(const SchemaRegistry& registry, int valentines,
                                     bool link_dept = false) {
  if (valentines < 1 || valentines > 8)
    throw Error(Errc::InvalidArgument, "valentine count must be in [1, 8]");
  Conjunction c;
  auto D = c.make_var(registry, "Department", "D");
  auto E = c.make_var(registry, "Employee", "E");
  auto P = c.make_var(registry, "Project", "P");
  c &= {D["city"] == "Houston", E["home_city"] != D["city"], E["num"] == P["emp_num"]};
  if (link_dept) c &= E["dept_num"] == D["num"];
  for (int i = 1; i <= valentines; ++i) {
    auto V = c.make_var(registry, "Employee", "V" + std::to_string(i));
    c &= {V["home_city"] != E["home_city"], V["num"] > E["num"]};
    for (int j = 1; j < i; ++j) c &= c.var("V" + std::to_string(j))["num"] != V["num"];
  }
  return c;
}

/// Per-copy renumbering applied by duplicate_dataset: (type, attribute) →
/// offset multiplied by the 0-based copy index.
inline const std::map<std::pair<std::string, std::string>, std::int64_t>& duplication_offsets() {
  static const std::map<std::pair<std::string, std::string>, std::int64_t> kOffsets = {
      {{"Employee", "num"}, 26},   {{"Employee", "dept_num"}, 12}, {{"Project", "emp_num"}, 26},
      {{"Project", "proj_num"}, 7}, {{"Department", "num"}, 12},
  };
  return kOffsets;
}

/// Scale a base dataset by concatenating renumbered copies. Identifier
/// attributes are shifted so that copies never collide while references
/// within a copy (employee ↔ project, employee ↔ department) stay intact.
inline WorkingMemory duplicate_dataset(const WorkingMemory& base, std::size_t copies) {
  if (copies < 1) throw Error(Errc::InvalidArgument, "copies must be at least 1");
  WorkingMemory out;
  for (const auto& [name, schema] : base.registry()) {
    std::vector<Attribute> attrs(schema.attributes().begin(), schema.attributes().end());
    out.define_schema(name, std::move(attrs));
  }
  const auto& offsets = duplication_offsets();
  auto ids = base.live_ids();
  for (std::size_t c = 0; c < copies; ++c) {
    for (FactId id : ids) {
      Fact f = base.get(id);
      const Schema& schema = base.registry().at(f.type_name);
      for (std::size_t a = 0; a < schema.size(); ++a) {
        auto it = offsets.find({f.type_name, schema.attributes()[a].name});
        if (it != offsets.end())
          std::get<std::int64_t>(f.values[a]) += it->second * static_cast<std::int64_t>(c);
      }
      out.insert(std::move(f));
    }
  }
  return out;
}

}  // namespace corgi::bench
