#pragma once

#include <string_view>

#include "corgi/facts.hpp"

namespace corgi::bench {

/// Valentine-task schemas: Employee, Project, Department.
inline void define_valentine_schemas(WorkingMemory& wm) {
  wm.define_schema("Employee", {{"num", Kind::Integer},
                                {"home_city", Kind::String},
                                {"dept_num", Kind::Integer}});
  wm.define_schema("Project", {{"proj_num", Kind::Integer}, {"emp_num", Kind::Integer}});
  wm.define_schema("Department", {{"city", Kind::String}, {"num", Kind::Integer}});
}

/// The 16-fact example working memory (ids 1..16 when loaded into an empty
/// working memory).
inline constexpr std::string_view kOfficeFacts = R"facts(# Typed working memory example: 8 employees, 4 projects, 4 departments.
Employee(num=1, home_city="Seattle", dept_num=1)
Employee(num=2, home_city="Orlando", dept_num=1)
Employee(num=3, home_city="LA", dept_num=6)
Employee(num=4, home_city="New York", dept_num=6)
Employee(num=5, home_city="LA", dept_num=7)
Employee(num=6, home_city="Houston", dept_num=7)
Employee(num=7, home_city="Orlando", dept_num=8)
Employee(num=8, home_city="Houston", dept_num=8)
Project(proj_num=10780, emp_num=8)
Project(proj_num=10781, emp_num=6)
Project(proj_num=10781, emp_num=5)
Project(proj_num=10782, emp_num=7)
Department(city="LA", num=1)
Department(city="New York", num=6)
Department(city="Houston", num=7)
Department(city="Houston", num=8)
)facts";

/// The 50-fact benchmark dataset.
inline constexpr std::string_view kValentineFacts = R"facts(# Valentine benchmark dataset: 26 employees, 12 projects, 12 departments.
Employee(num=1, home_city="Seattle", dept_num=1)
Employee(num=10, home_city="Orlando", dept_num=1)
Employee(num=3, home_city="Orlando", dept_num=1)
Employee(num=17, home_city="Orlando", dept_num=2)
Employee(num=5, home_city="Seattle", dept_num=2)
Employee(num=19, home_city="LA", dept_num=2)
Employee(num=7, home_city="Seattle", dept_num=2)
Employee(num=8, home_city="Dallas", dept_num=3)
Employee(num=24, home_city="LA", dept_num=4)
Employee(num=2, home_city="Dallas", dept_num=4)
Employee(num=11, home_city="Dallas", dept_num=5)
Employee(num=26, home_city="Dallas", dept_num=5)
Employee(num=13, home_city="LA", dept_num=6)
Employee(num=23, home_city="New York", dept_num=6)
Employee(num=15, home_city="LA", dept_num=7)
Employee(num=16, home_city="LA", dept_num=7)
Employee(num=4, home_city="Chicago", dept_num=7)
Employee(num=18, home_city="LA", dept_num=8)
Employee(num=6, home_city="LA", dept_num=8)
Employee(num=20, home_city="LA", dept_num=8)
Employee(num=21, home_city="LA", dept_num=9)
Employee(num=22, home_city="LA", dept_num=9)
Employee(num=14, home_city="LA", dept_num=9)
Employee(num=9, home_city="New York", dept_num=9)
Employee(num=25, home_city="New York", dept_num=10)
Employee(num=12, home_city="LA", dept_num=10)
Project(proj_num=10780, emp_num=7)
Project(proj_num=10781, emp_num=8)
Project(proj_num=10781, emp_num=9)
Project(proj_num=10781, emp_num=1)
Project(proj_num=10782, emp_num=2)
Project(proj_num=10782, emp_num=3)
Project(proj_num=10783, emp_num=4)
Project(proj_num=10784, emp_num=5)
Project(proj_num=10785, emp_num=6)
Project(proj_num=10785, emp_num=10)
Project(proj_num=10785, emp_num=11)
Project(proj_num=10786, emp_num=12)
Department(city="LA", num=1)
Department(city="LA", num=2)
Department(city="LA", num=3)
Department(city="New York", num=4)
Department(city="New York", num=5)
Department(city="New York", num=6)
Department(city="Houston", num=7)
Department(city="Houston", num=8)
Department(city="Houston", num=9)
Department(city="Chicago", num=10)
Department(city="Chicago", num=11)
Department(city="Phoenix", num=12)
)facts";

inline WorkingMemory office_memory() {
  WorkingMemory wm;
  define_valentine_schemas(wm);
  load_facts(wm, kOfficeFacts);
  return wm;
}

inline WorkingMemory valentine_memory() {
  WorkingMemory wm;
  define_valentine_schemas(wm);
  load_facts(wm, kValentineFacts);
  return wm;
}

}  // namespace corgi::bench
