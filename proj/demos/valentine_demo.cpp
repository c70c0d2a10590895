// Builds the one-valentine pattern over the small employee dataset, prints the
// relation graph, lists every match, then retracts a fact and lists again.

#include <iostream>

#include "corgi/bench/datasets.hpp"
#include "corgi/bench/valentine.hpp"
#include "corgi/corgi.hpp"

int main() {
  using namespace corgi;
  WorkingMemory wm = bench::office_memory();
  Conjunction conj = bench::valentine_pattern(wm.registry(), 1);
  std::cout << to_standard_form(conj) << "\n\n";

  auto graph = RelationGraph::compile(conj, wm);
  graph.update();
  std::cout << graph.dump() << '\n';

  auto print_matches = [&] {
    MatchIterator it(graph);
    std::size_t n = 0;
    while (auto m = it.next()) {
      for (std::size_t v = 0; v < m->bindings.size(); ++v)
        std::cout << ' ' << conj.vars()[v].name << '=' << m->bindings[v];
      std::cout << '\n';
      ++n;
    }
    std::cout << n << " matches\n";
  };
  print_matches();

  // Employee 8 is the only valentine for sender 7.
  wm.retract(8);
  graph.update();
  std::cout << "\nafter retracting fact 8:\n";
  print_matches();
}
