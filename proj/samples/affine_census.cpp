// Orbits of AGL(n, 2) on 4-tuples of points, grouped by equality pattern.

#include <cstdlib>
#include <iostream>
#include <map>

#include "f2r/f2r.hpp"

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 3;
  const f2r::OrbitCensus census = f2r::tuple_orbits(f2r::agl_gens(n), 4, f2r::TupleFilter::All);
  std::map<std::string, int> per_pattern;
  for (const auto& c : census.classes) {
    ++per_pattern[c.pattern];
    std::cout << c.pattern << "  " << f2r::format_symbolic_tuple(c.representative) << "  size " << c.size
              << (c.sum_zero ? "  sum zero" : "") << "\n";
  }
  std::cout << census.classes.size() << " orbits on " << census.total() << " tuples\n";
  for (const auto& [pattern, count] : per_pattern) std::cout << pattern << ": " << count << "\n";
}
