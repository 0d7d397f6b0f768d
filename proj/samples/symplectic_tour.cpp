// Realize a graph as the Gram graph of independent vectors, then move it with a
// symplectic map found by Witt extension.

#include <iostream>

#include "f2r/f2r.hpp"

int main() {
  const f2r::BilinForm f = f2r::standard_form(3);
  // Path a - b - c.
  const f2r::BitMatrix path{3, {0b010, 0b101, 0b010}};
  const auto vs = f2r::realize_graph(path, f);
  if (!vs) {
    std::cout << "no realization\n";
    return 1;
  }
  std::cout << "realized:";
  for (const auto& v : *vs) std::cout << " " << f2r::format_symbolic(v.bits);
  std::cout << "\n";

  // Any other triple with the same Gram matrix is in the same Sp-orbit.
  const std::vector<f2r::Vec2> other{f2r::Vec2(6, 0b000100), f2r::Vec2(6, 0b001000), f2r::Vec2(6, 0b010100)};
  const f2r::Perm g = f2r::witt_extend(f, *vs, other);
  std::cout << "symplectic map sends";
  for (const auto& v : *vs) std::cout << " " << f2r::format_symbolic(v.bits) << "->" << f2r::format_symbolic(g(v.bits));
  std::cout << "\n";

  const auto aut = f2r::automorphisms({6, {f2r::RelSpec::p0(f)}, false});
  std::cout << "|Aut(P0)| on F_2^6 = " << f2r::to_string(aut.order) << "\n";
  std::cout << "g preserves P0: " << f2r::member(aut.generators, g) << "\n";
}
