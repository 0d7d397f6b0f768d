#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "f2r/f2r.hpp"

namespace f2r::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(20240611);
  return r;
}

inline Word random_word(int dim) {
  return static_cast<Word>(std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << dim) - 1)(rng()));
}

inline Perm random_perm(int dim) {
  std::vector<Point> img(std::size_t{1} << dim);
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<Point>(i);
  std::shuffle(img.begin(), img.end(), rng());
  return Perm(dim, img);
}

// Random permutation fixing 0.
inline Perm random_perm_fixing_zero(int dim) {
  std::vector<Point> img(std::size_t{1} << dim);
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<Point>(i);
  std::shuffle(img.begin() + 1, img.end(), rng());
  return Perm(dim, img);
}

// Closure of a set of words under addition, by brute force.
inline std::set<Word> naive_span(const std::vector<Word>& vs) {
  std::set<Word> s{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Word> cur(s.begin(), s.end());
    for (Word a : cur)
      for (Word v : vs)
        if (s.insert(a ^ v).second) grew = true;
  }
  return s;
}

// x . y computed from the Gram matrix entry by entry.
inline bool naive_dot(const BitMatrix& g, Word x, Word y) {
  bool r = false;
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j)
      if (((x >> i) & 1U) && ((y >> j) & 1U) && g.at(i, j)) r = !r;
  return r;
}

// Random invertible matrix as a linear map.
inline LinearMap random_invertible(int dim) {
  for (;;) {
    LinearMap m{dim, dim, {}};
    for (int i = 0; i < dim; ++i) m.columns.push_back(random_word(dim));
    if (m.injective()) return m;
  }
}

}  // namespace f2r::testing
