#pragma once

// Alternating (symplectic) bilinear forms over F_2.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "f2r/error.hpp"
#include "f2r/gf2.hpp"

namespace f2r {

// A square bit matrix with no structural guarantees; rows[i] bit j is entry (i, j).
struct BitMatrix {
  int dim = 0;
  std::vector<Word> rows;

  bool at(int i, int j) const { return ((rows[static_cast<std::size_t>(i)] >> j) & 1U) != 0; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
};

// The first entry that breaks the alternating axioms, if any. A diagonal
// violation reports (i, i).
inline std::optional<std::pair<int, int>> alternating_violation(const BitMatrix& m) {
  for (int i = 0; i < m.dim; ++i) {
    if (m.at(i, i)) return std::make_pair(i, i);
    for (int j = i + 1; j < m.dim; ++j)
      if (m.at(i, j) != m.at(j, i)) return std::make_pair(i, j);
  }
  return std::nullopt;
}

// Symmetric zero-diagonal Gram matrix. Degenerate forms are representable;
// operations that need a nondegenerate form check `nondegenerate()`.
class BilinForm {
 public:
  BilinForm() = default;

  explicit BilinForm(BitMatrix gram) : gram_(std::move(gram)) {
    if (gram_.dim < 0 || gram_.dim > kMaxDim)
      throw InvalidArgument("BilinForm: dimension out of range");
    if (gram_.rows.size() != static_cast<std::size_t>(gram_.dim))
      throw InvalidArgument("BilinForm: row count does not match dimension");
    for (Word r : gram_.rows)
      if ((r & ~dim_mask(gram_.dim)) != 0) throw InvalidArgument("BilinForm: row exceeds dimension");
    if (auto bad = alternating_violation(gram_))
      throw InvalidArgument("BilinForm: not alternating at entry (" + std::to_string(bad->first) +
                            ", " + std::to_string(bad->second) + ")");
    rank_ = rank_of(gram_.rows);
  }

  static BilinForm zero(int dim) { return BilinForm(BitMatrix{dim, std::vector<Word>(static_cast<std::size_t>(dim), 0)}); }

  int dim() const { return gram_.dim; }
  const BitMatrix& gram() const { return gram_; }
  int rank() const { return rank_; }
  bool nondegenerate() const { return rank_ == gram_.dim; }

  // The functional y -> x . y, as a bit row.
  Word functional(Word x) const {
    Word f = 0;
    while (x != 0) {
      f ^= gram_.rows[static_cast<std::size_t>(std::countr_zero(x))];
      x &= x - 1;
    }
    return f;
  }

  bool dot_bits(Word x, Word y) const { return parity(functional(x) & y); }

  friend bool operator==(const BilinForm& a, const BilinForm& b) { return a.gram_ == b.gram_; }

 private:
  BitMatrix gram_;
  int rank_ = 0;
};

inline bool dot(const BilinForm& f, const Vec2& u, const Vec2& v) {
  if (u.dim != f.dim() || v.dim != f.dim()) throw DimensionMismatch("dot");
  return f.dot_bits(u.bits, v.bits);
}

// Dimension 2m, hyperbolic pairs (e_{2i+1}, e_{2i+2}).
inline BilinForm standard_form(int m) {
  if (m < 1 || 2 * m > kMaxDim) throw InvalidArgument("standard_form: m must lie in [1, 12]");
  BitMatrix g{2 * m, std::vector<Word>(static_cast<std::size_t>(2 * m), 0)};
  for (int i = 0; i < m; ++i) {
    g.rows[static_cast<std::size_t>(2 * i)] = Word{1} << (2 * i + 1);
    g.rows[static_cast<std::size_t>(2 * i + 1)] = Word{1} << (2 * i);
  }
  return BilinForm(std::move(g));
}

// Gram matrix of a tuple of vectors under f.
inline BitMatrix gram_of(const BilinForm& f, std::span<const Word> vs) {
  BitMatrix g{static_cast<int>(vs.size()), std::vector<Word>(vs.size(), 0)};
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j)
      if (f.dot_bits(vs[i], vs[j])) g.rows[i] |= Word{1} << j;
  return g;
}

// Form transported along a change of basis: the new form evaluated on unit
// vectors equals f evaluated on `basis`.
inline BilinForm restrict_to(const BilinForm& f, std::span<const Word> basis) {
  return BilinForm(gram_of(f, basis));
}

namespace detail {

// Least vector x with x . c == 0 for every c in `orth` and x . p == 1 for
// `partner` (when given), skipping members of `avoid`. Empty result means none.
inline std::optional<Word> least_with_products(const BilinForm& f, std::span<const Word> orth,
                                               std::optional<Word> partner, const Subspace& avoid) {
  std::vector<Word> rows;
  std::vector<bool> rhs;
  for (Word c : orth) {
    rows.push_back(f.functional(c));
    rhs.push_back(false);
  }
  if (partner) {
    rows.push_back(f.functional(*partner));
    rhs.push_back(true);
  }
  auto sol = solve_bits(f.dim(), rows, rhs);
  if (!sol) return std::nullopt;
  for (std::uint64_t k = 0; k < sol->count(); ++k) {
    Word x = sol->element(k);
    if (!avoid.contains_bits(x)) return x;
  }
  return std::nullopt;
}

// Completes a list of hyperbolic pairs to a full hyperbolic basis, always
// taking the least admissible vector.
inline void complete_hyperbolic(const BilinForm& f, std::vector<Word>& basis) {
  while (static_cast<int>(basis.size()) < f.dim()) {
    Subspace current = span_bits(f.dim(), basis);
    auto x = least_with_products(f, basis, std::nullopt, current);
    if (!x) throw InvariantViolation("complete_hyperbolic: no isotropic complement vector");
    auto y = least_with_products(f, basis, *x, current);
    if (!y) throw InvariantViolation("complete_hyperbolic: no hyperbolic partner");
    basis.push_back(*x);
    basis.push_back(*y);
  }
}

// Hyperbolic basis whose first vectors are fixed combinations of `vs`. The
// combination pattern depends only on the Gram matrix of `vs`, so two tuples
// with equal Gram matrices yield bases in which corresponding tuple entries
// have equal coordinates.
inline std::vector<Word> adapted_hyperbolic_basis(const BilinForm& f, std::span<const Word> vs) {
  std::vector<Word> rest(vs.begin(), vs.end());
  std::vector<Word> basis;
  // Symplectic Gram-Schmidt inside span(vs).
  for (;;) {
    std::size_t pi = rest.size(), pj = rest.size();
    for (std::size_t i = 0; i < rest.size() && pi == rest.size(); ++i)
      for (std::size_t j = i + 1; j < rest.size(); ++j)
        if (f.dot_bits(rest[i], rest[j])) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == rest.size()) break;
    const Word u = rest[pi], v = rest[pj];
    basis.push_back(u);
    basis.push_back(v);
    std::vector<Word> next;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (i == pi || i == pj) continue;
      Word r = rest[i];
      if (f.dot_bits(r, v)) r ^= u;
      if (f.dot_bits(rest[i], u)) r ^= v;
      next.push_back(r);
    }
    rest = std::move(next);
  }
  // `rest` is now the radical of span(vs); give each element a partner.
  std::vector<Word> radical = rest;
  for (std::size_t j = 0; j < radical.size(); ++j) {
    std::vector<Word> orth = basis;
    for (std::size_t l = 0; l < radical.size(); ++l)
      if (l != j) orth.push_back(radical[l]);
    Subspace avoid(f.dim());  // a partner is never inside the current span
    auto z = least_with_products(f, orth, radical[j], avoid);
    if (!z) throw InvariantViolation("adapted_hyperbolic_basis: radical vector has no partner");
    basis.push_back(radical[j]);
    basis.push_back(*z);
  }
  complete_hyperbolic(f, basis);
  return basis;
}

}  // namespace detail

// Pairs (u_i, v_i) with u_i . v_i = 1 and every other product 0, spanning the space.
inline std::vector<std::pair<Vec2, Vec2>> hyperbolic_basis(const BilinForm& f) {
  if (!f.nondegenerate()) throw InvalidArgument("hyperbolic_basis: form is degenerate");
  std::vector<Word> basis;
  detail::complete_hyperbolic(f, basis);
  std::vector<std::pair<Vec2, Vec2>> out;
  for (std::size_t i = 0; i + 1 < basis.size(); i += 2)
    out.emplace_back(Vec2(f.dim(), basis[i]), Vec2(f.dim(), basis[i + 1]));
  return out;
}

// A form-preserving linear map sending src[i] to dst[i]. Returned as the
// linear map; perm.hpp lifts it to a permutation of points.
inline LinearMap witt_extend_map(const BilinForm& f, std::span<const Word> src,
                                 std::span<const Word> dst) {
  if (!f.nondegenerate()) throw InvalidArgument("witt_extend: form is degenerate");
  if (src.size() != dst.size()) throw InvalidArgument("witt_extend: tuple lengths differ");
  const Word mask = dim_mask(f.dim());
  for (Word w : src)
    if (w & ~mask) throw DimensionMismatch("witt_extend");
  for (Word w : dst)
    if (w & ~mask) throw DimensionMismatch("witt_extend");
  if (!independent(src) || !independent(dst)) throw DependentInput();
  if (!(gram_of(f, src) == gram_of(f, dst))) throw GramMismatch();

  // Both adapted bases share one Gram pattern and express src[i] / dst[i] with
  // the same coordinates, so mapping basis to basis does the job.
  const std::vector<Word> bs = detail::adapted_hyperbolic_basis(f, src);
  const std::vector<Word> bd = detail::adapted_hyperbolic_basis(f, dst);

  LinearMap from_src{f.dim(), f.dim(), bs};
  LinearMap from_dst{f.dim(), f.dim(), bd};
  auto to_coords = invert(from_src);
  if (!to_coords) throw InvariantViolation("witt_extend: adapted basis is singular");
  LinearMap g = to_coords->then(from_dst);

  for (std::size_t i = 0; i < src.size(); ++i)
    if (g.apply(src[i]) != dst[i]) throw InvariantViolation("witt_extend: image mismatch");
  for (int i = 0; i < f.dim(); ++i)
    for (int j = 0; j < f.dim(); ++j)
      if (f.dot_bits(g.columns[static_cast<std::size_t>(i)], g.columns[static_cast<std::size_t>(j)]) !=
          f.dot_bits(Word{1} << i, Word{1} << j))
        throw InvariantViolation("witt_extend: form not preserved");
  return g;
}

}  // namespace f2r
