#pragma once

// Bit-packed linear algebra over the two-element field.
//
// A vector of F_2^n is an unsigned word whose bit i is coordinate i (e_{i+1}
// in the usual one-based naming). The integer also serves as the index of the
// vector when it is used as a point of a permutation domain.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "f2r/error.hpp"

namespace f2r {

using Word = std::uint32_t;

inline constexpr int kMaxDim = 24;

inline void check_dim(int dim, const char* where) {
  if (dim < 1 || dim > kMaxDim)
    throw InvalidArgument(std::string(where) + ": dimension must lie in [1, 24], got " +
                          std::to_string(dim));
}

inline constexpr Word dim_mask(int dim) { return dim >= 32 ? ~Word{0} : (Word{1} << dim) - 1; }

inline constexpr bool parity(Word w) { return (std::popcount(w) & 1) != 0; }

// Highest set bit of a nonzero word.
inline constexpr int lead_bit(Word w) { return std::bit_width(w) - 1; }

struct Vec2 {
  int dim = 1;
  Word bits = 0;

  Vec2() = default;
  Vec2(int d, Word b) : dim(d), bits(b) {
    check_dim(d, "Vec2");
    if ((b & ~dim_mask(d)) != 0)
      throw InvalidArgument("Vec2: bit pattern exceeds dimension " + std::to_string(d));
  }

  static Vec2 zero(int d) { return Vec2(d, 0); }
  // One-based unit vector, e_1 is bit 0.
  static Vec2 unit(int d, int i) {
    if (i < 1 || i > d) throw InvalidArgument("Vec2::unit: index out of range");
    return Vec2(d, Word{1} << (i - 1));
  }

  bool is_zero() const { return bits == 0; }
  bool coord(int i) const { return ((bits >> i) & 1U) != 0; }

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 add(const Vec2& u, const Vec2& v) {
  if (u.dim != v.dim) throw DimensionMismatch("add");
  return Vec2(u.dim, u.bits ^ v.bits);
}

inline Vec2 operator+(const Vec2& u, const Vec2& v) { return add(u, v); }

// Linear span in canonical reduced row-echelon form. The pivot of a row is its
// highest set bit; rows are ordered by increasing pivot and no row has another
// row's pivot bit set. Equal subspaces therefore compare equal field by field.
class Subspace {
 public:
  // Dimension 0 is allowed here: the zero space shows up in amalgamation.
  explicit Subspace(int dim) : dim_(dim) {
    if (dim < 0 || dim > kMaxDim) throw InvalidArgument("Subspace: dimension out of range");
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Word>& rows() const { return rows_; }

  std::vector<Vec2> basis() const {
    std::vector<Vec2> out;
    out.reserve(rows_.size());
    for (Word r : rows_) out.emplace_back(dim_, r);
    return out;
  }

  // Residue of w after clearing every pivot bit. Zero iff w is in the span;
  // otherwise it is the least element of the coset w + S.
  Word reduce(Word w) const {
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it)
      if ((w >> lead_bit(*it)) & 1U) w ^= *it;
    return w;
  }

  bool contains_bits(Word w) const { return reduce(w) == 0; }

  // Returns false when w was already in the span.
  bool insert_bits(Word w) {
    w = reduce(w);
    if (w == 0) return false;
    const int p = lead_bit(w);
    for (Word& r : rows_)
      if ((r >> p) & 1U) r ^= w;
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), w,
                                [](Word a, Word b) { return lead_bit(a) < lead_bit(b); });
    rows_.insert(pos, w);
    return true;
  }

  // The k-th element (k < 2^rank) of the coset base + S in increasing integer
  // order, where base must already be reduced. Bit i of k selects row i.
  Word coset_element(Word reduced_base, std::uint64_t k) const {
    Word w = reduced_base;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if ((k >> i) & 1U) w ^= rows_[i];
    return w;
  }

  std::uint64_t size() const { return std::uint64_t{1} << rows_.size(); }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  int dim_;
  std::vector<Word> rows_;
};

inline Subspace span(int dim, std::span<const Vec2> vectors) {
  Subspace s(dim);
  for (const Vec2& v : vectors) {
    if (v.dim != dim) throw DimensionMismatch("span");
    s.insert_bits(v.bits);
  }
  return s;
}

inline Subspace span(std::span<const Vec2> vectors) {
  if (vectors.empty()) throw InvalidArgument("span: empty input needs an explicit dimension");
  return span(vectors.front().dim, vectors);
}

inline Subspace span_bits(int dim, std::span<const Word> vectors) {
  Subspace s(dim);
  for (Word w : vectors) s.insert_bits(w);
  return s;
}

inline bool contains(const Subspace& s, const Vec2& v) {
  if (s.dim() != v.dim) throw DimensionMismatch("contains");
  return s.contains_bits(v.bits);
}

inline int rank_of(std::span<const Word> vectors) {
  Subspace s(kMaxDim);
  int r = 0;
  for (Word w : vectors) r += s.insert_bits(w) ? 1 : 0;
  return r;
}

inline bool independent(std::span<const Word> vectors) {
  return rank_of(vectors) == static_cast<int>(vectors.size());
}

// Affine solution set {x : parity(rows[i] & x) == rhs[i] for all i}.
// `particular` is the least solution in integer order.
struct SolutionSet {
  Vec2 particular;
  Subspace kernel;

  std::uint64_t count() const { return kernel.size(); }

  // Solutions in increasing integer order: element(0) == particular.
  Word element(std::uint64_t k) const { return kernel.coset_element(particular.bits, k); }

  bool contains(Word x) const { return kernel.contains_bits(x ^ particular.bits); }
};

inline std::optional<SolutionSet> solve_bits(int dim, std::span<const Word> rows,
                                             const std::vector<bool>& rhs) {
  check_dim(dim, "solve");
  if (rows.size() != rhs.size()) throw InvalidArgument("solve: |A| != |b|");
  const Word mask = dim_mask(dim);
  const Word rhs_bit = Word{1} << dim;  // dim <= 24, so bit `dim` is free
  std::vector<Word> m;
  m.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if ((rows[i] & ~mask) != 0) throw DimensionMismatch("solve");
    m.push_back(rows[i] | (rhs[i] ? rhs_bit : 0));
  }

  // Gauss-Jordan, pivot columns chosen from bit 0 upward.
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int c = 0; c < dim && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && ((m[sel] >> c) & 1U) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != r && ((m[i] >> c) & 1U)) m[i] ^= m[r];
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i)
    if (m[i] & rhs_bit) return std::nullopt;

  Word particular = 0;
  Word pivot_mask = 0;
  for (std::size_t i = 0; i < r; ++i) {
    pivot_mask |= Word{1} << pivot_col[i];
    if (m[i] & rhs_bit) particular |= Word{1} << pivot_col[i];
  }
  Subspace kernel(dim);
  for (int f = 0; f < dim; ++f) {
    if ((pivot_mask >> f) & 1U) continue;
    Word v = Word{1} << f;
    for (std::size_t i = 0; i < r; ++i)
      if ((m[i] >> f) & 1U) v |= Word{1} << pivot_col[i];
    kernel.insert_bits(v);
  }
  return SolutionSet{Vec2(dim, kernel.reduce(particular)), std::move(kernel)};
}

inline std::optional<SolutionSet> solve(std::span<const Vec2> rows, const std::vector<bool>& rhs,
                                        int dim) {
  std::vector<Word> w;
  w.reserve(rows.size());
  for (const Vec2& v : rows) {
    if (v.dim != dim) throw DimensionMismatch("solve");
    w.push_back(v.bits);
  }
  return solve_bits(dim, w, rhs);
}

// A linear map F_2^src -> F_2^dst given by the images of the unit vectors.
struct LinearMap {
  int src_dim = 0;
  int dst_dim = 0;
  std::vector<Word> columns;  // columns[i] = image of bit i

  Word apply(Word x) const {
    Word y = 0;
    while (x != 0) {
      y ^= columns[static_cast<std::size_t>(std::countr_zero(x))];
      x &= x - 1;
    }
    return y;
  }

  static LinearMap identity(int dim) {
    LinearMap m{dim, dim, {}};
    for (int i = 0; i < dim; ++i) m.columns.push_back(Word{1} << i);
    return m;
  }

  // Apply this map, then `next`.
  LinearMap then(const LinearMap& next) const {
    if (dst_dim != next.src_dim) throw DimensionMismatch("LinearMap::then");
    LinearMap out{src_dim, next.dst_dim, {}};
    for (Word c : columns) out.columns.push_back(next.apply(c));
    return out;
  }

  bool injective() const {
    return rank_of(columns) == src_dim;
  }

  friend bool operator==(const LinearMap&, const LinearMap&) = default;
};

// Inverse of a square invertible map; std::nullopt when singular.
inline std::optional<LinearMap> invert(const LinearMap& m) {
  if (m.src_dim != m.dst_dim) throw InvalidArgument("invert: map is not square");
  const int n = m.src_dim;
  // Row-reduce [columns | identity] tracked as combination masks.
  std::vector<Word> vec(m.columns.begin(), m.columns.end());
  std::vector<Word> comb(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comb[static_cast<std::size_t>(i)] = Word{1} << i;
  // Reduce to vec[i] == e_i; comb[i] then records which columns sum to e_i.
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if ((vec[static_cast<std::size_t>(i)] >> c) & 1U) {
        sel = i;
        break;
      }
    if (sel < 0) return std::nullopt;
    std::swap(vec[static_cast<std::size_t>(c)], vec[static_cast<std::size_t>(sel)]);
    std::swap(comb[static_cast<std::size_t>(c)], comb[static_cast<std::size_t>(sel)]);
    for (int i = 0; i < n; ++i)
      if (i != c && ((vec[static_cast<std::size_t>(i)] >> c) & 1U)) {
        vec[static_cast<std::size_t>(i)] ^= vec[static_cast<std::size_t>(c)];
        comb[static_cast<std::size_t>(i)] ^= comb[static_cast<std::size_t>(c)];
      }
  }
  // comb[c] is the set of source units whose images sum to e_c.
  return LinearMap{n, n, std::move(comb)};
}

// Coordinates of x with respect to an ordered basis, as a bit mask.
inline std::optional<Word> coordinates(std::span<const Word> basis, int dim, Word x) {
  LinearMap b{static_cast<int>(basis.size()), dim, {basis.begin(), basis.end()}};
  if (b.src_dim != dim) throw InvalidArgument("coordinates: basis must be square");
  auto inv = invert(b);
  if (!inv) return std::nullopt;
  return inv->apply(x);
}

}  // namespace f2r
