#pragma once

// Finite F_2-spaces with an alternating form: axioms, embeddings, joint
// embedding, free amalgamation and the one-point extension solver.

#include <optional>
#include <utility>
#include <vector>

#include "f2r/error.hpp"
#include "f2r/forms.hpp"
#include "f2r/gf2.hpp"

namespace f2r {

struct AxiomCheck {
  bool ok = true;
  // Unit vectors (x, y) with x.y != y.x, or x == y with x.x = 1.
  std::optional<std::pair<Vec2, Vec2>> witness;
};

inline AxiomCheck check_axioms(const BitMatrix& m) {
  if (m.dim < 0 || m.dim > kMaxDim || m.rows.size() != static_cast<std::size_t>(m.dim))
    throw InvalidArgument("check_axioms: malformed matrix");
  AxiomCheck out;
  if (auto bad = alternating_violation(m)) {
    out.ok = false;
    out.witness.emplace(Vec2::unit(m.dim, bad->first + 1), Vec2::unit(m.dim, bad->second + 1));
  }
  return out;
}

inline AxiomCheck check_axioms(const BilinForm& f) { return check_axioms(f.gram()); }

struct FinSymplSpace {
  BilinForm form;

  int dim() const { return form.dim(); }
  friend bool operator==(const FinSymplSpace&, const FinSymplSpace&) = default;
};

// Injective linear map that preserves the form.
struct Embedding {
  FinSymplSpace source;
  FinSymplSpace target;
  LinearMap map;

  void validate() const {
    if (map.src_dim != source.dim() || map.dst_dim != target.dim() ||
        map.columns.size() != static_cast<std::size_t>(source.dim()))
      throw InvalidArgument("embedding: map shape does not match the spaces");
    for (Word c : map.columns)
      if (c & ~dim_mask(target.dim())) throw InvalidArgument("embedding: image outside the target");
    if (!map.injective()) throw InvalidArgument("embedding: map is not injective");
    for (int i = 0; i < source.dim(); ++i)
      for (int j = i + 1; j < source.dim(); ++j)
        if (target.form.dot_bits(map.columns[static_cast<std::size_t>(i)], map.columns[static_cast<std::size_t>(j)]) !=
            source.form.gram().at(i, j))
          throw InvalidArgument("embedding: form values are not preserved");
  }
};

inline Embedding make_embedding(FinSymplSpace source, FinSymplSpace target, LinearMap map) {
  Embedding e{std::move(source), std::move(target), std::move(map)};
  e.validate();
  return e;
}

namespace detail {

inline bool extend_embedding(const FinSymplSpace& a, const FinSymplSpace& b, std::vector<Word>& images,
                             std::uint64_t& budget) {
  const int i = static_cast<int>(images.size());
  if (i == a.dim()) return true;
  std::vector<Word> rows;
  std::vector<bool> rhs;
  for (int j = 0; j < i; ++j) {
    rows.push_back(b.form.functional(images[static_cast<std::size_t>(j)]));
    rhs.push_back(a.form.gram().at(i, j));
  }
  auto sol = solve_bits(b.dim(), rows, rhs);
  if (!sol) return false;
  const Subspace used = span_bits(b.dim(), images);
  for (std::uint64_t k = 0; k < sol->count(); ++k) {
    if (budget == 0) throw BudgetExhausted("embedding search budget");
    --budget;
    const Word v = sol->element(k);
    if (used.contains_bits(v)) continue;
    images.push_back(v);
    if (extend_embedding(a, b, images, budget)) return true;
    images.pop_back();
  }
  return false;
}

}  // namespace detail

// Some embedding of A into B, found by extending partial isometric bases; the
// images are tried in increasing integer order.
inline std::optional<Embedding> find_embedding(const FinSymplSpace& a, const FinSymplSpace& b,
                                               std::uint64_t budget = 1'000'000) {
  if (a.dim() > b.dim()) return std::nullopt;
  std::vector<Word> images;
  if (!detail::extend_embedding(a, b, images, budget)) return std::nullopt;
  return make_embedding(a, b, LinearMap{a.dim(), b.dim(), images});
}

// The subspace spanned by `basis` with the restricted form, and its inclusion.
inline Embedding restrict_space(const FinSymplSpace& s, std::span<const Word> basis) {
  if (!independent(basis)) throw DependentInput("restrict: basis is dependent");
  FinSymplSpace sub{restrict_to(s.form, basis)};
  return make_embedding(sub, s, LinearMap{static_cast<int>(basis.size()), s.dim(), {basis.begin(), basis.end()}});
}

struct JointEmbedding {
  FinSymplSpace space;
  Embedding left;
  Embedding right;
};

// Orthogonal direct sum: A on the low coordinates, B on the high ones.
inline JointEmbedding joint_embed(const FinSymplSpace& a, const FinSymplSpace& b) {
  const int n = a.dim() + b.dim();
  if (n > kMaxDim) throw InvalidArgument("joint_embed: sum of dimensions exceeds 24");
  BitMatrix g{n, std::vector<Word>(static_cast<std::size_t>(n), 0)};
  for (int i = 0; i < a.dim(); ++i) g.rows[static_cast<std::size_t>(i)] = a.form.gram().rows[static_cast<std::size_t>(i)];
  for (int i = 0; i < b.dim(); ++i)
    g.rows[static_cast<std::size_t>(a.dim() + i)] = b.form.gram().rows[static_cast<std::size_t>(i)] << a.dim();
  FinSymplSpace sum{BilinForm(std::move(g))};
  LinearMap l{a.dim(), n, {}}, r{b.dim(), n, {}};
  for (int i = 0; i < a.dim(); ++i) l.columns.push_back(Word{1} << i);
  for (int i = 0; i < b.dim(); ++i) r.columns.push_back(Word{1} << (a.dim() + i));
  JointEmbedding out{sum, make_embedding(a, sum, l), make_embedding(b, sum, r)};
  if (!check_axioms(out.space.form).ok) throw InvariantViolation("joint_embed: axioms fail");
  return out;
}

struct Amalgam {
  FinSymplSpace space;
  Embedding psi1;  // S1 -> S4
  Embedding psi2;  // S2 -> S4
};

namespace detail {

// Unit vectors at the non-pivot positions of span(image): a complement.
inline std::vector<Word> echelon_complement(int dim, std::span<const Word> image) {
  const Subspace s = span_bits(dim, image);
  Word pivots = 0;
  for (Word r : s.rows()) pivots |= Word{1} << lead_bit(r);
  std::vector<Word> out;
  for (int i = 0; i < dim; ++i)
    if (!((pivots >> i) & 1U)) out.push_back(Word{1} << i);
  return out;
}

}  // namespace detail

// Free amalgam of S1 and S2 over S3. Coordinates of S4 are laid out as
// [S3 | complement of phi1(S3) in S1 | complement of phi2(S3) in S2], and the
// two complements are orthogonal. Maps compose left to right: phi1 then psi1.
inline Amalgam amalgamate(const Embedding& phi1, const Embedding& phi2) {
  phi1.validate();
  phi2.validate();
  if (!(phi1.source == phi2.source)) throw InvalidArgument("amalgamate: embeddings have different sources");
  const int d3 = phi1.source.dim();
  const int d1 = phi1.target.dim();
  const int d2 = phi2.target.dim();
  const int c1 = d1 - d3;
  const int c2 = d2 - d3;
  const int n = d3 + c1 + c2;
  if (n > kMaxDim) throw InvalidArgument("amalgamate: amalgam dimension exceeds 24");

  // Adapted bases of S1 and S2: image of S3 first, then the complement.
  std::vector<Word> b1 = phi1.map.columns, b2 = phi2.map.columns;
  for (Word w : detail::echelon_complement(d1, phi1.map.columns)) b1.push_back(w);
  for (Word w : detail::echelon_complement(d2, phi2.map.columns)) b2.push_back(w);

  const BilinForm& f1 = phi1.target.form;
  const BilinForm& f2 = phi2.target.form;
  // Position in S4 of the j-th adapted basis vector of S1 / S2.
  auto pos1 = [&](int j) { return j; };
  auto pos2 = [&](int j) { return j < d3 ? j : j + c1; };
  BitMatrix g{n, std::vector<Word>(static_cast<std::size_t>(n), 0)};
  auto put = [&](int i, int j, bool v) {
    if (v) {
      g.rows[static_cast<std::size_t>(i)] |= Word{1} << j;
      g.rows[static_cast<std::size_t>(j)] |= Word{1} << i;
    }
  };
  for (int i = 0; i < d1; ++i)
    for (int j = i + 1; j < d1; ++j)
      put(pos1(i), pos1(j), f1.dot_bits(b1[static_cast<std::size_t>(i)], b1[static_cast<std::size_t>(j)]));
  for (int i = 0; i < d2; ++i)
    for (int j = std::max(i + 1, d3); j < d2; ++j)
      put(pos2(i), pos2(j), f2.dot_bits(b2[static_cast<std::size_t>(i)], b2[static_cast<std::size_t>(j)]));
  FinSymplSpace s4{BilinForm(std::move(g))};

  auto lift = [&](const std::vector<Word>& basis, int d, auto pos) {
    auto to_coords = invert(LinearMap{d, d, basis});
    if (!to_coords) throw InvariantViolation("amalgamate: adapted basis is singular");
    LinearMap place{d, n, {}};
    for (int j = 0; j < d; ++j) place.columns.push_back(Word{1} << pos(j));
    return to_coords->then(place);
  };
  Amalgam out{s4, make_embedding(phi1.target, s4, lift(b1, d1, pos1)),
              make_embedding(phi2.target, s4, lift(b2, d2, pos2))};
  if (!(phi1.map.then(out.psi1.map) == phi2.map.then(out.psi2.map)))
    throw InvariantViolation("amalgamate: square does not commute");
  if (!check_axioms(s4.form).ok) throw InvariantViolation("amalgamate: axioms fail");
  return out;
}

// The least w with a_j . w = targets[j] for all j and w outside span(a), or
// std::nullopt when every solution lies inside the span.
inline std::optional<Vec2> extension_witness(const BilinForm& f, std::span<const Vec2> a,
                                             const std::vector<bool>& targets) {
  if (!f.nondegenerate()) throw InvalidArgument("extension_witness: form is degenerate");
  if (a.size() != targets.size()) throw InvalidArgument("extension_witness: |a| != |targets|");
  if (a.size() > static_cast<std::size_t>(f.dim())) throw InvalidArgument("extension_witness: too many vectors");
  std::vector<Word> bits, rows;
  for (const Vec2& v : a) {
    if (v.dim != f.dim()) throw DimensionMismatch("extension_witness");
    bits.push_back(v.bits);
    rows.push_back(f.functional(v.bits));
  }
  if (!independent(bits)) throw DependentInput("extension_witness: tuple is dependent");
  // Nondegenerate form and independent a: the system always has solutions.
  auto sol = solve_bits(f.dim(), rows, targets);
  if (!sol) throw InvariantViolation("extension_witness: system unexpectedly inconsistent");
  const Subspace s = span_bits(f.dim(), bits);
  // At most |span| solutions can lie in the span.
  const std::uint64_t tries = std::min<std::uint64_t>(sol->count(), s.size() + 1);
  for (std::uint64_t k = 0; k < tries; ++k) {
    const Word w = sol->element(k);
    if (!s.contains_bits(w)) return Vec2(f.dim(), w);
  }
  return std::nullopt;
}

// Independent vectors whose Gram matrix is `adj`, built one vertex at a time
// with extension_witness; std::nullopt if some step has no witness.
inline std::optional<std::vector<Vec2>> realize_graph(const BitMatrix& adj, const BilinForm& f) {
  if (!check_axioms(adj).ok) throw InvalidArgument("realize_graph: adjacency must be symmetric and loop-free");
  if (adj.dim > f.dim()) throw InvalidArgument("realize_graph: more vertices than dimensions");
  std::vector<Vec2> out;
  for (int i = 0; i < adj.dim; ++i) {
    std::vector<bool> targets;
    for (int j = 0; j < i; ++j) targets.push_back(adj.at(i, j));
    auto w = extension_witness(f, out, targets);
    if (!w) return std::nullopt;
    out.push_back(*w);
  }
  std::vector<Word> bits;
  for (const Vec2& v : out) bits.push_back(v.bits);
  if (!(gram_of(f, bits) == adj) || !independent(bits))
    throw InvariantViolation("realize_graph: result does not match the graph");
  return out;
}

}  // namespace f2r
