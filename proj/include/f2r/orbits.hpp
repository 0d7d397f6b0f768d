#pragma once

// Orbits of a generated group on k-tuples of points.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "f2r/error.hpp"
#include "f2r/gf2.hpp"
#include "f2r/parallel.hpp"
#include "f2r/perm.hpp"
#include "f2r/relations.hpp"

namespace f2r {

enum class TupleFilter { All, Injective, NonzeroInjective, Independent };

inline const char* name_of(TupleFilter f) {
  switch (f) {
    case TupleFilter::All: return "all";
    case TupleFilter::Injective: return "injective";
    case TupleFilter::NonzeroInjective: return "nonzero-injective";
    case TupleFilter::Independent: return "independent";
  }
  return "?";
}

inline bool passes(TupleFilter f, std::span<const Point> t) {
  switch (f) {
    case TupleFilter::All: return true;
    case TupleFilter::Injective: return rel::pairwise_distinct(t);
    case TupleFilter::NonzeroInjective: return rel::pairwise_distinct(t) && rel::all_nonzero(t);
    case TupleFilter::Independent: return independent(t);
  }
  return false;
}

// Equality pattern of a tuple: letters by first occurrence, e.g. (x, x, y, z) -> "aabc".
inline std::string equality_pattern(std::span<const Point> t) {
  std::string s;
  char next = 'a';
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::size_t j = 0;
    while (t[j] != t[i]) ++j;
    s.push_back(j == i ? next++ : s[j]);
  }
  return s;
}

struct OrbitClass {
  std::vector<Point> representative;  // lexicographically least member
  std::uint64_t size = 0;
  std::string pattern;
  bool sum_zero = false;
  int rank = 0;

  friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
};

inline OrbitClass describe(std::vector<Point> rep, std::uint64_t size) {
  OrbitClass c;
  c.pattern = equality_pattern(rep);
  Point sum = 0;
  for (Point x : rep) sum ^= x;
  c.sum_zero = sum == 0;
  c.rank = rank_of(rep);
  c.representative = std::move(rep);
  c.size = size;
  return c;
}

struct OrbitCensus {
  int dim = 0;
  int arity = 0;
  TupleFilter filter = TupleFilter::All;
  std::vector<OrbitClass> classes;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& c : classes) t += c.size;
    return t;
  }

  friend bool operator==(const OrbitCensus&, const OrbitCensus&) = default;
};

struct OrbitOptions {
  std::uint64_t budget = 10'000'000;  // tuple states
  unsigned workers = 1;
};

namespace detail {

class AtomicBitset {
 public:
  explicit AtomicBitset(std::uint64_t n) : words_((n + 63) / 64) {
    for (auto& w : words_) w.store(0, std::memory_order_relaxed);
  }
  // True when the bit was newly set by this call.
  bool set(std::uint64_t i) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    return (words_[i >> 6].fetch_or(bit, std::memory_order_relaxed) & bit) == 0;
  }
  bool test(std::uint64_t i) const {
    return ((words_[i >> 6].load(std::memory_order_relaxed) >> (i & 63)) & 1U) != 0;
  }

 private:
  std::vector<std::atomic<std::uint64_t>> words_;
};

inline TupleCodec checked_codec(const GenSet& g, int k, const OrbitOptions& opts) {
  if (k < 1 || k > 6) throw InvalidArgument("tuple orbits: arity must lie in [1, 6]");
  if (g.dim * k > 32) throw BudgetExhausted("tuple space exceeds 2^32 states");
  TupleCodec codec{g.dim, k};
  if (codec.space() > opts.budget) throw BudgetExhausted("tuple space exceeds the state budget");
  return codec;
}

}  // namespace detail

// Exact partition of the filtered k-tuples into orbits of <G>. The filtered set
// must be invariant under G.
inline OrbitCensus tuple_orbits(const GenSet& g, int k, TupleFilter filter, const OrbitOptions& opts = {}) {
  const TupleCodec codec = detail::checked_codec(g, k, opts);
  if (filter == TupleFilter::Independent && k > g.dim)
    throw InvalidArgument("independent filter needs arity <= dimension");
  const std::uint64_t n = codec.space();
  detail::AtomicBitset visited(n);
  const unsigned workers = std::max(1U, opts.workers);
  std::atomic<bool> escaped{false};

  OrbitCensus census{g.dim, k, filter, {}};
  std::vector<Point> t(static_cast<std::size_t>(k));
  for (std::uint64_t c = 0; c < n; ++c) {
    if (visited.test(c)) continue;
    codec.decode(c, t);
    if (!passes(filter, t)) continue;
    visited.set(c);
    std::vector<std::uint64_t> frontier{c};
    std::uint64_t size = 1;
    while (!frontier.empty()) {
      std::vector<std::vector<std::uint64_t>> found(workers);
      parallel_chunks(workers, frontier.size(), [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        std::vector<Point> a(static_cast<std::size_t>(k)), b(a.size());
        for (std::uint64_t i = begin; i < end; ++i) {
          codec.decode(frontier[i], a);
          for (const Perm& s : g.gens) {
            for (std::size_t j = 0; j < a.size(); ++j) b[j] = s(a[j]);
            const std::uint64_t code = codec.encode(b);
            if (visited.set(code)) {
              if (!passes(filter, b)) escaped.store(true, std::memory_order_relaxed);
              found[w].push_back(code);
            }
          }
        }
      });
      if (escaped.load()) throw InvalidArgument(std::string("tuple filter '") + name_of(filter) +
                                                "' is not invariant under the group");
      frontier.clear();
      for (auto& f : found) frontier.insert(frontier.end(), f.begin(), f.end());
      size += frontier.size();
    }
    census.classes.push_back(describe(t, size));
  }
  return census;
}

// Number of orbits on k-tuples for k = 1 .. kmax.
inline std::vector<std::size_t> orbit_profile(const GenSet& g, int kmax, TupleFilter filter = TupleFilter::All,
                                              const OrbitOptions& opts = {}) {
  std::vector<std::size_t> out;
  for (int k = 1; k <= kmax; ++k) out.push_back(tuple_orbits(g, k, filter, opts).classes.size());
  return out;
}

namespace detail {

struct Parent {
  std::uint64_t from;
  std::uint32_t gen;
};

// Product of generators along the BFS tree path from `start` to `code`.
inline Perm word_to_perm(const GenSet& g, const std::unordered_map<std::uint64_t, Parent>& parent,
                         std::uint64_t start, std::uint64_t code) {
  std::vector<std::uint32_t> word;
  while (code != start) {
    const Parent& p = parent.at(code);
    word.push_back(p.gen);
    if (word.size() > 1'000'000) throw BudgetExhausted("witness word longer than 10^6");
    code = p.from;
  }
  Perm w = Perm::identity(g.dim);
  for (auto it = word.rbegin(); it != word.rend(); ++it) w = compose(w, g.gens[*it]);
  return w;
}

// Breadth-first walk over the orbit of `s`; stops at the first tuple accepted
// by `goal` and returns a group element mapping s onto it.
template <typename Goal>
std::optional<Perm> orbit_search(const GenSet& g, std::span<const Point> s, const OrbitOptions& opts,
                                 Goal&& goal) {
  const int k = static_cast<int>(s.size());
  if (k < 1 || g.dim * k > 64) throw InvalidArgument("orbit search: unsupported arity");
  for (Point x : s)
    if (x >= g.degree()) throw DimensionMismatch("orbit search");
  const TupleCodec codec{g.dim, k};
  const std::uint64_t start = codec.encode(s);
  std::unordered_map<std::uint64_t, Parent> parent;
  parent.emplace(start, Parent{start, 0});
  std::vector<Point> a(s.begin(), s.end()), b(a.size());
  if (goal(std::span<const Point>(a))) return Perm::identity(g.dim);
  std::vector<std::uint64_t> frontier{start};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t code : frontier) {
      codec.decode(code, a);
      for (std::uint32_t gi = 0; gi < g.gens.size(); ++gi) {
        for (std::size_t j = 0; j < a.size(); ++j) b[j] = g.gens[gi](a[j]);
        const std::uint64_t c = codec.encode(b);
        if (!parent.emplace(c, Parent{code, gi}).second) continue;
        if (parent.size() > opts.budget) throw BudgetExhausted("orbit search state budget");
        if (goal(std::span<const Point>(b))) return word_to_perm(g, parent, start, c);
        next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace detail

// A group element mapping s onto t, or std::nullopt when they lie in different orbits.
inline std::optional<Perm> same_orbit(const GenSet& g, std::span<const Point> s, std::span<const Point> t,
                                      const OrbitOptions& opts = {}) {
  if (s.size() != t.size()) throw InvalidArgument("same_orbit: arities differ");
  const std::vector<Point> target(t.begin(), t.end());
  auto w = detail::orbit_search(g, s, opts, [&](std::span<const Point> x) {
    return std::equal(x.begin(), x.end(), target.begin(), target.end());
  });
  if (w)
    for (std::size_t i = 0; i < s.size(); ++i)
      if ((*w)(s[i]) != t[i]) throw InvariantViolation("same_orbit: witness does not map s to t");
  return w;
}

// A group element making the tuple linearly independent. The tuple must consist
// of distinct nonzero points whose last entry lies outside the span of the others.
inline std::optional<Perm> independentize(const GenSet& g, std::span<const Point> t,
                                          const OrbitOptions& opts = {}) {
  if (t.empty()) throw InvalidArgument("independentize: empty tuple");
  if (!rel::all_nonzero(t) || !rel::pairwise_distinct(t))
    throw HypothesisFailed("independentize: entries must be distinct and nonzero");
  Subspace head = span_bits(g.dim, t.first(t.size() - 1));
  if (head.contains_bits(t.back()))
    throw HypothesisFailed("independentize: last entry lies in the span of the others");
  auto w = detail::orbit_search(g, t, opts, [](std::span<const Point> x) { return independent(x); });
  if (w) {
    std::vector<Point> image;
    for (Point x : t) image.push_back((*w)(x));
    if (!independent(image)) throw InvariantViolation("independentize: witness image is dependent");
  }
  return w;
}

}  // namespace f2r
