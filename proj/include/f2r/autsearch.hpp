#pragma once

// Automorphism groups of finite relational structures on the points of F_2^n,
// n <= 6, by partial-mapping backtracking with forward checking.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "f2r/error.hpp"
#include "f2r/parallel.hpp"
#include "f2r/perm.hpp"
#include "f2r/relations.hpp"

namespace f2r {

struct Structure {
  int dim = 0;
  std::vector<RelSpec> relations;
  bool fix_zero = false;

  void validate() const {
    if (dim < 1 || dim > 6) throw InvalidArgument("structure: dimension must lie in [1, 6]");
    for (const RelSpec& r : relations)
      if (r.dim() != dim) throw DimensionMismatch("structure relation " + r.name());
  }

  // Relations with the fix-zero constraint added as the unary relation {0}.
  std::vector<RelSpec> effective_relations() const {
    std::vector<RelSpec> out = relations;
    if (fix_zero) out.push_back(RelSpec::zeroset(dim));
    return out;
  }
};

struct AutOptions {
  std::uint64_t node_budget = 10'000'000;
  unsigned workers = 1;
};

struct AutResult {
  GenSet generators;
  Order order = 1;
  // Orbit of point i under the stabilizer of 0..i-1, for every i.
  std::vector<std::size_t> orbit_sizes;
  std::uint64_t nodes = 0;
};

namespace detail {

constexpr int kMaxPoints = 64;

struct SearchNode {
  std::array<std::uint64_t, kMaxPoints> dom{};
  std::array<std::int8_t, kMaxPoints> img{};
  std::array<std::uint8_t, kMaxPoints> order{};  // assigned points, in assignment order
  int assigned = 0;
  std::uint64_t assigned_mask = 0;
};

// One consistency pattern for forward checking: every position is labelled as
// the newly assigned point (X), the probed unassigned point (Z) or some other
// assigned point (A).
struct Pattern {
  std::uint64_t x_weight = 0;
  std::uint64_t z_weight = 0;
  std::vector<std::uint64_t> a_weights;
};

class AutEngine {
 public:
  AutEngine(int dim, const std::vector<RelSpec>& rels, std::uint64_t budget)
      : n_(1 << dim), dim_(dim), budget_(budget) {
    for (const RelSpec& r : rels) tables_.emplace_back(r);
    for (const RelTable& t : tables_) patterns_.push_back(make_patterns(t.codec()));
  }

  SearchNode root() const {
    SearchNode s;
    s.img.fill(-1);
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    for (int z = 0; z < n_; ++z) s.dom[z] = all;
    for (const RelTable& t : tables_) {
      const auto inv = invariants(t);
      for (int z = 0; z < n_; ++z)
        for (int w = 0; w < n_; ++w)
          if (inv[static_cast<std::size_t>(z)] != inv[static_cast<std::size_t>(w)]) s.dom[z] &= ~bit(w);
    }
    return s;
  }

  // Assign x -> y and filter the domains of unassigned points. False on a wipeout.
  bool assign(SearchNode& s, int x, int y) const {
    if (!(s.dom[x] & bit(y))) return false;
    s.img[x] = static_cast<std::int8_t>(y);
    s.dom[x] = bit(y);
    s.order[s.assigned++] = static_cast<std::uint8_t>(x);
    s.assigned_mask |= bit(x);
    for (int z = 0; z < n_; ++z)
      if (!(s.assigned_mask & bit(z))) {
        s.dom[z] &= ~bit(y);
        if (!s.dom[z]) return false;
      }
    for (std::size_t r = 0; r < tables_.size(); ++r)
      for (const Pattern& p : patterns_[r])
        if (!check_pattern(s, tables_[r], p, x)) return false;
    return true;
  }

  // First complete extension of `s` in search order, if any.
  std::optional<Perm> complete(const SearchNode& s, std::atomic<std::uint64_t>& nodes) const {
    int best = -1;
    int best_size = kMaxPoints + 1;
    for (int z = 0; z < n_; ++z) {
      if (s.assigned_mask & bit(z)) continue;
      const int c = std::popcount(s.dom[z]);
      if (c < best_size) {
        best = z;
        best_size = c;
      }
    }
    if (best < 0) {
      std::vector<Point> images(static_cast<std::size_t>(n_));
      for (int x = 0; x < n_; ++x) images[static_cast<std::size_t>(x)] = static_cast<Point>(s.img[x]);
      return Perm(dim_, std::move(images));
    }
    for (std::uint64_t d = s.dom[best]; d; d &= d - 1) {
      if (nodes.fetch_add(1, std::memory_order_relaxed) >= budget_)
        throw BudgetExhausted("automorphism search node budget");
      SearchNode child = s;
      if (assign(child, best, std::countr_zero(d)))
        if (auto p = complete(child, nodes)) return p;
    }
    return std::nullopt;
  }

  int points() const { return n_; }

 private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

  static std::vector<Pattern> make_patterns(const TupleCodec& c) {
    const int k = c.arity;
    std::vector<Pattern> out;
    int total = 1;
    for (int i = 0; i < k; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
      Pattern p;
      int v = code;
      bool has_x = false, has_z = false;
      for (int pos = 0; pos < k; ++pos, v /= 3) {
        const std::uint64_t w = std::uint64_t{1} << (c.dim * (k - 1 - pos));
        switch (v % 3) {
          case 0: p.x_weight += w; has_x = true; break;
          case 1: p.z_weight += w; has_z = true; break;
          default: p.a_weights.push_back(w);
        }
      }
      if (has_x && has_z) out.push_back(std::move(p));
    }
    return out;
  }

  // Per point: number of true tuples having the point at each position, plus
  // the truth value of the constant tuple.
  std::vector<std::vector<std::uint64_t>> invariants(const RelTable& t) const {
    const TupleCodec& c = t.codec();
    std::vector<std::vector<std::uint64_t>> inv(static_cast<std::size_t>(n_),
                                                std::vector<std::uint64_t>(static_cast<std::size_t>(c.arity) + 1, 0));
    std::vector<Point> tup(static_cast<std::size_t>(c.arity));
    for (int z = 0; z < n_; ++z) {
      std::fill(tup.begin(), tup.end(), static_cast<Point>(z));
      inv[static_cast<std::size_t>(z)][static_cast<std::size_t>(c.arity)] = t.at(c.encode(tup));
    }
    if (c.dim * c.arity > 24) return inv;
    for (std::uint64_t code = 0; code < c.space(); ++code) {
      if (!t.at(code)) continue;
      c.decode(code, tup);
      for (std::size_t pos = 0; pos < tup.size(); ++pos) ++inv[tup[pos]][pos];
    }
    return inv;
  }

  bool check_pattern(SearchNode& s, const RelTable& t, const Pattern& p, int x) const {
    // Other assigned points fill the A positions.
    std::array<std::uint8_t, kMaxPoints> others{};
    int m = 0;
    for (int i = 0; i < s.assigned; ++i)
      if (s.order[i] != x) others[m++] = s.order[i];
    const std::size_t slots = p.a_weights.size();
    if (slots > 0 && m == 0) return true;
    std::array<int, 8> idx{};
    for (;;) {
      std::uint64_t src = p.x_weight * static_cast<std::uint64_t>(x);
      std::uint64_t dst = p.x_weight * static_cast<std::uint64_t>(s.img[x]);
      for (std::size_t j = 0; j < slots; ++j) {
        const int a = others[idx[j]];
        src += p.a_weights[j] * static_cast<std::uint64_t>(a);
        dst += p.a_weights[j] * static_cast<std::uint64_t>(s.img[a]);
      }
      for (int z = 0; z < n_; ++z) {
        if (s.assigned_mask & bit(z)) continue;
        const bool truth = t.at(src + p.z_weight * static_cast<std::uint64_t>(z));
        std::uint64_t keep = 0;
        for (std::uint64_t d = s.dom[z]; d; d &= d - 1) {
          const int w = std::countr_zero(d);
          if (t.at(dst + p.z_weight * static_cast<std::uint64_t>(w)) == truth) keep |= bit(w);
        }
        s.dom[z] = keep;
        if (!keep) return false;
      }
      std::size_t j = 0;
      while (j < slots && ++idx[j] == m) idx[j++] = 0;
      if (j == slots) return true;
    }
  }

  int n_;
  int dim_;
  std::uint64_t budget_;
  std::vector<RelTable> tables_;
  std::vector<std::vector<Pattern>> patterns_;
};

inline std::vector<Point> orbit_of(Point x, const std::vector<Perm>& gens, std::size_t degree) {
  std::vector<bool> seen(degree, false);
  std::vector<Point> orbit{x};
  seen[x] = true;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (const Perm& g : gens) {
      const Point y = g(orbit[i]);
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
  return orbit;
}

}  // namespace detail

// Full automorphism group of the structure. Levels are processed from the last
// point upwards; at level i every image of i outside the orbit already known is
// tested by a search fixing 0..i-1, so the orbit sizes are exact.
inline AutResult automorphisms(const Structure& s, const AutOptions& opts = {}) {
  s.validate();
  const std::vector<RelSpec> rels = s.effective_relations();
  const detail::AutEngine engine(s.dim, rels, opts.node_budget);
  const int n = engine.points();
  const unsigned workers = std::max(1U, opts.workers);

  std::vector<detail::SearchNode> roots{engine.root()};
  for (int i = 0; i + 1 < n; ++i) {
    detail::SearchNode next = roots.back();
    if (!engine.assign(next, i, i)) throw InvariantViolation("automorphism search rejected the identity");
    roots.push_back(next);
  }

  std::atomic<std::uint64_t> nodes{0};
  std::vector<Perm> found;
  std::vector<std::size_t> orbit_sizes(static_cast<std::size_t>(n), 1);
  for (int i = n - 1; i >= 0; --i) {
    const detail::SearchNode& base = roots[static_cast<std::size_t>(i)];
    std::vector<Point> orbit = detail::orbit_of(static_cast<Point>(i), found, static_cast<std::size_t>(n));
    std::vector<bool> in_orbit(static_cast<std::size_t>(n), false);
    for (Point p : orbit) in_orbit[p] = true;

    std::vector<int> candidates;
    for (std::uint64_t d = base.dom[i]; d; d &= d - 1) candidates.push_back(std::countr_zero(d));
    std::size_t next = 0;
    while (next < candidates.size()) {
      // Speculatively search a batch of candidates outside the current orbit,
      // then consume the results in increasing order.
      std::vector<int> batch;
      for (; next < candidates.size() && batch.size() < workers; ++next)
        if (!in_orbit[static_cast<std::size_t>(candidates[next])]) batch.push_back(candidates[next]);
      std::vector<std::optional<Perm>> results(batch.size());
      parallel_chunks(workers, batch.size(), [&](std::uint64_t b, std::uint64_t e, unsigned) {
        for (std::uint64_t j = b; j < e; ++j) {
          detail::SearchNode child = base;
          if (engine.assign(child, i, batch[j])) results[j] = engine.complete(child, nodes);
        }
      });
      for (std::size_t j = 0; j < batch.size(); ++j) {
        if (in_orbit[static_cast<std::size_t>(batch[j])] || !results[j]) continue;
        found.push_back(std::move(*results[j]));
        for (Point p : detail::orbit_of(static_cast<Point>(i), found, static_cast<std::size_t>(n)))
          in_orbit[p] = true;
      }
    }
    orbit_sizes[static_cast<std::size_t>(i)] =
        static_cast<std::size_t>(std::count(in_orbit.begin(), in_orbit.end(), true));
  }

  AutResult out;
  out.nodes = nodes.load();
  out.orbit_sizes = orbit_sizes;
  for (std::size_t sz : orbit_sizes) {
    auto o = checked_mul(out.order, sz);
    if (!o) throw BudgetExhausted("automorphism group order exceeds 128 bits");
    out.order = *o;
  }
  if (found.empty()) found.push_back(Perm::identity(s.dim));
  out.generators = GenSet(s.dim, std::move(found));

  for (const RelSpec& r : rels) {
    const auto check = group_preserves(out.generators, r);
    if (!check.preserved) throw InvariantViolation("automorphism search produced a non-preserving generator");
  }
  const auto chain_order = StabChain(out.generators).order_if_fits();
  if (!chain_order || *chain_order != out.order)
    throw InvariantViolation("automorphism orbit product disagrees with the stabilizer chain");
  return out;
}

}  // namespace f2r
