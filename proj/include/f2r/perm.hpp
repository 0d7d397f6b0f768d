#pragma once

// Permutations of the 2^n points of F_2^n and groups given by generators.
//
// Actions are on the right: x^(pq) = (x^p)^q, so compose(p, q) applies p first.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "f2r/error.hpp"
#include "f2r/gf2.hpp"

namespace f2r {

using Point = std::uint32_t;
using Order = unsigned __int128;

inline std::string to_string(Order v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

// Multiply, or std::nullopt on 128-bit overflow.
inline std::optional<Order> checked_mul(Order a, Order b) {
  if (a != 0 && b > ~Order{0} / a) return std::nullopt;
  return a * b;
}

class Perm {
 public:
  Perm() = default;

  explicit Perm(int dim) : dim_(dim) {
    check_dim(dim, "Perm");
    img_.resize(std::size_t{1} << dim);
    for (std::size_t x = 0; x < img_.size(); ++x) img_[x] = static_cast<Point>(x);
  }

  Perm(int dim, std::vector<Point> images) : dim_(dim), img_(std::move(images)) {
    check_dim(dim, "Perm");
    const std::size_t n = std::size_t{1} << dim;
    if (img_.size() != n) throw InvalidArgument("Perm: image table must have 2^dim entries");
    std::vector<bool> seen(n, false);
    for (Point y : img_) {
      if (y >= n || seen[y]) throw InvalidArgument("Perm: image table is not a bijection");
      seen[y] = true;
    }
  }

  static Perm identity(int dim) { return Perm(dim); }

  template <typename F>
  static Perm from_function(int dim, F&& f) {
    check_dim(dim, "Perm");
    std::vector<Point> img(std::size_t{1} << dim);
    for (std::size_t x = 0; x < img.size(); ++x) img[x] = static_cast<Point>(f(static_cast<Point>(x)));
    return Perm(dim, std::move(img));
  }

  static Perm from_linear(const LinearMap& m) {
    if (m.src_dim != m.dst_dim) throw InvalidArgument("Perm::from_linear: map is not square");
    return from_function(m.src_dim, [&](Point x) { return m.apply(x); });
  }

  static Perm transposition(int dim, Point a, Point b) {
    return from_function(dim, [&](Point x) { return x == a ? b : x == b ? a : x; });
  }

  int dim() const { return dim_; }
  std::size_t degree() const { return img_.size(); }
  Point operator()(Point x) const { return img_[x]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t x = 0; x < img_.size(); ++x)
      if (img_[x] != x) return false;
    return true;
  }

  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  // Unchecked construction for products of already valid permutations.
  struct Trusted {};
  Perm(Trusted, int dim, std::vector<Point> images) : dim_(dim), img_(std::move(images)) {}

  friend Perm compose(const Perm& p, const Perm& q);
  friend Perm inverse(const Perm& p);

  int dim_ = 0;
  std::vector<Point> img_;
};

inline Perm compose(const Perm& p, const Perm& q) {
  if (p.dim_ != q.dim_) throw DimensionMismatch("compose");
  std::vector<Point> r(p.img_.size());
  for (std::size_t x = 0; x < r.size(); ++x) r[x] = q.img_[p.img_[x]];
  return Perm(Perm::Trusted{}, p.dim_, std::move(r));
}

inline Perm inverse(const Perm& p) {
  std::vector<Point> r(p.img_.size());
  for (std::size_t x = 0; x < r.size(); ++x) r[p.img_[x]] = static_cast<Point>(x);
  return Perm(Perm::Trusted{}, p.dim_, std::move(r));
}

inline Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }

// Parity of the permutation as a product of transpositions.
inline bool is_odd(const Perm& p) {
  std::vector<bool> seen(p.degree(), false);
  std::size_t transpositions = 0;
  for (std::size_t x = 0; x < p.degree(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (Point y = static_cast<Point>(x); !seen[y]; y = p(y)) {
      seen[y] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return (transpositions & 1U) != 0;
}

struct GenSet {
  int dim = 0;
  std::vector<Perm> gens;

  GenSet() = default;
  GenSet(int d, std::vector<Perm> g) : dim(d), gens(std::move(g)) {
    check_dim(d, "GenSet");
    if (gens.empty()) throw InvalidArgument("GenSet: generator list is empty");
    for (const Perm& p : gens)
      if (p.dim() != d) throw DimensionMismatch("GenSet");
  }

  std::size_t degree() const { return std::size_t{1} << dim; }
};

// Union of two generator lists over the same domain.
inline GenSet join(const GenSet& a, const GenSet& b) {
  if (a.dim != b.dim) throw DimensionMismatch("join");
  std::vector<Perm> g = a.gens;
  g.insert(g.end(), b.gens.begin(), b.gens.end());
  return GenSet(a.dim, std::move(g));
}

inline GenSet join(const GenSet& a, const Perm& p) { return join(a, GenSet(a.dim, {p})); }

struct ChainOptions {
  // Cap on the number of sift operations during construction.
  std::uint64_t sift_budget = 50'000'000;
  // Base points forced to the front of the base, in order.
  std::vector<Point> base_prefix;
};

// Base and strong generating set, built by deterministic Schreier-Sims.
class StabChain {
 public:
  explicit StabChain(const GenSet& g, ChainOptions opts = {}) : dim_(g.dim), budget_(opts.sift_budget) {
    std::vector<Perm> seeds;
    for (const Perm& p : g.gens)
      if (!p.is_identity() && std::find(seeds.begin(), seeds.end(), p) == seeds.end())
        seeds.push_back(p);
    for (Point b : opts.base_prefix)
      if (b >= g.degree()) throw InvalidArgument("StabChain: base point out of range");
    build(seeds, opts.base_prefix);
  }

  int dim() const { return dim_; }
  std::size_t length() const { return levels_.size(); }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const Level& l : levels_) b.push_back(l.base);
    return b;
  }

  std::vector<std::size_t> orbit_sizes() const {
    std::vector<std::size_t> s;
    for (const Level& l : levels_) s.push_back(l.orbit.size());
    return s;
  }

  std::optional<Order> order_if_fits() const {
    Order o = 1;
    for (const Level& l : levels_) {
      auto next = checked_mul(o, l.orbit.size());
      if (!next) return std::nullopt;
      o = *next;
    }
    return o;
  }

  Order order() const {
    auto o = order_if_fits();
    if (!o) throw BudgetExhausted("group order does not fit in 128 bits");
    return *o;
  }

  bool contains(const Perm& p) const {
    if (p.dim() != dim_) throw DimensionMismatch("StabChain::contains");
    auto [h, level] = strip(p, 0);
    return level == levels_.size() && h.is_identity();
  }

  // Generators of the pointwise stabilizer of base[0 .. level-1]; the identity
  // when that stabilizer is trivial.
  std::vector<Perm> stabilizer_generators(std::size_t level) const {
    if (level < levels_.size() && !levels_[level].gens.empty()) return levels_[level].gens;
    return {Perm::identity(dim_)};
  }

  std::vector<Perm> strong_generators() const {
    return levels_.empty() ? std::vector<Perm>{Perm::identity(dim_)} : levels_.front().gens;
  }

  std::uint64_t sifts_used() const { return sifts_; }

 private:
  struct Level {
    Point base = 0;
    std::vector<Perm> gens;
    std::vector<Point> orbit;
    std::vector<std::int32_t> where;  // point -> index into orbit, or -1
    std::vector<Perm> reps;           // reps[i] maps base to orbit[i]
    std::vector<Perm> reps_inv;
    std::vector<std::vector<char>> done;  // Schreier generator (orbit idx, gen idx) settled
  };

  void charge() {
    if (++sifts_ > budget_) throw BudgetExhausted("stabilizer chain sift budget");
  }

  std::size_t degree() const { return std::size_t{1} << dim_; }

  // Sifts g starting at `from`; returns the residue and the level where it stopped.
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const Level& lv = levels_[l];
      const std::int32_t idx = lv.where[g(lv.base)];
      if (idx < 0) return {std::move(g), l};
      g = compose(g, lv.reps_inv[static_cast<std::size_t>(idx)]);
    }
    return {std::move(g), levels_.size()};
  }

  void extend_orbit(Level& lv) {
    if (lv.orbit.empty()) {
      lv.where.assign(degree(), -1);
      lv.orbit.push_back(lv.base);
      lv.where[lv.base] = 0;
      lv.reps.push_back(Perm::identity(dim_));
      lv.reps_inv.push_back(Perm::identity(dim_));
    }
    // Existing representatives are kept; only new points get new ones.
    for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
      for (const Perm& s : lv.gens) {
        const Point y = s(lv.orbit[i]);
        if (lv.where[y] >= 0) continue;
        lv.where[y] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(y);
        Perm r = compose(lv.reps[i], s);
        lv.reps_inv.push_back(inverse(r));
        lv.reps.push_back(std::move(r));
      }
    }
  }

  // Point with the largest orbit under <gens>, ties broken by the smaller point.
  Point greedy_base(const std::vector<Perm>& gens) const {
    std::vector<std::int32_t> comp(degree(), -1);
    Point best = 0;
    std::size_t best_size = 0;
    std::vector<Point> queue;
    for (Point x = 0; x < degree(); ++x) {
      if (comp[x] >= 0) continue;
      queue.assign(1, x);
      comp[x] = static_cast<std::int32_t>(x);
      for (std::size_t i = 0; i < queue.size(); ++i)
        for (const Perm& s : gens) {
          const Point y = s(queue[i]);
          if (comp[y] < 0) {
            comp[y] = static_cast<std::int32_t>(x);
            queue.push_back(y);
          }
        }
      if (queue.size() > best_size) {
        best_size = queue.size();
        best = x;
      }
    }
    return best;
  }

  void push_level(Point base, std::vector<Perm> gens) {
    Level lv;
    lv.base = base;
    lv.gens = std::move(gens);
    levels_.push_back(std::move(lv));
    extend_orbit(levels_.back());
  }

  static std::vector<Perm> fixing(const std::vector<Perm>& gens, Point b) {
    std::vector<Perm> out;
    for (const Perm& p : gens)
      if (p(b) == b) out.push_back(p);
    return out;
  }

  void build(const std::vector<Perm>& seeds, const std::vector<Point>& prefix) {
    std::vector<Perm> current = seeds;
    for (Point b : prefix) {
      push_level(b, current);
      current = fixing(current, b);
    }
    while (!current.empty()) {
      const Point b = greedy_base(current);
      push_level(b, current);
      current = fixing(current, b);
    }
    if (levels_.empty()) return;

    std::size_t i = levels_.size() - 1;
    for (;;) {
      bool descended = false;
      Level* lv = &levels_[i];
      for (std::size_t a = 0; !descended && a < lv->orbit.size(); ++a) {
        if (lv->done.size() <= a) lv->done.resize(a + 1);
        lv->done[a].resize(lv->gens.size(), 0);
        for (std::size_t s = 0; s < lv->gens.size(); ++s) {
          if (lv->done[a][s]) continue;
          lv->done[a][s] = 1;
          const Point image = lv->gens[s](lv->orbit[a]);
          Perm y = compose(compose(lv->reps[a], lv->gens[s]),
                           lv->reps_inv[static_cast<std::size_t>(lv->where[image])]);
          if (y.is_identity()) continue;
          charge();
          auto [h, j] = strip(std::move(y), i + 1);
          if (j == levels_.size() && h.is_identity()) continue;
          // h fixes base[0 .. j-1] and becomes a strong generator on levels i+1 .. j.
          if (j == levels_.size()) push_level(greedy_base({h}), {});
          for (std::size_t l = i + 1; l <= j; ++l) {
            levels_[l].gens.push_back(h);
            extend_orbit(levels_[l]);
          }
          i = j;
          descended = true;
          break;
        }
      }
      if (descended) continue;
      if (i == 0) break;
      --i;
    }
  }

  int dim_;
  std::uint64_t budget_;
  std::uint64_t sifts_ = 0;
  std::vector<Level> levels_;
};

inline Order group_order(const GenSet& g, ChainOptions opts = {}) {
  return StabChain(g, std::move(opts)).order();
}

inline bool member(const GenSet& g, const Perm& p, ChainOptions opts = {}) {
  return StabChain(g, std::move(opts)).contains(p);
}

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using ElementSet = std::unordered_set<Perm, PermHash>;

// Every element of <g> by breadth-first closure under right multiplication by
// generators. Independent of the stabilizer chain; used as its oracle.
inline ElementSet enumerate_elements(const GenSet& g, std::size_t cap = 1'000'000) {
  ElementSet seen;
  std::vector<Perm> frontier{Perm::identity(g.dim)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& x : frontier)
      for (const Perm& s : g.gens) {
        Perm y = compose(x, s);
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw BudgetExhausted("element enumeration cap");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

// Points fixed by every generator.
inline std::vector<Point> fixed_points(const GenSet& g) {
  std::vector<Point> out;
  for (Point x = 0; x < g.degree(); ++x) {
    bool fixed = true;
    for (const Perm& p : g.gens)
      if (p(x) != x) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(x);
  }
  return out;
}

// Generators of {h in <g> : h fixes every point of t}.
inline GenSet pointwise_stabilizer(const GenSet& g, std::span<const Point> t, ChainOptions opts = {}) {
  opts.base_prefix.assign(t.begin(), t.end());
  StabChain chain(g, std::move(opts));
  return GenSet(g.dim, chain.stabilizer_generators(t.size()));
}

}  // namespace f2r
