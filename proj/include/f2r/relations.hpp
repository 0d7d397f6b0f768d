#pragma once

// The relations used to carve out reducts, and preservation tests.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "f2r/error.hpp"
#include "f2r/forms.hpp"
#include "f2r/gf2.hpp"
#include "f2r/parallel.hpp"
#include "f2r/perm.hpp"

namespace f2r {

// ---------------------------------------------------------------------------
// Raw evaluators on bit patterns.

namespace rel {

inline bool pairwise_distinct(std::span<const Point> t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] == t[j]) return false;
  return true;
}

inline bool all_nonzero(std::span<const Point> t) {
  return std::all_of(t.begin(), t.end(), [](Point x) { return x != 0; });
}

inline bool parallelogram(Point a, Point b, Point c, Point d) { return (a ^ b ^ c ^ d) == 0; }

inline bool diamond(const BilinForm& f, Point a, Point b, Point c, Point d) {
  const std::array<Point, 4> t{a, b, c, d};
  if (!all_nonzero(t) || !pairwise_distinct(t)) return false;
  return f.dot_bits(a, b) ^ f.dot_bits(b, c) ^ f.dot_bits(c, d) ^ f.dot_bits(d, a);
}

inline bool nabla(const BilinForm& f, Point a, Point b, Point c) {
  const std::array<Point, 3> t{a, b, c};
  if (!pairwise_distinct(t)) return false;
  return f.dot_bits(a, b) ^ f.dot_bits(b, c) ^ f.dot_bits(c, a);
}

inline bool pentagon(const BilinForm& f, std::span<const Point> t) {
  if (t.size() != 5) throw InvalidArgument("pentagon: arity is 5");
  if (!all_nonzero(t) || !pairwise_distinct(t)) return false;
  int ones = 0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) ones += f.dot_bits(t[i], t[j]) ? 1 : 0;
  return (ones & 1) != 0;
}

}  // namespace rel

// ---------------------------------------------------------------------------
// Vec2 front ends.

inline void same_dim(std::initializer_list<const Vec2*> vs, const char* where) {
  const int d = (*vs.begin())->dim;
  for (const Vec2* v : vs)
    if (v->dim != d) throw DimensionMismatch(where);
}

inline bool parallelogram(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  same_dim({&a, &b, &c, &d}, "parallelogram");
  return rel::parallelogram(a.bits, b.bits, c.bits, d.bits);
}

inline bool diamond(const BilinForm& f, const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  same_dim({&a, &b, &c, &d}, "diamond");
  if (a.dim != f.dim()) throw DimensionMismatch("diamond");
  return rel::diamond(f, a.bits, b.bits, c.bits, d.bits);
}

inline bool nabla(const BilinForm& f, const Vec2& a, const Vec2& b, const Vec2& c) {
  same_dim({&a, &b, &c}, "nabla");
  if (a.dim != f.dim()) throw DimensionMismatch("nabla");
  return rel::nabla(f, a.bits, b.bits, c.bits);
}

inline bool pentagon(const BilinForm& f, const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d,
                     const Vec2& e) {
  same_dim({&a, &b, &c, &d, &e}, "pentagon");
  if (a.dim != f.dim()) throw DimensionMismatch("pentagon");
  const std::array<Point, 5> t{a.bits, b.bits, c.bits, d.bits, e.bits};
  return rel::pentagon(f, t);
}

// Number of the three pairwise products a.b, b.c, c.a equal to 1.
inline int tri_type(const BilinForm& f, const Vec2& a, const Vec2& b, const Vec2& c) {
  same_dim({&a, &b, &c}, "tri_type");
  if (a.dim != f.dim()) throw DimensionMismatch("tri_type");
  const std::array<Word, 3> t{a.bits, b.bits, c.bits};
  if (!independent(t)) throw DependentInput("tri_type: triple is linearly dependent");
  return int{f.dot_bits(a.bits, b.bits)} + int{f.dot_bits(b.bits, c.bits)} +
         int{f.dot_bits(c.bits, a.bits)};
}

// ---------------------------------------------------------------------------
// Named relations as values.

enum class RelKind { Parallelogram, P0, P1, Diamond, Nabla, Pentagon, Explicit };

class RelSpec {
 public:
  static RelSpec parallelogram(int dim) {
    check_dim(dim, "parallelogram");
    return RelSpec("parallelogram", RelKind::Parallelogram, 4, dim, std::nullopt);
  }
  static RelSpec p0(const BilinForm& f) { return with_form("p0", RelKind::P0, 2, f); }
  static RelSpec p1(const BilinForm& f) { return with_form("p1", RelKind::P1, 2, f); }
  static RelSpec diamond(const BilinForm& f) { return with_form("diamond", RelKind::Diamond, 4, f); }
  static RelSpec nabla(const BilinForm& f) { return with_form("nabla", RelKind::Nabla, 3, f); }
  static RelSpec pentagon(const BilinForm& f) { return with_form("pentagon", RelKind::Pentagon, 5, f); }

  static RelSpec explicit_set(std::string name, int dim, int arity, std::vector<std::vector<Point>> tuples) {
    check_dim(dim, "explicit relation");
    if (arity < 1 || arity > 6) throw InvalidArgument("explicit relation: arity must lie in [1, 6]");
    for (const auto& t : tuples) {
      if (t.size() != static_cast<std::size_t>(arity))
        throw InvalidArgument("explicit relation: tuple has the wrong arity");
      for (Point x : t)
        if (x >= (Point{1} << dim)) throw InvalidArgument("explicit relation: point out of range");
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    RelSpec r(std::move(name), RelKind::Explicit, arity, dim, std::nullopt);
    r.tuples_ = std::make_shared<const std::vector<std::vector<Point>>>(std::move(tuples));
    return r;
  }

  // The unary relation {0}.
  static RelSpec zeroset(int dim) { return explicit_set("zeroset", dim, 1, {{0}}); }

  const std::string& name() const { return name_; }
  RelKind kind() const { return kind_; }
  int arity() const { return arity_; }
  int dim() const { return dim_; }
  const std::optional<BilinForm>& form() const { return form_; }

  bool operator()(std::span<const Point> t) const {
    switch (kind_) {
      case RelKind::Parallelogram: return rel::parallelogram(t[0], t[1], t[2], t[3]);
      case RelKind::P0: return !form_->dot_bits(t[0], t[1]);
      case RelKind::P1: return form_->dot_bits(t[0], t[1]);
      case RelKind::Diamond: return rel::diamond(*form_, t[0], t[1], t[2], t[3]);
      case RelKind::Nabla: return rel::nabla(*form_, t[0], t[1], t[2]);
      case RelKind::Pentagon: return rel::pentagon(*form_, t);
      case RelKind::Explicit: {
        const std::vector<Point> key(t.begin(), t.end());
        return std::binary_search(tuples_->begin(), tuples_->end(), key);
      }
    }
    return false;
  }

  const std::vector<std::vector<Point>>* explicit_tuples() const { return tuples_.get(); }

 private:
  RelSpec(std::string name, RelKind kind, int arity, int dim, std::optional<BilinForm> form)
      : name_(std::move(name)), kind_(kind), arity_(arity), dim_(dim), form_(std::move(form)) {}

  static RelSpec with_form(const char* name, RelKind kind, int arity, const BilinForm& f) {
    check_dim(f.dim(), name);
    return RelSpec(name, kind, arity, f.dim(), f);
  }

  std::string name_;
  RelKind kind_;
  int arity_;
  int dim_;
  std::optional<BilinForm> form_;
  std::shared_ptr<const std::vector<std::vector<Point>>> tuples_;
};

// Tuples of points of F_2^n encoded base 2^n, first entry most significant,
// so integer order is lexicographic order.
struct TupleCodec {
  int dim;
  int arity;

  std::uint64_t space() const { return std::uint64_t{1} << (dim * arity); }

  std::uint64_t encode(std::span<const Point> t) const {
    std::uint64_t c = 0;
    for (Point x : t) c = (c << dim) | x;
    return c;
  }

  void decode(std::uint64_t c, std::span<Point> out) const {
    const std::uint64_t mask = (std::uint64_t{1} << dim) - 1;
    for (int i = arity - 1; i >= 0; --i) {
      out[static_cast<std::size_t>(i)] = static_cast<Point>(c & mask);
      c >>= dim;
    }
  }
};

// Truth table of a relation over the whole tuple space.
class RelTable {
 public:
  explicit RelTable(const RelSpec& r) : codec_{r.dim(), r.arity()} {
    if (r.dim() * r.arity() > 30) throw BudgetExhausted("relation table larger than 2^30 entries");
    const std::uint64_t n = codec_.space();
    bits_.assign((n + 63) / 64, 0);
    std::vector<Point> t(static_cast<std::size_t>(r.arity()));
    for (std::uint64_t c = 0; c < n; ++c) {
      codec_.decode(c, t);
      if (r(t)) bits_[c >> 6] |= std::uint64_t{1} << (c & 63);
    }
  }

  bool at(std::uint64_t code) const { return ((bits_[code >> 6] >> (code & 63)) & 1U) != 0; }
  const TupleCodec& codec() const { return codec_; }

 private:
  TupleCodec codec_;
  std::vector<std::uint64_t> bits_;
};

// ---------------------------------------------------------------------------
// Preservation.

struct PreserveOptions {
  std::uint64_t budget = 100'000'000;  // tuple evaluations per permutation
  unsigned workers = 1;
};

struct PreserveResult {
  bool preserved = true;
  // Lexicographically least tuple t with R(t) != R(t^p).
  std::optional<std::vector<Point>> violation;
  // Index of the offending generator for group-level checks.
  std::optional<std::size_t> generator;
  bool heuristic = false;
};

inline PreserveResult preserves(const Perm& p, const RelSpec& r, const PreserveOptions& opts = {}) {
  if (p.dim() != r.dim()) throw DimensionMismatch("preserves");
  const TupleCodec codec{r.dim(), r.arity()};
  if (r.dim() * r.arity() > 62 || codec.space() > opts.budget)
    throw BudgetExhausted("preservation scan of relation '" + r.name() + "' exceeds the tuple budget");
  const std::uint64_t n = codec.space();
  std::vector<std::uint64_t> first_bad(std::max(1U, opts.workers), n);
  parallel_chunks(opts.workers, n, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    std::vector<Point> t(static_cast<std::size_t>(r.arity())), u(t.size());
    for (std::uint64_t c = begin; c < end; ++c) {
      codec.decode(c, t);
      for (std::size_t i = 0; i < t.size(); ++i) u[i] = p(t[i]);
      if (r(t) != r(u)) {
        first_bad[w] = c;
        return;
      }
    }
  });
  const std::uint64_t bad = *std::min_element(first_bad.begin(), first_bad.end());
  PreserveResult res;
  if (bad < n) {
    res.preserved = false;
    std::vector<Point> t(static_cast<std::size_t>(r.arity()));
    codec.decode(bad, t);
    res.violation = std::move(t);
  }
  return res;
}

// Preservation by the generated group: every generator preserves R. On a
// finite domain this is equivalent to preservation by all of <G>.
inline PreserveResult group_preserves(const GenSet& g, const RelSpec& r, const PreserveOptions& opts = {}) {
  for (std::size_t i = 0; i < g.gens.size(); ++i) {
    PreserveResult res = preserves(g.gens[i], r, opts);
    if (!res.preserved) {
      res.generator = i;
      return res;
    }
  }
  return {};
}

// Opt-in random sampling of tuples. Heuristic: a "preserved" answer is not a proof.
inline PreserveResult preserves_sampled(const Perm& p, const RelSpec& r, std::uint64_t samples,
                                        std::uint64_t seed) {
  if (p.dim() != r.dim()) throw DimensionMismatch("preserves_sampled");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Point> pick(0, (Point{1} << r.dim()) - 1);
  std::vector<Point> t(static_cast<std::size_t>(r.arity())), u(t.size());
  PreserveResult res;
  res.heuristic = true;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& x : t) x = pick(rng);
    for (std::size_t i = 0; i < t.size(); ++i) u[i] = p(t[i]);
    if (r(t) != r(u)) {
      res.preserved = false;
      res.violation = t;
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// The relation h.a = b for h in a subgroup H of F_p^*, on nonzero vectors of F_p^n.

struct FpVec {
  int p = 2;
  std::vector<int> coords;

  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
  }
  FpVec scaled(int h) const {
    FpVec r{p, coords};
    for (int& c : r.coords) c = (c * h) % p;
    return r;
  }
  friend bool operator==(const FpVec&, const FpVec&) = default;
  friend auto operator<=>(const FpVec&, const FpVec&) = default;
};

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void check_fp(int p, int n) {
  if (!is_prime(p) || p > 13) throw InvalidArgument("F_p: p must be a prime <= 13");
  if (n < 1 || n > 6) throw InvalidArgument("F_p: dimension must lie in [1, 6]");
}

// Sorted elements of H after checking it is a subgroup of F_p^*.
inline std::vector<int> checked_subgroup(int p, std::vector<int> h) {
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  if (h.empty()) throw InvalidArgument("simH: H is empty");
  for (int x : h)
    if (x <= 0 || x >= p) throw InvalidArgument("simH: H must consist of nonzero residues");
  for (int x : h)
    for (int y : h)
      if (!std::binary_search(h.begin(), h.end(), (x * y) % p))
        throw InvalidArgument("simH: H is not closed under multiplication");
  return h;
}

inline bool simH(int p, std::vector<int> h, const FpVec& a, const FpVec& b) {
  check_fp(p, static_cast<int>(a.coords.size()));
  if (a.p != p || b.p != p || a.coords.size() != b.coords.size()) throw DimensionMismatch("simH");
  if (a.is_zero() || b.is_zero()) throw InvalidArgument("simH: arguments must be nonzero");
  for (int x : checked_subgroup(p, std::move(h)))
    if (a.scaled(x) == b) return true;
  return false;
}

// The unique subgroup of order d of the cyclic group F_p^*, for each divisor d of p - 1.
inline std::vector<std::vector<int>> unit_subgroups(int p) {
  check_fp(p, 1);
  std::vector<std::vector<int>> out;
  for (int d = 1; d <= p - 1; ++d) {
    if ((p - 1) % d != 0) continue;
    std::vector<int> h;
    for (int x = 1; x < p; ++x) {
      int pw = 1;
      for (int i = 0; i < d; ++i) pw = (pw * x) % p;
      if (pw == 1) h.push_back(x);
    }
    out.push_back(std::move(h));
  }
  return out;
}

inline std::vector<FpVec> nonzero_vectors(int p, int n) {
  check_fp(p, n);
  std::vector<FpVec> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  for (int code = 1; code < total; ++code) {
    FpVec v{p, std::vector<int>(static_cast<std::size_t>(n))};
    int c = code;
    for (int i = n - 1; i >= 0; --i) {
      v.coords[static_cast<std::size_t>(i)] = c % p;
      c /= p;
    }
    out.push_back(std::move(v));
  }
  return out;
}

struct SimHCensus {
  int p;
  int n;
  std::vector<int> subgroup;
  std::vector<std::vector<FpVec>> classes;  // each sorted; classes ordered by least member
  bool classes_in_lines = true;              // every class inside one 1-dimensional subspace
};

inline SimHCensus simH_census(int p, int n, std::vector<int> h) {
  check_fp(p, n);
  SimHCensus c{p, n, checked_subgroup(p, std::move(h)), {}, true};
  std::vector<FpVec> all = nonzero_vectors(p, n);  // already in increasing order
  std::vector<bool> used(all.size(), false);
  auto index_of = [&](const FpVec& v) {
    return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), v) - all.begin());
  };
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (used[i]) continue;
    std::vector<FpVec> cls;
    for (int x : c.subgroup) cls.push_back(all[i].scaled(x));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (const FpVec& v : cls) used[index_of(v)] = true;
    // Membership in the line through the least member, checked independently of H.
    for (const FpVec& v : cls) {
      bool on_line = false;
      for (int s = 1; s < p && !on_line; ++s) on_line = cls.front().scaled(s) == v;
      c.classes_in_lines = c.classes_in_lines && on_line;
    }
    c.classes.push_back(std::move(cls));
  }
  return c;
}

}  // namespace f2r
