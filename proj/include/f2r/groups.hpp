#pragma once

// Generator sets for the named groups acting on the points of F_2^n.

#include <optional>
#include <string>
#include <vector>

#include "f2r/forms.hpp"
#include "f2r/perm.hpp"

namespace f2r {

inline void check_group_dim(int n, const char* where) {
  if (n < 2 || n > kMaxDim)
    throw InvalidArgument(std::string(where) + ": dimension must lie in [2, 24]");
}

// All elementary transvections x -> x + x_j e_i, i != j.
inline GenSet gl_gens(int n) {
  check_group_dim(n, "gl_gens");
  std::vector<Perm> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      gens.push_back(Perm::from_function(n, [=](Point x) { return x ^ (((x >> j) & 1U) << i); }));
    }
  return GenSet(n, std::move(gens));
}

inline Perm translation(const Vec2& a) {
  return Perm::from_function(a.dim, [&](Point x) { return x ^ a.bits; });
}

inline GenSet t_gens(int n) {
  check_dim(n, "t_gens");
  std::vector<Perm> gens;
  for (int i = 1; i <= n; ++i) gens.push_back(translation(Vec2::unit(n, i)));
  return GenSet(n, std::move(gens));
}

inline GenSet agl_gens(int n) { return join(gl_gens(n), translation(Vec2::unit(n, 1))); }

// Symplectic transvections x -> x + (x . v) v for every nonzero v.
inline GenSet sp_gens(const BilinForm& f) {
  if (!f.nondegenerate()) throw InvalidArgument("sp_gens: form is degenerate");
  check_group_dim(f.dim(), "sp_gens");
  std::vector<Perm> gens;
  for (Point v = 1; v < (Point{1} << f.dim()); ++v)
    gens.push_back(Perm::from_function(f.dim(), [&](Point x) { return f.dot_bits(x, v) ? x ^ v : x; }));
  return GenSet(f.dim(), std::move(gens));
}

inline GenSet delta_gens(const BilinForm& f) {
  return join(sp_gens(f), translation(Vec2::unit(f.dim(), 1)));
}

// Transposition of the first two nonzero points plus the cycle 1 -> 2 -> ... -> 2^n - 1 -> 1.
inline GenSet sym0_gens(int n) {
  check_group_dim(n, "sym0_gens");
  const Point last = (Point{1} << n) - 1;
  Perm cycle = Perm::from_function(n, [=](Point x) { return x == 0 ? 0 : x == last ? 1 : x + 1; });
  return GenSet(n, {Perm::transposition(n, 1, 2), std::move(cycle)});
}

inline GenSet sym_gens(int n) { return join(sym0_gens(n), Perm::transposition(n, 0, 1)); }

// A symplectic map sending src[i] to dst[i], as a permutation of points.
inline Perm witt_extend(const BilinForm& f, std::span<const Vec2> src, std::span<const Vec2> dst) {
  std::vector<Word> a, b;
  for (const Vec2& v : src) a.push_back(v.bits);
  for (const Vec2& v : dst) b.push_back(v.bits);
  for (const Vec2& v : src)
    if (v.dim != f.dim()) throw DimensionMismatch("witt_extend");
  for (const Vec2& v : dst)
    if (v.dim != f.dim()) throw DimensionMismatch("witt_extend");
  return Perm::from_linear(witt_extend_map(f, a, b));
}

enum class GroupName { Sp, Delta, GL, AGL, Sym0, Sym };

inline const char* name_of(GroupName g) {
  switch (g) {
    case GroupName::Sp: return "Sp";
    case GroupName::Delta: return "Delta";
    case GroupName::GL: return "GL";
    case GroupName::AGL: return "AGL";
    case GroupName::Sym0: return "Sym0";
    case GroupName::Sym: return "Sym";
  }
  return "?";
}

inline std::optional<Order> factorial(unsigned k) {
  Order r = 1;
  for (unsigned i = 2; i <= k; ++i) {
    auto next = checked_mul(r, i);
    if (!next) return std::nullopt;
    r = *next;
  }
  return r;
}

// Closed-form order of a named group on F_2^n; std::nullopt on 128-bit overflow
// or when the group is undefined at this dimension (odd n for Sp and Delta).
inline std::optional<Order> named_order(GroupName g, int n) {
  const Order q = Order{1} << n;
  Order gl = 1;
  for (int i = 0; i < n; ++i) {
    auto next = checked_mul(gl, q - (Order{1} << i));
    if (!next) return std::nullopt;
    gl = *next;
  }
  switch (g) {
    case GroupName::GL: return gl;
    case GroupName::AGL: return checked_mul(gl, q);
    case GroupName::Sp:
    case GroupName::Delta: {
      if (n % 2 != 0) return std::nullopt;
      const int m = n / 2;
      Order sp = Order{1} << (m * m);
      for (int i = 1; i <= m; ++i) {
        auto next = checked_mul(sp, (Order{1} << (2 * i)) - 1);
        if (!next) return std::nullopt;
        sp = *next;
      }
      return g == GroupName::Sp ? std::optional<Order>(sp) : checked_mul(sp, q);
    }
    case GroupName::Sym0: return factorial(static_cast<unsigned>(q - 1));
    case GroupName::Sym: return factorial(static_cast<unsigned>(q));
  }
  return std::nullopt;
}

inline GenSet named_gens(GroupName g, int n, const std::optional<BilinForm>& form) {
  switch (g) {
    case GroupName::GL: return gl_gens(n);
    case GroupName::AGL: return agl_gens(n);
    case GroupName::Sym0: return sym0_gens(n);
    case GroupName::Sym: return sym_gens(n);
    case GroupName::Sp:
    case GroupName::Delta:
      if (!form) throw InvalidArgument(std::string(name_of(g)) + " needs a form");
      if (form->dim() != n) throw DimensionMismatch("named_gens");
      return g == GroupName::Sp ? sp_gens(*form) : delta_gens(*form);
  }
  throw InvalidArgument("named_gens: unknown group");
}

}  // namespace f2r
