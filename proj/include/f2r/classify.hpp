#pragma once

// Decide which of the six named groups a generated group is, at finite scale.

#include <optional>
#include <string>

#include "f2r/forms.hpp"
#include "f2r/groups.hpp"
#include "f2r/perm.hpp"
#include "f2r/relations.hpp"

namespace f2r {

// Raw invariance tests. p0 is only tested on 0-fixing groups; p0 and nabla
// need a form and are empty without one.
struct Fingerprint {
  bool fixes_zero = false;
  bool preserves_parallelogram = false;
  std::optional<bool> preserves_p0;
  std::optional<bool> preserves_nabla;
  std::optional<Order> order;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct ClassifyOptions {
  PreserveOptions preserve;
  ChainOptions chain;
};

inline Fingerprint fingerprint(const GenSet& g, const std::optional<BilinForm>& form,
                               const ClassifyOptions& opts = {}) {
  if (form && form->dim() != g.dim) throw DimensionMismatch("fingerprint");
  Fingerprint fp;
  fp.fixes_zero = true;
  for (const Perm& p : g.gens)
    if (p(0) != 0) fp.fixes_zero = false;
  fp.preserves_parallelogram = group_preserves(g, RelSpec::parallelogram(g.dim), opts.preserve).preserved;
  if (form) {
    if (fp.fixes_zero) fp.preserves_p0 = group_preserves(g, RelSpec::p0(*form), opts.preserve).preserved;
    fp.preserves_nabla = group_preserves(g, RelSpec::nabla(*form), opts.preserve).preserved;
  }
  try {
    fp.order = StabChain(g, opts.chain).order_if_fits();
  } catch (const BudgetExhausted&) {
    fp.order = std::nullopt;
  }
  return fp;
}

struct Classification {
  std::optional<GroupName> label;  // empty means Other
  std::optional<GroupName> candidate;  // the decision-tree outcome before confirmation
  Fingerprint fingerprint;

  std::string label_name() const { return label ? name_of(*label) : "Other"; }
};

inline GroupName decision_tree(const Fingerprint& fp) {
  if (fp.fixes_zero) {
    if (fp.preserves_p0.value_or(false)) return GroupName::Sp;
    return fp.preserves_parallelogram ? GroupName::GL : GroupName::Sym0;
  }
  if (fp.preserves_nabla.value_or(false)) return GroupName::Delta;
  return fp.preserves_parallelogram ? GroupName::AGL : GroupName::Sym;
}

// Decision tree on the fingerprint, then confirmation: the order must equal the
// named group's order and the two generator sets must sift into each other.
inline Classification classify(const GenSet& g, const std::optional<BilinForm>& form,
                               const ClassifyOptions& opts = {}) {
  if (g.dim < 2) throw InvalidArgument("classify: dimension must be at least 2");
  Classification out;
  out.fingerprint = fingerprint(g, form, opts);
  const GroupName name = decision_tree(out.fingerprint);
  out.candidate = name;
  const auto expected = named_order(name, g.dim);
  if (!expected || !out.fingerprint.order || *expected != *out.fingerprint.order) return out;

  const GenSet named = named_gens(name, g.dim, form);
  const StabChain mine(g, opts.chain);
  const StabChain theirs(named, opts.chain);
  for (const Perm& p : named.gens)
    if (!mine.contains(p)) return out;
  for (const Perm& p : g.gens)
    if (!theirs.contains(p)) return out;
  out.label = name;
  return out;
}

}  // namespace f2r
