// Command-line front end for the f2r library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "f2r/f2r.hpp"

namespace {

using namespace f2r;

enum Exit { kOk = 0, kUsage = 1, kBudget = 2, kInvariant = 3 };

struct Config {
  int dim = 4;
  std::string form;
  std::string group = "gl";
  std::string relations;
  std::string structure;
  bool fix_zero = false;
  int arity = 1;
  int profile = 0;
  std::string filter = "all";
  std::string tuple;
  std::string targets;
  std::string graph;
  int p = 3;
  std::uint64_t budget = 0;
  unsigned workers = 1;
  std::string output;
};

// Everything that determines the result; worker count and output path are left out
// so reports are byte-identical across them.
std::string config_line(const std::string& cmd, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string s = "# config\tcommand=" + cmd;
  for (const auto& [k, v] : kv)
    if (!v.empty()) s += "\t" + k + "=" + v;
  return s + "\n";
}

std::optional<BilinForm> form_for(const Config& c, bool required) {
  if (!c.form.empty()) return form_by_name(c.form, c.dim);
  if (required || c.dim % 2 == 0) {
    if (c.dim % 2 != 0) throw InvalidArgument("this command needs a form; pass --form file:PATH");
    return standard_form(c.dim / 2);
  }
  return std::nullopt;
}

GenSet group_for(const Config& c) {
  const std::string& g = c.group;
  if (g.starts_with("file:")) {
    auto in = open_input(g.substr(5));
    GenSet gs = read_gens(in);
    if (gs.dim != c.dim) throw DimensionMismatch("generator file");
    return gs;
  }
  if (g == "gl") return gl_gens(c.dim);
  if (g == "agl") return agl_gens(c.dim);
  if (g == "t") return t_gens(c.dim);
  if (g == "sym0") return sym0_gens(c.dim);
  if (g == "sym") return sym_gens(c.dim);
  if (g == "sp") return sp_gens(*form_for(c, true));
  if (g == "delta") return delta_gens(*form_for(c, true));
  throw InvalidArgument("unknown group '" + g + "'");
}

std::string form_label(const Config& c) { return c.form.empty() ? (c.dim % 2 == 0 ? "standard" : "") : c.form; }

std::string opt_bool(const std::optional<bool>& b) { return b ? (*b ? "1" : "0") : "n/a"; }

std::vector<bool> parse_bits(const std::string& s) {
  std::vector<bool> out;
  if (s.empty()) return out;
  for (const std::string& item : split(s, ',')) {
    if (item != "0" && item != "1") throw ParseError("targets must be 0 or 1, got '" + item + "'");
    out.push_back(item == "1");
  }
  return out;
}

void cmd_orbits(const Config& c, std::ostream& out) {
  OrbitOptions opts;
  if (c.budget) opts.budget = c.budget;
  opts.workers = c.workers;
  const GenSet g = group_for(c);
  const TupleFilter f = parse_filter(c.filter);
  out << config_line("orbits", {{"dim", std::to_string(c.dim)},
                                {"group", c.group},
                                {"form", c.group == "sp" || c.group == "delta" ? form_label(c) : ""},
                                {"arity", std::to_string(c.arity)},
                                {"filter", c.filter},
                                {"profile", c.profile ? std::to_string(c.profile) : ""},
                                {"budget", std::to_string(opts.budget)}});
  if (c.profile > 0) {
    const auto prof = orbit_profile(g, c.profile, f, opts);
    out << "k\torbits\n";
    for (std::size_t k = 0; k < prof.size(); ++k) out << k + 1 << "\t" << prof[k] << "\n";
    return;
  }
  write_census(out, tuple_orbits(g, c.arity, f, opts));
}

Structure structure_for(const Config& c) {
  if (!c.structure.empty()) {
    auto in = open_input(c.structure);
    Structure s = read_structure(in, std::filesystem::path(c.structure).parent_path());
    if (c.fix_zero) s.fix_zero = true;
    return s;
  }
  if (c.relations.empty()) throw InvalidArgument("aut needs --relations or --structure");
  const auto names = split(c.relations, ',');
  bool needs_form = false;
  for (const std::string& n : names)
    if (n != "parallelogram" && n != "zeroset" && !n.starts_with("file:")) needs_form = true;
  const auto form = needs_form ? form_for(c, true) : std::nullopt;
  Structure s{c.dim, {}, c.fix_zero};
  for (const std::string& n : names) s.relations.push_back(relation_by_name(n, c.dim, form));
  return s;
}

void cmd_aut(const Config& c, std::ostream& out) {
  AutOptions opts;
  if (c.budget) opts.node_budget = c.budget;
  opts.workers = c.workers;
  const Structure s = structure_for(c);
  const AutResult r = automorphisms(s, opts);
  std::string rels;
  for (const RelSpec& rel : s.relations) rels += (rels.empty() ? "" : ",") + rel.name();
  out << config_line("aut", {{"dim", std::to_string(s.dim)},
                             {"form", c.structure.empty() && !c.form.empty() ? c.form : ""},
                             {"structure", c.structure},
                             {"relations", rels},
                             {"fixzero", s.fix_zero ? "1" : ""},
                             {"budget", std::to_string(opts.node_budget)}});
  out << "order\t" << to_string(r.order) << "\n";
  out << "orbit_sizes\t";
  for (std::size_t i = 0; i < r.orbit_sizes.size(); ++i) out << (i ? "," : "") << r.orbit_sizes[i];
  out << "\ngenerators\t" << r.generators.gens.size() << "\n";
  write_gens(out, r.generators);
}

void cmd_classify(const Config& c, std::ostream& out) {
  const GenSet g = group_for(c);
  const auto form = form_for(c, false);
  ClassifyOptions opts;
  if (c.budget) opts.preserve.budget = c.budget;
  opts.preserve.workers = c.workers;
  const Classification r = classify(g, form, opts);
  out << config_line("classify", {{"dim", std::to_string(c.dim)}, {"group", c.group}, {"form", form ? form_label(c) : ""}});
  const Fingerprint& fp = r.fingerprint;
  out << "label\tfixes_zero\tparallelogram\tp0\tnabla\torder\n";
  out << r.label_name() << "\t" << (fp.fixes_zero ? 1 : 0) << "\t" << (fp.preserves_parallelogram ? 1 : 0) << "\t"
      << opt_bool(fp.preserves_p0) << "\t" << opt_bool(fp.preserves_nabla) << "\t"
      << (fp.order ? to_string(*fp.order) : "n/a") << "\n";
}

void cmd_witness(const Config& c, std::ostream& out) {
  const BilinForm f = *form_for(c, true);
  std::vector<Vec2> a;
  for (Point x : parse_tuple(c.tuple, c.dim)) a.emplace_back(c.dim, x);
  const auto w = extension_witness(f, a, parse_bits(c.targets));
  out << config_line("witness", {{"dim", std::to_string(c.dim)}, {"form", form_label(c)}, {"tuple", c.tuple},
                                 {"targets", c.targets}});
  if (w) out << format_hex(w->bits) << "\t" << format_symbolic(w->bits) << "\n";
  else out << "none\n";
}

void cmd_realize(const Config& c, std::ostream& out) {
  const BilinForm f = *form_for(c, true);
  auto in = open_input(c.graph);
  const BitMatrix adj = read_graph(in);
  const auto r = realize_graph(adj, f);
  out << config_line("realize", {{"dim", std::to_string(c.dim)}, {"form", form_label(c)}, {"graph", c.graph}});
  if (!r) {
    out << "none\n";
    return;
  }
  std::vector<Point> t;
  for (const Vec2& v : *r) t.push_back(v.bits);
  out << format_tuple(t) << "\t" << format_symbolic_tuple(t) << "\n";
}

void cmd_reducts_fq(const Config& c, std::ostream& out) {
  out << config_line("reducts-fq", {{"p", std::to_string(c.p)}, {"dim", std::to_string(c.dim)}});
  out << "subgroup_order\tsubgroup\tclasses\tclasses_in_lines\n";
  for (const auto& h : unit_subgroups(c.p)) {
    const SimHCensus census = simH_census(c.p, c.dim, h);
    std::string hs;
    for (int x : census.subgroup) hs += (hs.empty() ? "" : ",") + std::to_string(x);
    out << census.subgroup.size() << "\t" << hs << "\t" << census.classes.size() << "\t"
        << (census.classes_in_lines ? 1 : 0) << "\n";
  }
}

void cmd_order(const Config& c, std::ostream& out) {
  const GenSet g = group_for(c);
  StabChain chain(g);
  out << config_line("order", {{"dim", std::to_string(c.dim)}, {"group", c.group},
                               {"form", c.group == "sp" || c.group == "delta" ? form_label(c) : ""}});
  out << "order\t" << to_string(chain.order()) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation groups, invariant relations and symplectic spaces over F_2"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* s) {
    s->add_option("--dim", c.dim, "Dimension n of F_2^n")->check(CLI::Range(1, 24));
    s->add_option("--form", c.form, "standard or file:PATH");
    s->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1, 256));
    s->add_option("--budget", c.budget, "Search / state budget (0 = default)");
    s->add_option("-o,--output", c.output, "Write the report here instead of stdout");
  };

  auto* orbits = app.add_subcommand("orbits", "Orbit census on k-tuples");
  common(orbits);
  orbits->add_option("--group", c.group, "gl, agl, t, sp, delta, sym0, sym or file:PATH");
  orbits->add_option("--arity", c.arity, "Tuple length k")->check(CLI::Range(1, 6));
  orbits->add_option("--filter", c.filter, "all, injective, nonzero-injective or independent");
  orbits->add_option("--profile", c.profile, "Report orbit counts for k = 1..K instead of a census");

  auto* aut = app.add_subcommand("aut", "Automorphism group of a relational structure");
  common(aut);
  aut->add_option("--relations", c.relations, "Comma list of relation names or file:PATH");
  aut->add_option("--structure", c.structure, "Structure description file");
  aut->add_flag("--fixzero", c.fix_zero, "Also fix the point 0");

  auto* cls = app.add_subcommand("classify", "Match a group against the six named groups");
  common(cls);
  cls->add_option("--group", c.group, "gl, agl, t, sp, delta, sym0, sym or file:PATH");

  auto* wit = app.add_subcommand("witness", "Least vector with prescribed products outside a span");
  common(wit);
  wit->add_option("--tuple", c.tuple, "Comma list of points (hex or e1+e2 form)")->required();
  wit->add_option("--targets", c.targets, "Comma list of bits");

  auto* real = app.add_subcommand("realize", "Independent vectors with a given Gram graph");
  common(real);
  real->add_option("--graph", c.graph, "Adjacency matrix file")->required();

  auto* fq = app.add_subcommand("reducts-fq", "Census of the ~H relations on F_p^n");
  fq->add_option("--p", c.p, "Prime p <= 13");
  fq->add_option("--dim", c.dim, "Dimension n <= 6");
  fq->add_option("-o,--output", c.output, "Write the report here instead of stdout");

  auto* ord = app.add_subcommand("order", "Order of a generated group");
  common(ord);
  ord->add_option("--group", c.group, "gl, agl, t, sp, delta, sym0, sym or file:PATH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    std::ostringstream report;
    if (orbits->parsed()) cmd_orbits(c, report);
    else if (aut->parsed()) cmd_aut(c, report);
    else if (cls->parsed()) cmd_classify(c, report);
    else if (wit->parsed()) cmd_witness(c, report);
    else if (real->parsed()) cmd_realize(c, report);
    else if (fq->parsed()) cmd_reducts_fq(c, report);
    else if (ord->parsed()) cmd_order(c, report);
    if (c.output.empty()) {
      std::cout << report.str();
    } else {
      std::ofstream f(c.output);
      if (!f) throw ParseError("cannot write " + c.output);
      f << report.str();
    }
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
