#pragma once

// Text formats: point literals, permutation / generator / relation / form /
// graph / structure files, and census TSV.
//
// Every file format allows '#' comments and blank lines.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "f2r/autsearch.hpp"
#include "f2r/error.hpp"
#include "f2r/forms.hpp"
#include "f2r/orbits.hpp"
#include "f2r/perm.hpp"
#include "f2r/relations.hpp"

namespace f2r {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view s, int base = 10) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ParseError("not a number: '" + std::string(s) + "'");
  return v;
}

// Point literal: hex "0x5", decimal "5", or a sum of unit vectors "e1+e3".
inline Point parse_point(std::string_view s, int dim) {
  s = trim(s);
  Point v = 0;
  if (s.starts_with("0x") || s.starts_with("0X")) {
    v = static_cast<Point>(parse_uint(s.substr(2), 16));
  } else if (!s.empty() && (s[0] == 'e' || s[0] == 'E')) {
    for (const std::string& term : split(s, '+')) {
      if (term.size() < 2 || (term[0] != 'e' && term[0] != 'E'))
        throw ParseError("bad unit vector term '" + term + "'");
      const auto i = parse_uint(std::string_view(term).substr(1));
      if (i < 1 || i > static_cast<std::uint64_t>(dim)) throw ParseError("unit vector index out of range: " + term);
      v ^= Point{1} << (i - 1);
    }
  } else {
    v = static_cast<Point>(parse_uint(s));
  }
  if (v >> dim) throw ParseError("point '" + std::string(s) + "' exceeds dimension " + std::to_string(dim));
  return v;
}

inline std::vector<Point> parse_tuple(std::string_view s, int dim) {
  std::vector<Point> out;
  if (trim(s).empty()) return out;
  for (const std::string& item : split(s, ',')) out.push_back(parse_point(item, dim));
  return out;
}

inline std::string format_hex(Point x) {
  std::ostringstream os;
  os << "0x" << std::hex << x;
  return os.str();
}

inline std::string format_symbolic(Point x) {
  if (x == 0) return "0";
  std::string s;
  for (int i = 0; x >> i; ++i)
    if ((x >> i) & 1U) s += (s.empty() ? "e" : "+e") + std::to_string(i + 1);
  return s;
}

inline std::string format_tuple(std::span<const Point> t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + format_hex(t[i]);
  return s;
}

inline std::string format_symbolic_tuple(std::span<const Point> t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + format_symbolic(t[i]);
  return s;
}

// Non-empty, comment-stripped lines.
inline std::vector<std::string> content_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto t = trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

inline std::vector<std::string> words(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

inline int parse_header(const std::string& line, const char* key) {
  const auto w = words(line);
  if (w.size() != 2 || w[0] != key) throw ParseError(std::string("expected '") + key + " N', got '" + line + "'");
  return static_cast<int>(parse_uint(w[1]));
}

inline std::ifstream open_input(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot open " + p.string());
  return in;
}

// ---------------------------------------------------------------------------
// Permutations: "dim N", then 2^N whitespace-separated images. Generator files
// concatenate permutations, separated by blank lines.

inline std::vector<Perm> read_perms(std::istream& in) {
  std::vector<std::string> tokens;
  for (const std::string& line : content_lines(in))
    for (std::string& w : words(line)) tokens.push_back(std::move(w));
  std::vector<Perm> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (tokens[i] != "dim" || i + 1 >= tokens.size()) throw ParseError("expected 'dim N' before a permutation");
    const int dim = static_cast<int>(parse_uint(tokens[i + 1]));
    check_dim(dim, "permutation file");
    i += 2;
    const std::size_t n = std::size_t{1} << dim;
    if (tokens.size() - i < n) throw ParseError("permutation " + std::to_string(out.size() + 1) + " is truncated");
    std::vector<Point> images;
    for (std::size_t j = 0; j < n; ++j) images.push_back(parse_point(tokens[i + j], dim));
    i += n;
    try {
      out.emplace_back(dim, std::move(images));
    } catch (const InvalidArgument& e) {
      throw ParseError("permutation " + std::to_string(out.size() + 1) + ": " + e.what());
    }
  }
  return out;
}

inline void write_perm(std::ostream& out, const Perm& p) {
  out << "dim " << p.dim() << "\n";
  for (std::size_t x = 0; x < p.degree(); ++x) out << (x ? " " : "") << p(static_cast<Point>(x));
  out << "\n";
}

inline GenSet read_gens(std::istream& in) {
  std::vector<Perm> perms = read_perms(in);
  if (perms.empty()) throw ParseError("generator file is empty");
  const int dim = perms.front().dim();
  for (const Perm& p : perms)
    if (p.dim() != dim) throw ParseError("generators have different dimensions");
  return GenSet(dim, std::move(perms));
}

inline void write_gens(std::ostream& out, const GenSet& g) {
  for (std::size_t i = 0; i < g.gens.size(); ++i) {
    if (i) out << "\n";
    write_perm(out, g.gens[i]);
  }
}

// ---------------------------------------------------------------------------
// Forms: "dim N", then N rows; row i has bit j set when e_{i+1} . e_{j+1} = 1.
// Rows are hex ("0x2"); plain 0/1 strings of length N are read left to right.

inline Word parse_bit_row(std::string_view line, int n) {
  std::string row;
  for (char c : line)
    if (c != ' ' && c != '\t') row.push_back(c);
  if (row.size() != static_cast<std::size_t>(n)) throw ParseError("row '" + std::string(line) + "' has wrong length");
  Word w = 0;
  for (int j = 0; j < n; ++j) {
    if (row[static_cast<std::size_t>(j)] == '1') w |= Word{1} << j;
    else if (row[static_cast<std::size_t>(j)] != '0') throw ParseError("rows must consist of 0 and 1");
  }
  return w;
}

inline BitMatrix parse_bit_rows(const std::vector<std::string>& lines, std::size_t first, int n) {
  if (lines.size() != first + static_cast<std::size_t>(n)) throw ParseError("expected " + std::to_string(n) + " rows");
  BitMatrix m{n, {}};
  for (int i = 0; i < n; ++i) m.rows.push_back(parse_bit_row(lines[first + static_cast<std::size_t>(i)], n));
  return m;
}

inline void write_bit_rows(std::ostream& out, const BitMatrix& m) {
  for (int i = 0; i < m.dim; ++i) {
    for (int j = 0; j < m.dim; ++j) out << (m.at(i, j) ? '1' : '0');
    out << "\n";
  }
}

inline BilinForm read_form(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ParseError("form file is empty");
  const int dim = parse_header(lines[0], "dim");
  if (dim < 0 || dim > kMaxDim) throw ParseError("form dimension out of range");
  if (lines.size() != static_cast<std::size_t>(dim) + 1) throw ParseError("expected " + std::to_string(dim) + " rows");
  BitMatrix m{dim, {}};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].starts_with("0x") || lines[i].starts_with("0X"))
      m.rows.push_back(static_cast<Word>(parse_uint(std::string_view(lines[i]).substr(2), 16)));
    else
      m.rows.push_back(parse_bit_row(lines[i], dim));
  }
  try {
    return BilinForm(std::move(m));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

inline void write_form(std::ostream& out, const BilinForm& f) {
  out << "dim " << f.dim() << "\n";
  for (Word r : f.gram().rows) out << format_hex(r) << "\n";
}

// Graphs: "k", then k rows of k bits.
inline BitMatrix read_graph(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ParseError("graph file is empty");
  const int k = static_cast<int>(parse_uint(lines[0]));
  if (k > kMaxDim) throw ParseError("graph too large");
  return parse_bit_rows(lines, 1, k);
}

// ---------------------------------------------------------------------------
// Explicit relations: "arity K", then one tuple of K points per line. The
// dimension comes from the caller; an optional leading "dim N" must agree.

inline RelSpec read_relation(std::istream& in, std::string name, int dim) {
  const auto lines = content_lines(in);
  std::size_t i = 0;
  if (i < lines.size() && lines[i].starts_with("dim")) {
    if (parse_header(lines[i], "dim") != dim) throw DimensionMismatch("relation file " + name);
    ++i;
  }
  if (i == lines.size()) throw ParseError("relation file needs an 'arity' line");
  const int arity = parse_header(lines[i++], "arity");
  std::vector<std::vector<Point>> tuples;
  for (; i < lines.size(); ++i) {
    std::vector<Point> t;
    for (const std::string& w : words(lines[i])) t.push_back(parse_point(w, dim));
    tuples.push_back(std::move(t));
  }
  try {
    return RelSpec::explicit_set(std::move(name), dim, arity, std::move(tuples));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

inline void write_relation(std::ostream& out, const RelSpec& r) {
  out << "arity " << r.arity() << "\n";
  const TupleCodec codec{r.dim(), r.arity()};
  std::vector<Point> t(static_cast<std::size_t>(r.arity()));
  for (std::uint64_t c = 0; c < codec.space(); ++c) {
    codec.decode(c, t);
    if (!r(t)) continue;
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << format_hex(t[i]);
    out << "\n";
  }
}

// Named relation, or "file:PATH" for an explicit one.
inline RelSpec relation_by_name(const std::string& name, int dim, const std::optional<BilinForm>& form) {
  if (name.starts_with("file:")) {
    const std::filesystem::path p = name.substr(5);
    auto in = open_input(p);
    return read_relation(in, p.stem().string(), dim);
  }
  if (name == "parallelogram") return RelSpec::parallelogram(dim);
  if (name == "zeroset") return RelSpec::zeroset(dim);
  static const char* const needs_form[] = {"p0", "p1", "diamond", "nabla", "pentagon"};
  for (const char* n : needs_form)
    if (name == n) {
      if (!form) throw InvalidArgument("relation " + name + " needs a form");
      if (name == "p0") return RelSpec::p0(*form);
      if (name == "p1") return RelSpec::p1(*form);
      if (name == "diamond") return RelSpec::diamond(*form);
      if (name == "nabla") return RelSpec::nabla(*form);
      return RelSpec::pentagon(*form);
    }
  throw InvalidArgument("unknown relation '" + name + "'");
}

// "standard" or "file:PATH".
inline BilinForm form_by_name(const std::string& name, int dim) {
  if (name == "standard") {
    if (dim % 2 != 0) throw InvalidArgument("standard form needs an even dimension");
    return standard_form(dim / 2);
  }
  if (name.starts_with("file:")) {
    auto in = open_input(name.substr(5));
    BilinForm f = read_form(in);
    if (f.dim() != dim) throw DimensionMismatch("form file");
    return f;
  }
  throw InvalidArgument("unknown form '" + name + "'");
}

// ---------------------------------------------------------------------------
// Structures: lines "dim N", "form standard|file:PATH", "relation NAME|file:PATH", "fixzero".

inline Structure read_structure(std::istream& in, const std::filesystem::path& base_dir = {}) {
  const auto lines = content_lines(in);
  Structure s;
  std::optional<BilinForm> form;
  std::vector<std::string> rels;
  for (const std::string& line : lines) {
    const auto w = words(line);
    auto resolve = [&](const std::string& v) {
      if (v.starts_with("file:") && !base_dir.empty() && std::filesystem::path(v.substr(5)).is_relative())
        return "file:" + (base_dir / v.substr(5)).string();
      return v;
    };
    if (w[0] == "dim" && w.size() == 2) s.dim = static_cast<int>(parse_uint(w[1]));
    else if (w[0] == "form" && w.size() == 2) form = form_by_name(resolve(w[1]), s.dim);
    else if (w[0] == "relation" && w.size() == 2) rels.push_back(resolve(w[1]));
    else if (w[0] == "fixzero" && w.size() == 1) s.fix_zero = true;
    else throw ParseError("bad structure line '" + line + "'");
  }
  if (s.dim == 0) throw ParseError("structure file has no 'dim' line");
  for (const std::string& r : rels) s.relations.push_back(relation_by_name(r, s.dim, form));
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Census TSV.

inline TupleFilter parse_filter(std::string_view s) {
  for (TupleFilter f : {TupleFilter::All, TupleFilter::Injective, TupleFilter::NonzeroInjective,
                        TupleFilter::Independent})
    if (s == name_of(f)) return f;
  throw ParseError("unknown filter '" + std::string(s) + "'");
}

inline void write_census(std::ostream& out, const OrbitCensus& c) {
  out << "# census\tdim=" << c.dim << "\tarity=" << c.arity << "\tfilter=" << name_of(c.filter) << "\n";
  out << "class_id\trepresentative\tsize\tpattern\tsum_zero\trank\n";
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    const OrbitClass& k = c.classes[i];
    out << i << "\t" << format_tuple(k.representative) << "\t" << k.size << "\t" << k.pattern << "\t"
        << (k.sum_zero ? 1 : 0) << "\t" << k.rank << "\n";
  }
}

// Reads what write_census wrote; other '#' lines before the census line are skipped.
inline OrbitCensus read_census(std::istream& in) {
  OrbitCensus c;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.starts_with("# census")) {
      for (const std::string& field : split(line.substr(8), '\t')) {
        if (field.empty()) continue;
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw ParseError("bad census field '" + field + "'");
        const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "dim") c.dim = static_cast<int>(parse_uint(val));
        else if (key == "arity") c.arity = static_cast<int>(parse_uint(val));
        else if (key == "filter") c.filter = parse_filter(val);
      }
      have_header = true;
      continue;
    }
    if (line.empty() || line[0] == '#' || line.starts_with("class_id")) continue;
    if (!have_header) throw ParseError("census row before the census header");
    const auto cols = split(line, '\t');
    if (cols.size() != 6) throw ParseError("census row needs 6 columns");
    if (parse_uint(cols[0]) != c.classes.size()) throw ParseError("census class ids out of order");
    OrbitClass k;
    k.representative = parse_tuple(cols[1], c.dim);
    k.size = parse_uint(cols[2]);
    k.pattern = cols[3];
    k.sum_zero = parse_uint(cols[4]) != 0;
    k.rank = static_cast<int>(parse_uint(cols[5]));
    if (k.representative.size() != static_cast<std::size_t>(c.arity)) throw ParseError("census tuple arity mismatch");
    c.classes.push_back(std::move(k));
  }
  if (!have_header) throw ParseError("missing census header");
  return c;
}

}  // namespace f2r
