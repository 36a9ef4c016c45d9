// Text formats: .lat (lattices), .lmx (Laurent matrices), .sset (Δ-complexes),
// .coch (cochains). Blank lines and lines starting with '#' are ignored.
// Parse errors carry line and column.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tatetors/laurent.hpp"
#include "tatetors/simptors.hpp"
#include "tatetors/tate.hpp"

namespace tatetors {

namespace io_detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

inline std::vector<Line> lex(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] == ' ' || raw[i] == '\t') {
        ++i;
        continue;
      }
      if (raw[i] == '#') break;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
      line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] inline void fail(const std::string& what, const Line& l, std::size_t column) {
  throw ParseError(what, l.number, column);
}

inline void expect_word(const Line& l, std::size_t k, const std::string& word) {
  if (k >= l.tokens.size()) fail("expected '" + word + "'", l, l.tokens.empty() ? 1 : l.tokens.back().column);
  if (l.tokens[k].text != word) fail("expected '" + word + "', found '" + l.tokens[k].text + "'", l, l.tokens[k].column);
}

// key=value token
inline std::string keyed(const Line& l, std::size_t k, const std::string& key) {
  if (k >= l.tokens.size()) fail("expected " + key + "=…", l, l.tokens.empty() ? 1 : l.tokens.back().column);
  const Token& t = l.tokens[k];
  if (t.text.compare(0, key.size() + 1, key + "=") != 0) fail("expected " + key + "=…, found '" + t.text + "'", l, t.column);
  return t.text.substr(key.size() + 1);
}

inline std::int64_t integer(const std::string& s, const Line& l, std::size_t column) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    fail("malformed integer '" + s + "'", l, column);
  }
  if (pos != s.size()) fail("malformed integer '" + s + "'", l, column + pos);
  return v;
}

inline void expect_end(const Line& l, std::size_t k) {
  if (k < l.tokens.size()) fail("unexpected '" + l.tokens[k].text + "'", l, l.tokens[k].column);
}

// comma-separated list inside one token, with the column of each item
inline std::vector<Token> split_commas(const Token& t) {
  std::vector<Token> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = t.text.find(',', start);
    if (end == std::string::npos) end = t.text.size();
    out.push_back({t.text.substr(start, end - start), t.column + start});
    if (end == t.text.size()) break;
    start = end + 1;
  }
  return out;
}

inline Field field_at(const std::string& s, const Line& l, std::size_t column) {
  try {
    return Field::parse(s);
  } catch (const Error& e) {
    fail(e.what(), l, column);
  }
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// .lat

inline Lattice parse_lattice(const std::string& text) {
  using namespace io_detail;
  auto lines = lex(text);
  if (lines.empty()) throw ParseError("empty lattice file", 1, 1);
  const Line& h = lines[0];
  expect_word(h, 0, "tate");
  std::string rank_s = keyed(h, 1, "rank");
  std::int64_t rank = integer(rank_s, h, h.tokens[1].column + 5);
  if (rank < 0) fail("rank must be non-negative", h, h.tokens[1].column + 5);
  Field f = field_at(keyed(h, 2, "field"), h, h.tokens[2].column + 6);
  expect_end(h, 3);
  if (lines.size() < 2) throw ParseError("missing bounds line", h.number + 1, 1);
  const Line& b = lines[1];
  expect_word(b, 0, "bounds");
  std::int64_t lo = integer(keyed(b, 1, "lo"), b, b.tokens[1].column + 3);
  std::int64_t hi = integer(keyed(b, 2, "hi"), b, b.tokens[2].column + 3);
  expect_end(b, 3);
  if (lo > hi) fail("lo > hi", b, b.tokens[1].column);
  TateSpace space{static_cast<std::size_t>(rank), f};
  std::size_t width = space.rank * static_cast<std::size_t>(hi - lo);
  Matrix m(f, 0, width);
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const Line& l = lines[k];
    if (l.tokens.size() != 1) fail("a basis row is one comma-separated token", l, l.tokens[1].column);
    auto items = split_commas(l.tokens[0]);
    if (items.size() != width)
      fail("row has " + std::to_string(items.size()) + " entries, expected " + std::to_string(width), l, 1);
    Matrix row(f, 1, width);
    for (std::size_t c = 0; c < width; ++c) {
      try {
        row.set(0, c, Scalar::parse(f, items[c].text));
      } catch (const Error&) {
        fail("malformed scalar '" + items[c].text + "'", l, items[c].column);
      }
    }
    m = Matrix::vstack(m, row);
  }
  if (space.rank == 0) return Lattice::standard(space);
  return Lattice::from_subspace(space, lo, hi, rref_basis(m));
}

inline std::string print_lattice(const Lattice& L) {
  std::string s = "tate rank=" + std::to_string(L.rank()) + " field=" + L.field().name() + "\n";
  s += "bounds lo=" + std::to_string(L.lo()) + " hi=" + std::to_string(L.hi()) + "\n";
  const Subspace& sub = L.sub();
  for (std::size_t r = 0; r < sub.dim(); ++r) {
    for (std::size_t c = 0; c < sub.ambient_dim(); ++c) s += (c ? "," : "") + sub.basis().at(r, c).str();
    s += "\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// .lmx

inline LaurentMatrix parse_laurent_matrix(const std::string& text) {
  using namespace io_detail;
  auto lines = lex(text);
  if (lines.empty()) throw ParseError("empty matrix file", 1, 1);
  const Line& h = lines[0];
  expect_word(h, 0, "lmx");
  std::int64_t rows = integer(keyed(h, 1, "rows"), h, h.tokens[1].column + 5);
  std::int64_t cols = integer(keyed(h, 2, "cols"), h, h.tokens[2].column + 5);
  Field f = field_at(keyed(h, 3, "field"), h, h.tokens[3].column + 6);
  expect_end(h, 4);
  if (rows < 0 || cols < 0) fail("negative shape", h, h.tokens[1].column);
  LaurentMatrix m(f, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  std::size_t k = 0, total = static_cast<std::size_t>(rows * cols);
  for (std::size_t i = 1; i < lines.size(); ++i)
    for (auto& t : lines[i].tokens) {
      if (k == total) fail("too many entries", lines[i], t.column);
      m(k / cols, k % cols) = LaurentPoly::parse(f, t.text, lines[i].number, t.column);
      ++k;
    }
  if (k != total)
    throw ParseError("expected " + std::to_string(total) + " entries, found " + std::to_string(k),
                     lines.back().number, 1);
  return m;
}

inline std::string print_laurent_matrix(const LaurentMatrix& m) {
  std::string s = "lmx rows=" + std::to_string(m.rows()) + " cols=" + std::to_string(m.cols()) +
                  " field=" + m.field().name() + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? " " : "") + m(r, c).str();
    s += "\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// .sset

inline std::vector<RawSimplex> parse_raw_sset(const std::string& text) {
  using namespace io_detail;
  std::vector<RawSimplex> out;
  for (auto& l : lex(text)) {
    expect_word(l, 0, "simplex");
    if (l.tokens.size() < 3) fail("expected 'simplex <dim> <id>'", l, l.tokens.back().column);
    std::int64_t dim = integer(l.tokens[1].text, l, l.tokens[1].column);
    if (dim < 0 || dim > kMaxSimplexDim) fail("dimension out of range", l, l.tokens[1].column);
    RawSimplex s{static_cast<int>(dim), l.tokens[2].text, {}, l.number};
    if (dim == 0) {
      expect_end(l, 3);
    } else {
      expect_word(l, 3, "faces");
      for (std::size_t k = 4; k < l.tokens.size(); ++k) s.faces.push_back(l.tokens[k].text);
      if (s.faces.size() != static_cast<std::size_t>(dim + 1))
        fail("a " + std::to_string(dim) + "-simplex needs " + std::to_string(dim + 1) + " faces", l,
             l.tokens.back().column);
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline SimplicialSet parse_sset(const std::string& text) {
  auto v = validate_simplicial_set(parse_raw_sset(text));
  if (auto* d = std::get_if<SsetDiagnosis>(&v)) throw ParseError(d->message, d->line ? d->line : 1, 1);
  return std::get<SimplicialSet>(std::move(v));
}

inline std::string print_sset(const SimplicialSet& k) {
  std::string s;
  for (auto& r : k.raw()) {
    s += "simplex " + std::to_string(r.dim) + " " + r.id;
    if (r.dim > 0) {
      s += " faces";
      for (auto& f : r.faces) s += " " + f;
    }
    s += "\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// .coch

// Every simplex of the cochain's degree must get a value; the degree comes from
// an optional `degree <n>` line or else from the first value line.
inline Cochain parse_cochain(const std::string& text, const SimplicialSet& k) {
  using namespace io_detail;
  auto lines = lex(text);
  if (lines.empty()) throw ParseError("empty cochain file", 1, 1);
  const Line& h = lines[0];
  expect_word(h, 0, "group");
  if (h.tokens.size() < 2) fail("missing group presentation", h, h.tokens[0].column);
  AbelianGroup g;
  try {
    g = AbelianGroup::parse(h.tokens[1].text);
  } catch (const Error& e) {
    fail(e.what(), h, h.tokens[1].column);
  }
  expect_end(h, 2);
  std::size_t first = 1;
  int degree = -1;
  if (lines.size() > 1 && lines[1].tokens[0].text == "degree") {
    const Line& d = lines[1];
    if (d.tokens.size() < 2) fail("missing degree", d, d.tokens[0].column);
    degree = static_cast<int>(integer(d.tokens[1].text, d, d.tokens[1].column));
    expect_end(d, 2);
    first = 2;
  }
  std::vector<std::optional<GroupElem>> values;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const Line& l = lines[i];
    expect_word(l, 0, "value");
    if (l.tokens.size() != 3) fail("expected 'value <simplex-id> <coords>'", l, l.tokens.back().column);
    auto where = k.find(l.tokens[1].text);
    if (!where) fail("unknown simplex '" + l.tokens[1].text + "'", l, l.tokens[1].column);
    if (degree < 0) degree = where->first;
    if (where->first != degree)
      fail("simplex '" + l.tokens[1].text + "' has dimension " + std::to_string(where->first) + ", expected " +
               std::to_string(degree),
           l, l.tokens[1].column);
    values.resize(k.count(degree));
    auto items = split_commas(l.tokens[2]);
    if (items.size() != g.rank())
      fail("expected " + std::to_string(g.rank()) + " coordinates for " + g.str(), l, l.tokens[2].column);
    std::vector<std::int64_t> c;
    for (auto& it : items) c.push_back(integer(it.text, l, it.column));
    if (values[where->second]) fail("second value for '" + l.tokens[1].text + "'", l, l.tokens[1].column);
    values[where->second] = GroupElem(g, c);
  }
  if (degree < 0) throw ParseError("cochain has no degree line and no values", lines.back().number, 1);
  values.resize(k.count(degree));
  std::vector<GroupElem> v;
  for (std::size_t s = 0; s < values.size(); ++s) {
    if (!values[s]) throw ParseError("no value for simplex '" + k.id(degree, s) + "'", lines.back().number + 1, 1);
    v.push_back(*values[s]);
  }
  return Cochain(k, degree, g, v);
}

inline std::string print_cochain(const Cochain& c) {
  std::string s = "group " + c.group().str() + "\ndegree " + std::to_string(c.degree()) + "\n";
  for (std::size_t k = 0; k < c.size(); ++k) {
    s += "value " + c.complex().id(c.degree(), k) + " ";
    auto& x = c[k].coords();
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    s += "\n";
  }
  return s;
}

// File wrappers put the path in front of the message.
template <class F>
auto with_path(const std::string& path, F&& f) -> decltype(f(std::string())) {
  std::string text = io_detail::slurp(path);
  try {
    return f(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" at line")), e.line(),
                     e.column());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

inline Lattice read_lattice(const std::string& path) { return with_path(path, parse_lattice); }
inline LaurentMatrix read_laurent_matrix(const std::string& path) { return with_path(path, parse_laurent_matrix); }
inline SimplicialSet read_sset(const std::string& path) { return with_path(path, parse_sset); }
inline Cochain read_cochain(const std::string& path, const SimplicialSet& k) {
  return with_path(path, [&](const std::string& t) { return parse_cochain(t, k); });
}

}  // namespace tatetors
