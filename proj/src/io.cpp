#include "meshopt/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace meshopt {

namespace {

// Line-oriented tokenizer that skips comments and blank lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-empty line split into tokens; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(std::move(t));
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::vector<std::string> require(const char* what) {
    std::vector<std::string> tokens;
    if (!next(tokens)) throw FormatError(std::string("unexpected end of file, expected ") + what, line_ + 1);
    return tokens;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

template <typename T>
T parse_number(std::string_view s, std::size_t line) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError("invalid number '" + std::string(s) + "'", line);
  return value;
}

Index parse_index(std::string_view s, std::size_t line) { return parse_number<Index>(s, line); }

void expect_tokens(const std::vector<std::string>& t, std::size_t n, std::size_t line) {
  if (t.size() < n) throw ParseError("expected " + std::to_string(n) + " fields", line);
}

void check_vertex(Index v, Index nv, std::size_t line) {
  if (v < 0 || v >= nv)
    throw FormatError("vertex index " + std::to_string(v) + " out of range [0, " + std::to_string(nv) + ")", line);
}

std::ostream& with_precision(std::ostream& out) { return out << std::setprecision(17); }

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot open " + p.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + p.string());
  return out;
}

bool is_tet_path(const std::filesystem::path& p) { return p.extension() == ".node" || p.extension() == ".ele"; }

}  // namespace

Mesh read_off(std::istream& in) {
  LineReader r(in);
  auto t = r.require("OFF header");
  if (t[0] != "OFF") throw ParseError("expected 'OFF' header", r.line());
  t = r.require("counts");
  expect_tokens(t, 2, r.line());
  const Index nv = parse_index(t[0], r.line());
  const Index ne = parse_index(t[1], r.line());
  if (nv < 0 || ne < 0) throw FormatError("negative counts", r.line());

  Points3d x(3, nv);
  for (Index i = 0; i < nv; ++i) {
    t = r.require("vertex");
    expect_tokens(t, 3, r.line());
    for (int c = 0; c < 3; ++c) x(c, i) = parse_number<double>(t[static_cast<std::size_t>(c)], r.line());
  }

  std::vector<ElementRef> elements;
  elements.reserve(static_cast<std::size_t>(ne));
  for (Index e = 0; e < ne; ++e) {
    t = r.require("element");
    const Index k = parse_index(t[0], r.line());
    if (k < 3) throw FormatError("element needs at least 3 vertices", r.line());
    if (static_cast<Index>(t.size()) != k + 1) throw FormatError("element vertex count mismatch", r.line());
    std::vector<Index> vs;
    for (Index i = 1; i <= k; ++i) {
      const Index v = parse_index(t[static_cast<std::size_t>(i)], r.line());
      check_vertex(v, nv, r.line());
      vs.push_back(v);
    }
    elements.push_back(ElementRef::polygon(std::move(vs)));
  }

  int dim = (nv == 0 || x.row(2).isZero(0)) ? 2 : 3;
  std::vector<bool> fixed(static_cast<std::size_t>(nv), false);
  std::vector<std::pair<Index, int>> tags;
  while (r.next(t)) {
    if (t[0] == "dim") {
      expect_tokens(t, 2, r.line());
      dim = static_cast<int>(parse_index(t[1], r.line()));
      if (dim != 2 && dim != 3) throw FormatError("dim must be 2 or 3", r.line());
    } else if (t[0] == "fixed") {
      for (std::size_t i = 1; i < t.size(); ++i) {
        const Index v = parse_index(t[i], r.line());
        check_vertex(v, nv, r.line());
        fixed[static_cast<std::size_t>(v)] = true;
      }
    } else if (t[0] == "tag") {
      expect_tokens(t, 3, r.line());
      const Index v = parse_index(t[1], r.line());
      check_vertex(v, nv, r.line());
      tags.emplace_back(v, static_cast<int>(parse_index(t[2], r.line())));
    } else {
      throw ParseError("unexpected section '" + t[0] + "'", r.line());
    }
  }
  if (dim == 2 && !x.row(2).isZero(0)) throw FormatError("planar mesh with nonzero z", r.line());

  Mesh m(dim, std::move(x), std::move(elements));
  m.set_fixed_mask(std::move(fixed));
  for (auto [v, tag] : tags) m.set_geometry_tag(v, tag);
  return m;
}

void write_off(const Mesh& m, std::ostream& out) {
  with_precision(out);
  out << "OFF\n" << m.num_vertices() << ' ' << m.num_elements() << " 0\n";
  for (Index i = 0; i < m.num_vertices(); ++i)
    out << m.points()(0, i) << ' ' << m.points()(1, i) << ' ' << m.points()(2, i) << '\n';
  for (const auto& el : m.elements()) {
    out << el.size();
    for (Index v : el.verts) out << ' ' << v;
    out << '\n';
  }
  out << "dim " << m.dimension() << '\n';
  out << "fixed";
  for (Index v = 0; v < m.num_vertices(); ++v)
    if (m.is_fixed(v)) out << ' ' << v;
  out << '\n';
  for (Index v = 0; v < m.num_vertices(); ++v)
    if (m.geometry_tag(v) >= 0) out << "tag " << v << ' ' << m.geometry_tag(v) << '\n';
}

Mesh read_node_ele(std::istream& node_in, std::istream& ele_in) {
  LineReader node(node_in);
  auto t = node.require("node header");
  expect_tokens(t, 1, node.line());
  const Index nv = parse_index(t[0], node.line());
  if (nv < 0) throw FormatError("negative vertex count", node.line());
  if (t.size() > 1 && parse_index(t[1], node.line()) != 3) throw FormatError("only 3D nodes are supported", node.line());

  Points3d x(3, nv);
  std::vector<bool> fixed(static_cast<std::size_t>(nv), false);
  Index base = 0;
  for (Index i = 0; i < nv; ++i) {
    t = node.require("node");
    expect_tokens(t, 4, node.line());
    const Index id = parse_index(t[0], node.line());
    if (i == 0) {
      if (id != 0 && id != 1) throw FormatError("node numbering must start at 0 or 1", node.line());
      base = id;
    }
    if (id != i + base) throw FormatError("nodes must be numbered consecutively", node.line());
    for (int c = 0; c < 3; ++c) x(c, i) = parse_number<double>(t[static_cast<std::size_t>(c) + 1], node.line());
    if (t.size() > 4) fixed[static_cast<std::size_t>(i)] = parse_index(t[4], node.line()) != 0;
  }

  LineReader ele(ele_in);
  t = ele.require("ele header");
  expect_tokens(t, 1, ele.line());
  const Index ne = parse_index(t[0], ele.line());
  if (ne < 0) throw FormatError("negative element count", ele.line());
  if (t.size() > 1 && parse_index(t[1], ele.line()) != 4) throw FormatError("only 4-node tetrahedra are supported", ele.line());
  std::vector<ElementRef> elements;
  for (Index e = 0; e < ne; ++e) {
    t = ele.require("element");
    expect_tokens(t, 5, ele.line());
    std::array<Index, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) {
      v[i] = parse_index(t[i + 1], ele.line()) - base;
      check_vertex(v[i], nv, ele.line());
    }
    elements.push_back(ElementRef::tet(v[0], v[1], v[2], v[3]));
  }

  Mesh m(3, std::move(x), std::move(elements));
  m.set_fixed_mask(std::move(fixed));
  return m;
}

void write_node_ele(const Mesh& m, std::ostream& node, std::ostream& ele) {
  if (!m.is_tet_mesh() && m.num_elements() > 0) throw UnsupportedError("node/ele output requires a tetrahedral mesh");
  with_precision(node);
  node << m.num_vertices() << " 3 0 1\n";
  for (Index i = 0; i < m.num_vertices(); ++i)
    node << i << ' ' << m.points()(0, i) << ' ' << m.points()(1, i) << ' ' << m.points()(2, i) << ' '
         << (m.is_fixed(i) ? 1 : 0) << '\n';
  ele << m.num_elements() << " 4 0\n";
  for (Index e = 0; e < m.num_elements(); ++e) {
    ele << e;
    for (Index v : m.element(e).verts) ele << ' ' << v;
    ele << '\n';
  }
}

Mesh load_mesh(const std::filesystem::path& path) {
  if (is_tet_path(path)) {
    auto node = open_in(std::filesystem::path(path).replace_extension(".node"));
    auto ele = open_in(std::filesystem::path(path).replace_extension(".ele"));
    return read_node_ele(node, ele);
  }
  auto in = open_in(path);
  return read_off(in);
}

void save_mesh(const Mesh& m, const std::filesystem::path& path) {
  if (is_tet_path(path) || m.is_tet_mesh()) {
    if (!is_tet_path(path)) throw ArgumentError("tetrahedral meshes need a .node or .ele path");
    auto node = open_out(std::filesystem::path(path).replace_extension(".node"));
    auto ele = open_out(std::filesystem::path(path).replace_extension(".ele"));
    write_node_ele(m, node, ele);
    return;
  }
  auto out = open_out(path);
  write_off(m, out);
}

}  // namespace meshopt
