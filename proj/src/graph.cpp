#include "energame/graph.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>

namespace energame {

int VertexSet::count() const { return std::popcount(bits); }

std::vector<int> VertexSet::vertices() const {
  std::vector<int> out;
  for (std::uint32_t b = bits; b != 0; b &= b - 1) {
    out.push_back(std::countr_zero(b));
  }
  return out;
}

std::string to_string(VertexSet s) {
  std::string out = "{";
  for (std::uint32_t b = s.bits; b != 0; b &= b - 1) {
    if (out.size() > 1) out += ' ';
    out += std::to_string(std::countr_zero(b));
  }
  return out + "}";
}

Graph::Graph(int n) : n_(n), rows_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0 || n > kMaxVertices) {
    throw std::invalid_argument("graph size must be in [0, " +
                                std::to_string(kMaxVertices) + "], got " +
                                std::to_string(n));
  }
}

void Graph::add_edge(int i, int j) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw std::invalid_argument("edge endpoint out of range: {" + std::to_string(i) +
                                "," + std::to_string(j) + "} on " + std::to_string(n_) +
                                " vertices");
  }
  if (i == j) {
    throw std::invalid_argument("self-loop rejected at vertex " + std::to_string(i));
  }
  if (!has_edge(i, j)) {
    rows_[i] |= std::uint64_t{1} << j;
    rows_[j] |= std::uint64_t{1} << i;
    ++m_;
  }
}

int Graph::degree(int i) const { return std::popcount(rows_[i]); }

int Graph::max_degree() const {
  int d = 0;
  for (int i = 0; i < n_; ++i) d = std::max(d, degree(i));
  return d;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = degree(i);
  return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (has_edge(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

InducedSubgraph induced(const Graph& g, VertexSet s) {
  const int n = g.vertex_count();
  if (n < 32 && (s.bits >> n) != 0) {
    throw std::invalid_argument("vertex set has bits beyond the graph's vertices");
  }
  InducedSubgraph out;
  out.original_labels = s.vertices();
  const int k = static_cast<int>(out.original_labels.size());
  out.graph = Graph(k);
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      if (g.has_edge(out.original_labels[a], out.original_labels[b])) {
        out.graph.add_edge(a, b);
      }
    }
  }
  return out;
}

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) {
    throw std::invalid_argument(std::string(what) + " requires n >= 1, got " +
                                std::to_string(n));
  }
}

}  // namespace

Graph path_graph(int n) {
  require_positive(n, "path");
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph star_graph(int n) {
  require_positive(n, "star");
  Graph g(n);
  for (int i = 1; i < n; ++i) g.add_edge(0, i);
  return g;
}

Graph cycle_graph(int n) {
  if (n < 3) {
    throw std::invalid_argument("cycle requires n >= 3, got " + std::to_string(n));
  }
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph complete_graph(int n) {
  require_positive(n, "complete");
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

Graph complete_bipartite_graph(int a, int b) {
  require_positive(a, "complete_bipartite");
  require_positive(b, "complete_bipartite");
  Graph g(a + b);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  }
  return g;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.vertex_count() + b.vertex_count());
  for (auto [i, j] : a.edges()) g.add_edge(i, j);
  const int off = a.vertex_count();
  for (auto [i, j] : b.edges()) g.add_edge(off + i, off + j);
  return g;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  const int n = g.vertex_count();
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("relabel permutation has wrong length");
  }
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) {
      throw std::invalid_argument("relabel argument is not a permutation");
    }
    seen[v] = true;
  }
  Graph out(n);
  for (auto [i, j] : g.edges()) out.add_edge(perm[i], perm[j]);
  return out;
}

bool is_connected(const Graph& g) {
  const int n = g.vertex_count();
  if (n <= 1) return true;
  std::uint64_t visited = 1;
  std::uint64_t frontier = 1;
  while (frontier != 0) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f != 0; f &= f - 1) {
      next |= g.neighbors_mask(std::countr_zero(f));
    }
    frontier = next & ~visited;
    visited |= next;
  }
  return std::popcount(visited) == n;
}

namespace {

int parse_int_token(std::string_view token, int line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("malformed integer '" + std::string(token) + "'", line);
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }

  int header_line = 0;
  int n = -1;
  std::size_t li = 0;
  for (; li < lines.size(); ++li) {
    auto tokens = split_ws(lines[li]);
    if (tokens.empty()) continue;
    if (tokens.size() != 1) {
      throw ParseError("expected a single vertex count on the first line",
                       static_cast<int>(li + 1));
    }
    header_line = static_cast<int>(li + 1);
    n = parse_int_token(tokens[0], header_line);
    ++li;
    break;
  }
  if (n < 0) throw ParseError("missing vertex count header", 1);
  if (n > kMaxVertices) {
    throw ParseError("vertex count " + std::to_string(n) + " exceeds cap " +
                     std::to_string(kMaxVertices),
                     header_line);
  }

  Graph g(n);
  for (; li < lines.size(); ++li) {
    auto tokens = split_ws(lines[li]);
    if (tokens.empty()) continue;
    const int line_no = static_cast<int>(li + 1);
    if (tokens.size() != 2) {
      throw ParseError("expected two vertex labels", line_no);
    }
    const int a = parse_int_token(tokens[0], line_no);
    const int b = parse_int_token(tokens[1], line_no);
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw ParseError("vertex out of range [0, " + std::to_string(n - 1) + "]: " +
                       std::to_string(a < 0 || a >= n ? a : b),
                       line_no);
    }
    if (a == b) {
      throw ParseError("self-loop at vertex " + std::to_string(a), line_no);
    }
    g.add_edge(a, b);
  }
  return g;
}

std::string encode_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << '\n';
  for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
  return out.str();
}

namespace {

constexpr int kGraphEnumCap = 7;  // 2^21 graphs at n=7 is the desk-scale ceiling
constexpr int kTreeEnumCap = 8;

void check_graph_enum_cap(int n) {
  if (n < 0 || n > kGraphEnumCap) {
    throw std::invalid_argument("labeled-graph enumeration capped at n <= " +
                                std::to_string(kGraphEnumCap) + ", got " +
                                std::to_string(n));
  }
}

void check_tree_enum_cap(int n) {
  if (n < 1 || n > kTreeEnumCap) {
    throw std::invalid_argument("labeled-tree enumeration capped at 1 <= n <= " +
                                std::to_string(kTreeEnumCap) + ", got " +
                                std::to_string(n));
  }
}

}  // namespace

std::uint64_t labeled_graph_count(int n) {
  check_graph_enum_cap(n);
  return std::uint64_t{1} << (n * (n - 1) / 2);
}

Graph labeled_graph_at(int n, std::uint64_t index) {
  check_graph_enum_cap(n);
  if (index >= labeled_graph_count(n)) {
    throw std::out_of_range("labeled graph index out of range");
  }
  Graph g(n);
  int bit = 0;
  // graph6 pair order: column-major over the strict upper triangle.
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      if ((index >> bit) & 1u) g.add_edge(i, j);
    }
  }
  return g;
}

void for_each_labeled_graph(int n, const std::function<void(const Graph&)>& fn) {
  const std::uint64_t count = labeled_graph_count(n);
  for (std::uint64_t k = 0; k < count; ++k) fn(labeled_graph_at(n, k));
}

std::uint64_t labeled_tree_count(int n) {
  check_tree_enum_cap(n);
  if (n <= 2) return 1;
  std::uint64_t count = 1;
  for (int i = 0; i < n - 2; ++i) count *= static_cast<std::uint64_t>(n);
  return count;
}

Graph labeled_tree_at(int n, std::uint64_t index) {
  check_tree_enum_cap(n);
  if (index >= labeled_tree_count(n)) {
    throw std::out_of_range("labeled tree index out of range");
  }
  Graph g(n);
  if (n == 1) return g;

  // Decode the index into a Pruefer sequence, little-endian base n.
  std::vector<int> code(n - 2);
  for (int i = 0; i < n - 2; ++i) {
    code[i] = static_cast<int>(index % n);
    index /= n;
  }

  std::vector<int> deg(n, 1);
  for (int c : code) ++deg[c];
  for (int c : code) {
    int leaf = 0;
    while (deg[leaf] != 1) ++leaf;
    g.add_edge(leaf, c);
    deg[leaf] = 0;
    --deg[c];
  }
  int u = -1;
  for (int v = 0; v < n; ++v) {
    if (deg[v] == 1) {
      if (u < 0) {
        u = v;
      } else {
        g.add_edge(u, v);
      }
    }
  }
  return g;
}

void for_each_labeled_tree(int n, const std::function<void(const Graph&)>& fn) {
  const std::uint64_t count = labeled_tree_count(n);
  for (std::uint64_t k = 0; k < count; ++k) fn(labeled_tree_at(n, k));
}

}  // namespace energame
