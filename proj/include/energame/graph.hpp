#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace energame {

// Dense spectral code tops out at 62 vertices (single-byte graph6 size
// field); coalition bitmasks at 24.
inline constexpr int kMaxVertices = 62;
inline constexpr int kMaxPlayers = 24;

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Vertex subset / coalition as a bitmask over vertices 0..n-1.
struct VertexSet {
  std::uint32_t bits = 0;

  static VertexSet full(int n) { return {n == 0 ? 0u : (~0u >> (32 - n))}; }
  static VertexSet single(int v) { return {1u << v}; }

  bool contains(int v) const { return (bits >> v) & 1u; }
  bool empty() const { return bits == 0; }
  int count() const;
  VertexSet with(int v) const { return {bits | (1u << v)}; }
  VertexSet without(int v) const { return {bits & ~(1u << v)}; }
  std::vector<int> vertices() const;

  friend bool operator==(VertexSet, VertexSet) = default;
};

// "{0 2 5}" — space-separated so it can sit inside CSV fields.
std::string to_string(VertexSet s);

// Simple undirected graph on vertices 0..n-1, one 64-bit adjacency row per
// vertex. Values are treated as immutable once built; builders call
// add_edge and then share freely across threads.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  // Rejects self-loops and out-of-range endpoints; adding an existing edge
  // is a no-op (edge set semantics).
  void add_edge(int i, int j);

  int vertex_count() const { return n_; }
  int edge_count() const { return m_; }
  bool has_edge(int i, int j) const { return (rows_[i] >> j) & 1u; }
  int degree(int i) const;
  int max_degree() const;
  std::uint64_t neighbors_mask(int i) const { return rows_[i]; }
  std::vector<int> degrees() const;
  // Edges as (i, j) with i < j, lexicographic.
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::uint64_t> rows_;
};

// Induced subgraph relabeled 0..|s|-1 in ascending order of the original
// labels; original_labels maps new label -> original label.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> original_labels;
};

InducedSubgraph induced(const Graph& g, VertexSet s);

// Standard labeled constructions. path: edges {i, i+1}; star: center 0;
// cycle: n >= 3; complete_bipartite: parts 0..a-1 and a..a+b-1.
Graph path_graph(int n);
Graph star_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph complete_bipartite_graph(int a, int b);

Graph disjoint_union(const Graph& a, const Graph& b);
// perm[old_label] = new_label; perm must be a permutation of 0..n-1.
Graph relabel(const Graph& g, const std::vector<int>& perm);
bool is_connected(const Graph& g);

// Edge-list text format: first line "n", then one "i j" pair per line.
// Whitespace-tolerant, LF or CRLF; duplicate edges collapse. Errors carry
// the offending 1-based line number.
Graph parse_edge_list(std::string_view text);
std::string encode_edge_list(const Graph& g);

// All 2^(n(n-1)/2) labeled graphs on n vertices, indexed by the edge
// bitmask in graph6 pair order x(0,1), x(0,2), x(1,2), x(0,3), ...
// Capped at n <= 7. Sweeps partition the index range, not the stream.
std::uint64_t labeled_graph_count(int n);
Graph labeled_graph_at(int n, std::uint64_t index);
void for_each_labeled_graph(int n, const std::function<void(const Graph&)>& fn);

// All n^(n-2) labeled trees via Pruefer decoding; index digits are read
// little-endian in base n. Capped at n <= 8.
std::uint64_t labeled_tree_count(int n);
Graph labeled_tree_at(int n, std::uint64_t index);
void for_each_labeled_tree(int n, const std::function<void(const Graph&)>& fn);

}  // namespace energame
