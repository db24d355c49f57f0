#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "energame/graph.hpp"

using namespace energame;

TEST_CASE("vertex set basics") {
  VertexSet s;
  CHECK(s.empty());
  s = s.with(0).with(2).with(5);
  CHECK(s.count() == 3);
  CHECK(s.contains(2));
  CHECK(!s.contains(1));
  CHECK(s.without(2).count() == 2);
  CHECK(s.vertices() == std::vector<int>{0, 2, 5});
  CHECK(to_string(s) == "{0 2 5}");
  CHECK(to_string(VertexSet{}) == "{}");
  CHECK(VertexSet::full(3).bits == 0b111u);
  CHECK(VertexSet::full(0).bits == 0u);
  CHECK(VertexSet::single(4).bits == 0b10000u);
}

TEST_CASE("graph construction and edge semantics") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 0);  // duplicate collapses
  g.add_edge(2, 3);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.degree(1) == 1);
  CHECK(g.degrees() == std::vector<int>{1, 1, 1, 1});
  CHECK(g.max_degree() == 1);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  CHECK_THROWS(g.add_edge(0, 0));   // self-loop
  CHECK_THROWS(g.add_edge(0, 4));   // out of range
  CHECK_THROWS(g.add_edge(-1, 2));
}

TEST_CASE("induced subgraph relabels ascending") {
  const Graph p4 = path_graph(4);
  const auto sub = induced(p4, VertexSet{}.with(0).with(2).with(3));
  CHECK(sub.graph.vertex_count() == 3);
  CHECK(sub.graph.edge_count() == 1);  // only the original 2-3 edge survives
  CHECK(sub.graph.has_edge(1, 2));
  CHECK(sub.original_labels == std::vector<int>{0, 2, 3});
}

TEST_CASE("generators") {
  CHECK(path_graph(1).edge_count() == 0);
  CHECK(path_graph(5).edge_count() == 4);
  CHECK(star_graph(6).degree(0) == 5);
  CHECK(star_graph(6).degree(3) == 1);
  CHECK(cycle_graph(5).edge_count() == 5);
  CHECK_THROWS(cycle_graph(2));
  CHECK(complete_graph(5).edge_count() == 10);
  const Graph kb = complete_bipartite_graph(2, 3);
  CHECK(kb.vertex_count() == 5);
  CHECK(kb.edge_count() == 6);
  CHECK(kb.has_edge(0, 2));
  CHECK(!kb.has_edge(0, 1));
  CHECK(!kb.has_edge(2, 3));
}

TEST_CASE("union, relabel, connectivity") {
  const Graph u = disjoint_union(path_graph(2), path_graph(3));
  CHECK(u.vertex_count() == 5);
  CHECK(u.edge_count() == 3);
  CHECK(u.has_edge(0, 1));
  CHECK(u.has_edge(2, 3));
  CHECK(!is_connected(u));
  CHECK(is_connected(path_graph(7)));
  CHECK(is_connected(path_graph(1)));

  const Graph r = relabel(path_graph(3), {2, 1, 0});  // reverse labels
  CHECK(r.has_edge(2, 1));
  CHECK(r.has_edge(1, 0));
  CHECK(!r.has_edge(0, 2));
  CHECK_THROWS(relabel(path_graph(3), {0, 0, 1}));
}

TEST_CASE("edge list parsing round trip and errors") {
  const Graph g = parse_edge_list("3\n0 1\n1 2\n");
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(parse_edge_list(encode_edge_list(g)) == g);
  CHECK(parse_edge_list("3\r\n0 1\r\n1 2\r\n") == g);   // CRLF tolerated
  CHECK(parse_edge_list("3\n0 1\n0 1\n1 2\n") == g);    // duplicates collapse

  CHECK_THROWS_AS(parse_edge_list("3\n1 1\n"), ParseError);       // self-loop
  CHECK_THROWS_AS(parse_edge_list("3\n0 3\n"), ParseError);       // out of range
  CHECK_THROWS_AS(parse_edge_list("x\n"), ParseError);            // bad header
  CHECK_THROWS_AS(parse_edge_list("3\n0\n"), ParseError);         // lone endpoint
  try {
    parse_edge_list("3\n0 1\n2 2\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("labeled graph enumeration") {
  CHECK(labeled_graph_count(1) == 1);
  CHECK(labeled_graph_count(2) == 2);
  CHECK(labeled_graph_count(3) == 8);
  CHECK(labeled_graph_count(4) == 64);
  CHECK(labeled_graph_count(5) == 1024);
  CHECK(labeled_graph_count(6) == 32768);
  CHECK_THROWS(labeled_graph_count(8));
  CHECK_THROWS(labeled_graph_at(3, 8));

  // Index bits follow pair order x(0,1), x(0,2), x(1,2).
  CHECK(labeled_graph_at(3, 0).edge_count() == 0);
  CHECK(labeled_graph_at(3, 0b001).has_edge(0, 1));
  CHECK(labeled_graph_at(3, 0b010).has_edge(0, 2));
  CHECK(labeled_graph_at(3, 0b100).has_edge(1, 2));
  CHECK(labeled_graph_at(3, 0b111).edge_count() == 3);

  // The stream visits every distinct graph exactly once.
  std::set<std::vector<std::pair<int, int>>> seen;
  for_each_labeled_graph(4, [&](const Graph& g) { seen.insert(g.edges()); });
  CHECK(seen.size() == 64);
}

TEST_CASE("labeled tree enumeration via Pruefer decoding") {
  CHECK(labeled_tree_count(1) == 1);
  CHECK(labeled_tree_count(2) == 1);
  CHECK(labeled_tree_count(3) == 3);
  CHECK(labeled_tree_count(4) == 16);
  CHECK(labeled_tree_count(5) == 125);
  CHECK(labeled_tree_count(8) == 262144);
  CHECK_THROWS(labeled_tree_count(9));

  // n = 3: code (c) decodes to the path with center c.
  for (int c = 0; c < 3; ++c) {
    const Graph t = labeled_tree_at(3, c);
    CHECK(t.degree(c) == 2);
    CHECK(t.edge_count() == 2);
  }

  // Every decoded index is a distinct spanning tree.
  std::set<std::vector<std::pair<int, int>>> seen;
  for_each_labeled_tree(5, [&](const Graph& t) {
    CHECK(t.vertex_count() == 5);
    CHECK(t.edge_count() == 4);
    CHECK(is_connected(t));
    seen.insert(t.edges());
  });
  CHECK(seen.size() == 125);
}
