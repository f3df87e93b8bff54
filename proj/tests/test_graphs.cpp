#include <doctest.h>

#include <sstream>

#include "graphrepair/errors.hpp"
#include "graphrepair/graphs.hpp"
#include "graphrepair/random.hpp"
#include "graphrepair/transcript.hpp"
#include "support.hpp"

using namespace graphrepair;

namespace {

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

// All-pairs distances by Floyd-Warshall; -1 when unreachable.
std::vector<std::vector<long>> floyd(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const long inf = 1 << 20;
  std::vector<std::vector<long>> d(n, std::vector<long>(n, inf));
  for (Vertex v = 0; v < n; ++v) d[v][v] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& x : row)
      if (x >= inf) x = -1;
  return d;
}

}  // namespace

TEST_CASE("edge insertion rejects loops, duplicates and out-of-range ids") {
  Graph g(3);
  g.add_edge(0, 1);
  CHECK(g.has_edge(1, 0));
  CHECK_THROWS_AS(g.add_edge(1, 0), ParameterError);
  CHECK_THROWS_AS(g.add_edge(2, 2), ParameterError);
  CHECK_THROWS_AS(g.add_edge(0, 3), ParameterError);
  CHECK(g.edge_count() == 1);
  CHECK_FALSE(g.connected());
}

TEST_CASE("graph text format round trip and parse errors") {
  const Graph g = random_graph(12, 0.3, 4);
  std::stringstream ss;
  g.write(ss);
  CHECK(Graph::read(ss) == g);

  for (const char* bad : {"3", "3 2\n0 1\n", "3 1\n0 0\n", "3 1\n0 5\n", "3 1\n0 1\n1 2\n",
                          "3 2\n0 1\n0 1\n", "x y"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(Graph::read(in), ParseError);
  }
}

TEST_CASE("builtin graphs") {
  CHECK(builtin_graph("star:4")->edge_count() == 4);
  CHECK(builtin_graph("star:4")->degree(1) == 4);
  CHECK(builtin_graph("path:3")->edge_count() == 3);
  CHECK(builtin_graph("complete:5")->edge_count() == 10);
  const Graph three = *builtin_graph("fig4");
  CHECK(three.vertex_count() == 7);
  CHECK(three.degree(0) == 3);
  CHECK(three.edge_count() == 3 + 15);
  const Graph two = *builtin_graph("fig3:4");
  CHECK(two.vertex_count() == 6);
  CHECK(two.neighbors(0) == std::vector<Vertex>{1, 2});
  CHECK_FALSE(builtin_graph("star:x"));
  CHECK_FALSE(builtin_graph("wheel:4"));
  CHECK_THROWS_AS(load_graph("/nonexistent/graph.txt"), ParseError);
}

TEST_CASE("BFS distances agree with Floyd-Warshall") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(15, 0.15, seed);
    const auto all = floyd(g);
    for (Vertex s = 0; s < g.vertex_count(); ++s) CHECK(bfs_distances(g, s) == all[s]);
  }
}

TEST_CASE("helper selection takes the d nearest vertices, smallest ids on ties") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = random_graph(16, 0.2, 100 + seed);
    if (!g.connected()) continue;
    const auto dist = floyd(g)[0];
    const HelperSelection sel = select_helpers(g, 0, 7);
    REQUIRE(sel.helpers.size() == 7);
    long farthest = 0;
    for (Vertex h : sel.helpers) farthest = std::max(farthest, dist[h]);
    for (Vertex v = 1; v < 16; ++v) {
      const bool chosen = std::count(sel.helpers.begin(), sel.helpers.end(), v) > 0;
      if (dist[v] < farthest) CHECK(chosen);
      if (dist[v] > farthest) CHECK_FALSE(chosen);
    }
    // Ties in the last layer go to the smallest ids.
    std::vector<Vertex> last_layer, chosen_last;
    for (Vertex v = 1; v < 16; ++v)
      if (dist[v] == farthest) last_layer.push_back(v);
    for (Vertex h : sel.helpers)
      if (dist[h] == farthest) chosen_last.push_back(h);
    CHECK(std::equal(chosen_last.begin(), chosen_last.end(), last_layer.begin()));
    std::size_t total = 0;
    for (std::size_t j = 1; j <= sel.layers.depth(); ++j) total += sel.layers.layer_size(j);
    CHECK(total == 7);
  }
  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_THROWS_AS(select_helpers(split, 0, 2), GraphError);
  CHECK_THROWS_AS(select_helpers(complete_graph(4), 0, 4), ParameterError);
}

TEST_CASE("repair tree structure") {
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const RepairTree t = testsupport::random_tree(0, {1, 2, 3, 4, 5, 6, 7}, rng);
    CHECK(t.size() == 8);
    CHECK(t.vertices().front() == 0);
    CHECK(t.subtree_size(0) == 8);
    for (Vertex v : t.vertices()) CHECK(t.subtree_size(v) == testsupport::brute_subtree(t, v));
    for (Vertex v : t.non_root()) CHECK(t.depth(v) == t.depth(t.parent(v)) + 1);
    std::size_t counted = 0;
    for (const auto& layer : t.layers().layers) counted += layer.size();
    CHECK(counted == 7);
  }
  CHECK_THROWS_AS(RepairTree::from_parents(0, {{1, 2}, {2, 1}}), GraphError);
  CHECK_THROWS_AS(RepairTree::from_parents(0, {{1, 5}}), GraphError);
  CHECK_THROWS_AS(RepairTree::from_parents(0, {{0, 1}, {1, 0}}), GraphError);
}

TEST_CASE("BFS repair tree uses the smallest-id parent one layer up") {
  const RepairTree t = build_repair_tree(three_neighbor_graph(), 0, std::vector<Vertex>{1, 2, 3, 4, 5, 6});
  for (Vertex v : {1, 2, 3}) CHECK(t.parent(v) == 0);
  for (Vertex v : {4, 5, 6}) CHECK(t.parent(v) == 1);
  CHECK(t.subtree_size(1) == 4);
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  CHECK_THROWS_AS(build_repair_tree(g, 0, std::vector<Vertex>{1, 2}), GraphError);
}

TEST_CASE("transcript serialization round trip and footer validation") {
  Transcript t;
  t.send(3, 1, FieldElement{5});
  t.send(1, 0, std::vector<FieldElement>{{1}, {2}});
  t.send(3, 1, FieldElement{6});
  CHECK(t.total() == 4);
  CHECK(t.count(3, 1) == 2);
  CHECK(t.edges().at({3, 1}).payload == std::vector<FieldElement>{{5}, {6}});
  CHECK(t.total_from({3}) == 2);
  std::stringstream ss;
  t.write(ss);
  CHECK(ss.str() == "1 0 2\n3 1 2\ntotal 4\n");
  const auto counts = Transcript::read_counts(ss);
  CHECK(counts.at({1, 0}) == 2);
  std::istringstream bad("1 0 2\ntotal 5\n");
  CHECK_THROWS_AS(Transcript::read_counts(bad), ParseError);
  std::istringstream unfinished("1 0 2\n");
  CHECK_THROWS_AS(Transcript::read_counts(unfinished), ParseError);
}
