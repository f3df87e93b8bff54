#pragma once

// Undirected simple graphs, BFS layering around a failed vertex, helper selection
// and rooted repair trees. Ties are always broken by the smallest vertex id.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphrepair {

using Vertex = std::size_t;

class Graph {
 public:
  explicit Graph(std::size_t n = 0);

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }

  // Rejects self-loops, duplicates and out-of-range endpoints.
  void add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }
  // Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  bool connected() const;

  // Text format: "n m" then m lines "u v" (0-based).
  static Graph read(std::istream& in);
  void write(std::ostream& out) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edges_ = 0;
};

Graph complete_graph(std::size_t n);
// Star with d rays; vertex 0 is the failed leaf, vertex 1 the center, 2..d the other leaves.
Graph star_graph(std::size_t d);
// Path 0 - 1 - ... - d.
Graph path_graph(std::size_t d);
// Two-neighbor repair graph: failed 0; 1, 2 adjacent to 0 and to each other; far helpers
// 3..k+1 adjacent to both 1 and 2. Vertices k+2..n-1 (if n > k+2) hang off vertex k+1.
Graph two_neighbor_graph(std::size_t k, std::size_t n = 0);
// Failed 0 adjacent to 1, 2, 3; helpers 1..6 form K_6.
Graph three_neighbor_graph();
// Named graphs: "star:d", "path:d", "complete:n", "fig3:k", "fig4".
std::optional<Graph> builtin_graph(const std::string& spec);
// Builtin name or a path to a graph file.
Graph load_graph(const std::string& spec);

// Distances from `source` restricted to `allowed` (all vertices when empty); -1 = unreachable.
std::vector<long> bfs_distances(const Graph& g, Vertex source,
                                std::span<const Vertex> allowed = {});

struct LayerDecomposition {
  Vertex center = 0;
  // layers[j-1] = Gamma_j, sorted ascending.
  std::vector<std::vector<Vertex>> layers;

  std::size_t depth() const { return layers.size(); }
  std::size_t layer_size(std::size_t j) const { return layers.at(j - 1).size(); }
  // |N_i| = |Gamma_1| + ... + |Gamma_i|.
  std::size_t ball_size(std::size_t i) const;
};

struct HelperSelection {
  std::vector<Vertex> helpers;  // ascending
  LayerDecomposition layers;
};

// The d closest vertices to `failed`; layer-t ties go to the smallest ids.
HelperSelection select_helpers(const Graph& g, Vertex failed, std::size_t d);

class RepairTree {
 public:
  // Validates that `parents` (child -> parent) forms a tree rooted at `root`.
  static RepairTree from_parents(Vertex root, const std::map<Vertex, Vertex>& parents);

  Vertex root() const { return root_; }
  // Root first, then by depth, ties by id.
  const std::vector<Vertex>& vertices() const { return order_; }
  std::vector<Vertex> non_root() const;
  bool contains(Vertex v) const { return v < depth_.size() && depth_[v] >= 0; }
  Vertex parent(Vertex v) const;
  std::size_t depth(Vertex v) const;
  const std::vector<Vertex>& children(Vertex v) const { return children_.at(v); }
  // |D(v)|
  std::size_t descendants(Vertex v) const;
  // |D*(v)| = |D(v)| + 1
  std::size_t subtree_size(Vertex v) const { return descendants(v) + 1; }
  std::size_t height() const;
  std::size_t size() const { return order_.size(); }
  LayerDecomposition layers() const;

 private:
  RepairTree() = default;
  void finalize();

  Vertex root_ = 0;
  std::vector<Vertex> order_;
  std::vector<long> depth_;
  std::vector<Vertex> parent_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<std::size_t> descendants_;
};

// BFS tree of the subgraph induced by `vertices` (which must contain root); each
// vertex's parent is its smallest-id neighbor one layer closer to the root.
RepairTree spanning_tree_rooted(const Graph& g, Vertex root, std::span<const Vertex> vertices);
RepairTree build_repair_tree(const Graph& g, Vertex failed, std::span<const Vertex> helpers);

}  // namespace graphrepair
