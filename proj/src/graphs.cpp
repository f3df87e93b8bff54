#include "graphrepair/graphs.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "graphrepair/errors.hpp"

namespace graphrepair {

Graph::Graph(std::size_t n) : adj_(n) {}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw ParameterError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") out of range");
  }
  if (u == v) throw ParameterError("self-loop at vertex " + std::to_string(u));
  auto& nu = adj_[u];
  auto pos = std::lower_bound(nu.begin(), nu.end(), v);
  if (pos != nu.end() && *pos == v) {
    throw ParameterError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  nu.insert(pos, v);
  auto& nv = adj_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edges_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::connected() const {
  if (adj_.empty()) return true;
  const auto dist = bfs_distances(*this, 0);
  return std::none_of(dist.begin(), dist.end(), [](long x) { return x < 0; });
}

Graph Graph::read(std::istream& in) {
  std::size_t n = 0, m = 0;
  if (!(in >> n >> m)) throw ParseError("graph header must be 'n m'");
  Graph g(n);
  for (std::size_t i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw ParseError("expected " + std::to_string(m) + " edge lines");
    if (u < 0 || v < 0) throw ParseError("negative vertex id");
    try {
      g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } catch (const ParameterError& e) {
      throw ParseError(e.what());
    }
  }
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after edge list");
  return g;
}

void Graph::write(std::ostream& out) const {
  out << vertex_count() << ' ' << edge_count() << '\n';
  for (auto [u, v] : edges()) out << u << ' ' << v << '\n';
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph star_graph(std::size_t d) {
  if (d < 1) throw ParameterError("star needs d >= 1");
  Graph g(d + 1);
  for (Vertex v = 0; v <= d; ++v)
    if (v != 1) g.add_edge(1, v);
  return g;
}

Graph path_graph(std::size_t d) {
  Graph g(d + 1);
  for (Vertex v = 0; v < d; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph two_neighbor_graph(std::size_t k, std::size_t n) {
  if (k < 1) throw ParameterError("two-neighbor graph needs k >= 1");
  const std::size_t core = k + 2;
  if (n == 0) n = core;
  if (n < core) throw ParameterError("two-neighbor graph needs n >= k+2");
  Graph g(n);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  for (Vertex v = 3; v < core; ++v) {
    g.add_edge(1, v);
    g.add_edge(2, v);
  }
  for (Vertex v = core; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

Graph three_neighbor_graph() {
  Graph g(7);
  for (Vertex v = 1; v <= 3; ++v) g.add_edge(0, v);
  for (Vertex u = 1; u <= 6; ++u)
    for (Vertex v = u + 1; v <= 6; ++v) g.add_edge(u, v);
  return g;
}

std::optional<Graph> builtin_graph(const std::string& spec) {
  if (spec == "fig4") return three_neighbor_graph();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string name = spec.substr(0, colon);
  std::size_t value = 0;
  try {
    std::size_t used = 0;
    value = std::stoul(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (name == "star") return star_graph(value);
  if (name == "path") return path_graph(value);
  if (name == "complete") return complete_graph(value);
  if (name == "fig3") return two_neighbor_graph(value);
  return std::nullopt;
}

Graph load_graph(const std::string& spec) {
  if (auto g = builtin_graph(spec)) return *g;
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot open graph file '" + spec + "'");
  return Graph::read(in);
}

std::vector<long> bfs_distances(const Graph& g, Vertex source, std::span<const Vertex> allowed) {
  const std::size_t n = g.vertex_count();
  if (source >= n) throw ParameterError("BFS source out of range");
  std::vector<char> ok(n, allowed.empty() ? 1 : 0);
  for (Vertex v : allowed) {
    if (v >= n) throw ParameterError("vertex out of range");
    ok[v] = 1;
  }
  std::vector<long> dist(n, -1);
  if (!ok[source]) return dist;
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (ok[w] && dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::size_t LayerDecomposition::ball_size(std::size_t i) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < i && j < layers.size(); ++j) s += layers[j].size();
  return s;
}

HelperSelection select_helpers(const Graph& g, Vertex failed, std::size_t d) {
  const std::size_t n = g.vertex_count();
  if (failed >= n) throw ParameterError("failed vertex out of range");
  if (d == 0 || d > n - 1) {
    throw ParameterError("need 1 <= d <= n-1 (d=" + std::to_string(d) +
                         ", n=" + std::to_string(n) + ")");
  }
  if (!g.connected()) throw GraphError("graph is not connected");
  const auto dist = bfs_distances(g, failed);
  std::vector<Vertex> others;
  for (Vertex v = 0; v < n; ++v)
    if (v != failed) others.push_back(v);
  std::stable_sort(others.begin(), others.end(),
                   [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
  HelperSelection sel;
  sel.helpers.assign(others.begin(), others.begin() + d);
  sel.layers.center = failed;
  for (Vertex v : sel.helpers) {
    const auto j = static_cast<std::size_t>(dist[v]);
    if (sel.layers.layers.size() < j) sel.layers.layers.resize(j);
    sel.layers.layers[j - 1].push_back(v);
  }
  std::sort(sel.helpers.begin(), sel.helpers.end());
  return sel;
}

RepairTree RepairTree::from_parents(Vertex root, const std::map<Vertex, Vertex>& parents) {
  Vertex max_id = root;
  for (auto [c, p] : parents) max_id = std::max({max_id, c, p});
  RepairTree t;
  t.root_ = root;
  t.depth_.assign(max_id + 1, -1);
  t.parent_.assign(max_id + 1, root);
  t.children_.assign(max_id + 1, {});
  if (parents.count(root)) throw GraphError("root must not have a parent");
  std::set<Vertex> members{root};
  for (auto [c, p] : parents) {
    members.insert(c);
    t.parent_[c] = p;
  }
  for (auto [c, p] : parents) {
    if (!members.count(p)) throw GraphError("parent " + std::to_string(p) + " not in tree");
    t.children_[p].push_back(c);
  }
  // Depths by walking up; a cycle never reaches the root.
  t.depth_[root] = 0;
  for (Vertex v : members) {
    std::vector<Vertex> chain;
    Vertex x = v;
    while (t.depth_[x] < 0) {
      chain.push_back(x);
      if (chain.size() > members.size()) throw GraphError("parent map contains a cycle");
      x = t.parent_[x];
    }
    long dep = t.depth_[x];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) t.depth_[*it] = ++dep;
  }
  t.finalize();
  return t;
}

void RepairTree::finalize() {
  order_.clear();
  for (Vertex v = 0; v < depth_.size(); ++v)
    if (depth_[v] >= 0) order_.push_back(v);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](Vertex a, Vertex b) { return depth_[a] < depth_[b]; });
  for (auto& ch : children_) std::sort(ch.begin(), ch.end());
  descendants_.assign(depth_.size(), 0);
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    if (*it == root_) continue;
    descendants_[parent_[*it]] += descendants_[*it] + 1;
  }
}

std::vector<Vertex> RepairTree::non_root() const { return {order_.begin() + 1, order_.end()}; }

Vertex RepairTree::parent(Vertex v) const {
  if (!contains(v) || v == root_) throw GraphError("vertex has no parent in the tree");
  return parent_[v];
}

std::size_t RepairTree::depth(Vertex v) const {
  if (!contains(v)) throw GraphError("vertex not in tree");
  return static_cast<std::size_t>(depth_[v]);
}

std::size_t RepairTree::descendants(Vertex v) const {
  if (!contains(v)) throw GraphError("vertex not in tree");
  return descendants_[v];
}

std::size_t RepairTree::height() const { return order_.empty() ? 0 : depth(order_.back()); }

LayerDecomposition RepairTree::layers() const {
  LayerDecomposition out;
  out.center = root_;
  out.layers.resize(height());
  for (Vertex v : order_)
    if (v != root_) out.layers[depth(v) - 1].push_back(v);
  return out;
}

RepairTree spanning_tree_rooted(const Graph& g, Vertex root, std::span<const Vertex> vertices) {
  std::vector<Vertex> members(vertices.begin(), vertices.end());
  if (std::find(members.begin(), members.end(), root) == members.end()) members.push_back(root);
  const auto dist = bfs_distances(g, root, members);
  std::map<Vertex, Vertex> parents;
  for (Vertex v : members) {
    if (dist[v] < 0) {
      throw GraphError("vertex " + std::to_string(v) + " unreachable from " +
                       std::to_string(root) + " inside the induced subgraph");
    }
    if (v == root) continue;
    for (Vertex u : g.neighbors(v)) {  // ascending, so the first hit is the smallest id
      if (dist[u] == dist[v] - 1) {
        parents[v] = u;
        break;
      }
    }
  }
  return RepairTree::from_parents(root, parents);
}

RepairTree build_repair_tree(const Graph& g, Vertex failed, std::span<const Vertex> helpers) {
  if (std::find(helpers.begin(), helpers.end(), failed) != helpers.end()) {
    throw ParameterError("failed vertex listed as helper");
  }
  return spanning_tree_rooted(g, failed, helpers);
}

}  // namespace graphrepair
