#include "graphrepair/repair_engine.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <tuple>

#include "graphrepair/errors.hpp"

namespace graphrepair {

std::string to_string(Protocol p) { return p == Protocol::AF ? "af" : "ip"; }

// ---------------------------------------------------------------------------
// Adapters

PmAdapter::PmAdapter(const PmCode& code, const PmCodeword& word, Vertex failed)
    : code_(code), word_(word), failed_(failed) {
  if (word.columns.size() != code.n()) throw DimensionMismatch("codeword length differs from n");
  if (failed >= code.n()) throw ParameterError("failed vertex out of range");
}

FieldElement PmAdapter::helper_symbol(Vertex helper, std::size_t) const {
  return code_.helper_symbol(word_, helper, failed_);
}

Matrix PmAdapter::repair_rows(std::span<const Vertex> helpers, std::size_t) const {
  return code_.repair_matrix(helpers, failed_);
}

Column PmAdapter::assemble(const std::vector<std::vector<FieldElement>>& outputs) const {
  return outputs.at(0);
}

DmAdapter::DmAdapter(const DmCode& code, const DmCodeword& word, Vertex failed)
    : code_(code), word_(word), failed_(failed) {
  if (word.symbols.size() != code.n()) throw DimensionMismatch("codeword length differs from n");
  if (failed >= code.n()) throw ParameterError("failed vertex out of range");
  planes_ = code.canonical_planes(failed);
}

FieldElement DmAdapter::helper_symbol(Vertex helper, std::size_t group) const {
  return code_.helper_trace(word_, helper, failed_, planes_.at(group));
}

Matrix DmAdapter::repair_rows(std::span<const Vertex> helpers, std::size_t group) const {
  // The code's matrix is ordered by ascending helper id.
  const Matrix u = code_.repair_matrix(failed_, planes_.at(group));
  std::vector<std::size_t> idx;
  for (Vertex h : helpers) {
    if (h == failed_ || h >= code_.n()) throw ParameterError("invalid helper for diagonal code");
    idx.push_back(h < failed_ ? h : h - 1);
  }
  return u.select_rows(idx);
}

Column DmAdapter::assemble(const std::vector<std::vector<FieldElement>>& outputs) const {
  Column col(code_.l());
  for (std::size_t g = 0; g < planes_.size(); ++g)
    for (std::size_t u = 0; u < code_.r(); ++u)
      col[code_.with_digit(planes_[g], failed_, u)] = outputs.at(g).at(u);
  return col;
}

CoopStep1Adapter::CoopStep1Adapter(const CoopCode& code, const CoopCodeword& word)
    : code_(code), word_(word) {
  if (word.symbols.size() != code.n()) throw DimensionMismatch("codeword length differs from n");
}

FieldElement CoopStep1Adapter::helper_symbol(Vertex helper, std::size_t group) const {
  return code_.step1_message(word_, helper, group / code_.planes(), group % code_.planes());
}

Matrix CoopStep1Adapter::repair_rows(std::span<const Vertex> helpers, std::size_t group) const {
  return code_.step1_matrix(group / code_.planes(), group % code_.planes(), helpers);
}

// ---------------------------------------------------------------------------
// Tree protocol

namespace {

using GroupVectors = std::vector<std::vector<FieldElement>>;

struct Holding {
  // Raw helper symbols per group, keyed by the helper that produced them.
  std::map<Vertex, std::vector<FieldElement>> raw;
  std::optional<GroupVectors> combined;
};

// Runs the tree protocol and returns the per-group L-vectors formed at the root. When
// `root_is_helper` the root contributes its own symbols.
GroupVectors collect(const RepairTree& tree, const CodeAdapter& adapter, Protocol protocol,
                     bool root_is_helper, Transcript& transcript) {
  const Field& f = adapter.field();
  const std::size_t groups = adapter.groups();
  const std::size_t len = adapter.group_length();

  std::vector<Vertex> helpers = root_is_helper ? tree.vertices() : tree.non_root();
  std::sort(helpers.begin(), helpers.end());
  if (helpers.size() != adapter.d()) {
    throw DimensionMismatch("repair tree has " + std::to_string(helpers.size()) +
                            " helpers, code needs d=" + std::to_string(adapter.d()));
  }
  for (Vertex v : tree.vertices()) {
    if (v >= adapter.n()) throw DimensionMismatch("tree vertex " + std::to_string(v) + " exceeds code length");
  }

  std::vector<Matrix> rows(groups);
  for (std::size_t g = 0; g < groups; ++g) rows[g] = adapter.repair_rows(helpers, g);
  std::map<Vertex, std::size_t> row_of;
  for (std::size_t j = 0; j < helpers.size(); ++j) row_of[helpers[j]] = j;

  auto fold = [&](Holding& h) {
    GroupVectors acc = h.combined ? *h.combined : GroupVectors(groups, std::vector<FieldElement>(len));
    for (const auto& [v, ys] : h.raw)
      for (std::size_t g = 0; g < groups; ++g) axpy(f, ys[g], rows[g].row(row_of.at(v)), acc[g]);
    h.raw.clear();
    h.combined = std::move(acc);
  };

  std::map<Vertex, Holding> hold;
  const auto& order = tree.vertices();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    Holding& mine = hold[v];
    if (v != tree.root() || root_is_helper) {
      auto& ys = mine.raw[v];
      for (std::size_t g = 0; g < groups; ++g) ys.push_back(adapter.helper_symbol(v, g));
    }
    if (v == tree.root()) {
      fold(mine);
      return *mine.combined;
    }
    const bool compress = protocol == Protocol::IP && tree.subtree_size(v) >= len;
    if (mine.combined && !compress) throw std::logic_error("combined data below the switch point");
    std::vector<FieldElement> payload;
    Holding& up = hold[tree.parent(v)];
    if (compress) {
      fold(mine);
      for (const auto& vec : *mine.combined) payload.insert(payload.end(), vec.begin(), vec.end());
      if (up.combined) {
        for (std::size_t g = 0; g < groups; ++g)
          for (std::size_t c = 0; c < len; ++c)
            (*up.combined)[g][c] = f.add((*up.combined)[g][c], (*mine.combined)[g][c]);
      } else {
        up.combined = std::move(mine.combined);
      }
    } else {
      for (std::size_t g = 0; g < groups; ++g)
        for (const auto& [_, ys] : mine.raw) payload.push_back(ys[g]);
      for (auto& [src, ys] : mine.raw) up.raw[src] = std::move(ys);
    }
    transcript.send(v, tree.parent(v), payload);
    hold.erase(v);
  }
  throw std::logic_error("tree traversal did not reach the root");
}

}  // namespace

RepairResult run_repair(const RepairTree& tree, const ColumnAdapter& adapter, Protocol protocol) {
  if (tree.root() != adapter.failed()) throw ParameterError("repair tree must be rooted at the failed vertex");
  RepairResult out;
  const auto outputs = collect(tree, adapter, protocol, false, out.transcript);
  out.column = adapter.assemble(outputs);
  return out;
}

RepairResult run_af(const RepairTree& tree, const ColumnAdapter& adapter) {
  return run_repair(tree, adapter, Protocol::AF);
}

RepairResult run_ip(const RepairTree& tree, const ColumnAdapter& adapter) {
  return run_repair(tree, adapter, Protocol::IP);
}

// ---------------------------------------------------------------------------
// Two failures

MultiTopology path_topology(std::size_t n, std::size_t k) {
  if (k < 1 || n < k + 3) throw ParameterError("need k >= 1 and n >= k+3");
  MultiTopology t{Graph(n), {}, 2};
  t.graph.add_edge(0, 1);
  t.graph.add_edge(0, 2);
  t.graph.add_edge(1, 2);
  for (Vertex v = 2; v <= k + 2; ++v) t.helpers.push_back(v);
  for (Vertex v = 3; v < n; ++v) t.graph.add_edge(v - 1, v);
  return t;
}


namespace {

// Shortest path from `from` to `to`, smallest-id predecessor at each step.
std::vector<Vertex> route(const Graph& g, Vertex from, Vertex to) {
  const auto dist = bfs_distances(g, to);
  if (dist[from] < 0) throw GraphError("no path from w to a failed vertex");
  std::vector<Vertex> path{from};
  while (path.back() != to) {
    for (Vertex u : g.neighbors(path.back())) {
      if (dist[u] == dist[path.back()] - 1) {
        path.push_back(u);
        break;
      }
    }
  }
  return path;
}

}  // namespace

MultiRepairResult run_multi_ip(const MultiTopology& topology, const CoopCode& code,
                               const CoopCodeword& word) {
  const Graph& g = topology.graph;
  if (g.vertex_count() != code.n()) throw GraphError("graph size differs from code length");
  std::set<Vertex> helper_set(topology.helpers.begin(), topology.helpers.end());
  if (helper_set.size() != code.d()) throw GraphError("helper set must have exactly d vertices");
  if (helper_set.count(0) || helper_set.count(1)) throw GraphError("failed vertices 0, 1 cannot be helpers");
  if (!helper_set.count(topology.w)) throw GraphError("w must be a helper");

  const RepairTree tree = spanning_tree_rooted(g, topology.w, topology.helpers);
  Transcript transcript;
  const CoopStep1Adapter adapter(code, word);
  const GroupVectors outputs = collect(tree, adapter, Protocol::IP, true, transcript);

  // w relays each target's triples along a shortest path outside the helper tree.
  CoopStep1State state;
  for (std::size_t target = 0; target < 2; ++target) {
    std::vector<FieldElement> payload;
    state.recovered[target].resize(code.planes());
    for (std::size_t a = 0; a < code.planes(); ++a) {
      const auto& v = outputs[target * code.planes() + a];
      state.recovered[target][a] = CoopTriple{v[0], v[1], v[2]};
      payload.insert(payload.end(), v.begin(), v.end());
    }
    const auto path = route(g, topology.w, target);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) transcript.send(path[i], path[i + 1], payload);
  }
  const std::size_t helper_traffic = transcript.total_from(helper_set);

  // Step 2: the failed nodes swap their cross sums.
  const CoopExchange ex = code.step2_exchange(state);
  std::vector<FieldElement> x_sums, y_sums;
  for (const auto& t : state.recovered[0]) x_sums.push_back((*t)[2]);
  for (const auto& t : state.recovered[1]) y_sums.push_back((*t)[2]);
  for (const auto& [from, to, sums] : {std::tuple{Vertex{0}, Vertex{1}, &x_sums},
                                       std::tuple{Vertex{1}, Vertex{0}, &y_sums}}) {
    const auto path = route(g, from, to);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) transcript.send(path[i], path[i + 1], *sums);
  }
  return {ex.node0, ex.node1, std::move(transcript), tree, helper_traffic};
}

// ---------------------------------------------------------------------------
// Lower-bound audit

TranscriptReport verify_transcript(const RepairTree& tree, const Transcript& transcript,
                                   std::size_t l, std::size_t d, std::size_t k) {
  if (d < k) throw ParameterError("need d >= k");
  const std::size_t w = d - k + 1;
  TranscriptReport report;
  for (Vertex v : tree.non_root()) {
    const std::size_t sent = transcript.count(v, tree.parent(v));
    const std::size_t s = tree.subtree_size(v);
    // Compare sent against min(l, s*l/w) scaled by w to stay in integers.
    const std::size_t need_scaled = std::min(l * w, s * l);
    const std::size_t required = (need_scaled + w - 1) / w;
    if (sent * w < need_scaled) report.violations.push_back({v, sent, required});
    else if (sent * w == need_scaled) report.tight.push_back(v);
  }
  return report;
}

void write_report(std::ostream& out, const TranscriptReport& report) {
  out << "violations " << report.violations.size() << '\n';
  for (const auto& v : report.violations)
    out << "  vertex " << v.vertex << " sent " << v.sent << " required " << v.required << '\n';
  out << "tight";
  for (Vertex v : report.tight) out << ' ' << v;
  out << '\n';
}

}  // namespace graphrepair
