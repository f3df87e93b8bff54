#pragma once

// Helpers shared by the test binaries. The oracles here deliberately avoid the
// library's linear algebra.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "graphrepair/galois.hpp"
#include "graphrepair/graphs.hpp"
#include "graphrepair/random.hpp"

namespace testsupport {

using namespace graphrepair;

// Random recursive tree: helpers in random order, each attached to a uniformly chosen
// vertex already placed.
inline RepairTree random_tree(Vertex root, std::vector<Vertex> helpers, Rng& rng) {
  rng.shuffle(helpers);
  std::vector<Vertex> placed{root};
  std::map<Vertex, Vertex> parents;
  for (Vertex h : helpers) {
    parents[h] = placed[rng.below(placed.size())];
    placed.push_back(h);
  }
  return RepairTree::from_parents(root, parents);
}

// Solves A x = b by Gaussian elimination with the slow multiplier; nullopt when singular.
inline std::optional<std::vector<FieldElement>> solve(const Field& f,
                                                      std::vector<std::vector<FieldElement>> a,
                                                      std::vector<FieldElement> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].value == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    FieldElement inv = f.one();
    // inverse by exhaustive search keeps this independent of the log tables
    for (std::uint32_t v = 1; v < f.size(); ++v) {
      if (f.mul_slow(a[c][c], {v}) == f.one()) {
        inv = {v};
        break;
      }
    }
    for (auto& x : a[c]) x = f.mul_slow(x, inv);
    b[c] = f.mul_slow(b[c], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].value == 0) continue;
      const FieldElement factor = a[r][c];
      for (std::size_t j = 0; j < n; ++j) a[r][j] = f.add(a[r][j], f.mul_slow(factor, a[c][j]));
      b[r] = f.add(b[r], f.mul_slow(factor, b[c]));
    }
  }
  return b;
}

// Exact path-length sum: every helper's symbol crosses one edge per level of depth.
inline std::size_t depth_sum(const RepairTree& t) {
  std::size_t s = 0;
  for (Vertex v : t.non_root()) {
    std::size_t depth = 0;
    for (Vertex x = v; x != t.root(); x = t.parent(x)) ++depth;
    s += depth;
  }
  return s;
}

// |D*(v)| by walking parent pointers from every vertex.
inline std::size_t brute_subtree(const RepairTree& t, Vertex v) {
  std::size_t c = 0;
  for (Vertex u : t.vertices()) {
    for (Vertex x = u;; x = t.parent(x)) {
      if (x == v) {
        ++c;
        break;
      }
      if (x == t.root()) break;
    }
  }
  return c;
}

}  // namespace testsupport
