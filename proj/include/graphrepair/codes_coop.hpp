#pragma once

// Cooperative-repair array codes.
//
// CoopCode: [n, k, d = k+1, l = 3 * 2^n] code repairing the two failed nodes {0, 1}.
// Symbols c_{i,b,a} (b in {0,1,2}, a in [0, 2^n)) satisfy, for every (b, a),
//   sum_i lambda_{i, a_i}^t c_{i,b,a} = 0,  t = 0..n-k-1,
// with a_i the i-th bit of a. Repair runs in two steps: every helper sends one
// two-term sum per plane to each failed node (step 1), and the failed nodes swap one
// cross-sum per plane (step 2).
//
// TwoNeighborCode: [n, k, d = k+1, l = 2^n] code, same parity structure with one
// symbol per plane, repaired on the two-neighbor graph where node 0 failed, nodes 1
// and 2 are its only neighbors and nodes 3..k+1 are the far helpers.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "graphrepair/codes_pm.hpp"
#include "graphrepair/galois.hpp"
#include "graphrepair/graphs.hpp"
#include "graphrepair/transcript.hpp"

namespace graphrepair {

struct CoopCodeword {
  // symbols[i][b * 2^n + a]
  std::vector<Column> symbols;
};

// Node 0 recovers (c_{0,0,a}, c_{0,1,a^1}, c_{1,0,a} + c_{1,1,a^1}) per plane;
// node 1 recovers (c_{1,0,a}, c_{1,2,a^2}, c_{0,0,a} + c_{0,2,a^2}).
using CoopTriple = std::array<FieldElement, 3>;

struct CoopStep1State {
  // recovered[target][a]
  std::array<std::vector<std::optional<CoopTriple>>, 2> recovered;
};

struct CoopExchange {
  Column node0;
  Column node1;
  std::size_t exchanged_symbols = 0;
};

class CoopCode {
 public:
  static constexpr std::size_t kMaxN = 10;

  // lambda_{i,j} = alpha^(2i + j).
  CoopCode(Field f, std::size_t n, std::size_t k);

  const Field& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t d() const { return k_ + 1; }
  std::size_t h() const { return 2; }
  std::size_t planes() const { return std::size_t{1} << n_; }
  std::size_t l() const { return 3 * planes(); }
  std::size_t checks() const { return n_ - k_; }
  FieldElement lambda(std::size_t node, std::size_t bit) const { return lambda_.at(2 * node + bit); }
  std::size_t bit(std::size_t plane, std::size_t node) const { return (plane >> node) & 1u; }
  std::size_t index(std::size_t b, std::size_t plane) const { return b * planes() + plane; }

  CoopCodeword sample(std::uint64_t seed) const;
  CoopCodeword zero_word() const;
  bool check(const CoopCodeword& word) const;

  // Helper i's step-1 sum for target 0 or 1 at plane a.
  FieldElement step1_message(const CoopCodeword& word, Vertex helper, std::size_t target,
                             std::size_t plane) const;
  // (d x 3) interpolation matrix: triple = sum_j message_j * row_j, rows in `helpers` order.
  Matrix step1_matrix(std::size_t target, std::size_t plane,
                      std::span<const Vertex> helpers) const;
  CoopTriple step1_recover(std::size_t target, std::size_t plane,
                           const std::map<Vertex, FieldElement>& messages) const;
  CoopExchange step2_exchange(const CoopStep1State& state) const;

  // Default helper set {2, ..., k+2}.
  std::vector<Vertex> default_helpers() const;

 private:
  void check_target(std::size_t target) const;

  Field field_;
  std::size_t n_;
  std::size_t k_;
  std::vector<FieldElement> lambda_;
};

struct TwoNeighborRepair {
  Column recovered;
  Transcript transcript;
};

class TwoNeighborCode {
 public:
  static constexpr std::size_t kMaxN = 16;

  TwoNeighborCode(Field f, std::size_t n, std::size_t k);

  const Field& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t d() const { return k_ + 1; }
  std::size_t l() const { return std::size_t{1} << n_; }
  std::size_t beta() const { return l() / 2; }
  std::size_t checks() const { return n_ - k_; }
  FieldElement lambda(std::size_t node, std::size_t bit) const { return lambda_.at(2 * node + bit); }

  // symbols[i][a]
  std::vector<Column> sample(std::uint64_t seed) const;
  bool check(const std::vector<Column>& word) const;

  // Repairs node 0 on `g`, which must contain the two-neighbor topology on 0..k+1.
  TwoNeighborRepair repair(const std::vector<Column>& word, const Graph& g) const;

 private:
  Field field_;
  std::size_t n_;
  std::size_t k_;
  std::vector<FieldElement> lambda_;
};

}  // namespace graphrepair
