#pragma once

// Product-matrix MSR codes with d = 2k - 2, l = k - 1.
//
// Node i stores C_i = phi_i S1 + lambda_i phi_i S2 where phi_i = (1, x_i, ..., x_i^{l-1}),
// lambda_i = x_i^l and S1, S2 are symmetric l x l. A helper i repairing node f sends the
// single symbol C_i . phi_f^T; the failed column is then sum_i y_i U_i for a
// codeword-independent d x l matrix U.

#include <cstddef>
#include <span>
#include <vector>

#include "graphrepair/galois.hpp"
#include "graphrepair/random.hpp"

namespace graphrepair {

using Column = std::vector<FieldElement>;
using Vertex = std::size_t;

struct PmMessage {
  Matrix s1;
  Matrix s2;

  // Free symbols laid out row-major over the upper triangle of S1, then of S2.
  static PmMessage from_symbols(std::size_t l, std::span<const FieldElement> symbols);
  std::vector<FieldElement> to_symbols() const;
  static PmMessage random(const Field& f, std::size_t l, Rng& rng);
};

struct PmCodeword {
  std::vector<Column> columns;
};

class PmCode {
 public:
  // Evaluation points x_i = alpha^i.
  PmCode(Field f, std::size_t n, std::size_t k);
  PmCode(Field f, std::size_t k, std::vector<FieldElement> points);

  const Field& field() const { return field_; }
  std::size_t n() const { return x_.size(); }
  std::size_t k() const { return k_; }
  std::size_t d() const { return 2 * k_ - 2; }
  std::size_t l() const { return k_ - 1; }
  std::size_t message_symbols() const { return k_ * (k_ - 1); }

  FieldElement x(std::size_t i) const { return x_.at(i); }
  FieldElement lambda(std::size_t i) const { return lambda_.at(i); }
  std::vector<FieldElement> phi(std::size_t i) const;

  PmCodeword encode(const PmMessage& msg) const;
  FieldElement helper_symbol(const PmCodeword& word, Vertex helper, Vertex failed) const;

  // d x l matrix U = (Psi_D^T)^{-1} [I_l; lambda_f I_l]; row j pairs with helpers[j].
  Matrix repair_matrix(std::span<const Vertex> helpers, Vertex failed) const;

  // True iff every k-subset of nodes determines the message. Requires n <= 12.
  bool mds_check() const;

 private:
  void check_index(Vertex v) const;

  Field field_;
  std::size_t k_;
  std::vector<FieldElement> x_;
  std::vector<FieldElement> lambda_;
};

}  // namespace graphrepair
