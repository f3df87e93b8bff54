#pragma once

// Diagonal-matrix MSR codes: d = n - 1, r = n - k, l = r^n.
//
// Symbols c_{i,a} (node i, plane a in [0, l)) satisfy
//   sum_i lambda_{i, a_i}^t c_{i,a} = 0,  t = 0..r-1,
// where a_i is the i-th r-ary digit of a (node 0 is the least significant digit).
// Repair of node i proceeds by groups of r planes a(i,0..r-1) that differ only in
// digit i; each helper j sends the single trace mu_j = sum_u c_{j, a(i,u)} per group.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "graphrepair/codes_pm.hpp"
#include "graphrepair/galois.hpp"
#include "graphrepair/random.hpp"

namespace graphrepair {

class DmCode;

struct DmCodeword {
  // symbols[i][a]
  std::vector<Column> symbols;
};

class DmCode {
 public:
  static constexpr std::size_t kMaxN = 8;

  // lambda_{i,j} = alpha^(i*r + j).
  DmCode(Field f, std::size_t n, std::size_t k);

  const Field& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t r() const { return n_ - k_; }
  std::size_t d() const { return n_ - 1; }
  std::size_t l() const { return l_; }
  FieldElement lambda(std::size_t node, std::size_t digit) const {
    return lambda_.at(node * r() + digit);
  }

  std::size_t digit(std::size_t plane, std::size_t node) const;
  // Plane with digit `node` replaced by u.
  std::size_t with_digit(std::size_t plane, std::size_t node, std::size_t u) const;
  // Planes with digit `node` equal to 0, ascending; one per repair group.
  std::vector<std::size_t> canonical_planes(std::size_t node) const;

  DmCodeword sample(std::uint64_t seed) const;
  DmCodeword zero_word() const;
  bool check(const DmCodeword& word) const;

  FieldElement helper_trace(const DmCodeword& word, Vertex helper, Vertex failed,
                            std::size_t plane) const;

  // (n-1) x r matrix U = -V1^T (V2^T)^{-1}; row j pairs with the j-th helper in
  // ascending order of the nodes other than `failed`.
  Matrix repair_matrix(Vertex failed, std::size_t plane) const;

  // Erased symbols (c_{i,a(i,0)}, ..., c_{i,a(i,r-1)}) from all n-1 helper traces.
  std::vector<FieldElement> repair_group(Vertex failed, std::size_t plane,
                                         const std::map<Vertex, FieldElement>& traces) const;

 private:
  void check_canonical(Vertex failed, std::size_t plane) const;

  Field field_;
  std::size_t n_;
  std::size_t k_;
  std::size_t l_;
  std::vector<FieldElement> lambda_;
};

}  // namespace graphrepair
