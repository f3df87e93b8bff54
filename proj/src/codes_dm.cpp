#include "graphrepair/codes_dm.hpp"

#include <set>
#include <string>

#include "graphrepair/errors.hpp"
#include "graphrepair/plane_code.hpp"

namespace graphrepair {

DmCode::DmCode(Field f, std::size_t n, std::size_t k) : field_(std::move(f)), n_(n), k_(k) {
  if (k_ < 1 || k_ >= n_) throw ParameterError("DM codes need 1 <= k < n");
  if (n_ > kMaxN) throw ParameterError("DM codes are capped at n <= 8 (l = r^n)");
  if (r() * n_ >= field_.size()) throw ParameterError("field too small for r*n distinct lambdas");
  l_ = 1;
  for (std::size_t i = 0; i < n_; ++i) l_ *= r();
  std::set<std::uint32_t> seen;
  for (std::size_t e = 0; e < r() * n_; ++e) {
    lambda_.push_back(field_.alpha_pow(e));
    if (!seen.insert(lambda_.back().value).second) throw ParameterError("lambdas not distinct");
  }
}

std::size_t DmCode::digit(std::size_t plane, std::size_t node) const {
  for (std::size_t i = 0; i < node; ++i) plane /= r();
  return plane % r();
}

std::size_t DmCode::with_digit(std::size_t plane, std::size_t node, std::size_t u) const {
  std::size_t weight = 1;
  for (std::size_t i = 0; i < node; ++i) weight *= r();
  return plane - digit(plane, node) * weight + u * weight;
}

std::vector<std::size_t> DmCode::canonical_planes(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < l_; ++a)
    if (digit(a, node) == 0) out.push_back(a);
  return out;
}

DmCodeword DmCode::zero_word() const {
  return {std::vector<Column>(n_, Column(l_))};
}

DmCodeword DmCode::sample(std::uint64_t seed) const {
  Rng rng(seed);
  DmCodeword word = zero_word();
  std::vector<FieldElement> points(n_);
  for (std::size_t a = 0; a < l_; ++a) {
    for (std::size_t i = 0; i < n_; ++i) points[i] = lambda(i, digit(a, i));
    const auto plane = sample_plane(field_, points, r(), rng);
    for (std::size_t i = 0; i < n_; ++i) word.symbols[i][a] = plane[i];
  }
  return word;
}

bool DmCode::check(const DmCodeword& word) const {
  if (word.symbols.size() != n_) return false;
  std::vector<FieldElement> points(n_), values(n_);
  for (std::size_t a = 0; a < l_; ++a) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (word.symbols[i].size() != l_) return false;
      points[i] = lambda(i, digit(a, i));
      values[i] = word.symbols[i][a];
    }
    if (!plane_satisfies(field_, points, r(), values)) return false;
  }
  return true;
}

void DmCode::check_canonical(Vertex failed, std::size_t plane) const {
  if (failed >= n_) throw ParameterError("failed node out of range");
  if (plane >= l_) throw ParameterError("plane index out of range");
  if (digit(plane, failed) != 0) {
    throw ParameterError("plane " + std::to_string(plane) + " is not canonical for node " +
                         std::to_string(failed));
  }
}

FieldElement DmCode::helper_trace(const DmCodeword& word, Vertex helper, Vertex failed,
                                  std::size_t plane) const {
  check_canonical(failed, plane);
  if (helper >= n_ || helper == failed) throw ParameterError("invalid helper index");
  FieldElement mu = field_.zero();
  for (std::size_t u = 0; u < r(); ++u)
    mu = field_.add(mu, word.symbols[helper][with_digit(plane, failed, u)]);
  return mu;
}

Matrix DmCode::repair_matrix(Vertex failed, std::size_t plane) const {
  check_canonical(failed, plane);
  // Digits of the helpers are constant across the group, so V1 is the same for all u.
  std::vector<FieldElement> helper_points, own_points;
  for (std::size_t j = 0; j < n_; ++j)
    if (j != failed) helper_points.push_back(lambda(j, digit(plane, j)));
  for (std::size_t u = 0; u < r(); ++u) own_points.push_back(lambda(failed, u));
  const Matrix v1 = vandermonde(field_, helper_points, r());
  const Matrix v2 = vandermonde(field_, own_points, r());
  // Negation is the identity in characteristic 2.
  return multiply(field_, v1.transpose(), inverse(field_, v2.transpose()));
}

std::vector<FieldElement> DmCode::repair_group(Vertex failed, std::size_t plane,
                                               const std::map<Vertex, FieldElement>& traces) const {
  check_canonical(failed, plane);
  std::vector<FieldElement> mu;
  for (std::size_t j = 0; j < n_; ++j) {
    if (j == failed) continue;
    auto it = traces.find(j);
    if (it == traces.end()) throw ParameterError("missing trace from helper " + std::to_string(j));
    mu.push_back(it->second);
  }
  return multiply(field_, mu, repair_matrix(failed, plane));
}

}  // namespace graphrepair
