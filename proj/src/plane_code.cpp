#include "graphrepair/plane_code.hpp"

#include <algorithm>
#include <numeric>

#include "graphrepair/errors.hpp"

namespace graphrepair {

std::vector<FieldElement> sample_plane(const Field& f, std::span<const FieldElement> points,
                                       std::size_t checks, Rng& rng) {
  const std::size_t n = points.size();
  if (checks > n) throw ParameterError("more parity checks than coordinates");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<std::size_t> free_idx(order.begin(), order.begin() + (n - checks));
  std::vector<std::size_t> dep_idx(order.begin() + (n - checks), order.end());
  std::sort(free_idx.begin(), free_idx.end());
  std::sort(dep_idx.begin(), dep_idx.end());

  std::vector<FieldElement> values(n);
  std::vector<FieldElement> free_vals, free_pts, dep_pts;
  for (std::size_t i : free_idx) {
    values[i] = {static_cast<std::uint32_t>(rng.next() & (f.size() - 1))};
    free_vals.push_back(values[i]);
    free_pts.push_back(points[i]);
  }
  if (dep_idx.empty()) return values;
  for (std::size_t i : dep_idx) dep_pts.push_back(points[i]);
  if (free_idx.empty()) return values;  // only the zero plane satisfies full checks
  const Matrix u = erasure_matrix(f, free_pts, dep_pts, checks);
  const auto dep_vals = multiply(f, free_vals, u);
  for (std::size_t j = 0; j < dep_idx.size(); ++j) values[dep_idx[j]] = dep_vals[j];
  return values;
}

bool plane_satisfies(const Field& f, std::span<const FieldElement> points, std::size_t checks,
                     std::span<const FieldElement> values) {
  if (points.size() != values.size()) throw DimensionMismatch("plane length");
  std::vector<FieldElement> powers(points.size(), f.one());
  for (std::size_t t = 0; t < checks; ++t) {
    FieldElement acc = f.zero();
    for (std::size_t i = 0; i < points.size(); ++i) {
      acc = f.add(acc, f.mul(powers[i], values[i]));
      powers[i] = f.mul(powers[i], points[i]);
    }
    if (acc.value != 0) return false;
  }
  return true;
}

Matrix erasure_matrix(const Field& f, std::span<const FieldElement> known_points,
                      std::span<const FieldElement> unknown_points, std::size_t checks) {
  if (unknown_points.size() != checks) {
    throw DimensionMismatch("erasure_matrix needs exactly one unknown per check");
  }
  // V_unk x_unk = -V_known x_known; characteristic 2 drops the sign.
  const Matrix v_known = vandermonde(f, known_points, checks);
  const Matrix v_unknown = vandermonde(f, unknown_points, checks);
  return multiply(f, v_known.transpose(), inverse(f, v_unknown.transpose()));
}

}  // namespace graphrepair
