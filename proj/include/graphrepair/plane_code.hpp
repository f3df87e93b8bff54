#pragma once

// Single-plane generalized Reed-Solomon constraints shared by the parity-check
// defined array codes: values c_0..c_{n-1} with sum_i points[i]^t * c_i = 0 for
// t = 0..checks-1.

#include <span>
#include <vector>

#include "graphrepair/galois.hpp"
#include "graphrepair/random.hpp"

namespace graphrepair {

// Random plane: n - checks uniformly chosen free coordinates, the rest solved for.
std::vector<FieldElement> sample_plane(const Field& f, std::span<const FieldElement> points,
                                       std::size_t checks, Rng& rng);

bool plane_satisfies(const Field& f, std::span<const FieldElement> points, std::size_t checks,
                     std::span<const FieldElement> values);

// Matrix U (|known| x |unknown|) with unknown = known * U for a plane whose
// coordinates at `known_points` / `unknown_points` jointly satisfy the checks.
// Requires |unknown_points| == checks.
Matrix erasure_matrix(const Field& f, std::span<const FieldElement> known_points,
                      std::span<const FieldElement> unknown_points, std::size_t checks);

}  // namespace graphrepair
