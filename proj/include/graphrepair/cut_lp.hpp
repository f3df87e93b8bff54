#pragma once

// Cut linear program for repair on a general (non-tree) repair graph.
//
// Variables X_(u,v) >= 0 on directed edges: both directions of every edge between two
// helpers, plus (u, v_f) for helpers adjacent to the failed vertex. For every nonempty
// helper subset S the outflow across (S, complement) must be at least
// b_S = beta * min(d - k + 1, |S|). The minimum of sum X is a lower bound on the repair
// communication. The solver works on the dual, max b^T Y s.t. M^T Y <= 1, Y >= 0, by
// revised simplex with Bland's rule in exact rationals, and reads the primal optimum
// off the final simplex multipliers.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "graphrepair/bounds.hpp"
#include "graphrepair/graphs.hpp"

namespace graphrepair {

struct DirectedEdge {
  Vertex from;
  Vertex to;
  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

enum class LpStatus { Optimal, Infeasible };

struct CutLP {
  static constexpr std::size_t kMaxHelpers = 16;

  Vertex failed = 0;
  std::size_t k = 0;
  Rational beta;
  std::vector<Vertex> helpers;      // ascending; bit i of a subset mask is helpers[i]
  std::vector<DirectedEdge> edges;  // sorted by (from, to)
  std::vector<std::uint32_t> subsets;  // by size, then lexicographic
  std::vector<Rational> rhs;

  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> primal;  // per edge
  std::vector<Rational> dual;    // per subset
  Rational value;

  std::size_t d() const { return helpers.size(); }
  // True iff edge e leaves the subset.
  bool crosses(std::uint32_t subset, const DirectedEdge& e) const;
  std::uint32_t mask_of(std::span<const Vertex> subset) const;
  std::size_t edge_index(Vertex from, Vertex to) const;  // throws if absent
  std::size_t subset_index(std::uint32_t mask) const;
};

// Builds and solves the program. Throws SizeLimitExceeded when d > 16.
CutLP lp_bound(const Graph& g, Vertex failed, std::span<const Vertex> helpers, std::size_t k,
               const Rational& beta);

struct CertificateCheck {
  bool primal_feasible = false;
  bool dual_feasible = false;
  Rational primal_value;
  Rational dual_value;
  bool ok() const { return primal_feasible && dual_feasible && primal_value == dual_value; }
};

CertificateCheck check_certificates(const CutLP& lp, std::span<const Rational> primal,
                                    std::span<const Rational> dual);
bool primal_feasible(const CutLP& lp, std::span<const Rational> primal);
bool dual_feasible(const CutLP& lp, std::span<const Rational> dual);

// MX >= b, X >= 0, M^T Y <= 1, Y >= 0 and 1^T X = b^T Y for the solved pair.
bool lp_certificate_check(const CutLP& lp);

// Text report; rationals as p/q.
void write_lp_report(std::ostream& out, const CutLP& lp);

}  // namespace graphrepair
