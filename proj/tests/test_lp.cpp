#include <doctest.h>

#include <sstream>

#include "graphrepair/cut_lp.hpp"
#include "graphrepair/errors.hpp"

using namespace graphrepair;

namespace {

std::vector<Vertex> range(Vertex a, Vertex b) {
  std::vector<Vertex> out;
  for (Vertex v = a; v <= b; ++v) out.push_back(v);
  return out;
}

std::vector<Rational> primal_from(const CutLP& lp, const std::vector<std::tuple<Vertex, Vertex, Rational>>& xs) {
  std::vector<Rational> x(lp.edges.size());
  for (const auto& [u, v, val] : xs) x[lp.edge_index(u, v)] = val;
  return x;
}

// Failed 0 sees 1, 2, 3; helpers 1..6 form a clique.
std::vector<Rational> clique_dual(const CutLP& lp) {
  std::vector<Rational> y(lp.subsets.size());
  for (Vertex a = 1; a <= 6; ++a) {
    for (Vertex b = a + 1; b <= 6; ++b) {
      const std::vector<Vertex> pair{a, b};
      y[lp.subset_index(lp.mask_of(pair))] = b <= 3 ? Rational(1, 8) : Rational(1, 4);
    }
  }
  return y;
}

}  // namespace

TEST_CASE("complete graph: value d beta with the indicator certificates") {
  for (std::size_t d : {3u, 4u, 6u}) {
    for (std::size_t k = 1; k <= d; ++k) {
      const CutLP lp = lp_bound(complete_graph(d + 1), 0, range(1, d), k, 1);
      REQUIRE(lp.status == LpStatus::Optimal);
      CHECK(lp.value == d);
      CHECK(lp_certificate_check(lp));
      std::vector<Rational> x(lp.edges.size()), y(lp.subsets.size());
      for (Vertex v = 1; v <= d; ++v) x[lp.edge_index(v, 0)] = 1;
      for (std::size_t j = 0; j < lp.subsets.size(); ++j)
        if (__builtin_popcount(lp.subsets[j]) == 1) y[j] = 1;
      CHECK(check_certificates(lp, x, y).ok());
    }
  }
  const CutLP scaled = lp_bound(complete_graph(7), 0, range(1, 6), 5, Rational(3, 2));
  CHECK(scaled.value == 9);
}

TEST_CASE("two-neighbor topology with d = k+1: value (d+1) beta and the closed-form certificates") {
  for (std::size_t k = 3; k <= 6; ++k) {
    const std::size_t d = k + 1;
    const Graph g = two_neighbor_graph(k);
    const CutLP lp = lp_bound(g, 0, range(1, d), k, 1);
    REQUIRE(lp.status == LpStatus::Optimal);
    CHECK(lp.value == d + 1);
    CHECK(lp_certificate_check(lp));

    std::vector<std::tuple<Vertex, Vertex, Rational>> xs{{1, 0, 2}, {2, 1, 1}};
    for (Vertex u = 3; u <= d; ++u) xs.emplace_back(u, 1, 1);
    const auto x = primal_from(lp, xs);
    std::vector<Rational> y(lp.subsets.size());
    const std::uint32_t excluded = lp.mask_of(std::vector<Vertex>{1, 2});
    for (std::size_t j = 0; j < lp.subsets.size(); ++j)
      if (__builtin_popcount(lp.subsets[j]) == 2 && lp.subsets[j] != excluded) y[j] = Rational(1, d - 2);
    const CertificateCheck c = check_certificates(lp, x, y);
    CHECK(c.ok());
    CHECK(c.primal_value == d + 1);
  }
}

TEST_CASE("three-neighbor example: 27/4 with hand-built certificates") {
  const Graph g = three_neighbor_graph();
  const CutLP lp = lp_bound(g, 0, range(1, 6), 5, 1);
  REQUIRE(lp.status == LpStatus::Optimal);
  CHECK(lp.value == Rational(27, 4));
  CHECK(lp_certificate_check(lp));
  CHECK(lp.edges.size() == 3 + 30);
  CHECK(lp.subsets.size() == 63);

  std::vector<std::tuple<Vertex, Vertex, Rational>> xs{{1, 0, 1}, {2, 0, 1}, {3, 0, 1}};
  xs.emplace_back(4, 5, Rational(1, 2));
  xs.emplace_back(5, 6, Rational(1, 2));
  xs.emplace_back(6, 4, Rational(1, 2));
  for (Vertex u = 4; u <= 6; ++u)
    for (Vertex v = 1; v <= 3; ++v) xs.emplace_back(u, v, Rational(1, 4));
  const auto x = primal_from(lp, xs);
  const auto y = clique_dual(lp);
  const CertificateCheck c = check_certificates(lp, x, y);
  CHECK(c.primal_feasible);
  CHECK(c.dual_feasible);
  CHECK(c.primal_value == Rational(27, 4));
  CHECK(c.dual_value == Rational(27, 4));

  // Both directions inside {4,5,6}: still feasible, but 33/4.
  auto both = xs;
  both.emplace_back(5, 4, Rational(1, 2));
  both.emplace_back(6, 5, Rational(1, 2));
  both.emplace_back(4, 6, Rational(1, 2));
  const auto x2 = primal_from(lp, both);
  CHECK(primal_feasible(lp, x2));
  CHECK(check_certificates(lp, x2, y).primal_value == Rational(33, 4));
  CHECK_FALSE(check_certificates(lp, x2, y).ok());

  auto perturbed = y;
  for (auto& v : perturbed)
    if (v != 0) {
      v *= 2;
      break;
    }
  CHECK_FALSE(dual_feasible(lp, perturbed));

  auto short_x = x;
  short_x[lp.edge_index(1, 0)] = Rational(1, 2);
  CHECK_FALSE(primal_feasible(lp, short_x));

  std::ostringstream out;
  write_lp_report(out, lp);
  CHECK(out.str().find("value 27/4") != std::string::npos);
  CHECK(out.str().find("certificates verified") != std::string::npos);
}

TEST_CASE("solution scales linearly in beta") {
  const Graph g = three_neighbor_graph();
  const CutLP lp = lp_bound(g, 0, range(1, 6), 5, Rational(4, 3));
  CHECK(lp.value == Rational(27, 4) * Rational(4, 3));
  CHECK(lp_certificate_check(lp));
}

TEST_CASE("rows are ordered by size then lexicographically") {
  const CutLP lp = lp_bound(complete_graph(5), 0, range(1, 4), 2, 1);
  REQUIRE(lp.subsets.size() == 15);
  for (std::size_t j = 1; j < lp.subsets.size(); ++j) {
    const int a = __builtin_popcount(lp.subsets[j - 1]), b = __builtin_popcount(lp.subsets[j]);
    CHECK(a <= b);
  }
  CHECK(lp.subsets[0] == 0b0001);
  CHECK(lp.subsets[4] == 0b0011);
  CHECK(lp.subsets[5] == 0b0101);
  CHECK(lp.subsets.back() == 0b1111);
  CHECK(lp.rhs[0] == 1);
  CHECK(lp.rhs.back() == 3);
}

TEST_CASE("helpers cut off from the failed vertex make the program infeasible") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  const CutLP lp = lp_bound(g, 0, std::vector<Vertex>{1, 2, 3}, 2, 1);
  CHECK(lp.status == LpStatus::Infeasible);
  CHECK_FALSE(lp_certificate_check(lp));
}

TEST_CASE("argument checks and the helper cap") {
  const Graph g = complete_graph(20);
  CHECK_THROWS_AS(lp_bound(g, 0, range(1, 17), 3, 1), SizeLimitExceeded);
  CHECK_THROWS_AS(lp_bound(g, 0, range(0, 3), 2, 1), ParameterError);
  CHECK_THROWS_AS(lp_bound(g, 0, range(1, 3), 4, 1), ParameterError);
  CHECK_THROWS_AS(lp_bound(g, 0, range(1, 3), 2, 0), ParameterError);
  CHECK_THROWS_AS(lp_bound(g, 0, std::vector<Vertex>{1, 1, 2}, 2, 1), ParameterError);
}
