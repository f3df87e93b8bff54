#include "graphrepair/cut_lp.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <set>
#include <stdexcept>

#include "graphrepair/errors.hpp"

namespace graphrepair {

bool CutLP::crosses(std::uint32_t subset, const DirectedEdge& e) const {
  auto in = [&](Vertex v) {
    auto it = std::lower_bound(helpers.begin(), helpers.end(), v);
    return it != helpers.end() && *it == v && ((subset >> (it - helpers.begin())) & 1u);
  };
  return in(e.from) && !in(e.to);
}

std::uint32_t CutLP::mask_of(std::span<const Vertex> subset) const {
  std::uint32_t mask = 0;
  for (Vertex v : subset) {
    auto it = std::lower_bound(helpers.begin(), helpers.end(), v);
    if (it == helpers.end() || *it != v) throw ParameterError("vertex " + std::to_string(v) + " is not a helper");
    mask |= 1u << (it - helpers.begin());
  }
  return mask;
}

std::size_t CutLP::edge_index(Vertex from, Vertex to) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i] == DirectedEdge{from, to}) return i;
  throw ParameterError("no directed edge " + std::to_string(from) + "->" + std::to_string(to));
}

std::size_t CutLP::subset_index(std::uint32_t mask) const {
  auto it = std::find(subsets.begin(), subsets.end(), mask);
  if (it == subsets.end()) throw ParameterError("subset not indexed");
  return static_cast<std::size_t>(it - subsets.begin());
}

namespace {

// Nonempty subsets of [0, d) ordered by size, then lexicographically by sorted members.
std::vector<std::uint32_t> ordered_subsets(std::size_t d) {
  std::vector<std::uint32_t> out;
  for (std::size_t size = 1; size <= d; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::uint32_t mask = 0;
      for (std::size_t i : idx) mask |= 1u << i;
      out.push_back(mask);
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == d - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

void solve(CutLP& lp) {
  const std::size_t m = lp.edges.size();
  const std::size_t cols = lp.subsets.size();
  // Column of Y_S as the list of edges leaving S.
  std::vector<std::vector<std::size_t>> leaving(cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t e = 0; e < m; ++e)
      if (lp.crosses(lp.subsets[j], lp.edges[e])) leaving[j].push_back(e);

  // Variables 0..cols-1 are Y, cols..cols+m-1 are slacks.
  std::vector<std::size_t> basic(m);
  std::vector<char> is_basic(cols + m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    basic[i] = cols + i;
    is_basic[cols + i] = 1;
  }
  std::vector<std::vector<Rational>> binv(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) binv[i][i] = 1;
  std::vector<Rational> xb(m, Rational(1));
  auto cost = [&](std::size_t var) { return var < cols ? lp.rhs[var] : Rational(0); };

  std::vector<Rational> pi(m);
  while (true) {
    for (std::size_t e = 0; e < m; ++e) {
      pi[e] = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (binv[i][e] != 0 && cost(basic[i]) != 0) pi[e] += cost(basic[i]) * binv[i][e];
    }
    std::size_t enter = cols + m;
    for (std::size_t j = 0; j < cols + m && enter == cols + m; ++j) {
      if (is_basic[j]) continue;
      Rational reduced = cost(j);
      if (j < cols) {
        for (std::size_t e : leaving[j]) reduced -= pi[e];
      } else {
        reduced -= pi[j - cols];
      }
      if (reduced > 0) enter = j;
    }
    if (enter == cols + m) break;

    std::vector<Rational> u(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (enter < cols) {
        for (std::size_t e : leaving[enter]) u[i] += binv[i][e];
      } else {
        u[i] = binv[i][enter - cols];
      }
    }
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (u[i] <= 0) continue;
      const Rational ratio = xb[i] / u[i];
      if (leave == m || ratio < best || (ratio == best && basic[i] < basic[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) {
      lp.status = LpStatus::Infeasible;
      return;
    }
    const Rational piv = u[leave];
    for (auto& x : binv[leave]) x /= piv;
    xb[leave] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || u[i] == 0) continue;
      const Rational factor = u[i];
      for (std::size_t c = 0; c < m; ++c)
        if (binv[leave][c] != 0) binv[i][c] -= factor * binv[leave][c];
      xb[i] -= factor * xb[leave];
    }
    is_basic[basic[leave]] = 0;
    basic[leave] = enter;
    is_basic[enter] = 1;
  }

  lp.status = LpStatus::Optimal;
  lp.dual.assign(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basic[i] < cols) lp.dual[basic[i]] = xb[i];
  lp.primal = pi;
  lp.value = 0;
  for (std::size_t j = 0; j < cols; ++j) lp.value += lp.rhs[j] * lp.dual[j];
}

}  // namespace

CutLP lp_bound(const Graph& g, Vertex failed, std::span<const Vertex> helpers, std::size_t k,
               const Rational& beta) {
  if (helpers.size() > CutLP::kMaxHelpers) {
    throw SizeLimitExceeded("cut LP materializes 2^d - 1 rows; d=" + std::to_string(helpers.size()) +
                            " exceeds the cap of 16");
  }
  if (failed >= g.vertex_count()) throw ParameterError("failed vertex out of range");
  CutLP lp;
  lp.failed = failed;
  lp.k = k;
  lp.beta = beta;
  lp.helpers.assign(helpers.begin(), helpers.end());
  std::sort(lp.helpers.begin(), lp.helpers.end());
  if (std::adjacent_find(lp.helpers.begin(), lp.helpers.end()) != lp.helpers.end())
    throw ParameterError("duplicate helper");
  for (Vertex v : lp.helpers) {
    if (v >= g.vertex_count()) throw ParameterError("helper out of range");
    if (v == failed) throw ParameterError("failed vertex listed as helper");
  }
  const std::size_t d = lp.helpers.size();
  if (d == 0 || k < 1 || k > d) throw ParameterError("need 1 <= k <= d");
  if (beta <= 0) throw ParameterError("beta must be positive");

  const std::set<Vertex> hs(lp.helpers.begin(), lp.helpers.end());
  for (Vertex u : lp.helpers)
    for (Vertex v : g.neighbors(u))
      if (hs.count(v) || v == failed) lp.edges.push_back({u, v});
  std::sort(lp.edges.begin(), lp.edges.end(), [](const DirectedEdge& a, const DirectedEdge& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });

  lp.subsets = ordered_subsets(d);
  for (std::uint32_t s : lp.subsets) {
    const std::size_t size = static_cast<std::size_t>(std::popcount(s));
    lp.rhs.push_back(beta * static_cast<long long>(std::min(d - k + 1, size)));
  }
  solve(lp);
  return lp;
}

bool primal_feasible(const CutLP& lp, std::span<const Rational> primal) {
  if (primal.size() != lp.edges.size()) return false;
  if (std::any_of(primal.begin(), primal.end(), [](const Rational& x) { return x < 0; })) return false;
  for (std::size_t j = 0; j < lp.subsets.size(); ++j) {
    Rational flow = 0;
    for (std::size_t e = 0; e < lp.edges.size(); ++e)
      if (lp.crosses(lp.subsets[j], lp.edges[e])) flow += primal[e];
    if (flow < lp.rhs[j]) return false;
  }
  return true;
}

bool dual_feasible(const CutLP& lp, std::span<const Rational> dual) {
  if (dual.size() != lp.subsets.size()) return false;
  if (std::any_of(dual.begin(), dual.end(), [](const Rational& y) { return y < 0; })) return false;
  for (const auto& e : lp.edges) {
    Rational load = 0;
    for (std::size_t j = 0; j < lp.subsets.size(); ++j)
      if (dual[j] != 0 && lp.crosses(lp.subsets[j], e)) load += dual[j];
    if (load > 1) return false;
  }
  return true;
}

CertificateCheck check_certificates(const CutLP& lp, std::span<const Rational> primal,
                                    std::span<const Rational> dual) {
  CertificateCheck out;
  out.primal_feasible = primal_feasible(lp, primal);
  out.dual_feasible = dual_feasible(lp, dual);
  for (const auto& x : primal) out.primal_value += x;
  if (dual.size() == lp.rhs.size())
    for (std::size_t j = 0; j < dual.size(); ++j) out.dual_value += lp.rhs[j] * dual[j];
  return out;
}

bool lp_certificate_check(const CutLP& lp) {
  if (lp.status != LpStatus::Optimal) return false;
  const auto c = check_certificates(lp, lp.primal, lp.dual);
  return c.ok() && c.primal_value == lp.value;
}

void write_lp_report(std::ostream& out, const CutLP& lp) {
  out << "status " << (lp.status == LpStatus::Optimal ? "optimal" : "infeasible") << '\n';
  out << "failed " << lp.failed << '\n';
  out << "helpers";
  for (Vertex v : lp.helpers) out << ' ' << v;
  out << '\n';
  out << "beta " << to_string(lp.beta) << '\n';
  out << "edges " << lp.edges.size() << '\n';
  out << "rows " << lp.subsets.size() << '\n';
  if (lp.status != LpStatus::Optimal) return;
  out << "value " << to_string(lp.value) << '\n';
  out << "primal (nonzero X_(u,v))\n";
  for (std::size_t e = 0; e < lp.edges.size(); ++e)
    if (lp.primal[e] != 0)
      out << "  " << lp.edges[e].from << ' ' << lp.edges[e].to << ' ' << to_string(lp.primal[e]) << '\n';
  out << "dual (nonzero Y_S)\n";
  for (std::size_t j = 0; j < lp.subsets.size(); ++j) {
    if (lp.dual[j] == 0) continue;
    out << "  {";
    bool first = true;
    for (std::size_t i = 0; i < lp.helpers.size(); ++i) {
      if (!((lp.subsets[j] >> i) & 1u)) continue;
      out << (first ? "" : ",") << lp.helpers[i];
      first = false;
    }
    out << "} " << to_string(lp.dual[j]) << '\n';
  }
  out << "certificates " << (lp_certificate_check(lp) ? "verified" : "FAILED") << '\n';
}

}  // namespace graphrepair
