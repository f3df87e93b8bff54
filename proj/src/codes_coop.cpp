#include "graphrepair/codes_coop.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "graphrepair/errors.hpp"
#include "graphrepair/plane_code.hpp"

namespace graphrepair {

namespace {

std::vector<FieldElement> lambda_table(const Field& f, std::size_t n) {
  std::vector<FieldElement> out;
  std::set<std::uint32_t> seen;
  for (std::size_t e = 0; e < 2 * n; ++e) {
    out.push_back(f.alpha_pow(e));
    if (!seen.insert(out.back().value).second) throw ParameterError("lambdas not distinct");
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// CoopCode

CoopCode::CoopCode(Field f, std::size_t n, std::size_t k) : field_(std::move(f)), n_(n), k_(k) {
  if (k_ < 1) throw ParameterError("cooperative code needs k >= 1");
  if (n_ < k_ + 3) throw ParameterError("cooperative code needs n >= k+3 (d = k+1 helpers besides the two failed)");
  if (n_ > kMaxN) throw ParameterError("cooperative code capped at n <= 10 (l = 3*2^n)");
  if (2 * n_ >= field_.size()) throw ParameterError("field too small");
  lambda_ = lambda_table(field_, n_);
}

CoopCodeword CoopCode::zero_word() const { return {std::vector<Column>(n_, Column(l()))}; }

CoopCodeword CoopCode::sample(std::uint64_t seed) const {
  Rng rng(seed);
  CoopCodeword word = zero_word();
  std::vector<FieldElement> points(n_);
  for (std::size_t b = 0; b < 3; ++b) {
    for (std::size_t a = 0; a < planes(); ++a) {
      for (std::size_t i = 0; i < n_; ++i) points[i] = lambda(i, bit(a, i));
      const auto plane = sample_plane(field_, points, checks(), rng);
      for (std::size_t i = 0; i < n_; ++i) word.symbols[i][index(b, a)] = plane[i];
    }
  }
  return word;
}

bool CoopCode::check(const CoopCodeword& word) const {
  if (word.symbols.size() != n_) return false;
  std::vector<FieldElement> points(n_), values(n_);
  for (std::size_t b = 0; b < 3; ++b) {
    for (std::size_t a = 0; a < planes(); ++a) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (word.symbols[i].size() != l()) return false;
        points[i] = lambda(i, bit(a, i));
        values[i] = word.symbols[i][index(b, a)];
      }
      if (!plane_satisfies(field_, points, checks(), values)) return false;
    }
  }
  return true;
}

void CoopCode::check_target(std::size_t target) const {
  if (target > 1) throw ParameterError("target must be failed node 0 or 1");
}

std::vector<Vertex> CoopCode::default_helpers() const {
  std::vector<Vertex> out;
  for (Vertex v = 2; v < 2 + d(); ++v) out.push_back(v);
  return out;
}

FieldElement CoopCode::step1_message(const CoopCodeword& word, Vertex helper, std::size_t target,
                                     std::size_t plane) const {
  check_target(target);
  if (helper < 2 || helper >= n_) throw ParameterError("helper must be one of nodes 2..n-1");
  if (plane >= planes()) throw ParameterError("plane out of range");
  const Column& c = word.symbols[helper];
  if (target == 0) return field_.add(c[index(0, plane)], c[index(1, plane ^ 1u)]);
  return field_.add(c[index(0, plane)], c[index(2, plane ^ 2u)]);
}

Matrix CoopCode::step1_matrix(std::size_t target, std::size_t plane,
                              std::span<const Vertex> helpers) const {
  check_target(target);
  if (plane >= planes()) throw ParameterError("plane out of range");
  if (helpers.size() != d()) throw ParameterError("step 1 needs exactly d = k+1 helpers");
  std::set<Vertex> hs(helpers.begin(), helpers.end());
  if (hs.size() != helpers.size() || *hs.begin() < 2 || *hs.rbegin() >= n_) {
    throw ParameterError("helpers must be distinct nodes among 2..n-1");
  }
  const Vertex self = target;
  const Vertex other = 1 - target;
  std::vector<FieldElement> known, unknown{lambda(self, bit(plane, self)),
                                           lambda(self, bit(plane, self) ^ 1u),
                                           lambda(other, bit(plane, other))};
  for (Vertex v : helpers) known.push_back(lambda(v, bit(plane, v)));
  for (Vertex v = 2; v < n_; ++v)
    if (!hs.count(v)) unknown.push_back(lambda(v, bit(plane, v)));
  const Matrix full = erasure_matrix(field_, known, unknown, checks());
  const std::size_t first3[] = {0, 1, 2};
  return full.select_cols(first3);
}

CoopTriple CoopCode::step1_recover(std::size_t target, std::size_t plane,
                                   const std::map<Vertex, FieldElement>& messages) const {
  if (messages.size() < d()) {
    throw ParameterError("step 1 needs messages from d=" + std::to_string(d()) + " helpers, got " +
                         std::to_string(messages.size()));
  }
  std::vector<Vertex> helpers;
  std::vector<FieldElement> values;
  for (auto [v, m] : messages) {
    if (helpers.size() == d()) break;
    helpers.push_back(v);
    values.push_back(m);
  }
  const auto out = multiply(field_, values, step1_matrix(target, plane, helpers));
  return {out[0], out[1], out[2]};
}

CoopExchange CoopCode::step2_exchange(const CoopStep1State& state) const {
  for (const auto& per_target : state.recovered) {
    if (per_target.size() != planes() ||
        std::any_of(per_target.begin(), per_target.end(), [](const auto& t) { return !t; })) {
      throw std::logic_error("step 1 incomplete: every plane needs a recovered triple");
    }
  }
  CoopExchange out{Column(l()), Column(l()), 0};
  for (std::size_t a = 0; a < planes(); ++a) {
    const CoopTriple& t0 = *state.recovered[0][a];
    const CoopTriple& t1 = *state.recovered[1][a];
    // Node 0 knows c_{0,0,a}, c_{0,1,a^1}; receives c_{0,0,a} + c_{0,2,a^2} from node 1.
    out.node0[index(0, a)] = t0[0];
    out.node0[index(1, a ^ 1u)] = t0[1];
    out.node0[index(2, a ^ 2u)] = field_.add(t1[2], t0[0]);
    // Node 1 knows c_{1,0,a}, c_{1,2,a^2}; receives c_{1,0,a} + c_{1,1,a^1} from node 0.
    out.node1[index(0, a)] = t1[0];
    out.node1[index(2, a ^ 2u)] = t1[1];
    out.node1[index(1, a ^ 1u)] = field_.add(t0[2], t1[0]);
    out.exchanged_symbols += 2;
  }
  return out;
}

// ---------------------------------------------------------------------------
// TwoNeighborCode

namespace {

// Low three bits of a plane index: bit 0 = node 0, bit 1 = node 1, bit 2 = node 2.
constexpr std::size_t tri(unsigned a1, unsigned a2, unsigned a3) { return a1 | (a2 << 1) | (a3 << 2); }

struct TraceSet {
  Vertex relay;                      // Gamma_1 node that decodes with this set
  std::array<std::size_t, 3> tails;  // low-bit patterns summed by each helper
};

// Each Gamma_1 node decodes two sets; node 0 then solves its 8 symbols from the 8 results.
const std::array<TraceSet, 4> kTraceSets{{
    {1, {tri(0, 0, 0), tri(0, 1, 0), tri(1, 0, 0)}},
    {1, {tri(0, 0, 1), tri(0, 1, 1), tri(1, 1, 1)}},
    {2, {tri(0, 0, 0), tri(1, 0, 0), tri(1, 0, 1)}},
    {2, {tri(0, 1, 1), tri(1, 1, 0), tri(1, 1, 1)}},
}};

}  // namespace

TwoNeighborCode::TwoNeighborCode(Field f, std::size_t n, std::size_t k)
    : field_(std::move(f)), n_(n), k_(k) {
  if (k_ < 1) throw ParameterError("two-neighbor code needs k >= 1");
  if (n_ < k_ + 2) throw ParameterError("two-neighbor code needs n >= k+2");
  if (n_ > kMaxN) throw ParameterError("two-neighbor code capped at n <= 16 (l = 2^n)");
  if (2 * n_ >= field_.size()) throw ParameterError("field too small");
  lambda_ = lambda_table(field_, n_);
}

std::vector<Column> TwoNeighborCode::sample(std::uint64_t seed) const {
  Rng rng(seed);
  std::vector<Column> word(n_, Column(l()));
  std::vector<FieldElement> points(n_);
  for (std::size_t a = 0; a < l(); ++a) {
    for (std::size_t i = 0; i < n_; ++i) points[i] = lambda(i, (a >> i) & 1u);
    const auto plane = sample_plane(field_, points, checks(), rng);
    for (std::size_t i = 0; i < n_; ++i) word[i][a] = plane[i];
  }
  return word;
}

bool TwoNeighborCode::check(const std::vector<Column>& word) const {
  if (word.size() != n_) return false;
  std::vector<FieldElement> points(n_), values(n_);
  for (std::size_t a = 0; a < l(); ++a) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (word[i].size() != l()) return false;
      points[i] = lambda(i, (a >> i) & 1u);
      values[i] = word[i][a];
    }
    if (!plane_satisfies(field_, points, checks(), values)) return false;
  }
  return true;
}

TwoNeighborRepair TwoNeighborCode::repair(const std::vector<Column>& word, const Graph& g) const {
  if (word.size() != n_) throw DimensionMismatch("codeword has wrong number of columns");
  if (g.vertex_count() != n_) throw GraphError("graph size differs from code length");
  const Vertex far_end = k_ + 2;  // far helpers are 3..k+1
  bool ok = g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(1, 2);
  for (Vertex v = 3; v < far_end; ++v) ok = ok && g.has_edge(v, 1) && g.has_edge(v, 2);
  if (!ok) throw GraphError("graph lacks the two-neighbor repair topology on nodes 0..k+1");

  TwoNeighborRepair out{Column(l()), {}};
  auto plane_bit = [](std::size_t a, Vertex v) { return static_cast<std::size_t>((a >> v) & 1u); };

  for (std::size_t base = 0; base < l(); base += 8) {
    auto trace = [&](Vertex v, const TraceSet& ts) {
      FieldElement s = field_.zero();
      for (std::size_t tail : ts.tails) s = field_.add(s, word[v][base + tail]);
      return s;
    };

    // Messages into the Gamma_1 nodes: far helpers first, then the 1 <-> 2 swap.
    std::array<std::map<Vertex, FieldElement>, 4> received;
    for (Vertex v = 3; v < far_end; ++v) {
      for (std::size_t s = 0; s < 4; ++s) {
        received[s][v] = trace(v, kTraceSets[s]);
      }
      out.transcript.send(v, 1, std::array{received[0][v], received[1][v]});
      out.transcript.send(v, 2, std::array{received[2][v], received[3][v]});
    }
    received[0][2] = trace(2, kTraceSets[0]);
    received[1][2] = trace(2, kTraceSets[1]);
    out.transcript.send(2, 1, std::array{received[0][2], received[1][2]});
    received[2][1] = trace(1, kTraceSets[2]);
    received[3][1] = trace(1, kTraceSets[3]);
    out.transcript.send(1, 2, std::array{received[2][1], received[3][1]});

    // Each Gamma_1 node decodes two sums of node 0's symbols per trace set.
    std::vector<std::pair<std::vector<std::size_t>, FieldElement>> equations;
    for (Vertex relay : {Vertex{1}, Vertex{2}}) {
      std::vector<FieldElement> to_failed;
      for (std::size_t s = 0; s < 4; ++s) {
        const TraceSet& ts = kTraceSets[s];
        if (ts.relay != relay) continue;
        std::vector<FieldElement> known_pts, known_vals, unknown_pts;
        std::array<std::vector<std::size_t>, 2> own_split, failed_split;
        for (std::size_t tail : ts.tails) {
          own_split[plane_bit(tail, relay)].push_back(tail);
          failed_split[plane_bit(tail, 0)].push_back(tail);
        }
        for (std::size_t b = 0; b < 2; ++b) {
          if (own_split[b].empty()) continue;
          FieldElement sum = field_.zero();
          for (std::size_t tail : own_split[b]) sum = field_.add(sum, word[relay][base + tail]);
          known_pts.push_back(lambda(relay, b));
          known_vals.push_back(sum);
        }
        for (const auto& [v, mu] : received[s]) {
          // The sender's own digit is constant over the set's tails.
          const Vertex digit_node = v;
          const std::size_t b = v <= 2 ? plane_bit(ts.tails[0], digit_node)
                                       : plane_bit(base, digit_node);
          known_pts.push_back(lambda(v, b));
          known_vals.push_back(mu);
        }
        std::vector<std::size_t> sought;
        for (std::size_t b = 0; b < 2; ++b) {
          if (failed_split[b].empty()) continue;
          unknown_pts.push_back(lambda(0, b));
          sought.push_back(b);
        }
        for (Vertex v = far_end; v < n_; ++v) unknown_pts.push_back(lambda(v, plane_bit(base, v)));
        const Matrix u = erasure_matrix(field_, known_pts, unknown_pts, checks());
        const auto solved = multiply(field_, known_vals, u);
        for (std::size_t j = 0; j < sought.size(); ++j) {
          equations.emplace_back(failed_split[sought[j]], solved[j]);
          to_failed.push_back(solved[j]);
        }
      }
      out.transcript.send(relay, 0, to_failed);
    }

    // Node 0: 8 sums over its 8 symbols in this group.
    Matrix incidence(equations.size(), 8);
    std::vector<FieldElement> rhs;
    for (std::size_t e = 0; e < equations.size(); ++e) {
      for (std::size_t tail : equations[e].first) incidence(e, tail) = field_.one();
      rhs.push_back(equations[e].second);
    }
    const Matrix inv = inverse(field_, incidence);
    for (std::size_t tail = 0; tail < 8; ++tail) {
      FieldElement acc = field_.zero();
      for (std::size_t e = 0; e < rhs.size(); ++e) acc = field_.add(acc, field_.mul(inv(tail, e), rhs[e]));
      out.recovered[base + tail] = acc;
    }
  }
  return out;
}

}  // namespace graphrepair
