#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "graphrepair/galois.hpp"
#include "graphrepair/graphs.hpp"

namespace graphrepair {

struct EdgeTraffic {
  std::size_t count = 0;
  std::vector<FieldElement> payload;
};

// Every symbol moved during one repair, keyed by directed edge (sender, receiver).
class Transcript {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  void send(Vertex from, Vertex to, std::span<const FieldElement> symbols);
  void send(Vertex from, Vertex to, FieldElement symbol) { send(from, to, {&symbol, 1}); }

  std::size_t count(Vertex from, Vertex to) const;
  std::size_t total() const;
  // Symbols sent by any vertex in `senders`.
  std::size_t total_from(const std::set<Vertex>& senders) const;
  const std::map<Edge, EdgeTraffic>& edges() const { return edges_; }

  // "u v count" per edge in (u, v) order, then "total N".
  void write(std::ostream& out) const;
  // Reads the counts written by write(); validates the footer.
  static std::map<Edge, std::size_t> read_counts(std::istream& in);

 private:
  std::map<Edge, EdgeTraffic> edges_;
};

}  // namespace graphrepair
