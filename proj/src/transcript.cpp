#include "graphrepair/transcript.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "graphrepair/errors.hpp"

namespace graphrepair {

void Transcript::send(Vertex from, Vertex to, std::span<const FieldElement> symbols) {
  auto& e = edges_[{from, to}];
  e.count += symbols.size();
  e.payload.insert(e.payload.end(), symbols.begin(), symbols.end());
}

std::size_t Transcript::count(Vertex from, Vertex to) const {
  auto it = edges_.find({from, to});
  return it == edges_.end() ? 0 : it->second.count;
}

std::size_t Transcript::total() const {
  std::size_t s = 0;
  for (const auto& [_, e] : edges_) s += e.count;
  return s;
}

std::size_t Transcript::total_from(const std::set<Vertex>& senders) const {
  std::size_t s = 0;
  for (const auto& [edge, e] : edges_)
    if (senders.count(edge.first)) s += e.count;
  return s;
}

void Transcript::write(std::ostream& out) const {
  for (const auto& [edge, e] : edges_) out << edge.first << ' ' << edge.second << ' ' << e.count << '\n';
  out << "total " << total() << '\n';
}

std::map<Transcript::Edge, std::size_t> Transcript::read_counts(std::istream& in) {
  std::map<Edge, std::size_t> out;
  std::string line;
  std::size_t sum = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    if (first == "total") {
      std::size_t declared = 0;
      if (!(ls >> declared)) throw ParseError("malformed total line");
      if (declared != sum) throw ParseError("transcript total does not match edge counts");
      return out;
    }
    std::size_t v = 0, c = 0;
    if (!(ls >> v >> c)) throw ParseError("malformed transcript line: " + line);
    const std::size_t u = std::stoul(first);
    out[{u, v}] += c;
    sum += c;
  }
  throw ParseError("transcript missing total footer");
}

}  // namespace graphrepair
