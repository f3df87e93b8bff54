#pragma once

// Message-passing repair along a rooted tree.
//
// A code is seen through a CodeAdapter: its repair splits into `groups()` independent
// groups, in each of which every helper contributes one symbol y_j and the erased data
// of the group is the L-vector sum_j y_j U_j (L = group_length(), U_j a row of
// repair_rows()). AF relays every y_j to the root. IP lets a vertex whose subtree holds
// at least L helpers forward the partial sum over its subtree instead.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "graphrepair/codes_coop.hpp"
#include "graphrepair/codes_dm.hpp"
#include "graphrepair/codes_pm.hpp"
#include "graphrepair/graphs.hpp"
#include "graphrepair/transcript.hpp"

namespace graphrepair {

enum class Protocol { AF, IP };

std::string to_string(Protocol p);

class CodeAdapter {
 public:
  virtual ~CodeAdapter() = default;

  virtual const Field& field() const = 0;
  virtual std::size_t n() const = 0;
  virtual std::size_t k() const = 0;
  virtual std::size_t d() const = 0;
  virtual std::size_t groups() const = 0;
  virtual std::size_t group_length() const = 0;

  virtual FieldElement helper_symbol(Vertex helper, std::size_t group) const = 0;
  // d x L; row j pairs with helpers[j].
  virtual Matrix repair_rows(std::span<const Vertex> helpers, std::size_t group) const = 0;
};

// Adapter for repairing one failed column of a bound codeword.
class ColumnAdapter : public CodeAdapter {
 public:
  virtual Vertex failed() const = 0;
  virtual std::size_t l() const = 0;
  // outputs[g] is the L-vector of group g.
  virtual Column assemble(const std::vector<std::vector<FieldElement>>& outputs) const = 0;
  virtual Column erased() const = 0;
};

class PmAdapter : public ColumnAdapter {
 public:
  PmAdapter(const PmCode& code, const PmCodeword& word, Vertex failed);

  const Field& field() const override { return code_.field(); }
  std::size_t n() const override { return code_.n(); }
  std::size_t k() const override { return code_.k(); }
  std::size_t d() const override { return code_.d(); }
  std::size_t groups() const override { return 1; }
  std::size_t group_length() const override { return code_.l(); }
  FieldElement helper_symbol(Vertex helper, std::size_t group) const override;
  Matrix repair_rows(std::span<const Vertex> helpers, std::size_t group) const override;

  Vertex failed() const override { return failed_; }
  std::size_t l() const override { return code_.l(); }
  Column assemble(const std::vector<std::vector<FieldElement>>& outputs) const override;
  Column erased() const override { return word_.columns.at(failed_); }

 private:
  const PmCode& code_;
  const PmCodeword& word_;
  Vertex failed_;
};

class DmAdapter : public ColumnAdapter {
 public:
  DmAdapter(const DmCode& code, const DmCodeword& word, Vertex failed);

  const Field& field() const override { return code_.field(); }
  std::size_t n() const override { return code_.n(); }
  std::size_t k() const override { return code_.k(); }
  std::size_t d() const override { return code_.d(); }
  std::size_t groups() const override { return planes_.size(); }
  std::size_t group_length() const override { return code_.r(); }
  FieldElement helper_symbol(Vertex helper, std::size_t group) const override;
  Matrix repair_rows(std::span<const Vertex> helpers, std::size_t group) const override;

  Vertex failed() const override { return failed_; }
  std::size_t l() const override { return code_.l(); }
  Column assemble(const std::vector<std::vector<FieldElement>>& outputs) const override;
  Column erased() const override { return word_.symbols.at(failed_); }

 private:
  const DmCode& code_;
  const DmCodeword& word_;
  Vertex failed_;
  std::vector<std::size_t> planes_;
};

// Step 1 of cooperative repair: group = target * 2^n + plane, L = 3.
class CoopStep1Adapter : public CodeAdapter {
 public:
  CoopStep1Adapter(const CoopCode& code, const CoopCodeword& word);

  const Field& field() const override { return code_.field(); }
  std::size_t n() const override { return code_.n(); }
  std::size_t k() const override { return code_.k(); }
  std::size_t d() const override { return code_.d(); }
  std::size_t groups() const override { return 2 * code_.planes(); }
  std::size_t group_length() const override { return 3; }
  FieldElement helper_symbol(Vertex helper, std::size_t group) const override;
  Matrix repair_rows(std::span<const Vertex> helpers, std::size_t group) const override;

 private:
  const CoopCode& code_;
  const CoopCodeword& word_;
};

struct RepairResult {
  Column column;
  Transcript transcript;
};

// Tree rooted at the failed vertex; its other vertices are the d helpers.
RepairResult run_af(const RepairTree& tree, const ColumnAdapter& adapter);
RepairResult run_ip(const RepairTree& tree, const ColumnAdapter& adapter);
RepairResult run_repair(const RepairTree& tree, const ColumnAdapter& adapter, Protocol protocol);

// Failed vertices {0, 1}; helpers D contain w and span a connected subgraph; T_w is the
// BFS tree of D rooted at w.
struct MultiTopology {
  Graph graph;
  std::vector<Vertex> helpers;
  Vertex w = 0;
};

// Failed 0 - 1, both adjacent to w = 2; helpers 2 - 3 - ... - k+2 form a path and
// vertices k+3..n-1 hang off k+2 as a chain.
MultiTopology path_topology(std::size_t n, std::size_t k);

struct MultiRepairResult {
  Column node0;
  Column node1;
  Transcript transcript;
  RepairTree tree;            // T_w
  std::size_t helper_traffic; // symbols sent by helpers, including w's outflow towards F
};

MultiRepairResult run_multi_ip(const MultiTopology& topology, const CoopCode& code,
                               const CoopCodeword& word);

struct TranscriptViolation {
  Vertex vertex;
  std::size_t sent;
  std::size_t required;
};

struct TranscriptReport {
  std::vector<TranscriptViolation> violations;
  // Vertices whose outflow equals the lower bound.
  std::vector<Vertex> tight;
  bool ok() const { return violations.empty(); }
};

// Each non-root v must send its parent at least min(l, |D*(v)| * l / (d-k+1)) symbols.
TranscriptReport verify_transcript(const RepairTree& tree, const Transcript& transcript,
                                   std::size_t l, std::size_t d, std::size_t k);

void write_report(std::ostream& out, const TranscriptReport& report);

}  // namespace graphrepair
