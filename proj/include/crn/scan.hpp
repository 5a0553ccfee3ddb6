#pragma once

#include <optional>
#include <vector>

#include "crn/dimensions.hpp"
#include "crn/network.hpp"

namespace crn {

// Exhaustive enumeration is refused beyond 2^kMaxExhaustiveEdges candidate
// subsets unless a cap or an explicit candidate list is supplied.
inline constexpr int kMaxExhaustiveEdges = 26;

struct CandidateResult {
  EGraph host;
  DimensionReport report;
  bool contributes_real = false;  // flux gate passed
  bool contributes = false;       // both gates passed
};

enum class EnumerationMode { kExhaustive, kCapped, kExplicitList };

const char* to_string(EnumerationMode mode);

struct ScanOptions {
  VertexSetMode vertex_mode = VertexSetMode::kSources;
  // Stop enumerating after this many weakly reversible candidates.
  std::optional<long long> cap;
  // Evaluate exactly these hosts instead of enumerating. Each must share the
  // network's species table and be a subgraph of the complete graph.
  std::optional<std::vector<EGraph>> candidates;
  int jobs = 1;
  // Stop as soon as a candidate attains the upper bound edge_count(network)
  // with both gates feasible.
  bool early_exit = true;
};

struct ScanResult {
  // Maximum locus dimensions over the candidates whose gates pass; absent
  // when no candidate passes the corresponding gate.
  std::optional<int> real_locus_dim;
  std::optional<int> locus_dim;

  // First candidate (in evaluation order) attaining each maximum.
  std::vector<CandidateResult> best_real;
  std::vector<CandidateResult> best;

  long long candidates_evaluated = 0;
  bool early_exit = false;
  EnumerationMode mode = EnumerationMode::kExhaustive;
};

// Streams the weakly reversible subgraphs of `gc` with a nonempty edge set,
// in canonical order: by edge count, then lexicographically by the list of
// gc edge indices. Vertex sets are induced by the chosen edges.
class WrSubgraphEnumerator {
 public:
  explicit WrSubgraphEnumerator(EGraph gc);

  // Next candidate, or nullopt when exhausted.
  std::optional<EGraph> next();

 private:
  bool advance();
  EGraph gc_;
  std::vector<int> combo_;  // current edge-index combination, ascending
  int size_ = 0;            // current subset size; 0 before the first call
  bool done_ = false;
};

// Collects the stream into a vector. Throws EnumerationSizeError when
// edge_count(gc) > kMaxExhaustiveEdges and no cap is given.
std::vector<EGraph> enumerate_wr_subgraphs(const EGraph& gc,
                                           std::optional<long long> cap = std::nullopt);

// Evaluates one candidate host against the network. The host must be a
// subgraph of complete_graph(network, mode); std::invalid_argument otherwise.
CandidateResult evaluate_candidate(const EGraph& network, const EGraph& host,
                                   VertexSetMode mode = VertexSetMode::kSources);

// Maximizes the pairwise locus dimensions over weakly reversible candidate
// hosts. Deterministic for any jobs value: candidates are committed in
// canonical order regardless of worker scheduling. Throws
// EnumerationSizeError when the candidate space is too large to enumerate
// and neither cap nor candidates are provided.
ScanResult scan(const EGraph& network, const ScanOptions& options = {});

}  // namespace crn
