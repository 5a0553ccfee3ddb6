#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crn/errors.hpp"
#include "crn/rational.hpp"

namespace crn {

// Ordered list of species names; the order fixes the coordinate system.
struct SpeciesTable {
  std::vector<std::string> names;

  int size() const { return static_cast<int>(names.size()); }
  bool operator==(const SpeciesTable&) const = default;
};

// A complex: a point of the nonnegative integer lattice, one coordinate per
// species. The empty complex is the origin.
struct VertexComplex {
  std::vector<long> coords;

  bool operator==(const VertexComplex&) const = default;
};

// Directed edge between vertex indices.
struct Reaction {
  int source = 0;
  int target = 0;

  auto operator<=>(const Reaction&) const = default;
};

// Euclidean embedded graph: distinct lattice vertices plus directed edges
// between them. Vertices keep their construction order; edges are stored
// sorted by (source, target), which is the canonical edge order used for all
// per-edge vectors. Construction validates every structural invariant and
// throws std::invalid_argument on violation.
class EGraph {
 public:
  EGraph(SpeciesTable species, std::vector<VertexComplex> vertices, std::vector<Reaction> edges);

  const SpeciesTable& species() const { return species_; }
  int species_count() const { return species_.size(); }

  const std::vector<VertexComplex>& vertices() const { return vertices_; }
  const std::vector<Reaction>& edges() const { return edges_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  std::optional<int> find_vertex(const VertexComplex& v) const;

  // target - source as an exact vector of length species_count().
  RatVec reaction_vector(int edge) const;

  // Edge indices leaving a vertex, ascending (hence in canonical edge order).
  const std::vector<int>& out_edges(int vertex) const { return out_edges_[vertex]; }
  int out_degree(int vertex) const { return static_cast<int>(out_edges_[vertex].size()); }

  std::string vertex_name(int vertex) const;

 private:
  SpeciesTable species_;
  std::vector<VertexComplex> vertices_;
  std::vector<Reaction> edges_;
  std::vector<std::vector<int>> out_edges_;
};

// Human-readable complex, e.g. "X + 2*Y"; the empty complex renders as "0".
std::string complex_name(const SpeciesTable& species, const VertexComplex& v);

struct LinkageClass {
  std::vector<int> vertices;  // ascending vertex indices
  std::vector<int> edges;     // ascending edge indices
  bool strongly_connected = false;
};

// Partition of the non-isolated vertices into weakly connected components.
// Isolated vertices are reported separately and belong to no class.
struct LinkageDecomposition {
  std::vector<LinkageClass> classes;
  std::vector<int> isolated_vertices;

  int class_count() const { return static_cast<int>(classes.size()); }
  int covered_vertex_count() const;
};

LinkageDecomposition linkage_classes(const EGraph& g);

// Strongly connected component ids for an arbitrary edge list on
// vertex_count vertices. Ids are 0-based and assigned deterministically.
std::vector<int> scc_ids(int vertex_count, const std::vector<Reaction>& edges);

// True when every linkage class is strongly connected; equivalently, every
// edge lies on a directed cycle. A graph with no edges is weakly reversible.
bool is_weakly_reversible(const EGraph& g);

// Dimension of the span of all reaction vectors.
int stoichiometric_dim(const EGraph& g);

enum class VertexSetMode { kSources, kAll };

// Complete directed graph on the chosen vertex set of g: every ordered pair
// of distinct vertices becomes an edge. kSources keeps only vertices with at
// least one outgoing edge in g.
EGraph complete_graph(const EGraph& g, VertexSetMode mode = VertexSetMode::kSources);

// Vertex- and edge-set containment, comparing complexes by coordinates.
// Throws SpeciesMismatchError when the species tables differ.
bool is_subgraph(const EGraph& sub, const EGraph& sup);

// Equality on (species order, vertex set, edge set); vertex storage order is
// not part of the identity.
bool same_network(const EGraph& a, const EGraph& b);

// Rewrites g against a species table containing the same names in possibly
// different order. Throws SpeciesMismatchError when the name sets differ.
EGraph reorder_species(const EGraph& g, const SpeciesTable& table);

}  // namespace crn
