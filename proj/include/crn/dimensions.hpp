#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crn/matrix.hpp"
#include "crn/network.hpp"
#include "crn/simplex.hpp"

namespace crn {

// Per-edge rational assignment in canonical edge order. Rate constants and
// edge fluxes share this representation.
struct EdgeAssignment {
  RatVec values;

  bool strictly_positive() const {
    for (const Rational& q : values)
      if (sgn(q) <= 0) return false;
    return true;
  }
};
using RateAssignment = EdgeAssignment;
using FluxAssignment = EdgeAssignment;

// --- Kernel spaces of a single network -------------------------------------

// Constraint matrix whose kernel is the space of per-edge deltas that leave
// the mass-action right-hand side unchanged: for each source vertex, one row
// per species coordinate of the weighted sum of its outgoing reaction
// vectors.
RationalMatrix dynamics_constraints(const EGraph& g);

// Basis of that kernel. Each basis vector is supported on the out-edges of a
// single source vertex, so the space decomposes per vertex.
std::vector<RatVec> dynamics_kernel_basis(const EGraph& g);
int dynamics_kernel_dim(const EGraph& g);

// Vertex/edge balance matrix: one row per vertex with +1 on outgoing and -1
// on incoming edges. Its kernel is the space of fluxes balanced at every
// vertex.
RationalMatrix flux_balance_matrix(const EGraph& g);

// The subspace of the dynamics kernel whose elements also preserve the
// per-vertex flux balance: kernel of the stacked system.
std::vector<RatVec> balanced_kernel_basis(const EGraph& g);
int balanced_kernel_dim(const EGraph& g);

// --- Equivalence of mass-action systems ------------------------------------

// Two mass-action systems are dynamically equivalent when, at every complex,
// the rate-weighted sums of outgoing reaction vectors agree (a complex absent
// from a network contributes the zero sum). Throws SpeciesMismatchError when
// the species tables differ and std::invalid_argument on length mismatches.
bool is_dynamically_equivalent(const EGraph& a, const RateAssignment& ka, const EGraph& b,
                               const RateAssignment& kb);

// Same per-complex comparison with explicit edge fluxes instead of rates.
bool is_flux_equivalent(const EGraph& a, const FluxAssignment& ja, const EGraph& b,
                        const FluxAssignment& jb);

// Whether the mass-action system (g, k) is complex balanced at the strictly
// positive state x: at every vertex, total inflow equals total outflow of
// the monomial-weighted fluxes. Throws std::invalid_argument when x is not
// strictly positive of length species_count().
bool is_complex_balanced_at(const EGraph& g, const RateAssignment& k, const RatVec& x);

// Consistency probe: dynamical equivalence of (a, ka) and (b, kb) must agree
// with flux equivalence of the monomial-scaled fluxes at any one positive
// state. Returns true when the two predicates agree at x.
bool dyn_flux_correspondence_check(const EGraph& a, const RateAssignment& ka, const EGraph& b,
                                   const RateAssignment& kb, const RatVec& x);

// --- Realizable flux space of a network pair --------------------------------
//
// Throughout, `network` carries the mass-action systems of interest and
// `host` is the weakly reversible graph on which complex-balanced
// realizations are sought. Both must share the species table.

// One row of the per-vertex kernel computation: at host vertex y, the span
// of the network's reaction vectors leaving y is cut out by complement_rows
// linear forms, which are applied to the host's out_degree outgoing reaction
// vectors; kernel_dim is the dimension of fluxes through y annihilated by
// all of them.
struct VertexKernelRow {
  int vertex = 0;
  std::string name;
  int complement_rows = 0;  // number of forms vanishing on the network span
  int out_degree = 0;       // outgoing host edges at this vertex
  int kernel_dim = 0;
};

struct RealizableFluxDims {
  int total = 0;  // sum of kernel_dim over host vertices
  std::vector<VertexKernelRow> rows;
};

// Per-vertex route: the space of host fluxes whose net vector at every
// vertex stays inside the network's local reaction span decomposes as a
// direct sum over host vertices; total is the sum of the blockwise kernel
// dimensions.
RealizableFluxDims realizable_flux_dims(const EGraph& network, const EGraph& host);

// The same constraints stacked into a single matrix over all host edges.
RationalMatrix realizability_constraints(const EGraph& network, const EGraph& host);

// Joint route: kernel dimension of the stacked realizability constraints.
// Always equals realizable_flux_dims(...).total.
int realizable_flux_dim_stacked(const EGraph& network, const EGraph& host);

// Kernel dimension of [flux balance; realizability] stacked: the space of
// balanced realizable fluxes on the host.
int balanced_realizable_flux_dim(const EGraph& network, const EGraph& host);

// Existence of a strictly positive balanced realizable flux on the host.
FeasibilityCertificate positive_flux_gate(const EGraph& network, const EGraph& host);

// Existence of strictly positive rates on the network that are dynamically
// realized by a complex-balanced system on the host. The witness stacks the
// host flux (first host.edge_count() entries) followed by the network rates
// (network.edge_count() entries); flux equivalence is imposed at the
// all-ones state, which suffices by the monomial-rescaling correspondence.
FeasibilityCertificate realization_gate(const EGraph& network, const EGraph& host);

// --- Dimension report for a (network, host) pair ----------------------------

struct DimensionReport {
  bool host_weakly_reversible = true;
  int linkage_class_count = 0;  // classes of the host
  int host_vertex_count = 0;    // host vertices lying in a linkage class

  std::vector<VertexKernelRow> per_vertex;
  int realizable_flux_dim = 0;  // sum over per_vertex

  int stoich_dim_host = 0;
  int dynamics_kernel_dim_network = 0;
  int balanced_kernel_dim_host = 0;

  FeasibilityCertificate flux_gate;
  FeasibilityCertificate realization_gate;

  // Set when flux_gate is feasible: realizable_flux_dim - host_vertex_count
  // + linkage_class_count, the dimension of the positive balanced realizable
  // flux cone.
  std::optional<int> balanced_realizable_dim;

  // Both loci are sets of rate vectors on the network, so their dimensions
  // can never exceed the network's edge count. The formula below is clamped
  // to this bound; ambient_capped records when the clamp was active.
  int ambient_bound = 0;
  bool ambient_capped = false;

  // Set when flux_gate is feasible: balanced_realizable_dim + stoich_dim_host
  // + balanced_kernel_dim_host - dynamics_kernel_dim_network, clamped to
  // ambient_bound. Dimension of the set of real rate vectors on the network
  // realized by some complex balanced system on the host.
  std::optional<int> real_locus_dim;

  // Set when both gates are feasible; equals real_locus_dim, restricted to
  // strictly positive rate vectors.
  std::optional<int> locus_dim;
};

// Full pairwise analysis. Does not require the host to be weakly reversible
// (host_weakly_reversible records the check; the gates then decide emptiness
// on their own). Throws SpeciesMismatchError when the species tables differ.
DimensionReport analyze_pair(const EGraph& network, const EGraph& host);

// Multiplies each edge flux by a weight attached to its source vertex
// (weights indexed by host vertex). Balanced realizable fluxes stay
// realizable under such scaling.
FluxAssignment scale_flux_by_vertex(const EGraph& host, const FluxAssignment& flux,
                                    const RatVec& vertex_weights);

}  // namespace crn
