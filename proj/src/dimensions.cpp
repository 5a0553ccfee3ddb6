#include "crn/dimensions.hpp"

#include <map>
#include <stdexcept>

namespace crn {

namespace {

void require_same_species(const EGraph& a, const EGraph& b) {
  if (!(a.species() == b.species())) throw SpeciesMismatchError("species tables differ");
}

void require_assignment(const EGraph& g, const EdgeAssignment& k, const char* what) {
  if (static_cast<int>(k.values.size()) != g.edge_count())
    throw std::invalid_argument(std::string(what) + " length does not match edge count");
}

// Columns of the local matrix at a vertex: its outgoing reaction vectors in
// canonical edge order.
RationalMatrix out_matrix(const EGraph& g, int vertex) {
  const std::vector<int>& out = g.out_edges(vertex);
  RationalMatrix m(g.species_count(), static_cast<int>(out.size()));
  for (std::size_t j = 0; j < out.size(); ++j) {
    const RatVec vec = g.reaction_vector(out[j]);
    for (int d = 0; d < g.species_count(); ++d) m.at(d, static_cast<int>(j)) = vec[d];
  }
  return m;
}

}  // namespace

RationalMatrix dynamics_constraints(const EGraph& g) {
  std::vector<RatVec> rows;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) == 0) continue;
    for (int d = 0; d < g.species_count(); ++d) {
      RatVec row(g.edge_count(), Rational(0));
      for (int e : g.out_edges(v)) row[e] = g.reaction_vector(e)[d];
      rows.push_back(std::move(row));
    }
  }
  return RationalMatrix::from_rows(rows, g.edge_count());
}

std::vector<RatVec> dynamics_kernel_basis(const EGraph& g) {
  std::vector<RatVec> basis;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) == 0) continue;
    const std::vector<int>& out = g.out_edges(v);
    for (const RatVec& local : kernel_basis(out_matrix(g, v))) {
      RatVec embedded(g.edge_count(), Rational(0));
      for (std::size_t j = 0; j < out.size(); ++j) embedded[out[j]] = local[j];
      basis.push_back(std::move(embedded));
    }
  }
  return basis;
}

int dynamics_kernel_dim(const EGraph& g) {
  int total = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) == 0) continue;
    total += g.out_degree(v) - rank(out_matrix(g, v));
  }
  return total;
}

RationalMatrix flux_balance_matrix(const EGraph& g) {
  RationalMatrix m(g.vertex_count(), g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    m.at(g.edges()[e].source, e) = 1;
    m.at(g.edges()[e].target, e) = -1;
  }
  return m;
}

std::vector<RatVec> balanced_kernel_basis(const EGraph& g) {
  return kernel_basis(vstack(dynamics_constraints(g), flux_balance_matrix(g)));
}

int balanced_kernel_dim(const EGraph& g) {
  return g.edge_count() - rank(vstack(dynamics_constraints(g), flux_balance_matrix(g)));
}

namespace {

// Net vector of the weighted outgoing edges at the complex with the given
// coordinates; the zero vector when the complex is not a source of g.
RatVec net_at(const EGraph& g, const EdgeAssignment& w, const VertexComplex& at) {
  RatVec net(g.species_count(), Rational(0));
  if (const std::optional<int> v = g.find_vertex(at)) {
    for (int e : g.out_edges(*v)) {
      const RatVec vec = g.reaction_vector(e);
      for (int d = 0; d < g.species_count(); ++d) net[d] += w.values[e] * vec[d];
    }
  }
  return net;
}

bool nets_agree(const EGraph& a, const EdgeAssignment& wa, const EGraph& b,
                const EdgeAssignment& wb) {
  require_same_species(a, b);
  std::map<std::vector<long>, VertexComplex> complexes;
  for (const VertexComplex& v : a.vertices()) complexes.try_emplace(v.coords, v);
  for (const VertexComplex& v : b.vertices()) complexes.try_emplace(v.coords, v);
  for (const auto& [coords, v] : complexes) {
    const RatVec na = net_at(a, wa, v);
    const RatVec nb = net_at(b, wb, v);
    if (na != nb) return false;
  }
  return true;
}

Rational monomial(const RatVec& x, const VertexComplex& v) {
  Rational out = 1;
  for (std::size_t d = 0; d < v.coords.size(); ++d)
    out *= rat_pow(x[d], static_cast<unsigned long>(v.coords[d]));
  return out;
}

void require_positive_state(const EGraph& g, const RatVec& x) {
  if (static_cast<int>(x.size()) != g.species_count())
    throw std::invalid_argument("state length does not match species count");
  for (const Rational& c : x)
    if (sgn(c) <= 0) throw std::invalid_argument("state must be strictly positive");
}

}  // namespace

bool is_dynamically_equivalent(const EGraph& a, const RateAssignment& ka, const EGraph& b,
                               const RateAssignment& kb) {
  require_assignment(a, ka, "rate assignment");
  require_assignment(b, kb, "rate assignment");
  return nets_agree(a, ka, b, kb);
}

bool is_flux_equivalent(const EGraph& a, const FluxAssignment& ja, const EGraph& b,
                        const FluxAssignment& jb) {
  require_assignment(a, ja, "flux assignment");
  require_assignment(b, jb, "flux assignment");
  return nets_agree(a, ja, b, jb);
}

bool is_complex_balanced_at(const EGraph& g, const RateAssignment& k, const RatVec& x) {
  require_assignment(g, k, "rate assignment");
  require_positive_state(g, x);
  RatVec net(g.vertex_count(), Rational(0));
  for (int e = 0; e < g.edge_count(); ++e) {
    const Reaction& r = g.edges()[e];
    const Rational flux = k.values[e] * monomial(x, g.vertices()[r.source]);
    net[r.source] += flux;
    net[r.target] -= flux;
  }
  return is_zero_vec(net);
}

bool dyn_flux_correspondence_check(const EGraph& a, const RateAssignment& ka, const EGraph& b,
                                   const RateAssignment& kb, const RatVec& x) {
  require_assignment(a, ka, "rate assignment");
  require_assignment(b, kb, "rate assignment");
  require_positive_state(a, x);
  const auto scaled = [&x](const EGraph& g, const RateAssignment& k) {
    FluxAssignment j;
    j.values.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
      j.values[e] = k.values[e] * monomial(x, g.vertices()[g.edges()[e].source]);
    return j;
  };
  return is_dynamically_equivalent(a, ka, b, kb) ==
         is_flux_equivalent(a, scaled(a, ka), b, scaled(b, kb));
}

namespace {

// Linear forms vanishing on the network's span of outgoing reaction vectors
// at the given complex; all of Q^n when the complex is not a network source.
std::vector<RatVec> local_complement(const EGraph& network, const VertexComplex& at) {
  std::vector<RatVec> span;
  if (const std::optional<int> v = network.find_vertex(at)) {
    for (int e : network.out_edges(*v)) span.push_back(network.reaction_vector(e));
  }
  return orthogonal_complement_basis(span, network.species_count());
}

}  // namespace

RealizableFluxDims realizable_flux_dims(const EGraph& network, const EGraph& host) {
  require_same_species(network, host);
  RealizableFluxDims out;
  for (int y = 0; y < host.vertex_count(); ++y) {
    const std::vector<RatVec> forms = local_complement(network, host.vertices()[y]);
    const RationalMatrix a = RationalMatrix::from_rows(forms, network.species_count());
    const RationalMatrix b = out_matrix(host, y);
    const int q = b.cols();
    const int kdim = q - rank(matmul(a, b));
    out.rows.push_back({y, host.vertex_name(y), a.rows(), q, kdim});
    out.total += kdim;
  }
  return out;
}

RationalMatrix realizability_constraints(const EGraph& network, const EGraph& host) {
  require_same_species(network, host);
  std::vector<RatVec> rows;
  for (int y = 0; y < host.vertex_count(); ++y) {
    if (host.out_degree(y) == 0) continue;
    const std::vector<int>& out = host.out_edges(y);
    const RationalMatrix prod =
        matmul(RationalMatrix::from_rows(local_complement(network, host.vertices()[y]),
                                         network.species_count()),
               out_matrix(host, y));
    for (int i = 0; i < prod.rows(); ++i) {
      RatVec row(host.edge_count(), Rational(0));
      for (std::size_t j = 0; j < out.size(); ++j) row[out[j]] = prod.at(i, static_cast<int>(j));
      rows.push_back(std::move(row));
    }
  }
  return RationalMatrix::from_rows(rows, host.edge_count());
}

int realizable_flux_dim_stacked(const EGraph& network, const EGraph& host) {
  return host.edge_count() - rank(realizability_constraints(network, host));
}

int balanced_realizable_flux_dim(const EGraph& network, const EGraph& host) {
  return host.edge_count() -
         rank(vstack(flux_balance_matrix(host), realizability_constraints(network, host)));
}

FeasibilityCertificate positive_flux_gate(const EGraph& network, const EGraph& host) {
  std::vector<int> positive(host.edge_count());
  for (int e = 0; e < host.edge_count(); ++e) positive[e] = e;
  return positive_kernel_feasible(
      vstack(flux_balance_matrix(host), realizability_constraints(network, host)), positive);
}

FeasibilityCertificate realization_gate(const EGraph& network, const EGraph& host) {
  require_same_species(network, host);
  const int he = host.edge_count();
  const int ne = network.edge_count();
  const int n = network.species_count();

  // Variables: host fluxes first, then network rates.
  std::vector<RatVec> rows;

  // Host fluxes must balance at every host vertex.
  const RationalMatrix balance = flux_balance_matrix(host);
  for (int i = 0; i < balance.rows(); ++i) {
    RatVec row(he + ne, Rational(0));
    for (int j = 0; j < he; ++j) row[j] = balance.at(i, j);
    rows.push_back(std::move(row));
  }

  // At every complex of either graph, the rate-weighted network net vector
  // equals the flux-weighted host net vector (evaluated at the all-ones
  // state, where mass-action fluxes coincide with rates).
  std::map<std::vector<long>, VertexComplex> complexes;
  for (const VertexComplex& v : host.vertices()) complexes.try_emplace(v.coords, v);
  for (const VertexComplex& v : network.vertices()) complexes.try_emplace(v.coords, v);
  for (const auto& [coords, v] : complexes) {
    std::vector<RatVec> block(n, RatVec(he + ne, Rational(0)));
    if (const std::optional<int> hy = host.find_vertex(v)) {
      for (int e : host.out_edges(*hy)) {
        const RatVec vec = host.reaction_vector(e);
        for (int d = 0; d < n; ++d) block[d][e] = -vec[d];
      }
    }
    if (const std::optional<int> ny = network.find_vertex(v)) {
      for (int e : network.out_edges(*ny)) {
        const RatVec vec = network.reaction_vector(e);
        for (int d = 0; d < n; ++d) block[d][he + e] = vec[d];
      }
    }
    for (RatVec& row : block) rows.push_back(std::move(row));
  }

  std::vector<int> positive(he + ne);
  for (int i = 0; i < he + ne; ++i) positive[i] = i;
  return positive_kernel_feasible(RationalMatrix::from_rows(rows, he + ne), positive);
}

DimensionReport analyze_pair(const EGraph& network, const EGraph& host) {
  require_same_species(network, host);
  DimensionReport report;

  const LinkageDecomposition decomposition = linkage_classes(host);
  report.linkage_class_count = decomposition.class_count();
  report.host_vertex_count = decomposition.covered_vertex_count();
  report.host_weakly_reversible = is_weakly_reversible(host);

  RealizableFluxDims flux = realizable_flux_dims(network, host);
  report.realizable_flux_dim = flux.total;
  report.per_vertex = std::move(flux.rows);

  report.stoich_dim_host = stoichiometric_dim(host);
  report.dynamics_kernel_dim_network = dynamics_kernel_dim(network);
  report.balanced_kernel_dim_host = balanced_kernel_dim(host);

  report.flux_gate = positive_flux_gate(network, host);
  report.realization_gate = realization_gate(network, host);

  report.ambient_bound = network.edge_count();
  if (report.flux_gate.feasible) {
    report.balanced_realizable_dim =
        report.realizable_flux_dim - report.host_vertex_count + report.linkage_class_count;
    int value = *report.balanced_realizable_dim + report.stoich_dim_host +
                report.balanced_kernel_dim_host - report.dynamics_kernel_dim_network;
    if (value > report.ambient_bound) {
      value = report.ambient_bound;
      report.ambient_capped = true;
    }
    report.real_locus_dim = value;
    if (report.realization_gate.feasible) report.locus_dim = report.real_locus_dim;
  }
  return report;
}

FluxAssignment scale_flux_by_vertex(const EGraph& host, const FluxAssignment& flux,
                                    const RatVec& vertex_weights) {
  require_assignment(host, flux, "flux assignment");
  if (static_cast<int>(vertex_weights.size()) != host.vertex_count())
    throw std::invalid_argument("weight length does not match vertex count");
  FluxAssignment out;
  out.values.resize(host.edge_count());
  for (int e = 0; e < host.edge_count(); ++e)
    out.values[e] = flux.values[e] * vertex_weights[host.edges()[e].source];
  return out;
}

}  // namespace crn
