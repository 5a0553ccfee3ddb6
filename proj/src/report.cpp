#include "crn/report.hpp"

#include <openssl/evp.h>

#include <stdexcept>

#include "crn/version.hpp"

namespace crn {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

namespace {

Json rat_array(const RatVec& v) {
  Json out = Json::array();
  for (const Rational& q : v) out.push_back(to_string(q));
  return out;
}

Json basis_array(const std::vector<RatVec>& basis) {
  Json out = Json::array();
  for (const RatVec& v : basis) out.push_back(rat_array(v));
  return out;
}

Json graph_brief(const EGraph& g) {
  Json out;
  out["species"] = g.species().names;
  out["vertex_count"] = g.vertex_count();
  out["edge_count"] = g.edge_count();
  return out;
}

Json certificate_json(const FeasibilityCertificate& cert, bool include_witness) {
  Json out;
  out["feasible"] = cert.feasible;
  if (include_witness && cert.witness) out["witness"] = rat_array(*cert.witness);
  return out;
}

Json per_vertex_json(const std::vector<VertexKernelRow>& rows) {
  Json out = Json::array();
  for (const VertexKernelRow& row : rows) {
    Json r;
    r["vertex"] = row.name;
    r["constraint_rows"] = row.complement_rows;
    r["out_degree"] = row.out_degree;
    r["kernel_dim"] = row.kernel_dim;
    out.push_back(std::move(r));
  }
  return out;
}

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json report_envelope(const std::string& command, const std::vector<InputFile>& inputs,
                     Json payload) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["command"] = command;
  Json in = Json::array();
  for (const InputFile& f : inputs) in.push_back({{"path", f.path}, {"sha256", f.sha256}});
  doc["inputs"] = std::move(in);
  doc["payload"] = std::move(payload);
  return doc;
}

Json check_payload(const EGraph& g, const std::vector<ParseError>& warnings, bool include_bases) {
  const LinkageDecomposition decomposition = linkage_classes(g);
  Json out;
  out["species"] = g.species().names;
  out["vertex_count"] = g.vertex_count();
  out["edge_count"] = g.edge_count();
  Json vertices = Json::array();
  for (int v = 0; v < g.vertex_count(); ++v) vertices.push_back(g.vertex_name(v));
  out["vertices"] = std::move(vertices);
  Json reactions = Json::array();
  for (const Reaction& e : g.edges())
    reactions.push_back(g.vertex_name(e.source) + " -> " + g.vertex_name(e.target));
  out["reactions"] = std::move(reactions);
  out["linkage_class_count"] = decomposition.class_count();
  out["isolated_vertex_count"] = static_cast<int>(decomposition.isolated_vertices.size());
  out["weakly_reversible"] = is_weakly_reversible(g);
  out["stoichiometric_dim"] = stoichiometric_dim(g);
  out["dynamics_kernel_dim"] = dynamics_kernel_dim(g);
  out["balanced_kernel_dim"] = balanced_kernel_dim(g);
  if (include_bases) {
    out["dynamics_kernel_basis"] = basis_array(dynamics_kernel_basis(g));
    out["balanced_kernel_basis"] = basis_array(balanced_kernel_basis(g));
  }
  Json warn = Json::array();
  for (const ParseError& w : warnings) {
    warn.push_back({{"line", w.line},
                    {"column", w.column},
                    {"kind", to_string(w.kind)},
                    {"message", w.message}});
  }
  out["warnings"] = std::move(warn);
  return out;
}

Json pair_payload(const EGraph& network, const EGraph& host, const DimensionReport& report,
                  bool include_witnesses) {
  Json out;
  out["network"] = graph_brief(network);
  out["host"] = graph_brief(host);
  out["host_weakly_reversible"] = report.host_weakly_reversible;
  out["linkage_class_count"] = report.linkage_class_count;
  out["host_vertex_count"] = report.host_vertex_count;
  out["per_vertex"] = per_vertex_json(report.per_vertex);
  out["realizable_flux_dim"] = report.realizable_flux_dim;
  out["stoich_dim_host"] = report.stoich_dim_host;
  out["dynamics_kernel_dim_network"] = report.dynamics_kernel_dim_network;
  out["balanced_kernel_dim_host"] = report.balanced_kernel_dim_host;

  Json flux_gate = certificate_json(report.flux_gate, include_witnesses);
  out["flux_gate"] = std::move(flux_gate);

  // The realization witness stacks host fluxes then network rates; split it
  // for readability.
  Json realization = Json::object();
  realization["feasible"] = report.realization_gate.feasible;
  if (include_witnesses && report.realization_gate.witness) {
    const RatVec& w = *report.realization_gate.witness;
    RatVec host_flux(w.begin(), w.begin() + host.edge_count());
    RatVec network_rates(w.begin() + host.edge_count(), w.end());
    realization["witness_host_flux"] = rat_array(host_flux);
    realization["witness_network_rates"] = rat_array(network_rates);
  }
  out["realization_gate"] = std::move(realization);

  out["balanced_realizable_dim"] = optional_int(report.balanced_realizable_dim);
  out["ambient_bound"] = report.ambient_bound;
  out["ambient_capped"] = report.ambient_capped;
  out["real_locus_dim"] = optional_int(report.real_locus_dim);
  out["locus_dim"] = optional_int(report.locus_dim);
  return out;
}

namespace {

Json candidate_json(const CandidateResult& candidate) {
  Json out;
  out["edge_count"] = candidate.host.edge_count();
  out["vertex_count"] = candidate.host.vertex_count();
  out["linkage_class_count"] = candidate.report.linkage_class_count;
  out["realizable_flux_dim"] = candidate.report.realizable_flux_dim;
  out["flux_gate_feasible"] = candidate.report.flux_gate.feasible;
  out["realization_gate_feasible"] = candidate.report.realization_gate.feasible;
  out["real_locus_dim"] = optional_int(candidate.report.real_locus_dim);
  out["locus_dim"] = optional_int(candidate.report.locus_dim);
  out["crn"] = serialize_network(candidate.host);
  return out;
}

}  // namespace

Json scan_payload(const EGraph& network, const ScanResult& result, VertexSetMode mode,
                  long long wall_ms) {
  Json out;
  out["network"] = graph_brief(network);
  out["vertex_set"] = mode == VertexSetMode::kSources ? "sources" : "all";
  out["enumeration_mode"] = to_string(result.mode);
  out["upper_bound"] = network.edge_count();
  out["candidates_evaluated"] = result.candidates_evaluated;
  out["early_exit"] = result.early_exit;
  out["real_locus_dim"] = optional_int(result.real_locus_dim);
  out["locus_dim"] = optional_int(result.locus_dim);
  Json best_real = Json::array();
  for (const CandidateResult& c : result.best_real) best_real.push_back(candidate_json(c));
  out["best_real"] = std::move(best_real);
  Json best = Json::array();
  for (const CandidateResult& c : result.best) best.push_back(candidate_json(c));
  out["best"] = std::move(best);
  // Wall-clock timing is the one nondeterministic field; comparisons should
  // ignore it.
  out["wall_ms"] = wall_ms;
  return out;
}

}  // namespace crn
