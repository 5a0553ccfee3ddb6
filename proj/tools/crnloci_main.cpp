#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "crn/dimensions.hpp"
#include "crn/matrix.hpp"
#include "crn/network.hpp"
#include "crn/parser.hpp"
#include "crn/report.hpp"
#include "crn/scan.hpp"
#include "crn/version.hpp"

namespace {

// Exit codes: 0 success, 2 unreadable or unparseable input, 3 species
// mismatch between inputs, 4 host not weakly reversible (pair without
// --allow-nonwr), 5 candidate enumeration refused or explicit candidate
// invalid.
constexpr int kExitParse = 2;
constexpr int kExitSpecies = 3;
constexpr int kExitNotReversible = 4;
constexpr int kExitEnumeration = 5;

struct LoadedNetwork {
  std::string path;
  std::string text;
  crn::EGraph graph;
  std::vector<crn::ParseError> warnings;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_parse_issue(const std::string& path, const crn::ParseError& issue, bool warning) {
  std::cerr << path << ":" << issue.line << ":" << issue.column << ": "
            << (warning ? "warning" : "error") << ": " << to_string(issue.kind) << ": "
            << issue.message << "\n";
}

std::optional<LoadedNetwork> load_network(const std::string& path, int& exit_code) {
  const std::optional<std::string> text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    exit_code = kExitParse;
    return std::nullopt;
  }
  crn::ParseResult parsed = crn::parse_network(*text);
  for (const crn::ParseError& w : parsed.warnings) print_parse_issue(path, w, true);
  if (!parsed.ok()) {
    print_parse_issue(path, *parsed.error, false);
    exit_code = kExitParse;
    return std::nullopt;
  }
  return LoadedNetwork{path, *text, std::move(*parsed.graph), std::move(parsed.warnings)};
}

bool write_json(const std::string& path, const crn::Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << doc.dump(2) << "\n";
  return true;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string dim_or_dash(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string("undefined (gate infeasible)");
}

void print_matrix_rows(const std::vector<crn::RatVec>& rows, const std::string& indent) {
  for (const crn::RatVec& row : rows) {
    std::cout << indent << "[";
    for (const crn::Rational& q : row) std::cout << " " << crn::to_string(q);
    std::cout << " ]\n";
  }
}

// --- check -------------------------------------------------------------------

int run_check(const std::string& path, bool bases, const std::string& json_path) {
  int exit_code = 0;
  const std::optional<LoadedNetwork> loaded = load_network(path, exit_code);
  if (!loaded) return exit_code;
  const crn::EGraph& g = loaded->graph;

  const crn::LinkageDecomposition decomposition = crn::linkage_classes(g);
  std::cout << "network " << path << "\n";
  std::cout << "  species:";
  for (const std::string& name : g.species().names) std::cout << " " << name;
  std::cout << "\n";
  std::cout << "  vertices: " << g.vertex_count() << "   edges: " << g.edge_count() << "\n";
  std::cout << "  linkage classes: " << decomposition.class_count()
            << "   weakly reversible: " << yes_no(crn::is_weakly_reversible(g)) << "\n";
  std::cout << "  stoichiometric dimension: " << crn::stoichiometric_dim(g) << "\n";
  std::cout << "  dynamics kernel dimension: " << crn::dynamics_kernel_dim(g) << "\n";
  std::cout << "  balanced kernel dimension: " << crn::balanced_kernel_dim(g) << "\n";
  if (bases) {
    std::cout << "  dynamics kernel basis:\n";
    print_matrix_rows(crn::dynamics_kernel_basis(g), "    ");
    std::cout << "  balanced kernel basis:\n";
    print_matrix_rows(crn::balanced_kernel_basis(g), "    ");
  }

  if (!json_path.empty()) {
    const crn::Json doc = crn::report_envelope(
        "check", {{path, crn::sha256_hex(loaded->text)}},
        crn::check_payload(g, loaded->warnings, bases));
    if (!write_json(json_path, doc)) return kExitParse;
  }
  return 0;
}

// --- pair --------------------------------------------------------------------

void print_trace(const crn::EGraph& network, const crn::EGraph& host) {
  for (int y = 0; y < host.vertex_count(); ++y) {
    std::vector<crn::RatVec> span;
    if (const std::optional<int> v = network.find_vertex(host.vertices()[y]))
      for (int e : network.out_edges(*v)) span.push_back(network.reaction_vector(e));
    const std::vector<crn::RatVec> forms =
        crn::orthogonal_complement_basis(span, network.species_count());

    const std::vector<int>& out = host.out_edges(y);
    const int q = static_cast<int>(out.size());
    crn::RationalMatrix b(network.species_count(), q);
    for (int j = 0; j < q; ++j) {
      const crn::RatVec vec = host.reaction_vector(out[j]);
      for (int d = 0; d < network.species_count(); ++d) b.at(d, j) = vec[d];
    }

    std::cout << "  vertex " << host.vertex_name(y) << ":\n";
    std::cout << "    constraint rows (annihilating the network span):\n";
    if (forms.empty()) {
      std::cout << "      (none; the network span is full)\n";
    } else {
      print_matrix_rows(forms, "      ");
    }
    std::cout << "    outgoing host reaction vectors (columns):\n";
    if (q == 0) {
      std::cout << "      (no outgoing edges)\n";
    } else {
      std::vector<crn::RatVec> brows;
      for (int d = 0; d < b.rows(); ++d) brows.push_back(b.row(d));
      print_matrix_rows(brows, "      ");
    }
    std::cout << "    product:\n";
    if (forms.empty() || q == 0) {
      crn::RatVec zero(static_cast<std::size_t>(q), crn::Rational(0));
      print_matrix_rows({zero}, "      ");
    } else {
      const crn::RationalMatrix prod =
          crn::matmul(crn::RationalMatrix::from_rows(forms, network.species_count()), b);
      std::vector<crn::RatVec> prows;
      for (int i = 0; i < prod.rows(); ++i) prows.push_back(prod.row(i));
      print_matrix_rows(prows, "      ");
    }
  }
}

int run_pair(const std::string& network_path, const std::string& host_path, bool witness,
             bool trace, bool allow_nonwr, const std::string& json_path) {
  int exit_code = 0;
  const std::optional<LoadedNetwork> network_in = load_network(network_path, exit_code);
  if (!network_in) return exit_code;
  const std::optional<LoadedNetwork> host_in = load_network(host_path, exit_code);
  if (!host_in) return exit_code;

  const crn::EGraph& network = network_in->graph;
  crn::EGraph host = host_in->graph;
  try {
    host = crn::reorder_species(host, network.species());
  } catch (const crn::SpeciesMismatchError& err) {
    std::cerr << "error: " << network_path << " and " << host_path
              << " declare different species: " << err.what() << "\n";
    return kExitSpecies;
  }

  if (!crn::is_weakly_reversible(host) && !allow_nonwr) {
    std::cerr << "error: " << host_path
              << " is not weakly reversible; rerun with --allow-nonwr to analyze anyway\n";
    return kExitNotReversible;
  }

  const crn::DimensionReport report = crn::analyze_pair(network, host);

  std::cout << "network " << network_path << ": " << network.vertex_count() << " vertices, "
            << network.edge_count() << " edges\n";
  std::cout << "host " << host_path << ": " << host.vertex_count() << " vertices, "
            << host.edge_count() << " edges, " << report.linkage_class_count
            << " linkage class" << (report.linkage_class_count == 1 ? "" : "es")
            << ", weakly reversible: " << yes_no(report.host_weakly_reversible) << "\n";

  std::cout << "per-vertex realizable flux kernels:\n";
  std::cout << "  vertex            constraints  out-degree  kernel-dim\n";
  for (const crn::VertexKernelRow& row : report.per_vertex) {
    std::string name = row.name;
    if (name.size() < 16) name.resize(16, ' ');
    std::cout << "  " << name << "  " << row.complement_rows << "            " << row.out_degree
              << "           " << row.kernel_dim << "\n";
  }
  if (trace) {
    std::cout << "per-vertex matrices:\n";
    print_trace(network, host);
  }

  std::cout << "realizable flux dimension: " << report.realizable_flux_dim << "\n";
  std::cout << "stoichiometric dimension (host): " << report.stoich_dim_host << "\n";
  std::cout << "dynamics kernel dimension (network): " << report.dynamics_kernel_dim_network
            << "\n";
  std::cout << "balanced kernel dimension (host): " << report.balanced_kernel_dim_host << "\n";
  std::cout << "positive flux gate: "
            << (report.flux_gate.feasible ? "feasible" : "infeasible") << "\n";
  if (witness && report.flux_gate.witness) {
    std::cout << "  flux witness:\n";
    print_matrix_rows({*report.flux_gate.witness}, "    ");
  }
  std::cout << "realization gate: "
            << (report.realization_gate.feasible ? "feasible" : "infeasible") << "\n";
  if (witness && report.realization_gate.witness) {
    const crn::RatVec& w = *report.realization_gate.witness;
    const crn::RatVec host_flux(w.begin(), w.begin() + host.edge_count());
    const crn::RatVec network_rates(w.begin() + host.edge_count(), w.end());
    std::cout << "  host flux witness:\n";
    print_matrix_rows({host_flux}, "    ");
    std::cout << "  network rate witness:\n";
    print_matrix_rows({network_rates}, "    ");
  }
  std::cout << "balanced realizable flux dimension: " << dim_or_dash(report.balanced_realizable_dim)
            << "\n";
  std::cout << "R-disguised toric locus dimension (pair): " << dim_or_dash(report.real_locus_dim);
  if (report.ambient_capped)
    std::cout << "  (clamped to the rate-space bound " << report.ambient_bound << ")";
  std::cout << "\n";
  std::cout << "disguised toric locus dimension (pair): " << dim_or_dash(report.locus_dim) << "\n";

  if (!json_path.empty()) {
    const crn::Json doc = crn::report_envelope(
        "pair",
        {{network_path, crn::sha256_hex(network_in->text)},
         {host_path, crn::sha256_hex(host_in->text)}},
        crn::pair_payload(network, host, report, witness));
    if (!write_json(json_path, doc)) return kExitParse;
  }
  return 0;
}

// --- scan --------------------------------------------------------------------

int run_scan(const std::string& path, const std::string& vertex_set, std::optional<long long> cap,
             const std::string& candidates_dir, int jobs, bool no_early_exit,
             const std::string& json_path) {
  int exit_code = 0;
  const std::optional<LoadedNetwork> loaded = load_network(path, exit_code);
  if (!loaded) return exit_code;
  const crn::EGraph& network = loaded->graph;

  crn::ScanOptions options;
  options.vertex_mode =
      vertex_set == "all" ? crn::VertexSetMode::kAll : crn::VertexSetMode::kSources;
  options.cap = cap;
  options.jobs = jobs;
  options.early_exit = !no_early_exit;

  std::vector<crn::InputFile> inputs{{path, crn::sha256_hex(loaded->text)}};

  if (!candidates_dir.empty()) {
    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(candidates_dir, ec))
      if (entry.is_regular_file() && entry.path().extension() == ".crn")
        files.push_back(entry.path().string());
    if (ec) {
      std::cerr << "error: cannot read candidate directory " << candidates_dir << "\n";
      return kExitParse;
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      std::cerr << "error: no .crn candidates in " << candidates_dir << "\n";
      return kExitEnumeration;
    }
    const crn::EGraph gc = crn::complete_graph(network, options.vertex_mode);
    std::vector<crn::EGraph> candidates;
    for (const std::string& file : files) {
      const std::optional<LoadedNetwork> candidate = load_network(file, exit_code);
      if (!candidate) return exit_code;
      crn::EGraph host = candidate->graph;
      try {
        host = crn::reorder_species(host, network.species());
      } catch (const crn::SpeciesMismatchError& err) {
        std::cerr << "error: candidate " << file << ": " << err.what() << "\n";
        return kExitSpecies;
      }
      if (!crn::is_subgraph(host, gc)) {
        std::cerr << "error: candidate " << file
                  << " is not a subgraph of the complete graph on " << path << "\n";
        return kExitEnumeration;
      }
      if (!crn::is_weakly_reversible(host)) {
        std::cerr << "error: candidate " << file << " is not weakly reversible\n";
        return kExitEnumeration;
      }
      inputs.push_back({file, crn::sha256_hex(candidate->text)});
      candidates.push_back(std::move(host));
    }
    options.candidates = std::move(candidates);
  }

  const auto start = std::chrono::steady_clock::now();
  crn::ScanResult result;
  try {
    result = crn::scan(network, options);
  } catch (const crn::EnumerationSizeError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitEnumeration;
  }
  const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();

  std::cout << "scan of " << path << " (" << network.edge_count()
            << " edges, upper bound " << network.edge_count() << ")\n";
  std::cout << "  vertex set: " << (options.vertex_mode == crn::VertexSetMode::kAll ? "all" : "sources")
            << "   enumeration: " << to_string(result.mode) << "\n";
  std::cout << "  candidates evaluated: " << result.candidates_evaluated << "\n";
  std::cout << "  early exit: " << yes_no(result.early_exit) << "\n";
  std::cout << "  R-disguised toric locus dimension: " << dim_or_dash(result.real_locus_dim)
            << "\n";
  std::cout << "  disguised toric locus dimension: " << dim_or_dash(result.locus_dim) << "\n";
  const auto print_best = [](const char* label, const std::vector<crn::CandidateResult>& best) {
    for (const crn::CandidateResult& c : best) {
      std::cout << "  " << label << " (" << c.host.edge_count() << " edges, "
                << c.host.vertex_count() << " vertices):\n";
      std::istringstream lines(crn::serialize_network(c.host));
      std::string line;
      while (std::getline(lines, line)) std::cout << "    " << line << "\n";
    }
  };
  print_best("best candidate", result.best);
  if (result.best.empty()) print_best("best candidate (real locus only)", result.best_real);

  if (!json_path.empty()) {
    const crn::Json doc = crn::report_envelope(
        "scan", inputs, crn::scan_payload(network, result, options.vertex_mode, wall_ms));
    if (!write_json(json_path, doc)) return kExitParse;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact dimension of the disguised toric locus of mass-action reaction networks"};
  app.set_version_flag("--version", crn::kToolVersion);
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "parse a network and report its basic invariants");
  std::string check_file;
  bool check_bases = false;
  std::string check_json;
  check->add_option("file", check_file, "network file (.crn)")->required();
  check->add_flag("--bases", check_bases, "also print kernel bases");
  check->add_option("--json", check_json, "write a JSON report to this path");

  auto* pair = app.add_subcommand(
      "pair", "dimension of the disguised toric locus of a network relative to one host graph");
  std::string pair_network, pair_host, pair_json;
  bool pair_witness = false, pair_trace = false, pair_allow_nonwr = false;
  pair->add_option("network", pair_network, "network file (.crn)")->required();
  pair->add_option("host", pair_host, "host graph file (.crn)")->required();
  pair->add_flag("--witness", pair_witness, "print gate witnesses");
  pair->add_flag("--trace", pair_trace, "print the per-vertex constraint matrices");
  pair->add_flag("--allow-nonwr", pair_allow_nonwr,
                 "analyze even when the host graph is not weakly reversible");
  pair->add_option("--json", pair_json, "write a JSON report to this path");

  auto* scan = app.add_subcommand(
      "scan", "maximize the locus dimension over weakly reversible candidate hosts");
  std::string scan_file, scan_candidates, scan_json;
  std::string scan_vertex_set = "sources";
  std::optional<long long> scan_cap;
  int scan_jobs = 1;
  bool scan_no_early_exit = false;
  scan->add_option("file", scan_file, "network file (.crn)")->required();
  scan->add_option("--vertex-set", scan_vertex_set, "candidate vertex set: sources|all")
      ->check(CLI::IsMember({"sources", "all"}));
  scan->add_option("--cap", scan_cap, "stop after this many weakly reversible candidates");
  scan->add_option("--candidates", scan_candidates,
                   "directory of explicit candidate host files (.crn)");
  scan->add_option("--jobs", scan_jobs, "worker threads")->check(CLI::PositiveNumber);
  scan->add_flag("--no-early-exit", scan_no_early_exit,
                 "evaluate every candidate even after the upper bound is attained");
  scan->add_option("--json", scan_json, "write a JSON report to this path");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return run_check(check_file, check_bases, check_json);
  if (pair->parsed()) return run_pair(pair_network, pair_host, pair_witness, pair_trace,
                                      pair_allow_nonwr, pair_json);
  if (scan->parsed())
    return run_scan(scan_file, scan_vertex_set, scan_cap, scan_candidates, scan_jobs,
                    scan_no_early_exit, scan_json);
  return 0;
}
