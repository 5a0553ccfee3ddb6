#include "crn/scan.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace crn {

const char* to_string(EnumerationMode mode) {
  switch (mode) {
    case EnumerationMode::kExhaustive: return "exhaustive";
    case EnumerationMode::kCapped: return "capped";
    case EnumerationMode::kExplicitList: return "explicit-list";
  }
  return "exhaustive";
}

WrSubgraphEnumerator::WrSubgraphEnumerator(EGraph gc) : gc_(std::move(gc)) {}

bool WrSubgraphEnumerator::advance() {
  if (done_) return false;
  const int m = gc_.edge_count();
  if (size_ == 0) {
    if (m == 0) {
      done_ = true;
      return false;
    }
    size_ = 1;
    combo_ = {0};
    return true;
  }
  int i = size_ - 1;
  while (i >= 0 && combo_[i] == m - size_ + i) --i;
  if (i >= 0) {
    ++combo_[i];
    for (int j = i + 1; j < size_; ++j) combo_[j] = combo_[j - 1] + 1;
    return true;
  }
  if (size_ == m) {
    done_ = true;
    return false;
  }
  ++size_;
  combo_.resize(size_);
  for (int j = 0; j < size_; ++j) combo_[j] = j;
  return true;
}

std::optional<EGraph> WrSubgraphEnumerator::next() {
  while (advance()) {
    // Weak reversibility of the edge subset: every edge must close inside a
    // strongly connected component of the induced subgraph.
    std::vector<int> verts;
    for (int idx : combo_) {
      verts.push_back(gc_.edges()[idx].source);
      verts.push_back(gc_.edges()[idx].target);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

    std::vector<int> local(gc_.vertex_count(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);

    std::vector<Reaction> edges;
    edges.reserve(combo_.size());
    for (int idx : combo_)
      edges.push_back({local[gc_.edges()[idx].source], local[gc_.edges()[idx].target]});

    const std::vector<int> comp = scc_ids(static_cast<int>(verts.size()), edges);
    bool ok = true;
    for (const Reaction& e : edges)
      if (comp[e.source] != comp[e.target]) {
        ok = false;
        break;
      }
    if (!ok) continue;

    std::vector<VertexComplex> vertices;
    vertices.reserve(verts.size());
    for (int v : verts) vertices.push_back(gc_.vertices()[v]);
    return EGraph(gc_.species(), std::move(vertices), std::move(edges));
  }
  return std::nullopt;
}

std::vector<EGraph> enumerate_wr_subgraphs(const EGraph& gc, std::optional<long long> cap) {
  if (gc.edge_count() > kMaxExhaustiveEdges && !cap)
    throw EnumerationSizeError(
        "candidate space has 2^" + std::to_string(gc.edge_count()) +
        " edge subsets, beyond the exhaustive limit of 2^" +
        std::to_string(kMaxExhaustiveEdges) +
        "; rerun with a candidate cap or an explicit candidate list");
  WrSubgraphEnumerator stream(gc);
  std::vector<EGraph> out;
  while (!cap || static_cast<long long>(out.size()) < *cap) {
    std::optional<EGraph> g = stream.next();
    if (!g) break;
    out.push_back(std::move(*g));
  }
  return out;
}

CandidateResult evaluate_candidate(const EGraph& network, const EGraph& host,
                                   VertexSetMode mode) {
  if (!is_subgraph(host, complete_graph(network, mode)))
    throw std::invalid_argument("host is not a subgraph of the complete graph on the network");
  DimensionReport report = analyze_pair(network, host);
  CandidateResult out{host, std::move(report), false, false};
  out.contributes_real = out.report.flux_gate.feasible;
  out.contributes = out.report.flux_gate.feasible && out.report.realization_gate.feasible;
  return out;
}

namespace {

// Everything needed to screen a candidate without running the gates, plus
// the gate certificates when a worker already ran them.
struct CandidateEval {
  EGraph host;
  bool weakly_reversible = true;
  int linkage_class_count = 0;
  int host_vertex_count = 0;
  RealizableFluxDims flux;
  int stoich_dim = 0;
  int balanced_kernel = 0;
  int value = 0;  // locus dimension if the gates were to pass
  bool flux_gate_run = false;
  bool realization_gate_run = false;
  FeasibilityCertificate flux_gate;
  FeasibilityCertificate realization_gate;
};

DimensionReport to_report(CandidateEval& ev, int dynamics_kernel_network, int ambient_bound) {
  DimensionReport r;
  r.host_weakly_reversible = ev.weakly_reversible;
  r.linkage_class_count = ev.linkage_class_count;
  r.host_vertex_count = ev.host_vertex_count;
  r.per_vertex = ev.flux.rows;
  r.realizable_flux_dim = ev.flux.total;
  r.stoich_dim_host = ev.stoich_dim;
  r.dynamics_kernel_dim_network = dynamics_kernel_network;
  r.balanced_kernel_dim_host = ev.balanced_kernel;
  r.flux_gate = ev.flux_gate;
  r.realization_gate = ev.realization_gate;
  r.ambient_bound = ambient_bound;
  if (r.flux_gate.feasible) {
    r.balanced_realizable_dim =
        r.realizable_flux_dim - r.host_vertex_count + r.linkage_class_count;
    int value = *r.balanced_realizable_dim + r.stoich_dim_host +
                r.balanced_kernel_dim_host - r.dynamics_kernel_dim_network;
    if (value > ambient_bound) {
      value = ambient_bound;
      r.ambient_capped = true;
    }
    r.real_locus_dim = value;
    if (r.realization_gate.feasible) r.locus_dim = r.real_locus_dim;
  }
  return r;
}

}  // namespace

ScanResult scan(const EGraph& network, const ScanOptions& options) {
  ScanResult result;
  const int bound = network.edge_count();
  const int dynamics_kernel_network = dynamics_kernel_dim(network);

  std::optional<WrSubgraphEnumerator> enumerator;
  const std::vector<EGraph>* explicit_list = nullptr;
  std::size_t list_pos = 0;
  if (options.candidates) {
    result.mode = EnumerationMode::kExplicitList;
    explicit_list = &*options.candidates;
    const EGraph gc = complete_graph(network, options.vertex_mode);
    for (const EGraph& candidate : *explicit_list)
      if (!is_subgraph(candidate, gc))
        throw std::invalid_argument("candidate is not a subgraph of the complete graph on the network");
  } else {
    EGraph gc = complete_graph(network, options.vertex_mode);
    if (gc.edge_count() > kMaxExhaustiveEdges && !options.cap)
      throw EnumerationSizeError(
          "candidate space has 2^" + std::to_string(gc.edge_count()) +
          " edge subsets, beyond the exhaustive limit of 2^" +
          std::to_string(kMaxExhaustiveEdges) +
          "; rerun with a candidate cap or an explicit candidate list");
    result.mode = options.cap ? EnumerationMode::kCapped : EnumerationMode::kExhaustive;
    enumerator.emplace(std::move(gc));
  }

  long long remaining = options.cap.value_or(-1);
  const auto draw = [&]() -> std::optional<EGraph> {
    if (remaining == 0) return std::nullopt;
    std::optional<EGraph> host;
    if (enumerator) {
      host = enumerator->next();
    } else if (explicit_list && list_pos < explicit_list->size()) {
      host = (*explicit_list)[list_pos++];
    }
    if (host && remaining > 0) --remaining;
    return host;
  };

  std::optional<int> best_real, best_full;

  const auto evaluate = [&](EGraph host, std::optional<int> snap_real,
                            std::optional<int> snap_full) {
    CandidateEval ev{std::move(host)};
    const LinkageDecomposition decomposition = linkage_classes(ev.host);
    ev.linkage_class_count = decomposition.class_count();
    ev.host_vertex_count = decomposition.covered_vertex_count();
    ev.weakly_reversible = is_weakly_reversible(ev.host);
    ev.flux = realizable_flux_dims(network, ev.host);
    ev.stoich_dim = stoichiometric_dim(ev.host);
    ev.balanced_kernel = balanced_kernel_dim(ev.host);
    ev.value = (ev.flux.total - ev.host_vertex_count + ev.linkage_class_count) + ev.stoich_dim +
               ev.balanced_kernel - dynamics_kernel_network;
    // Both loci live in the network's rate space, so no candidate can
    // contribute more than its dimension.
    ev.value = std::min(ev.value, bound);
    // A candidate can only raise a maximum if its formula value beats it, so
    // gates are skipped otherwise.
    const bool worth_real = !snap_real || ev.value > *snap_real;
    const bool worth_full = !snap_full || ev.value > *snap_full;
    if (worth_real || worth_full) {
      ev.flux_gate = positive_flux_gate(network, ev.host);
      ev.flux_gate_run = true;
      if (ev.flux_gate.feasible && worth_full) {
        ev.realization_gate = realization_gate(network, ev.host);
        ev.realization_gate_run = true;
      }
    }
    return ev;
  };

  const int jobs = std::max(1, options.jobs);
  const std::size_t batch_size = static_cast<std::size_t>(jobs) * 24;
  bool stop = false;

  while (!stop) {
    std::vector<EGraph> batch;
    batch.reserve(batch_size);
    while (batch.size() < batch_size) {
      std::optional<EGraph> host = draw();
      if (!host) break;
      batch.push_back(std::move(*host));
    }
    if (batch.empty()) break;

    std::vector<std::optional<CandidateEval>> evals(batch.size());
    const std::optional<int> snap_real = best_real, snap_full = best_full;
    if (jobs == 1 || batch.size() == 1) {
      for (std::size_t i = 0; i < batch.size(); ++i)
        evals[i] = evaluate(std::move(batch[i]), snap_real, snap_full);
    } else {
      std::atomic<std::size_t> next_index{0};
      std::exception_ptr first_error;
      std::mutex error_mutex;
      std::vector<std::thread> workers;
      const int worker_count =
          static_cast<int>(std::min(static_cast<std::size_t>(jobs), batch.size()));
      for (int w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
          try {
            while (true) {
              const std::size_t i = next_index.fetch_add(1);
              if (i >= batch.size()) break;
              evals[i] = evaluate(std::move(batch[i]), snap_real, snap_full);
            }
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        });
      }
      for (std::thread& t : workers) t.join();
      if (first_error) std::rethrow_exception(first_error);
    }

    // Candidates commit in canonical order, so results do not depend on the
    // worker count.
    for (std::optional<CandidateEval>& ev_slot : evals) {
      CandidateEval& ev = *ev_slot;
      ++result.candidates_evaluated;
      const bool improves_real = !best_real || ev.value > *best_real;
      const bool improves_full = !best_full || ev.value > *best_full;
      if (!improves_real && !improves_full) continue;
      // Workers screen against a snapshot taken at batch start; the bests
      // only grow during commits, so an improving candidate always has its
      // gates precomputed. The fallbacks keep this loop correct on its own.
      if (!ev.flux_gate_run) {
        ev.flux_gate = positive_flux_gate(network, ev.host);
        ev.flux_gate_run = true;
      }
      if (!ev.flux_gate.feasible) continue;
      if (improves_full && !ev.realization_gate_run) {
        ev.realization_gate = realization_gate(network, ev.host);
        ev.realization_gate_run = true;
      }
      DimensionReport report = to_report(ev, dynamics_kernel_network, bound);
      CandidateResult candidate{std::move(ev.host), std::move(report),
                                true, false};
      candidate.contributes = candidate.report.realization_gate.feasible;
      if (improves_real) {
        best_real = ev.value;
        result.best_real.clear();
        result.best_real.push_back(candidate);
      }
      if (improves_full && candidate.contributes) {
        best_full = ev.value;
        result.best.clear();
        result.best.push_back(std::move(candidate));
        if (options.early_exit && *best_full == bound) {
          stop = true;
          result.early_exit = true;
          break;
        }
      }
    }
  }

  result.real_locus_dim = best_real;
  result.locus_dim = best_full;
  return result;
}

}  // namespace crn
