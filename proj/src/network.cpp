#include "crn/network.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "crn/matrix.hpp"

namespace crn {

EGraph::EGraph(SpeciesTable species, std::vector<VertexComplex> vertices,
               std::vector<Reaction> edges)
    : species_(std::move(species)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (species_.size() < 1) throw std::invalid_argument("species table is empty");
  {
    std::set<std::string> seen;
    for (const std::string& name : species_.names) {
      if (name.empty()) throw std::invalid_argument("empty species name");
      if (!seen.insert(name).second)
        throw std::invalid_argument("duplicate species name: " + name);
    }
  }
  {
    std::set<std::vector<long>> seen;
    for (const VertexComplex& v : vertices_) {
      if (static_cast<int>(v.coords.size()) != species_.size())
        throw std::invalid_argument("vertex coordinate length does not match species count");
      for (long c : v.coords)
        if (c < 0) throw std::invalid_argument("negative vertex coordinate");
      if (!seen.insert(v.coords).second)
        throw std::invalid_argument("duplicate vertex: " + complex_name(species_, v));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Reaction& e = edges_[i];
    if (e.source < 0 || e.source >= vertex_count() || e.target < 0 || e.target >= vertex_count())
      throw std::invalid_argument("edge endpoint out of range");
    if (e.source == e.target)
      throw std::invalid_argument("self-loop at " + vertex_name(e.source));
    if (i > 0 && edges_[i - 1] == e)
      throw std::invalid_argument("duplicate edge " + vertex_name(e.source) + " -> " +
                                  vertex_name(e.target));
  }
  out_edges_.assign(vertices_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i)
    out_edges_[edges_[i].source].push_back(static_cast<int>(i));
}

std::optional<int> EGraph::find_vertex(const VertexComplex& v) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (vertices_[i] == v) return i;
  return std::nullopt;
}

RatVec EGraph::reaction_vector(int edge) const {
  const Reaction& e = edges_[edge];
  RatVec out(species_count());
  for (int d = 0; d < species_count(); ++d)
    out[d] = Rational(vertices_[e.target].coords[d] - vertices_[e.source].coords[d]);
  return out;
}

std::string EGraph::vertex_name(int vertex) const {
  return complex_name(species_, vertices_[vertex]);
}

std::string complex_name(const SpeciesTable& species, const VertexComplex& v) {
  std::string out;
  for (int d = 0; d < species.size(); ++d) {
    const long c = v.coords[d];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (c != 1) out += std::to_string(c) + "*";
    out += species.names[d];
  }
  return out.empty() ? "0" : out;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<int> scc_ids(int vertex_count, const std::vector<Reaction>& edges) {
  std::vector<std::vector<int>> fwd(vertex_count), rev(vertex_count);
  for (const Reaction& e : edges) {
    fwd[e.source].push_back(e.target);
    rev[e.target].push_back(e.source);
  }

  // Kosaraju with explicit stacks.
  std::vector<int> order;
  order.reserve(vertex_count);
  std::vector<char> seen(vertex_count, 0);
  for (int start = 0; start < vertex_count; ++start) {
    if (seen[start]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
    seen[start] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < fwd[v].size()) {
        const int w = fwd[v][next++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  std::vector<int> comp(vertex_count, -1);
  int next_id = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    const int id = next_id++;
    std::vector<int> stack{*it};
    comp[*it] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : rev[v]) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  return comp;
}

LinkageDecomposition linkage_classes(const EGraph& g) {
  Dsu dsu(g.vertex_count());
  std::vector<char> touched(g.vertex_count(), 0);
  for (const Reaction& e : g.edges()) {
    dsu.unite(e.source, e.target);
    touched[e.source] = touched[e.target] = 1;
  }

  const std::vector<int> comp = scc_ids(g.vertex_count(), g.edges());

  LinkageDecomposition out;
  std::map<int, int> class_of_root;  // DSU root -> index into out.classes
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!touched[v]) {
      out.isolated_vertices.push_back(v);
      continue;
    }
    const int root = dsu.find(v);
    auto [it, inserted] = class_of_root.try_emplace(root, static_cast<int>(out.classes.size()));
    if (inserted) out.classes.push_back({});
    out.classes[it->second].vertices.push_back(v);
  }
  for (int e = 0; e < g.edge_count(); ++e)
    out.classes[class_of_root.at(dsu.find(g.edges()[e].source))].edges.push_back(e);
  for (LinkageClass& cls : out.classes) {
    cls.strongly_connected = true;
    for (std::size_t i = 1; i < cls.vertices.size(); ++i)
      if (comp[cls.vertices[i]] != comp[cls.vertices[0]]) {
        cls.strongly_connected = false;
        break;
      }
  }
  return out;
}

int LinkageDecomposition::covered_vertex_count() const {
  int n = 0;
  for (const LinkageClass& cls : classes) n += static_cast<int>(cls.vertices.size());
  return n;
}

bool is_weakly_reversible(const EGraph& g) {
  const std::vector<int> comp = scc_ids(g.vertex_count(), g.edges());
  for (const Reaction& e : g.edges())
    if (comp[e.source] != comp[e.target]) return false;
  return true;
}

int stoichiometric_dim(const EGraph& g) {
  std::vector<RatVec> rows;
  rows.reserve(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) rows.push_back(g.reaction_vector(e));
  return span_rank(rows, g.species_count());
}

EGraph complete_graph(const EGraph& g, VertexSetMode mode) {
  std::vector<VertexComplex> vertices;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (mode == VertexSetMode::kAll || g.out_degree(v) > 0) vertices.push_back(g.vertices()[v]);
  std::vector<Reaction> edges;
  const int m = static_cast<int>(vertices.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) edges.push_back({i, j});
  return EGraph(g.species(), std::move(vertices), std::move(edges));
}

bool is_subgraph(const EGraph& sub, const EGraph& sup) {
  if (!(sub.species() == sup.species()))
    throw SpeciesMismatchError("species tables differ");
  std::vector<int> map(sub.vertex_count(), -1);
  for (int v = 0; v < sub.vertex_count(); ++v) {
    const std::optional<int> w = sup.find_vertex(sub.vertices()[v]);
    if (!w) return false;
    map[v] = *w;
  }
  std::set<std::pair<int, int>> sup_edges;
  for (const Reaction& e : sup.edges()) sup_edges.insert({e.source, e.target});
  for (const Reaction& e : sub.edges())
    if (!sup_edges.count({map[e.source], map[e.target]})) return false;
  return true;
}

bool same_network(const EGraph& a, const EGraph& b) {
  if (!(a.species() == b.species())) return false;
  std::set<std::vector<long>> va, vb;
  for (const VertexComplex& v : a.vertices()) va.insert(v.coords);
  for (const VertexComplex& v : b.vertices()) vb.insert(v.coords);
  if (va != vb) return false;
  std::set<std::pair<std::vector<long>, std::vector<long>>> ea, eb;
  for (const Reaction& e : a.edges())
    ea.insert({a.vertices()[e.source].coords, a.vertices()[e.target].coords});
  for (const Reaction& e : b.edges())
    eb.insert({b.vertices()[e.source].coords, b.vertices()[e.target].coords});
  return ea == eb;
}

EGraph reorder_species(const EGraph& g, const SpeciesTable& table) {
  if (table.size() != g.species_count())
    throw SpeciesMismatchError("species name sets differ");
  std::vector<int> where(table.size(), -1);  // new index -> old index
  for (int d = 0; d < table.size(); ++d) {
    const auto& names = g.species().names;
    const auto it = std::find(names.begin(), names.end(), table.names[d]);
    if (it == names.end())
      throw SpeciesMismatchError("species name sets differ: missing " + table.names[d]);
    where[d] = static_cast<int>(it - names.begin());
  }
  std::vector<VertexComplex> vertices;
  vertices.reserve(g.vertex_count());
  for (const VertexComplex& v : g.vertices()) {
    VertexComplex nv;
    nv.coords.resize(table.size());
    for (int d = 0; d < table.size(); ++d) nv.coords[d] = v.coords[where[d]];
    vertices.push_back(std::move(nv));
  }
  return EGraph(table, std::move(vertices), g.edges());
}

}  // namespace crn
