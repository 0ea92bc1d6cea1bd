#include "earreg/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <set>

namespace earreg {

Edge Edge::make(Vertex a, Vertex b) {
  if (a == b) {
    throw GraphError("self-loop at vertex " + std::to_string(a));
  }
  return a < b ? Edge{a, b} : Edge{b, a};
}

std::string to_string(const Edge& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

Graph Graph::from_edges(std::span<const std::pair<Vertex, Vertex>> edge_list) {
  std::vector<Edge> edges;
  edges.reserve(edge_list.size());
  for (const auto& [a, b] : edge_list) {
    edges.push_back(Edge::make(a, b));
  }
  return from_edges(std::span<const Edge>(edges));
}

Graph Graph::from_edges(std::initializer_list<std::pair<Vertex, Vertex>> edge_list) {
  return from_edges(std::span<const std::pair<Vertex, Vertex>>(edge_list.begin(), edge_list.size()));
}

Graph Graph::from_edges(std::span<const Edge> edge_list) {
  if (edge_list.empty()) {
    throw GraphError("empty edge list");
  }
  for (const Edge& e : edge_list) {
    if (e.u == e.v) {
      throw GraphError("self-loop at vertex " + std::to_string(e.u));
    }
  }
  return with_vertices({}, edge_list);
}

Graph Graph::with_vertices(std::vector<Vertex> vertices, std::span<const Edge> edge_list) {
  Graph g;
  g.edges_.reserve(edge_list.size());
  for (const Edge& e : edge_list) {
    Edge n = Edge::make(e.u, e.v);
    g.edges_.push_back(n);
    vertices.push_back(n.u);
    vertices.push_back(n.v);
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  g.vertices_ = std::move(vertices);
  g.build_adjacency();
  return g;
}

void Graph::build_adjacency() {
  adjacency_.assign(vertices_.size(), {});
  for (const Edge& e : edges_) {
    adjacency_[index_of(e.u)].push_back(e.v);
    adjacency_[index_of(e.v)].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
  }
}

std::optional<std::size_t> Graph::find_index(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t Graph::index_of(Vertex v) const {
  auto idx = find_index(v);
  if (!idx) {
    throw GraphError("unknown vertex " + std::to_string(v));
  }
  return *idx;
}

bool Graph::has_vertex(Vertex v) const { return find_index(v).has_value(); }

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a == b) {
    return false;
  }
  return edge_index(a < b ? Edge{a, b} : Edge{b, a}).has_value();
}

std::optional<std::size_t> Graph::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - edges_.begin());
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const { return adjacency_[index_of(v)]; }

std::vector<Vertex> Graph::isolated_vertices() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (adjacency_[i].empty()) {
      out.push_back(vertices_[i]);
    }
  }
  return out;
}

bool Graph::well_formed() const { return !edges_.empty() && isolated_vertices().empty(); }

std::optional<TwoColoring> find_two_coloring(const Graph& g) {
  TwoColoring coloring;
  for (Vertex root : g.vertices()) {
    if (coloring.color.contains(root)) {
      continue;
    }
    coloring.color[root] = 0;
    std::queue<Vertex> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      Vertex v = frontier.front();
      frontier.pop();
      const std::uint8_t c = coloring.color.at(v);
      for (Vertex w : g.neighbors(v)) {
        auto it = coloring.color.find(w);
        if (it == coloring.color.end()) {
          coloring.color[w] = static_cast<std::uint8_t>(1 - c);
          frontier.push(w);
        } else if (it->second == c) {
          return std::nullopt;
        }
      }
    }
  }
  return coloring;
}

bool is_bipartite(const Graph& g) { return find_two_coloring(g).has_value(); }

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> components;
  std::vector<bool> seen(g.vertex_count(), false);
  for (std::size_t start = 0; start < g.vertex_count(); ++start) {
    if (seen[start]) {
      continue;
    }
    std::vector<Vertex> comp;
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      Vertex v = g.vertices()[i];
      comp.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        std::size_t j = g.index_of(w);
        if (!seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

BlockDecomposition block_decomposition(const Graph& g) {
  if (!g.well_formed()) {
    throw GraphError("block decomposition needs a graph with edges and no isolated vertices");
  }
  if (!is_connected(g)) {
    throw GraphError("block decomposition needs a connected graph");
  }
  const std::size_t n = g.vertex_count();
  std::vector<int> disc(n, -1);
  std::vector<int> low(n, 0);
  std::vector<Edge> edge_stack;
  std::vector<std::vector<Edge>> block_edges;
  std::set<Vertex> cuts;
  int timer = 0;

  std::function<void(std::size_t, std::optional<std::size_t>)> dfs = [&](std::size_t v, std::optional<std::size_t> parent) {
    disc[v] = low[v] = timer++;
    int children = 0;
    const Vertex vl = g.vertices()[v];
    for (Vertex wl : g.neighbors(vl)) {
      const std::size_t w = g.index_of(wl);
      if (parent && w == *parent) {
        continue;
      }
      if (disc[w] == -1) {
        ++children;
        edge_stack.push_back(Edge::make(vl, wl));
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          if (parent || children > 1) {
            cuts.insert(vl);
          }
          std::vector<Edge> block;
          const Edge split = Edge::make(vl, wl);
          while (true) {
            Edge e = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(e);
            if (e == split) {
              break;
            }
          }
          block_edges.push_back(std::move(block));
        }
      } else if (disc[w] < disc[v]) {
        low[v] = std::min(low[v], disc[w]);
        edge_stack.push_back(Edge::make(vl, wl));
      }
    }
  };
  dfs(0, std::nullopt);

  BlockDecomposition out;
  for (auto& edges : block_edges) {
    out.blocks.push_back(Graph::from_edges(std::span<const Edge>(edges)));
  }
  std::sort(out.blocks.begin(), out.blocks.end(), [](const Graph& a, const Graph& b) {
    if (a.vertices().front() != b.vertices().front()) {
      return a.vertices().front() < b.vertices().front();
    }
    return a.edges() < b.edges();
  });
  out.cut_vertices.assign(cuts.begin(), cuts.end());
  return out;
}

namespace {

// Branch and bound over 64-bit vertex masks, lowest index first with the
// include branch explored before the exclude branch. Improvements are only
// accepted when strictly larger, so the first maximum found is the
// lexicographically least one.
class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(std::vector<std::uint64_t> adjacency) : adj_(std::move(adjacency)) {}

  std::uint64_t run(std::uint64_t candidates) {
    best_size_ = 0;
    best_ = 0;
    branch(candidates, 0, 0);
    return best_;
  }

 private:
  // Greedy clique cover of `cand`; its size bounds any independent subset.
  std::size_t clique_cover_bound(std::uint64_t cand) const {
    cliques_.clear();
    while (cand) {
      const int v = std::countr_zero(cand);
      cand &= cand - 1;
      bool placed = false;
      for (auto& clique : cliques_) {
        if ((clique & ~adj_[v]) == 0) {
          clique |= std::uint64_t{1} << v;
          placed = true;
          break;
        }
      }
      if (!placed) {
        cliques_.push_back(std::uint64_t{1} << v);
      }
    }
    return cliques_.size();
  }

  void branch(std::uint64_t cand, std::uint64_t current, std::size_t size) {
    if (cand == 0) {
      if (size > best_size_) {
        best_size_ = size;
        best_ = current;
      }
      return;
    }
    if (size + static_cast<std::size_t>(std::popcount(cand)) <= best_size_) {
      return;
    }
    if (size + clique_cover_bound(cand) <= best_size_) {
      return;
    }
    const int v = std::countr_zero(cand);
    const std::uint64_t bit = std::uint64_t{1} << v;
    branch(cand & ~bit & ~adj_[v], current | bit, size + 1);
    branch(cand & ~bit, current, size);
  }

  std::vector<std::uint64_t> adj_;
  mutable std::vector<std::uint64_t> cliques_;
  std::uint64_t best_ = 0;
  std::size_t best_size_ = 0;
};

}  // namespace

IndependentSet max_independent_subset(const Graph& g, std::span<const Vertex> allowed, std::size_t cap) {
  cap = std::min<std::size_t>(cap, 64);
  std::vector<Vertex> local(allowed.begin(), allowed.end());
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());
  if (local.size() > cap) {
    throw GraphError("independence search limited to " + std::to_string(cap) + " vertices, got " +
                     std::to_string(local.size()));
  }
  std::vector<std::uint64_t> adj(local.size(), 0);
  for (std::size_t i = 0; i < local.size(); ++i) {
    (void)g.index_of(local[i]);
    for (Vertex w : g.neighbors(local[i])) {
      auto it = std::lower_bound(local.begin(), local.end(), w);
      if (it != local.end() && *it == w) {
        adj[i] |= std::uint64_t{1} << (it - local.begin());
      }
    }
  }
  const std::uint64_t all = local.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << local.size()) - 1;
  IndependentSetSearch search(std::move(adj));
  std::uint64_t best = search.run(all);
  IndependentSet out;
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (best >> i & 1U) {
      out.witness.push_back(local[i]);
    }
  }
  out.size = out.witness.size();
  return out;
}

IndependentSet independence_number(const Graph& g, std::size_t cap) {
  return max_independent_subset(g, g.vertices(), cap);
}

Graph identify_vertices(const Graph& g, Vertex v1, Vertex v2) {
  if (v1 == v2) {
    throw GraphError("cannot identify a vertex with itself");
  }
  if (!g.has_vertex(v1) || !g.has_vertex(v2)) {
    throw GraphError("identify_vertices: unknown vertex");
  }
  if (g.has_edge(v1, v2)) {
    throw GraphError("identify_vertices: vertices " + std::to_string(v1) + " and " + std::to_string(v2) +
                     " are adjacent");
  }
  const Vertex keep = std::min(v1, v2);
  const Vertex drop = std::max(v1, v2);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    Vertex a = e.u == drop ? keep : e.u;
    Vertex b = e.v == drop ? keep : e.v;
    edges.push_back(Edge::make(a, b));
  }
  std::vector<Vertex> vertices;
  for (Vertex v : g.vertices()) {
    if (v != drop) {
      vertices.push_back(v);
    }
  }
  return Graph::with_vertices(std::move(vertices), edges);
}

namespace {

Subgraph make_subgraph(std::vector<Vertex> vertices, const std::vector<Edge>& edges) {
  Subgraph out;
  out.graph = Graph::with_vertices(std::move(vertices), edges);
  out.isolated = out.graph.isolated_vertices();
  return out;
}

}  // namespace

Subgraph remove_vertices(const Graph& g, std::span<const Vertex> vs) {
  std::set<Vertex> gone;
  for (Vertex v : vs) {
    if (!g.has_vertex(v)) {
      throw GraphError("remove_vertices: unknown vertex " + std::to_string(v));
    }
    gone.insert(v);
  }
  std::vector<Vertex> vertices;
  for (Vertex v : g.vertices()) {
    if (!gone.contains(v)) {
      vertices.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (!gone.contains(e.u) && !gone.contains(e.v)) {
      edges.push_back(e);
    }
  }
  return make_subgraph(std::move(vertices), edges);
}

Subgraph remove_edges(const Graph& g, std::span<const Edge> es) {
  std::set<Edge> gone;
  for (const Edge& e : es) {
    Edge n = Edge::make(e.u, e.v);
    if (!g.has_edge(n)) {
      throw GraphError("remove_edges: unknown edge " + to_string(n));
    }
    gone.insert(n);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (!gone.contains(e)) {
      edges.push_back(e);
    }
  }
  return make_subgraph(g.vertices(), edges);
}

Graph edge_subgraph(const Graph& g, std::span<const Edge> es) {
  for (const Edge& e : es) {
    if (!g.has_edge(e)) {
      throw GraphError("edge_subgraph: unknown edge " + to_string(e));
    }
  }
  return Graph::from_edges(es);
}

}  // namespace earreg
