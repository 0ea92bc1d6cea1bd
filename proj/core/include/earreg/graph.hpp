#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace earreg {

using Vertex = std::uint32_t;

/// Unordered vertex pair stored with `u < v`.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  /// Normalizes the endpoint order. Throws GraphError on a self-loop.
  static Edge make(Vertex a, Vertex b);

  bool contains(Vertex w) const { return u == w || v == w; }
  Vertex other(Vertex w) const { return w == u ? v : u; }

  auto operator<=>(const Edge&) const = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph with labelled vertices.
///
/// Graphs built through `from_edges` are well formed: at least one edge and no
/// isolated vertex. Removal operations may produce graphs that keep isolated
/// vertices around; `well_formed()` tells the two apart. Vertex labels are
/// never re-indexed. Internally every vertex also has a dense index in
/// [0, vertex_count()) following the sorted label order.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::span<const std::pair<Vertex, Vertex>> edge_list);
  static Graph from_edges(std::initializer_list<std::pair<Vertex, Vertex>> edge_list);
  static Graph from_edges(std::span<const Edge> edge_list);

  /// Builds a graph over an explicit vertex set. Edge endpoints are added to
  /// the vertex set; extra vertices stay isolated.
  static Graph with_vertices(std::vector<Vertex> vertices, std::span<const Edge> edge_list);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  bool has_vertex(Vertex v) const;
  bool has_edge(Vertex a, Vertex b) const;
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

  /// Dense index of `v`; throws GraphError for an unknown vertex.
  std::size_t index_of(Vertex v) const;
  std::optional<std::size_t> find_index(Vertex v) const;
  /// Position of `e` in `edges()`.
  std::optional<std::size_t> edge_index(const Edge& e) const;

  const std::vector<Vertex>& neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  Vertex max_vertex() const { return vertices_.empty() ? 0 : vertices_.back(); }

  std::vector<Vertex> isolated_vertices() const;
  /// At least one edge and no isolated vertex.
  bool well_formed() const;

  bool operator==(const Graph& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_;
  }

 private:
  void build_adjacency();

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Proper 2-coloring; `color.at(v)` is 0 or 1.
struct TwoColoring {
  std::map<Vertex, std::uint8_t> color;
};

/// BFS 2-coloring from the smallest vertex of each component (root gets 0).
std::optional<TwoColoring> find_two_coloring(const Graph& g);
bool is_bipartite(const Graph& g);

bool is_connected(const Graph& g);
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

struct BlockDecomposition {
  std::vector<Graph> blocks;
  std::vector<Vertex> cut_vertices;
};

/// Biconnected components. Blocks are ordered by their smallest vertex, then
/// by edge list. Throws GraphError on disconnected or ill-formed input.
BlockDecomposition block_decomposition(const Graph& g);

struct IndependentSet {
  std::size_t size = 0;
  std::vector<Vertex> witness;
};

inline constexpr std::size_t kDefaultIndependenceCap = 40;

/// Exact independence number by branch and bound. The witness is the
/// lexicographically least maximum independent set. Throws GraphError when
/// the graph has more than `cap` vertices (the cap itself is limited to 64).
IndependentSet independence_number(const Graph& g, std::size_t cap = kDefaultIndependenceCap);

/// Same search restricted to the vertices in `allowed`; edges to vertices
/// outside `allowed` are ignored.
IndependentSet max_independent_subset(const Graph& g, std::span<const Vertex> allowed,
                                      std::size_t cap = kDefaultIndependenceCap);

/// Merges two distinct non-adjacent vertices into `min(v1, v2)` and collapses
/// the parallel edges this creates.
Graph identify_vertices(const Graph& g, Vertex v1, Vertex v2);

/// Result of a removal: the remaining graph (which may keep isolated
/// vertices) and the list of vertices left isolated.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> isolated;
};

Subgraph remove_vertices(const Graph& g, std::span<const Vertex> vs);
Subgraph remove_edges(const Graph& g, std::span<const Edge> es);

/// Subgraph induced by an edge subset (vertex set = endpoints).
Graph edge_subgraph(const Graph& g, std::span<const Edge> es);

std::string to_string(const Edge& e);

}  // namespace earreg
