#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "earreg/ear_decomposition.hpp"
#include "earreg/generators.hpp"
#include "earreg/graph.hpp"

namespace earreg::testing {

inline Graph path_graph(Vertex n) {
  std::vector<Edge> es;
  for (Vertex v = 1; v < n; ++v) {
    es.push_back(Edge::make(v, v + 1));
  }
  return Graph::from_edges(std::span<const Edge>(es));
}

inline Graph cycle_graph(Vertex n) {
  std::vector<Edge> es;
  for (Vertex v = 1; v <= n; ++v) {
    es.push_back(Edge::make(v, v == n ? 1 : v + 1));
  }
  return Graph::from_edges(std::span<const Edge>(es));
}

inline Graph complete_graph(Vertex n) {
  std::vector<Edge> es;
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) {
      es.push_back(Edge::make(a, b));
    }
  }
  return Graph::from_edges(std::span<const Edge>(es));
}

inline Graph complete_bipartite(Vertex a, Vertex b) {
  std::vector<Edge> es;
  for (Vertex x = 1; x <= a; ++x) {
    for (Vertex y = a + 1; y <= a + b; ++y) {
      es.push_back(Edge::make(x, y));
    }
  }
  return Graph::from_edges(std::span<const Edge>(es));
}

inline Graph bowtie() { return Graph::from_edges({{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 6}}); }

/// Bipartite, eight vertices, three even cycles sharing edges.
inline Graph three_even_cycles() {
  return Graph::from_edges({{1, 5}, {5, 8}, {8, 7}, {7, 3}, {3, 2}, {2, 1}, {5, 6}, {6, 7}, {1, 4}, {4, 3}});
}

/// The same graph with {2,8} added, which closes a spanning 8-cycle.
inline Graph three_even_cycles_chord() {
  return Graph::from_edges(
      {{1, 5}, {5, 8}, {8, 7}, {7, 3}, {3, 2}, {2, 1}, {5, 6}, {6, 7}, {1, 4}, {4, 3}, {2, 8}});
}

/// Paths of lengths 2, 2 and 3 between vertices 1 and 4.
inline Graph parallel_paths() { return Graph::from_edges({{1, 2}, {2, 3}, {3, 4}, {1, 5}, {5, 4}, {1, 6}, {6, 4}}); }

inline Graph nested_twelve() {
  return Graph::from_edges({{1, 2}, {1, 5}, {1, 3}, {3, 4}, {4, 5}, {3, 6}, {6, 7}, {7, 4}, {7, 8}, {8, 9},
                            {9, 10}, {10, 11}, {11, 12}, {12, 9}});
}

inline EarDecomposition nested_twelve_decomposition() {
  return EarDecomposition(1, {{1, 2}, {1, 5}, {1, 3, 4, 5}, {3, 6, 7, 4}, {7, 8}, {8, 9}, {9, 10, 11, 12, 9}});
}

/// Two 4-cycles sharing vertex 1.
inline Graph two_squares() {
  return Graph::from_edges({{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {5, 6}, {6, 7}, {7, 1}});
}

/// Random simple graph without isolated vertices on up to `n` vertices.
inline Graph random_graph(std::mt19937_64& rng, Vertex n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) {
      if (coin(rng)) {
        es.push_back(Edge::make(a, b));
      }
    }
  }
  if (es.empty()) {
    es.push_back(Edge::make(1, 2));
  }
  return Graph::from_edges(std::span<const Edge>(es));
}

inline Graph random_connected_graph(std::mt19937_64& rng, Vertex n, double p) {
  std::vector<Edge> es;
  for (Vertex v = 2; v <= n; ++v) {
    es.push_back(Edge::make(v, std::uniform_int_distribution<Vertex>(1, v - 1)(rng)));
  }
  std::bernoulli_distribution coin(p);
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) {
      if (coin(rng)) {
        es.push_back(Edge::make(a, b));
      }
    }
  }
  return Graph::from_edges(std::span<const Edge>(es));
}

// Brute-force references.

inline bool has_odd_cycle_bruteforce(const Graph& g) {
  // A closed walk of odd length exists iff some vertex reaches itself with
  // odd parity in the doubled graph.
  const std::size_t n = g.vertex_count();
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::array<char, 2>> seen(n, {0, 0});
    std::vector<std::pair<std::size_t, int>> stack{{s, 0}};
    seen[s][0] = 1;
    while (!stack.empty()) {
      auto [v, parity] = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(g.vertices()[v])) {
        const std::size_t i = g.index_of(w);
        const int p = 1 - parity;
        if (!seen[i][p]) {
          seen[i][p] = 1;
          stack.emplace_back(i, p);
        }
      }
    }
    if (seen[s][1]) {
      return true;
    }
  }
  return false;
}

inline std::size_t alpha_bruteforce(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool independent = true;
    for (const Edge& e : g.edges()) {
      if ((mask >> g.index_of(e.u) & 1) && (mask >> g.index_of(e.v) & 1)) {
        independent = false;
        break;
      }
    }
    if (independent) {
      best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
    }
  }
  return best;
}

/// Connectivity of the vertex set `keep` using edges of g inside it.
inline bool connected_on(const Graph& g, const std::vector<Vertex>& keep) {
  if (keep.empty()) {
    return true;
  }
  std::vector<Vertex> seen{keep.front()};
  std::vector<Vertex> stack{keep.front()};
  auto kept = [&](Vertex v) { return std::find(keep.begin(), keep.end(), v) != keep.end(); };
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (kept(w) && std::find(seen.begin(), seen.end(), w) == seen.end()) {
        seen.push_back(w);
        stack.push_back(w);
      }
    }
  }
  return seen.size() == keep.size();
}

/// Generated instance, or nothing when the generator gives up.
inline std::optional<GeneratedInstance> try_generate(const GeneratorConfig& cfg) {
  try {
    return generate_weak_nested_bipartite(cfg);
  } catch (const GeneratorError&) {
    return std::nullopt;
  }
}

}  // namespace earreg::testing
