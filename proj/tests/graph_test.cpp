#include <gtest/gtest.h>

#include <random>

#include "earreg/generators.hpp"
#include "earreg/graph.hpp"
#include "support/fixtures.hpp"

using namespace earreg;
using namespace earreg::testing;

TEST(GraphConstruction, SingleEdge) {
  const Graph g = Graph::from_edges({{1, 2}});
  EXPECT_EQ(g.vertices(), (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.well_formed());
}

TEST(GraphConstruction, CycleAndDeduplication) {
  const Graph g = Graph::from_edges({{1, 2}, {2, 3}, {3, 4}, {4, 1}, {2, 1}});
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.neighbors(1), (std::vector<Vertex>{2, 4}));
  EXPECT_TRUE(g.has_edge(4, 1));
  EXPECT_FALSE(g.has_edge(1, 3));
}

TEST(GraphConstruction, Rejections) {
  EXPECT_THROW(Graph::from_edges({{1, 1}}), GraphError);
  EXPECT_THROW(Graph::from_edges(std::span<const Edge>{}), GraphError);
  EXPECT_THROW(cycle_graph(4).index_of(9), GraphError);
}

TEST(Coloring, EvenCycle) {
  const auto c = find_two_coloring(cycle_graph(4));
  ASSERT_TRUE(c);
  const std::map<Vertex, std::uint8_t> expected{{1, 0}, {2, 1}, {3, 0}, {4, 1}};
  EXPECT_EQ(c->color, expected);
}

TEST(Coloring, OddStructures) {
  EXPECT_FALSE(find_two_coloring(cycle_graph(3)));
  EXPECT_FALSE(is_bipartite(bowtie()));
  EXPECT_TRUE(is_bipartite(three_even_cycles()));
  EXPECT_FALSE(is_bipartite(parallel_paths()));
}

TEST(Coloring, AgreesWithOddCycleSearch) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 400; ++round) {
    const Vertex n = static_cast<Vertex>(2 + round % 6);
    const Graph g = random_graph(rng, n, 0.35);
    const auto c = find_two_coloring(g);
    EXPECT_EQ(c.has_value(), !has_odd_cycle_bruteforce(g));
    if (c) {
      for (const Edge& e : g.edges()) {
        EXPECT_NE(c->color.at(e.u), c->color.at(e.v));
      }
    }
  }
}

TEST(Connectivity, Components) {
  const Graph g = Graph::from_edges({{1, 2}, {3, 4}, {4, 5}});
  EXPECT_FALSE(is_connected(g));
  const auto comps = connected_components(g);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0], (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(comps[1], (std::vector<Vertex>{3, 4, 5}));
}

TEST(Blocks, Bowtie) {
  const BlockDecomposition b = block_decomposition(bowtie());
  ASSERT_EQ(b.blocks.size(), 3u);
  EXPECT_EQ(b.blocks[0].vertices(), (std::vector<Vertex>{1, 2, 3}));
  EXPECT_EQ(b.blocks[1].vertices(), (std::vector<Vertex>{3, 4}));
  EXPECT_EQ(b.blocks[2].vertices(), (std::vector<Vertex>{4, 5, 6}));
  EXPECT_EQ(b.cut_vertices, (std::vector<Vertex>{3, 4}));
}

TEST(Blocks, CycleAndPath) {
  EXPECT_EQ(block_decomposition(cycle_graph(6)).blocks.size(), 1u);
  const auto p = block_decomposition(path_graph(4));
  EXPECT_EQ(p.blocks.size(), 3u);
  for (const Graph& b : p.blocks) {
    EXPECT_EQ(b.edge_count(), 1u);
  }
}

TEST(Blocks, DisconnectedInputRejected) {
  EXPECT_THROW(block_decomposition(Graph::from_edges({{1, 2}, {3, 4}})), GraphError);
}

TEST(Blocks, PartitionAndBiconnectivity) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const Graph g = random_connected_graph(rng, static_cast<Vertex>(3 + round % 7), 0.2);
    const BlockDecomposition b = block_decomposition(g);
    std::vector<Edge> all;
    for (const Graph& block : b.blocks) {
      all.insert(all.end(), block.edges().begin(), block.edges().end());
      if (block.edge_count() == 1) {
        continue;
      }
      ASSERT_GE(block.vertex_count(), 3u);
      for (Vertex v : block.vertices()) {
        std::vector<Vertex> rest;
        for (Vertex w : block.vertices()) {
          if (w != v) {
            rest.push_back(w);
          }
        }
        EXPECT_TRUE(connected_on(block, rest)) << "block not 2-connected after removing " << v;
      }
    }
    std::sort(all.begin(), all.end());
    EXPECT_EQ(all, g.edges());
    for (Vertex v : g.vertices()) {
      std::vector<Vertex> rest;
      for (Vertex w : g.vertices()) {
        if (w != v) {
          rest.push_back(w);
        }
      }
      const bool cut = !connected_on(g, rest);
      EXPECT_EQ(cut, std::binary_search(b.cut_vertices.begin(), b.cut_vertices.end(), v));
    }
  }
}

TEST(Independence, SmallFamilies) {
  EXPECT_EQ(independence_number(cycle_graph(6)).size, 3u);
  EXPECT_EQ(independence_number(complete_bipartite(2, 3)).size, 3u);
  EXPECT_EQ(independence_number(generate_taino_sun(2)).size, 4u);
  const IndependentSet s = independence_number(cycle_graph(6));
  EXPECT_EQ(s.witness, (std::vector<Vertex>{1, 3, 5}));
}

TEST(Independence, AgreesWithSubsetEnumeration) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 150; ++round) {
    const Graph g = random_graph(rng, static_cast<Vertex>(2 + round % 11), 0.3);
    const IndependentSet s = independence_number(g);
    EXPECT_EQ(s.size, alpha_bruteforce(g));
    EXPECT_EQ(s.witness.size(), s.size);
    for (std::size_t i = 0; i < s.witness.size(); ++i) {
      for (std::size_t j = i + 1; j < s.witness.size(); ++j) {
        EXPECT_FALSE(g.has_edge(s.witness[i], s.witness[j]));
      }
    }
  }
}

TEST(Independence, CapEnforced) {
  EXPECT_THROW(independence_number(cycle_graph(12), 10), GraphError);
}

TEST(Identify, PathCollapses) {
  const Graph h = identify_vertices(path_graph(3), 1, 3);
  EXPECT_EQ(h.edges(), (std::vector<Edge>{Edge::make(1, 2)}));
}

TEST(Identify, HexagonBecomesTwoTriangles) {
  const Graph h = identify_vertices(cycle_graph(6), 1, 4);
  EXPECT_EQ(h.vertex_count(), 5u);
  EXPECT_EQ(h.edge_count(), 6u);
  EXPECT_EQ(h.degree(1), 4u);
  EXPECT_TRUE(h.has_edge(2, 3) && h.has_edge(5, 6));
  EXPECT_EQ(block_decomposition(h).blocks.size(), 2u);
}

TEST(Identify, SquareBecomesPath) {
  const Graph h = identify_vertices(cycle_graph(4), 1, 3);
  EXPECT_EQ(h.edges(), (std::vector<Edge>{Edge::make(1, 2), Edge::make(1, 4)}));
}

TEST(Identify, Rejections) {
  EXPECT_THROW(identify_vertices(cycle_graph(4), 1, 2), GraphError);
  EXPECT_THROW(identify_vertices(cycle_graph(4), 1, 1), GraphError);
  EXPECT_THROW(identify_vertices(cycle_graph(4), 1, 9), GraphError);
}

TEST(Identify, OutputIsSimple) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    const Graph g = random_graph(rng, 7, 0.4);
    for (Vertex a : g.vertices()) {
      for (Vertex b : g.vertices()) {
        if (a < b && !g.has_edge(a, b)) {
          const Graph h = identify_vertices(g, a, b);
          EXPECT_EQ(h.vertex_count(), g.vertex_count() - 1);
          for (const Edge& e : h.edges()) {
            EXPECT_NE(e.u, e.v);
          }
          EXPECT_TRUE(std::adjacent_find(h.edges().begin(), h.edges().end()) == h.edges().end());
        }
      }
    }
  }
}

TEST(Removal, Vertices) {
  const Subgraph s = remove_vertices(cycle_graph(4), std::vector<Vertex>{1});
  EXPECT_EQ(s.graph.edges(), (std::vector<Edge>{Edge::make(2, 3), Edge::make(3, 4)}));
  EXPECT_TRUE(s.isolated.empty());
  EXPECT_THROW(remove_vertices(cycle_graph(4), std::vector<Vertex>{7}), GraphError);
}

TEST(Removal, Edges) {
  const Subgraph s = remove_edges(Graph::from_edges({{1, 2}}), std::vector<Edge>{Edge::make(1, 2)});
  EXPECT_EQ(s.isolated, (std::vector<Vertex>{1, 2}));
  EXPECT_FALSE(s.graph.well_formed());
  const Subgraph p = remove_edges(cycle_graph(4), std::vector<Edge>{Edge::make(1, 2)});
  EXPECT_TRUE(is_connected(p.graph));
  EXPECT_EQ(p.graph.edge_count(), 3u);
  EXPECT_THROW(remove_edges(cycle_graph(4), std::vector<Edge>{Edge::make(1, 3)}), GraphError);
}
