#pragma once

#include <cstdint>
#include <stdexcept>

#include "earreg/ear_decomposition.hpp"
#include "earreg/graph.hpp"

namespace earreg {

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratorConfig {
  std::size_t ear_count = 1;
  std::size_t max_ear_length = 4;
  double pendant_edge_probability = 0.2;
  double pending_cycle_probability = 0.2;
  std::uint64_t seed = 0;
  /// Carried along for downstream checks; the construction ignores it.
  std::uint64_t q = 3;
  /// 0 means no limit.
  std::size_t max_vertices = 0;
  std::size_t max_retries = 500;
};

/// Throws GeneratorError when a field is out of range.
void check_config(const GeneratorConfig& cfg);

struct GeneratedInstance {
  Graph graph;
  EarDecomposition decomposition;
};

/// Builds a bipartite graph with a weak nested ear decomposition by adding
/// ears one at a time on a 2-colored vertex set. An ear between equally
/// colored vertices gets even length, otherwise odd. Each candidate ear is
/// kept only if the decomposition still validates. The same config always
/// yields the same instance.
GeneratedInstance generate_weak_nested_bipartite(const GeneratorConfig& cfg);

/// Cycle 1..3k plus vertices 3k+i adjacent to 3i-2 and 3i, for even k >= 2.
Graph generate_taino_sun(std::size_t k);

/// The cycle from vertex 1 followed by the k ears of length two.
EarDecomposition taino_sun_decomposition(std::size_t k);

}  // namespace earreg
