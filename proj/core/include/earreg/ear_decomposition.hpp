#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "earreg/graph.hpp"

namespace earreg {

enum class EarKind {
  open_ear,       ///< distinct end-vertices, length >= 2
  pending_cycle,  ///< end-vertices coincide
  pendant_edge,   ///< length 1, exactly one end-vertex already placed
  trivial_ear,    ///< length 1, both end-vertices already placed
};

std::string_view to_string(EarKind kind);

/// A path v_0, ..., v_l of a decomposition together with its kind.
struct Ear {
  std::vector<Vertex> path;
  EarKind kind = EarKind::open_ear;

  std::size_t length() const { return path.empty() ? 0 : path.size() - 1; }
  Vertex first() const { return path.front(); }
  Vertex last() const { return path.back(); }
  bool closed() const { return path.size() > 1 && path.front() == path.back(); }
  bool even() const { return length() % 2 == 0; }
  std::vector<Edge> edges() const;
  std::vector<Vertex> inner() const;
};

/// Sequence P_0, P_1, ..., P_r where P_0 is a single vertex and each P_i is a
/// path. Indices follow that numbering throughout the library: path index 0
/// is the base vertex and `ear(i)` for i in [1, r] is P_i.
///
/// Ear kinds, nest hosts and nest intervals are derived once at construction
/// from the path order. The host of P_i is the least j < i such that P_j
/// contains both end-vertices (the attached end-vertex for a pendant edge).
class EarDecomposition {
 public:
  EarDecomposition(Vertex base, std::vector<std::vector<Vertex>> paths);

  Vertex base() const { return base_; }
  std::size_t ear_count() const { return ears_.size(); }
  const Ear& ear(std::size_t i) const;
  const std::vector<Ear>& ears() const { return ears_; }

  std::optional<std::size_t> nest_host(std::size_t i) const;
  /// Stored nest interval of P_i (empty when P_i has no host).
  const std::vector<Vertex>& stored_interval(std::size_t i) const;

  /// Vertex sequence of path `p`; `{base}` for p == 0.
  std::vector<Vertex> path_vertices(std::size_t p) const;
  std::vector<std::vector<Vertex>> paths() const;

  bool operator==(const EarDecomposition& other) const;

 private:
  Vertex base_;
  std::vector<Ear> ears_;
  std::vector<std::optional<std::size_t>> hosts_;
  std::vector<std::vector<Vertex>> intervals_;
};

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a result that the theory guarantees fails to materialize.
/// Carries the decomposition that triggered it.
class InternalInconsistency : public std::logic_error {
 public:
  InternalInconsistency(const std::string& what, std::optional<EarDecomposition> decomposition = std::nullopt)
      : std::logic_error(what), decomposition_(std::move(decomposition)) {}
  const std::optional<EarDecomposition>& decomposition() const { return decomposition_; }

 private:
  std::optional<EarDecomposition> decomposition_;
};

/// Subpath of `host` between `a` and `b`, or `{a}` when a == b. For a closed
/// host whose end-vertex is one of a, b there are two candidate arcs; the
/// shorter one is returned, ties going to the arc that starts at position 0.
std::optional<std::vector<Vertex>> induced_subpath(std::span<const Vertex> host, Vertex a, Vertex b);

enum class DecompositionClass { none, plain, open, nested, weak_nested };
std::string_view to_string(DecompositionClass c);

enum class Rule {
  base_vertex,
  path_shape,
  unknown_edge,
  edge_reused,
  edges_uncovered,
  end_vertex,
  inner_vertex,
  no_host,
  nesting,
};
std::string_view to_string(Rule rule);

struct Violation {
  std::size_t path = 0;
  Rule rule = Rule::path_shape;
  std::string message;
};

struct ValidationReport {
  bool valid = false;
  DecompositionClass classification = DecompositionClass::none;
  /// Plain decompositions whose P_2..P_r all have distinct end-vertices.
  bool open = false;
  std::vector<Violation> violations;
  /// Nesting problems of a decomposition that is still a valid plain one.
  std::vector<Violation> notes;

  bool weak_nested() const {
    return classification == DecompositionClass::nested || classification == DecompositionClass::weak_nested;
  }
};

/// Checks edge partition, attachment of each path to the earlier union,
/// freshness of inner vertices, nest hosts and the nesting condition, and
/// reports the strongest class that holds (nested > weak nested > open >
/// plain). `valid` means some class holds.
ValidationReport validate(const Graph& g, const EarDecomposition& d);

/// Number of even ears plus pendant edges.
std::size_t epsilon(const EarDecomposition& d);

/// Nest interval of P_i in its host. Throws DecompositionError when P_i has
/// no host.
std::vector<Vertex> nest_interval(const EarDecomposition& d, std::size_t i);

struct SearchOptions {
  std::uint64_t budget = 2'000'000;
  /// Randomizes base order and tie order among equally short candidates.
  std::optional<std::uint64_t> seed;
  /// Restrict the search to this base vertex.
  std::optional<Vertex> base;
};

enum class SearchStatus {
  found,
  budget_exhausted,
  /// Every branch was explored without success.
  not_found,
};
std::string_view to_string(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::not_found;
  std::optional<EarDecomposition> decomposition;
  std::uint64_t expansions = 0;
};

/// Backtracking search for a weak nested ear decomposition. Closing ears are
/// tried shortest first, pendant edges last; failed partial decompositions
/// are memoized by their set of paths.
SearchOutcome find_weak_nested(const Graph& g, const SearchOptions& options = {});

/// Chain decomposition from a DFS rooted at the smallest vertex. Present iff
/// the graph is connected and 2-edge-connected.
std::optional<EarDecomposition> find_ear_decomposition(const Graph& g);

/// True when every inner vertex of `path` has degree two in `g`.
bool is_ear_of(const Graph& g, std::span<const Vertex> path);

/// Least i >= 1 such that P_i is a pendant edge of g, a pending cycle of g, or
/// an ear of g with distinct, previously placed end-vertices v, w such that
/// every P_k containing v and w induces an ear of g between them. Throws
/// InternalInconsistency when no index qualifies.
std::size_t select_reducible_ear(const Graph& g, const EarDecomposition& d);

struct ReducedInstance {
  Graph graph;
  EarDecomposition decomposition;
};

/// Deletes P_i: its edges and inner vertices, or its leaf for a pendant edge
/// of g. When the leaf is the base vertex, the other end becomes the base.
ReducedInstance remove_ear(const Graph& g, const EarDecomposition& d, std::size_t i);

struct ReplaceEar {
  std::size_t new_length = 1;
};
struct ContractEar {};
using EarModification = std::variant<ReplaceEar, ContractEar>;

/// Replaces the open ear `path` of a bipartite graph by a fresh path of the
/// same parity (fresh vertex ids above max_vertex()) or, for even length,
/// deletes it and identifies its end-vertices. Parallel edges are collapsed.
Graph bipartite_ear_modification(const Graph& g, std::span<const Vertex> path, const EarModification& mode);

}  // namespace earreg
