#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "earreg/ear_decomposition.hpp"
#include "earreg/graph.hpp"

namespace earreg {

class RegularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Order q >= 3 of the coefficient field. Only q - 1 enters the computations,
/// so q is accepted even when it is not a prime power; `prime_power()`
/// reports whether a field of that order exists.
class FieldOrder {
 public:
  explicit FieldOrder(std::uint64_t q);

  std::uint64_t q() const { return q_; }
  std::uint64_t modulus() const { return q_ - 1; }
  /// q - 2, the unit in which closed forms are expressed.
  std::int64_t unit() const { return static_cast<std::int64_t>(q_) - 2; }
  bool prime_power() const { return prime_power_; }

 private:
  std::uint64_t q_;
  bool prime_power_;
};

bool is_prime_power(std::uint64_t n);

/// ceil(numerator * (q-2) / denominator) + constant.
struct LinearForm {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  std::int64_t constant = 0;

  static LinearForm units(std::int64_t c) { return {c, 1, 0}; }
  std::int64_t evaluate(const FieldOrder& q) const;
  std::string to_string() const;
  bool operator==(const LinearForm&) const = default;
};

/// Sum of forms; absent when a non-integral coefficient is involved.
std::optional<LinearForm> add(const std::optional<LinearForm>& a, const std::optional<LinearForm>& b);

struct DerivationStep {
  std::string rule;
  std::string detail;
  std::int64_t contribution = 0;
};

enum class ResultKind { exact, interval };

struct RegularityResult {
  ResultKind kind = ResultKind::exact;
  std::int64_t lower = 0;
  /// Absent means unbounded.
  std::optional<std::int64_t> upper;
  std::optional<LinearForm> lower_form;
  std::optional<LinearForm> upper_form;
  std::vector<DerivationStep> trace;

  static RegularityResult exact_value(const LinearForm& form, const FieldOrder& q);

  bool exact() const { return kind == ResultKind::exact; }
  /// Exact, or an interval with equal ends.
  bool determined() const { return upper && lower == *upper; }
  /// Throws RegularityError unless determined().
  std::int64_t value() const;
  bool contains(std::int64_t v) const { return v >= lower && (!upper || v <= *upper); }
};

/// Trees, odd and even cycles, K_n (n >= 4) and K_{a,b}, recognized
/// structurally.
std::optional<RegularityResult> reg_closed_family(const Graph& g, const FieldOrder& q);

/// (|V| + eps - 3)/2 * (q-2) for a bipartite graph with a weak nested ear
/// decomposition.
RegularityResult reg_weak_nested(const Graph& g, const EarDecomposition& d, const FieldOrder& q);

/// Same value by repeatedly removing a reducible ear and summing the
/// contributions; every intermediate decomposition is revalidated.
RegularityResult reg_peel(const Graph& g, const EarDecomposition& d, const FieldOrder& q);

using BlockRegularity = std::function<RegularityResult(const Graph& block, const FieldOrder& q)>;

/// Sum over blocks plus (m-1)(q-2) for a connected bipartite graph with m
/// blocks.
RegularityResult reg_via_blocks(const Graph& g, const FieldOrder& q, const BlockRegularity& block_reg);

/// Closed families first, then a weak nested decomposition found by search,
/// else bounds.
BlockRegularity make_formula_provider(std::uint64_t search_budget = SearchOptions{}.budget);

struct StrippedGraph {
  Graph graph;
  std::vector<Vertex> removed;
  std::int64_t contribution = 0;
};

/// Removes every current degree-one vertex at once.
StrippedGraph strip_leaves(const Graph& g, const FieldOrder& q);

/// Which hypothesis justifies adding an ear to a base graph.
enum class AttachCase { odd_adjacent_ends, even_pending_cycle, parallel_ear };

struct AttachOptions {
  /// Caller asserts that the base graph satisfies the bipartite ear
  /// modification hypothesis on a parallel ear. Needed for the third case.
  bool modification_hypothesis = false;
};

/// reg_base + floor(l/2)(q-2) for an ear of g whose removal leaves the graph
/// that reg_base describes.
RegularityResult reg_ear_attach(const Graph& g, const Ear& ear, const FieldOrder& q, const RegularityResult& reg_base,
                                const AttachOptions& options = {});

struct BoundsOptions {
  std::size_t vertex_cap = kDefaultIndependenceCap;
  std::size_t cycle_cap = 4000;
  std::uint64_t hamiltonian_budget = 200'000;
};

/// Interval from independent sets and spanning supergraphs (lower) and from
/// covers by closed-family pieces and spanning closed-family subgraphs
/// (upper). Throws RegularityError above the vertex cap.
RegularityResult reg_bounds(const Graph& g, const FieldOrder& q, const BoundsOptions& options = {});

}  // namespace earreg
