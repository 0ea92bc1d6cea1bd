#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "earreg/graph.hpp"
#include "earreg/regularity.hpp"

namespace earreg {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent of each edge variable in a monomial.
using ExponentVector = std::map<Edge, std::uint64_t>;

std::uint64_t total_degree(const ExponentVector& e);

/// Per-vertex sums of incident exponents reduced mod q-1, indexed by the
/// dense vertex index of the graph.
struct ResidueVector {
  std::vector<std::uint32_t> residues;

  auto operator<=>(const ResidueVector&) const = default;
};

/// Throws OracleError when `e` uses an edge outside g.
ResidueVector residue_of(const Graph& g, const FieldOrder& q, const ExponentVector& e);

/// Whether t^nu - t^mu vanishes on the parameterized set, i.e. whether the
/// residue vectors agree. Throws OracleError on a degree mismatch.
bool binomial_in_ideal(const Graph& g, const FieldOrder& q, const ExponentVector& nu, const ExponentVector& mu);

/// Packs residue vectors into one word, ceil(log2(q-1)) bits per vertex.
class ResidueCodec {
 public:
  /// Throws OracleError when the vector does not fit in 64 bits.
  ResidueCodec(const Graph& g, const FieldOrder& q);

  std::uint64_t encode(const ResidueVector& r) const;
  ResidueVector decode(std::uint64_t packed) const;
  /// State plus the indicator of edge `e` (by position in g.edges()).
  std::uint64_t shift(std::uint64_t packed, std::size_t e) const {
    return bump(bump(packed, edge_offsets_[e].first), edge_offsets_[e].second);
  }
  unsigned bits_per_vertex() const { return bits_; }
  unsigned total_bits() const { return bits_ * static_cast<unsigned>(vertices_); }
  std::size_t edge_count() const { return edge_offsets_.size(); }

 private:
  std::uint64_t bump(std::uint64_t packed, unsigned offset) const {
    const std::uint64_t field = (packed >> offset) & mask_;
    const std::uint64_t next = field + 1 == modulus_ ? 0 : field + 1;
    return (packed & ~(mask_ << offset)) | (next << offset);
  }

  std::size_t vertices_;
  std::uint64_t modulus_;
  unsigned bits_;
  std::uint64_t mask_;
  std::vector<std::pair<unsigned, unsigned>> edge_offsets_;
};

/// Sorted, duplicate-free packed states.
using StateSet = std::vector<std::uint64_t>;

/// Every state of `frontier` shifted by every edge indicator. The frontier is
/// split across `workers` threads; the merged set does not depend on the split.
StateSet degree_step(const StateSet& frontier, const ResidueCodec& codec, unsigned workers = 1);

/// Unpacked form of the same step.
std::vector<ResidueVector> degree_step(std::span<const ResidueVector> frontier, const Graph& g, const FieldOrder& q);

struct OracleLimits {
  std::uint64_t max_degree = 4096;
  std::uint64_t max_states = std::uint64_t{1} << 26;
  unsigned workers = 1;
  /// Degrees computed past the stabilization point, for invariant checks.
  unsigned extra_degrees = 0;
};

struct HilbertProfile {
  /// hf[d] for d = 0 .. regularity + 1 + extra_degrees (or until truncation).
  std::vector<std::uint64_t> hf;
  std::uint64_t regularity = 0;
  std::uint64_t deg_x = 0;
  bool truncated = false;
  std::string reason;
  double wall_seconds = 0.0;
};

/// Grows the reachable residue sets degree by degree and stops at the first
/// d with |R_d| = |R_{d+1}|.
HilbertProfile hilbert_profile(const Graph& g, const FieldOrder& q, const OracleLimits& limits = {});

/// Regularity from an untruncated profile; throws OracleError otherwise.
std::uint64_t regularity_oracle(const Graph& g, const FieldOrder& q, const OracleLimits& limits = {});

}  // namespace earreg
