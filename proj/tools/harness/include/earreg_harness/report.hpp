#pragma once

#include <json.hpp>

#include "earreg/ear_decomposition.hpp"
#include "earreg/graph.hpp"
#include "earreg/hilbert_oracle.hpp"
#include "earreg/regularity.hpp"

namespace earreg::harness {

using nlohmann::json;

json graph_summary(const Graph& g);
json to_json(const EarDecomposition& d);
json to_json(const ValidationReport& report);
json to_json(const RegularityResult& r, const FieldOrder& q);
/// Wall time is left out unless `with_timing` is set, so that reports stay
/// reproducible.
json to_json(const HilbertProfile& p, const Graph& g, const FieldOrder& q, bool with_timing = false);
json field_json(const FieldOrder& q);

/// FNV-1a hash of the canonical edge list.
std::uint64_t graph_hash(const Graph& g);
std::string hex(std::uint64_t value);

}  // namespace earreg::harness
