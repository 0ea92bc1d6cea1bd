#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "earreg/generators.hpp"
#include "earreg/hilbert_oracle.hpp"
#include "earreg_harness/report.hpp"

namespace earreg::harness {

/// Campaign settings, read from JSON:
///
///   {
///     "seeds": {"first": 1, "count": 120},      // or an explicit list
///     "q": [3],
///     "generator": {"ear_count": [2, 6], "max_ear_length": 4,
///                   "pendant_edge_probability": 0.2,
///                   "pending_cycle_probability": 0.2, "max_vertices": 12},
///     "oracle": {"max_vertices": 14, "max_states": 67108864, "max_degree": 4096},
///     "bounds": {"max_vertices": 16},
///     "threads": 0,
///     "timing": false
///   }
///
/// Every key is optional; without seeds the campaign is empty.
struct CampaignConfig {
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint64_t> q_values{3};
  std::size_t ear_count_min = 2;
  std::size_t ear_count_max = 6;
  GeneratorConfig generator;
  std::size_t oracle_max_vertices = 14;
  OracleLimits oracle;
  std::size_t bounds_max_vertices = 16;
  unsigned threads = 0;
  bool timing = false;
};

/// Throws std::runtime_error on malformed settings.
CampaignConfig parse_campaign_config(const json& j);
CampaignConfig load_campaign_config(const std::filesystem::path& path);

enum class RowStatus { agree, disagree, generator_error, error };
std::string_view to_string(RowStatus s);

struct CampaignRow {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::uint64_t q = 3;
  std::size_t ear_count = 0;
  RowStatus status = RowStatus::agree;
  std::string message;
  std::string graph_hash;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t epsilon = 0;
  std::int64_t theorem = 0;
  std::int64_t peel = 0;
  std::optional<std::uint64_t> oracle;
  std::string oracle_note;
  std::optional<std::int64_t> bounds_lower;
  std::optional<std::int64_t> bounds_upper;
  bool bounds_computed = false;
  bool peel_agrees = false;
  std::optional<bool> oracle_agrees;
  std::optional<bool> bounds_contain;
  double seconds_formula = 0.0;
  double seconds_oracle = 0.0;
  json detail;
};

struct CampaignSummary {
  std::size_t rows = 0;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t errors = 0;
  std::size_t generator_errors = 0;
  std::size_t oracle_checked = 0;
  std::size_t oracle_skipped = 0;
  std::size_t bounds_checked = 0;

  bool passed() const { return disagree == 0 && errors == 0; }
};

struct CampaignReport {
  std::vector<CampaignRow> rows;
  CampaignSummary summary;
};

/// Rows run concurrently; the report is ordered by instance index and does
/// not depend on the thread count.
CampaignReport run_campaign(const CampaignConfig& cfg);

std::string to_csv(const CampaignReport& report, bool with_timing);
json to_json(const CampaignReport& report, bool with_timing);

/// Writes campaign.csv and campaign.json into `dir`.
void write_campaign(const CampaignReport& report, const std::filesystem::path& dir, bool with_timing);

}  // namespace earreg::harness
