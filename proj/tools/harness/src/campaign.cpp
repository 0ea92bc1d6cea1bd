#include "earreg_harness/campaign.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "earreg/regularity.hpp"

namespace earreg::harness {

namespace {

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) {
    out = j.at(key).get<T>();
  }
}

}  // namespace

CampaignConfig parse_campaign_config(const json& j) {
  if (!j.is_object()) {
    throw std::runtime_error("campaign config must be a JSON object");
  }
  CampaignConfig cfg;
  try {
    if (j.contains("seeds")) {
      const json& s = j.at("seeds");
      if (s.is_array()) {
        cfg.seeds = s.get<std::vector<std::uint64_t>>();
      } else {
        const auto first = s.value("first", std::uint64_t{0});
        const auto count = s.at("count").get<std::uint64_t>();
        for (std::uint64_t k = 0; k < count; ++k) {
          cfg.seeds.push_back(first + k);
        }
      }
    }
    if (j.contains("q")) {
      const json& q = j.at("q");
      cfg.q_values = q.is_array() ? q.get<std::vector<std::uint64_t>>() : std::vector{q.get<std::uint64_t>()};
    }
    if (j.contains("generator")) {
      const json& g = j.at("generator");
      if (g.contains("ear_count")) {
        const json& r = g.at("ear_count");
        if (r.is_array()) {
          if (r.size() != 2) {
            throw std::runtime_error("generator.ear_count range must have two entries");
          }
          cfg.ear_count_min = r[0].get<std::size_t>();
          cfg.ear_count_max = r[1].get<std::size_t>();
        } else {
          cfg.ear_count_min = cfg.ear_count_max = r.get<std::size_t>();
        }
      }
      read_if(g, "max_ear_length", cfg.generator.max_ear_length);
      read_if(g, "pendant_edge_probability", cfg.generator.pendant_edge_probability);
      read_if(g, "pending_cycle_probability", cfg.generator.pending_cycle_probability);
      read_if(g, "max_vertices", cfg.generator.max_vertices);
    }
    if (j.contains("oracle")) {
      const json& o = j.at("oracle");
      read_if(o, "max_vertices", cfg.oracle_max_vertices);
      read_if(o, "max_states", cfg.oracle.max_states);
      read_if(o, "max_degree", cfg.oracle.max_degree);
    }
    if (j.contains("bounds")) {
      read_if(j.at("bounds"), "max_vertices", cfg.bounds_max_vertices);
    }
    read_if(j, "threads", cfg.threads);
    read_if(j, "timing", cfg.timing);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("campaign config: ") + e.what());
  }
  if (cfg.ear_count_min < 1 || cfg.ear_count_min > cfg.ear_count_max) {
    throw std::runtime_error("campaign config: ear_count range is empty");
  }
  for (std::uint64_t q : cfg.q_values) {
    FieldOrder checked(q);
  }
  GeneratorConfig probe = cfg.generator;
  probe.ear_count = cfg.ear_count_min;
  check_config(probe);
  return cfg;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  return parse_campaign_config(j);
}

std::string_view to_string(RowStatus s) {
  switch (s) {
    case RowStatus::agree:
      return "agree";
    case RowStatus::disagree:
      return "disagree";
    case RowStatus::generator_error:
      return "generator-error";
    case RowStatus::error:
      return "error";
  }
  return "?";
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

CampaignRow run_row(const CampaignConfig& cfg, std::size_t index, std::uint64_t seed, std::uint64_t q_value) {
  CampaignRow row;
  row.index = index;
  row.seed = seed;
  row.q = q_value;
  const std::size_t span = cfg.ear_count_max - cfg.ear_count_min + 1;
  row.ear_count = cfg.ear_count_min + static_cast<std::size_t>(seed % span);

  GeneratorConfig gen = cfg.generator;
  gen.seed = seed;
  gen.q = q_value;
  gen.ear_count = row.ear_count;
  std::optional<GeneratedInstance> inst;
  try {
    inst = generate_weak_nested_bipartite(gen);
  } catch (const GeneratorError& e) {
    row.status = RowStatus::generator_error;
    row.message = e.what();
    return row;
  }
  const Graph& g = inst->graph;
  const EarDecomposition& d = inst->decomposition;
  const FieldOrder q(q_value);
  row.graph_hash = hex(graph_hash(g));
  row.vertices = g.vertex_count();
  row.edges = g.edge_count();
  row.epsilon = epsilon(d);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const RegularityResult theorem = reg_weak_nested(g, d, q);
    const RegularityResult peel = reg_peel(g, d, q);
    row.theorem = theorem.value();
    row.peel = peel.value();
    row.peel_agrees = row.theorem == row.peel;
    if (g.vertex_count() <= cfg.bounds_max_vertices) {
      const RegularityResult bounds = reg_bounds(g, q);
      row.bounds_computed = true;
      row.bounds_lower = bounds.lower;
      row.bounds_upper = bounds.upper;
      row.bounds_contain = bounds.contains(row.theorem);
    }
    row.seconds_formula = seconds_since(t0);
    row.detail["decomposition"] = to_json(d);
    row.detail["peel"] = to_json(peel, q);

    if (g.vertex_count() > cfg.oracle_max_vertices) {
      row.oracle_note = "skipped: more than " + std::to_string(cfg.oracle_max_vertices) + " vertices";
    } else {
      const auto t1 = std::chrono::steady_clock::now();
      const HilbertProfile profile = hilbert_profile(g, q, cfg.oracle);
      row.seconds_oracle = seconds_since(t1);
      if (profile.truncated) {
        row.oracle_note = "skipped: " + profile.reason;
      } else {
        row.oracle = profile.regularity;
        row.oracle_agrees = static_cast<std::int64_t>(profile.regularity) == row.theorem;
        row.detail["hf"] = profile.hf;
      }
    }
  } catch (const std::exception& e) {
    row.status = RowStatus::error;
    row.message = e.what();
    return row;
  }
  const bool ok = row.peel_agrees && row.oracle_agrees.value_or(true) && row.bounds_contain.value_or(true);
  row.status = ok ? RowStatus::agree : RowStatus::disagree;
  return row;
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> jobs;
  for (std::uint64_t q : cfg.q_values) {
    for (std::uint64_t seed : cfg.seeds) {
      jobs.emplace_back(seed, q);
    }
  }
  CampaignReport report;
  report.rows.resize(jobs.size());
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      report.rows[k] = run_row(cfg, k, jobs[k].first, jobs[k].second);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }

  CampaignSummary& s = report.summary;
  for (const CampaignRow& row : report.rows) {
    ++s.rows;
    switch (row.status) {
      case RowStatus::agree:
        ++s.agree;
        break;
      case RowStatus::disagree:
        ++s.disagree;
        break;
      case RowStatus::generator_error:
        ++s.generator_errors;
        break;
      case RowStatus::error:
        ++s.errors;
        break;
    }
    if (row.oracle) {
      ++s.oracle_checked;
    } else if (!row.oracle_note.empty()) {
      ++s.oracle_skipped;
    }
    if (row.bounds_computed) {
      ++s.bounds_checked;
    }
  }
  return report;
}

namespace {

std::string cell(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : ""; }
std::string cell(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : ""; }
std::string cell(const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : ""; }

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    out += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const CampaignReport& report, bool with_timing) {
  std::ostringstream out;
  out << "index,seed,q,ear_count,status,graph_hash,vertices,edges,epsilon,theorem,peel,oracle,bounds_lower,"
         "bounds_upper,peel_agrees,oracle_agrees,bounds_contain,note";
  if (with_timing) {
    out << ",seconds_formula,seconds_oracle";
  }
  out << '\n';
  for (const CampaignRow& r : report.rows) {
    const bool computed = r.status == RowStatus::agree || r.status == RowStatus::disagree;
    out << r.index << ',' << r.seed << ',' << r.q << ',' << r.ear_count << ',' << to_string(r.status) << ','
        << r.graph_hash << ',';
    if (computed) {
      out << r.vertices << ',' << r.edges << ',' << r.epsilon << ',' << r.theorem << ',' << r.peel << ','
          << cell(r.oracle) << ',' << cell(r.bounds_lower) << ',' << cell(r.bounds_upper) << ','
          << (r.peel_agrees ? "1" : "0") << ',' << cell(r.oracle_agrees) << ',' << cell(r.bounds_contain) << ',';
    } else {
      out << ",,,,,,,,,,,";
    }
    out << quoted(r.message.empty() ? r.oracle_note : r.message);
    if (with_timing) {
      out << ',' << r.seconds_formula << ',' << r.seconds_oracle;
    }
    out << '\n';
  }
  return out.str();
}

json to_json(const CampaignReport& report, bool with_timing) {
  json rows = json::array();
  for (const CampaignRow& r : report.rows) {
    json row = {{"index", r.index},
                {"seed", r.seed},
                {"q", r.q},
                {"ear_count", r.ear_count},
                {"status", to_string(r.status)}};
    if (!r.message.empty()) {
      row["message"] = r.message;
    }
    if (r.status == RowStatus::agree || r.status == RowStatus::disagree) {
      row["graph_hash"] = r.graph_hash;
      row["vertices"] = r.vertices;
      row["edges"] = r.edges;
      row["epsilon"] = r.epsilon;
      row["theorem"] = r.theorem;
      row["peel"] = r.peel;
      row["oracle"] = r.oracle ? json(*r.oracle) : json(nullptr);
      if (!r.oracle_note.empty()) {
        row["oracle_note"] = r.oracle_note;
      }
      row["bounds"] = r.bounds_computed ? json{{"lower", *r.bounds_lower},
                                               {"upper", r.bounds_upper ? json(*r.bounds_upper) : json(nullptr)}}
                                        : json(nullptr);
      row["detail"] = r.detail;
    }
    if (with_timing) {
      row["seconds_formula"] = r.seconds_formula;
      row["seconds_oracle"] = r.seconds_oracle;
    }
    rows.push_back(std::move(row));
  }
  const CampaignSummary& s = report.summary;
  return {{"summary",
           {{"rows", s.rows},
            {"agree", s.agree},
            {"disagree", s.disagree},
            {"errors", s.errors},
            {"generator_errors", s.generator_errors},
            {"oracle_checked", s.oracle_checked},
            {"oracle_skipped", s.oracle_skipped},
            {"bounds_checked", s.bounds_checked},
            {"passed", s.passed()}}},
          {"rows", std::move(rows)}};
}

void write_campaign(const CampaignReport& report, const std::filesystem::path& dir, bool with_timing) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "campaign.csv");
  csv << to_csv(report, with_timing);
  std::ofstream js(dir / "campaign.json");
  js << to_json(report, with_timing).dump(2) << '\n';
  if (!csv || !js) {
    throw std::runtime_error("failed to write campaign output in " + dir.string());
  }
}

}  // namespace earreg::harness
