#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "earreg/ear_decomposition.hpp"
#include "earreg/generators.hpp"
#include "earreg/hilbert_oracle.hpp"
#include "earreg/io.hpp"
#include "earreg/regularity.hpp"
#include "earreg_harness/campaign.hpp"
#include "earreg_harness/report.hpp"

using namespace earreg;
using harness::json;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInconclusive = 2;

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void note(const std::string& text) { std::cerr << text << '\n'; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
}

std::string interval_text(const RegularityResult& r) {
  if (r.determined()) {
    return std::to_string(r.lower);
  }
  return "[" + std::to_string(r.lower) + ", " + (r.upper ? std::to_string(*r.upper) : "unbounded") + "]";
}

void warn_field(const FieldOrder& q) {
  if (!q.prime_power()) {
    note("warning: q=" + std::to_string(q.q()) + " is not a prime power; no field of this order exists");
  }
}

int graph_check(const std::string& file) {
  const Graph g = read_edge_list_file(file);
  json out = harness::graph_summary(g);
  const bool bipartite = is_bipartite(g);
  const bool connected = is_connected(g);
  out["bipartite"] = bipartite;
  out["connected"] = connected;
  out["components"] = connected_components(g).size();
  if (auto coloring = find_two_coloring(g)) {
    std::vector<Vertex> side0;
    std::vector<Vertex> side1;
    for (const auto& [v, c] : coloring->color) {
      (c == 0 ? side0 : side1).push_back(v);
    }
    out["sides"] = {side0, side1};
  }
  if (connected) {
    const BlockDecomposition blocks = block_decomposition(g);
    json list = json::array();
    for (const Graph& b : blocks.blocks) {
      list.push_back(b.vertices());
    }
    out["blocks"] = list;
    out["cut_vertices"] = blocks.cut_vertices;
  }
  if (g.vertex_count() <= kDefaultIndependenceCap) {
    const IndependentSet alpha = independence_number(g);
    out["alpha"] = {{"size", alpha.size}, {"witness", alpha.witness}};
  } else {
    out["alpha"] = nullptr;
  }
  emit(out);
  note(std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) + " edges, " +
       (bipartite ? "bipartite" : "not bipartite") + ", " + (connected ? "connected" : "disconnected"));
  return kOk;
}

int graph_dot(const std::string& file, const std::string& decomp) {
  const Graph g = read_edge_list_file(file);
  if (decomp.empty()) {
    std::cout << to_dot(g);
  } else {
    const EarDecomposition d = read_decomposition_file(decomp);
    std::cout << to_dot(g, &d);
  }
  return kOk;
}

int decomp_find(const std::string& file, std::uint64_t budget, std::optional<std::uint64_t> seed,
                std::optional<Vertex> base, const std::string& out_path) {
  const Graph g = read_edge_list_file(file);
  SearchOptions options;
  options.budget = budget;
  options.seed = seed;
  options.base = base;
  const SearchOutcome outcome = find_weak_nested(g, options);
  json out = {{"status", to_string(outcome.status)}, {"expansions", outcome.expansions}};
  if (outcome.decomposition) {
    out["decomposition"] = harness::to_json(*outcome.decomposition);
    out["text"] = to_decomposition_text(*outcome.decomposition);
    if (!out_path.empty()) {
      write_text(out_path, to_decomposition_text(*outcome.decomposition));
    }
  }
  emit(out);
  switch (outcome.status) {
    case SearchStatus::found:
      note("found a weak nested ear decomposition with eps=" + std::to_string(epsilon(*outcome.decomposition)));
      return kOk;
    case SearchStatus::budget_exhausted:
      note("search budget of " + std::to_string(budget) + " exhausted");
      return kInconclusive;
    case SearchStatus::not_found:
      note("no weak nested ear decomposition exists");
      return kFailed;
  }
  return kFailed;
}

int decomp_validate(const std::string& file, const std::string& decomp) {
  const Graph g = read_edge_list_file(file);
  const EarDecomposition d = read_decomposition_file(decomp);
  const ValidationReport report = validate(g, d);
  json out = harness::to_json(report);
  if (report.valid) {
    out["epsilon"] = epsilon(d);
  }
  emit(out);
  note(report.valid ? "valid, class " + std::string(to_string(report.classification)) + ", eps=" +
                          std::to_string(epsilon(d))
                    : "invalid: " + report.violations.front().message);
  return report.valid ? kOk : kFailed;
}

int reg_formula(const std::string& file, std::uint64_t q_value, const std::string& decomp, std::uint64_t budget) {
  const Graph g = read_edge_list_file(file);
  const FieldOrder q(q_value);
  warn_field(q);
  json cascade = json::array();
  auto finish = [&](const std::string& method, const RegularityResult& r, json extra = json::object()) {
    json out = {{"method", method}, {"cascade", cascade}, {"result", harness::to_json(r, q)}};
    out.update(extra);
    emit(out);
    note("reg = " + interval_text(r) + " via " + method);
    return r.determined() ? kOk : kInconclusive;
  };

  if (auto closed = reg_closed_family(g, q)) {
    cascade.push_back({{"step", "closed-family"}, {"outcome", closed->trace.front().rule}});
    return finish("closed-family", *closed);
  }
  cascade.push_back({{"step", "closed-family"}, {"outcome", "no match"}});

  const bool bipartite = is_bipartite(g);
  if (!decomp.empty()) {
    const EarDecomposition d = read_decomposition_file(decomp);
    const ValidationReport report = validate(g, d);
    if (!bipartite || !report.weak_nested()) {
      emit({{"method", "weak-nested"},
            {"cascade", cascade},
            {"error", bipartite ? "decomposition is not weak nested" : "graph is not bipartite"},
            {"validation", harness::to_json(report)}});
      note("the supplied decomposition cannot be used");
      return kFailed;
    }
    cascade.push_back({{"step", "weak-nested"}, {"outcome", "supplied decomposition"}});
    const RegularityResult peel = reg_peel(g, d, q);
    return finish("weak-nested", reg_weak_nested(g, d, q), {{"peel", harness::to_json(peel, q)}});
  }
  if (bipartite) {
    SearchOptions options;
    options.budget = budget;
    const SearchOutcome found = find_weak_nested(g, options);
    cascade.push_back({{"step", "weak-nested"}, {"outcome", to_string(found.status)}});
    if (found.decomposition) {
      const RegularityResult peel = reg_peel(g, *found.decomposition, q);
      return finish("weak-nested", reg_weak_nested(g, *found.decomposition, q),
                    {{"decomposition", to_decomposition_text(*found.decomposition)},
                     {"peel", harness::to_json(peel, q)}});
    }
    if (is_connected(g) && block_decomposition(g).blocks.size() > 1) {
      const RegularityResult blocks = reg_via_blocks(g, q, make_formula_provider(budget));
      cascade.push_back({{"step", "blocks"}, {"outcome", blocks.determined() ? "exact" : "interval"}});
      if (blocks.determined()) {
        return finish("blocks", blocks);
      }
    } else {
      cascade.push_back({{"step", "blocks"}, {"outcome", "not applicable"}});
    }
  } else {
    cascade.push_back({{"step", "weak-nested"}, {"outcome", "not bipartite"}});
    cascade.push_back({{"step", "blocks"}, {"outcome", "not bipartite"}});
  }
  return finish("bounds", reg_bounds(g, q));
}

int reg_oracle(const std::string& file, std::uint64_t q_value, const OracleLimits& limits, bool timing) {
  const Graph g = read_edge_list_file(file);
  const FieldOrder q(q_value);
  warn_field(q);
  const HilbertProfile profile = hilbert_profile(g, q, limits);
  emit(harness::to_json(profile, g, q, timing));
  if (profile.truncated) {
    note("oracle truncated: " + profile.reason);
    return kInconclusive;
  }
  note("reg = " + std::to_string(profile.regularity) + ", deg X = " + std::to_string(profile.deg_x) + " (" +
       std::to_string(profile.wall_seconds) + " s)");
  return kOk;
}

int reg_bounds_cmd(const std::string& file, std::uint64_t q_value) {
  const Graph g = read_edge_list_file(file);
  const FieldOrder q(q_value);
  warn_field(q);
  const RegularityResult r = reg_bounds(g, q);
  emit(harness::to_json(r, q));
  note("reg in " + interval_text(r));
  return kOk;
}

int emit_instance(const Graph& g, const EarDecomposition& d, const std::string& graph_out,
                  const std::string& decomp_out) {
  if (!graph_out.empty()) {
    write_text(graph_out, to_edge_list(g));
  }
  if (!decomp_out.empty()) {
    write_text(decomp_out, to_decomposition_text(d));
  }
  json out = harness::graph_summary(g);
  out["edge_list"] = to_edge_list(g);
  out["decomposition"] = to_decomposition_text(d);
  out["epsilon"] = epsilon(d);
  emit(out);
  note("generated " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) +
       " edges, eps=" + std::to_string(epsilon(d)));
  return kOk;
}

int verify_campaign(const std::string& config, const std::string& out_dir, std::optional<unsigned> threads,
                    bool timing) {
  harness::CampaignConfig cfg = harness::load_campaign_config(config);
  if (threads) {
    cfg.threads = *threads;
  }
  timing = timing || cfg.timing;
  const harness::CampaignReport report = harness::run_campaign(cfg);
  harness::write_campaign(report, out_dir, timing);
  emit(harness::to_json(report, false)["summary"]);
  const auto& s = report.summary;
  note(std::to_string(s.rows) + " rows: " + std::to_string(s.agree) + " agree, " + std::to_string(s.disagree) +
       " disagree, " + std::to_string(s.errors) + " errors, " + std::to_string(s.generator_errors) +
       " generator errors; oracle checked on " + std::to_string(s.oracle_checked));
  return s.passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularity of vanishing ideals of graphs over finite fields"};
  app.require_subcommand(1);
  int code = kOk;

  std::string file;
  std::string decomp;
  std::string out_path;
  std::uint64_t q = 3;
  std::uint64_t budget = SearchOptions{}.budget;

  auto* graph = app.add_subcommand("graph", "Graph inspection")->require_subcommand(1);
  auto* check = graph->add_subcommand("check", "Bipartiteness, connectivity, blocks, independence number");
  check->add_option("file", file, "Edge list")->required();
  check->callback([&] { code = graph_check(file); });
  auto* dot = graph->add_subcommand("dot", "Graphviz export");
  dot->add_option("file", file, "Edge list")->required();
  dot->add_option("--decomp", decomp, "Decomposition to label edges with");
  dot->callback([&] { code = graph_dot(file, decomp); });

  auto* dec = app.add_subcommand("decomp", "Ear decompositions")->require_subcommand(1);
  std::optional<std::uint64_t> seed;
  std::optional<Vertex> base;
  auto* find = dec->add_subcommand("find", "Search for a weak nested ear decomposition");
  find->add_option("file", file, "Edge list")->required();
  find->add_option("--budget", budget, "Search step budget");
  find->add_option("--seed", seed, "Randomize the search order");
  find->add_option("--base", base, "Fix the base vertex");
  find->add_option("--out", out_path, "Write the decomposition file here");
  find->callback([&] { code = decomp_find(file, budget, seed, base, out_path); });
  auto* val = dec->add_subcommand("validate", "Check and classify a decomposition");
  val->add_option("file", file, "Edge list")->required();
  val->add_option("decomp", decomp, "Decomposition file")->required();
  val->callback([&] { code = decomp_validate(file, decomp); });

  auto* reg = app.add_subcommand("reg", "Regularity")->require_subcommand(1);
  auto* formula = reg->add_subcommand("formula", "Closed forms, then weak nested, then blocks, then bounds");
  formula->add_option("file", file, "Edge list")->required();
  formula->add_option("--q", q, "Field order")->required();
  formula->add_option("--decomp", decomp, "Use this decomposition instead of searching");
  formula->add_option("--budget", budget, "Search step budget");
  formula->callback([&] { code = reg_formula(file, q, decomp, budget); });
  OracleLimits limits;
  bool timing = false;
  auto* oracle = reg->add_subcommand("oracle", "Hilbert function by residue-set growth");
  oracle->add_option("file", file, "Edge list")->required();
  oracle->add_option("--q", q, "Field order")->required();
  oracle->add_option("--max-degree", limits.max_degree, "Degree limit");
  oracle->add_option("--max-states", limits.max_states, "State limit per degree");
  oracle->add_option("--workers", limits.workers, "Threads per degree step");
  oracle->add_option("--extra-degrees", limits.extra_degrees, "Degrees to compute past stabilization");
  oracle->add_flag("--timing", timing, "Include wall time in the report");
  oracle->callback([&] { code = reg_oracle(file, q, limits, timing); });
  auto* bounds = reg->add_subcommand("bounds", "Lower and upper bounds");
  bounds->add_option("file", file, "Edge list")->required();
  bounds->add_option("--q", q, "Field order")->required();
  bounds->callback([&] { code = reg_bounds_cmd(file, q); });

  auto* gen = app.add_subcommand("gen", "Instance generators")->require_subcommand(1);
  std::string graph_out;
  std::string decomp_out;
  GeneratorConfig cfg;
  auto* nested = gen->add_subcommand("nested", "Random bipartite graph with a weak nested ear decomposition");
  nested->add_option("--ear-count", cfg.ear_count, "Number of ears")->check(CLI::PositiveNumber);
  nested->add_option("--max-ear-length", cfg.max_ear_length, "Longest ear")->check(CLI::PositiveNumber);
  nested->add_option("--pendant-probability", cfg.pendant_edge_probability)->check(CLI::Range(0.0, 1.0));
  nested->add_option("--cycle-probability", cfg.pending_cycle_probability)->check(CLI::Range(0.0, 1.0));
  nested->add_option("--seed", cfg.seed, "Random seed");
  nested->add_option("--max-vertices", cfg.max_vertices, "Vertex limit (0 = none)");
  nested->add_option("--graph-out", graph_out, "Write the edge list here");
  nested->add_option("--decomp-out", decomp_out, "Write the decomposition here");
  nested->callback([&] {
    const GeneratedInstance inst = generate_weak_nested_bipartite(cfg);
    code = emit_instance(inst.graph, inst.decomposition, graph_out, decomp_out);
  });
  std::size_t k = 2;
  auto* taino = gen->add_subcommand("taino", "Cycle of length 3k with k ears of length two");
  taino->add_option("--k", k, "Even k >= 2")->required();
  taino->add_option("--graph-out", graph_out, "Write the edge list here");
  taino->add_option("--decomp-out", decomp_out, "Write the decomposition here");
  taino->callback([&] { code = emit_instance(generate_taino_sun(k), taino_sun_decomposition(k), graph_out, decomp_out); });

  auto* verify = app.add_subcommand("verify", "Cross-check campaigns")->require_subcommand(1);
  std::string config;
  std::optional<unsigned> threads;
  auto* campaign = verify->add_subcommand("campaign", "Theorem, peel, oracle and bounds on generated instances");
  campaign->add_option("config", config, "Campaign config (JSON)")->required();
  campaign->add_option("--out", out_path, "Output directory")->required();
  campaign->add_option("--threads", threads, "Worker threads");
  campaign->add_flag("--timing", timing, "Add timing columns");
  campaign->callback([&] { code = verify_campaign(config, out_path, threads, timing); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kOk : kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return code;
}
