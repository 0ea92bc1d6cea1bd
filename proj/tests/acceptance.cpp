// One PASS/FAIL line per acceptance criterion; exit status is non-zero if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "earreg/ear_decomposition.hpp"
#include "earreg/generators.hpp"
#include "earreg/graph.hpp"
#include "earreg/hilbert_oracle.hpp"
#include "earreg/regularity.hpp"
#include "support/fixtures.hpp"

using namespace earreg;
using namespace earreg::testing;

namespace {

// Wall-clock limits per criterion, in seconds.
constexpr double kTableSeconds = 5.0;
constexpr double kBowtieSeconds = 10.0;
constexpr double kTheoremSeconds = 120.0;

// Instance counts.
constexpr std::size_t kTheoremInstances = 100;
constexpr std::size_t kTheoremMaxVertices = 12;
constexpr std::size_t kInvarianceGraphs = 20;
constexpr std::size_t kInvarianceDecompositions = 10;
constexpr std::size_t kBlockAssemblies = 10;
constexpr std::size_t kCongruenceQuadruples = 100;
constexpr std::size_t kIdentifyInstances = 20;
constexpr unsigned kStableCheckDegrees = 3;

struct Criterion {
  bool ok = true;
  std::string note;

  void fail(const std::string& why) {
    if (ok) {
      note = why;
    }
    ok = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) {
      fail(why);
    }
  }
};

// Oracle runs all go through here so the Hilbert function properties are
// checked on each of them.
struct OracleLog {
  std::size_t runs = 0;
  std::size_t violations = 0;
  std::string first;
};
OracleLog oracle_log;

std::optional<std::uint64_t> oracle(const Graph& g, std::uint64_t q) {
  OracleLimits limits;
  limits.extra_degrees = kStableCheckDegrees;
  const HilbertProfile p = hilbert_profile(g, FieldOrder(q), limits);
  ++oracle_log.runs;
  if (p.truncated) {
    return std::nullopt;
  }
  auto violation = [&](const std::string& what) {
    if (oracle_log.violations++ == 0) {
      oracle_log.first = what + " on " + std::to_string(g.vertex_count()) + "-vertex graph";
    }
  };
  if (p.hf.empty() || p.hf[0] != 1) {
    violation("hf[0] != 1");
  }
  for (std::size_t d = 1; d < p.hf.size(); ++d) {
    if (p.hf[d] < p.hf[d - 1]) {
      violation("hf decreases at degree " + std::to_string(d));
    }
  }
  if (p.hf.size() != p.regularity + 2 + kStableCheckDegrees) {
    violation("missing degrees past stabilization");
  }
  for (std::size_t d = p.regularity; d < p.hf.size(); ++d) {
    if (p.hf[d] != p.deg_x) {
      violation("hf not constant after degree " + std::to_string(p.regularity));
    }
  }
  return p.regularity;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void timed(Criterion& c, double limit, const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body();
  const double s = seconds_since(t0);
  if (s > limit) {
    c.fail("took " + std::to_string(s) + " s, limit " + std::to_string(limit) + " s");
  }
}

void expect_value(Criterion& c, const std::string& name, std::optional<std::uint64_t> got, std::int64_t want) {
  if (!got) {
    c.fail(name + ": oracle truncated");
  } else if (static_cast<std::int64_t>(*got) != want) {
    c.fail(name + ": oracle " + std::to_string(*got) + ", expected " + std::to_string(want));
  }
}

Criterion table_families() {
  Criterion c;
  struct Family {
    std::string name;
    Graph graph;
  };
  std::vector<Family> families;
  for (Vertex n = 2; n <= 5; ++n) {
    families.push_back({"P_" + std::to_string(n), path_graph(n)});
  }
  for (Vertex n = 3; n <= 8; ++n) {
    families.push_back({"C_" + std::to_string(n), cycle_graph(n)});
  }
  families.push_back({"K_4", complete_graph(4)});
  families.push_back({"K_2,2", complete_bipartite(2, 2)});
  families.push_back({"K_2,3", complete_bipartite(2, 3)});
  families.push_back({"K_3,3", complete_bipartite(3, 3)});
  timed(c, kTableSeconds, [&] {
    for (std::uint64_t q : {3u, 4u}) {
      for (const auto& f : families) {
        const auto closed = reg_closed_family(f.graph, FieldOrder(q));
        if (!closed) {
          c.fail(f.name + " not recognized");
          continue;
        }
        c.expect(closed->lower_form && closed->lower_form->evaluate(FieldOrder(q)) == closed->value(),
                 f.name + ": symbolic and integer forms differ");
        expect_value(c, f.name + " q=" + std::to_string(q), oracle(f.graph, q), closed->value());
      }
    }
  });
  return c;
}

Criterion bowtie_values() {
  Criterion c;
  timed(c, kBowtieSeconds, [&] {
    const std::int64_t want[] = {3, 5, 8};
    for (std::uint64_t q = 3; q <= 5; ++q) {
      // ceil(5(q-2)/2)
      const std::int64_t formula = (5 * static_cast<std::int64_t>(q - 2) + 1) / 2;
      c.expect(formula == want[q - 3], "formula mismatch");
      expect_value(c, "bowtie q=" + std::to_string(q), oracle(bowtie(), q), formula);
    }
  });
  return c;
}

Criterion three_even_cycle_values() {
  Criterion c;
  expect_value(c, "three even cycles", oracle(three_even_cycles(), 3), 4);
  expect_value(c, "with chord {2,8}", oracle(three_even_cycles_chord(), 3), 3);
  return c;
}

Criterion parallel_path_value() {
  Criterion c;
  expect_value(c, "parallel paths", oracle(parallel_paths(), 3), 4);
  return c;
}

Criterion theorem_cross_check() {
  Criterion c;
  std::size_t checked = 0;
  timed(c, kTheoremSeconds, [&] {
    for (std::uint64_t seed = 0; checked < kTheoremInstances && seed < 10 * kTheoremInstances; ++seed) {
      GeneratorConfig cfg;
      cfg.seed = seed;
      cfg.ear_count = 2 + seed % 5;
      cfg.max_vertices = kTheoremMaxVertices;
      const auto generated = try_generate(cfg);
      if (!generated) {
        continue;
      }
      const GeneratedInstance& inst = *generated;
      const FieldOrder q(3);
      const auto theorem = reg_weak_nested(inst.graph, inst.decomposition, q).value();
      const auto peel = reg_peel(inst.graph, inst.decomposition, q).value();
      const auto o = oracle(inst.graph, 3);
      if (!o) {
        continue;
      }
      ++checked;
      const std::string tag = "seed " + std::to_string(seed);
      c.expect(theorem == peel, tag + ": theorem " + std::to_string(theorem) + " != peel " + std::to_string(peel));
      expect_value(c, tag, o, theorem);
    }
  });
  c.expect(checked >= kTheoremInstances, "only " + std::to_string(checked) + " instances checked");
  if (c.ok) {
    c.note = std::to_string(checked) + " instances";
  }
  return c;
}

Criterion epsilon_invariance() {
  Criterion c;
  std::size_t graphs = 0;
  for (std::uint64_t seed = 1000; graphs < kInvarianceGraphs && seed < 2000; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.ear_count = 4 + seed % 4;
    cfg.max_vertices = 12;
    const auto generated = try_generate(cfg);
    if (!generated) {
      continue;
    }
    const GeneratedInstance& inst = *generated;
    const std::size_t reference = epsilon(inst.decomposition);
    std::vector<EarDecomposition> found;
    bool consistent = true;
    const auto& vs = inst.graph.vertices();
    for (std::uint64_t k = 0; k < 200 && found.size() < kInvarianceDecompositions; ++k) {
      SearchOptions opt;
      opt.seed = k;
      opt.base = vs[k % vs.size()];
      const auto out = find_weak_nested(inst.graph, opt);
      if (out.status != SearchStatus::found) {
        continue;
      }
      const auto& d = *out.decomposition;
      if (!validate(inst.graph, d).weak_nested()) {
        c.fail("seed " + std::to_string(seed) + ": search returned an invalid decomposition");
        consistent = false;
        break;
      }
      if (epsilon(d) != reference) {
        c.fail("seed " + std::to_string(seed) + ": epsilon " + std::to_string(epsilon(d)) + " vs " +
               std::to_string(reference));
        consistent = false;
      }
      if (std::find(found.begin(), found.end(), d) == found.end()) {
        found.push_back(d);
      }
    }
    // Graphs with fewer distinct decompositions than required are not counted.
    if (consistent && found.size() >= kInvarianceDecompositions) {
      ++graphs;
    }
  }
  c.expect(graphs >= kInvarianceGraphs, "only " + std::to_string(graphs) + " graphs with enough decompositions");
  if (c.ok) {
    c.note = std::to_string(graphs) + " graphs x " + std::to_string(kInvarianceDecompositions) + " decompositions";
  }
  return c;
}

Criterion taino_sun() {
  Criterion c;
  for (std::size_t k : {2u, 4u}) {
    const Graph g = generate_taino_sun(k);
    const FieldOrder q(3);
    const auto k_ = static_cast<std::int64_t>(k);
    const std::int64_t want = (5 * k_ / 2 - 1) * q.unit();
    const std::string tag = "k=" + std::to_string(k);
    const auto theorem = reg_weak_nested(g, taino_sun_decomposition(k), q).value();
    c.expect(theorem == want, tag + ": theorem " + std::to_string(theorem));
    const auto alpha = static_cast<std::int64_t>(independence_number(g).size);
    c.expect(alpha == 2 * k_, tag + ": alpha " + std::to_string(alpha));
    c.expect(theorem - (alpha - 1) * q.unit() == k_ / 2 * q.unit(), tag + ": gap to the independence bound");
    expect_value(c, tag, oracle(g, 3), want);
  }
  return c;
}

// Glues known-family blocks at single vertices, keeping the result bipartite.
Graph assemble_blocks(std::mt19937_64& rng, std::size_t blocks) {
  const std::vector<Graph> pieces{Graph::from_edges({{1, 2}}), cycle_graph(4), cycle_graph(6),
                                  complete_bipartite(2, 3), path_graph(3)};
  std::vector<Edge> edges;
  Vertex next = 1;
  std::vector<Vertex> placed;
  for (std::size_t b = 0; b < blocks; ++b) {
    const Graph& piece = pieces[rng() % pieces.size()];
    std::map<Vertex, Vertex> label;
    const auto& vs = piece.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      label[vs[i]] = (b > 0 && i == 0) ? placed[rng() % placed.size()] : next++;
    }
    for (const Edge& e : piece.edges()) {
      edges.push_back(Edge::make(label[e.u], label[e.v]));
    }
    for (const auto& [from, to] : label) {
      placed.push_back(to);
    }
  }
  return Graph::from_edges(std::span<const Edge>(edges));
}

Criterion block_formula() {
  Criterion c;
  std::mt19937_64 rng(8);
  std::size_t built = 0;
  while (built < kBlockAssemblies) {
    const Graph g = assemble_blocks(rng, 2 + built % 2);
    if (g.vertex_count() > 12 || !is_bipartite(g)) {
      continue;
    }
    ++built;
    const auto r = reg_via_blocks(g, FieldOrder(3), make_formula_provider());
    if (!r.determined()) {
      c.fail("assembly " + std::to_string(built) + ": block formula is not determined");
      continue;
    }
    expect_value(c, "assembly " + std::to_string(built), oracle(g, 3), r.value());
  }
  return c;
}

ExponentVector random_monomial(std::mt19937_64& rng, const std::vector<Edge>& edges, std::uint64_t degree) {
  ExponentVector e;
  for (std::uint64_t k = 0; k < degree; ++k) {
    ++e[edges[rng() % edges.size()]];
  }
  return e;
}

Criterion property_suite() {
  Criterion c;
  std::mt19937_64 rng(17);
  // Congruence in H and in G agree for monomials supported on H.
  for (std::size_t k = 0; k < kCongruenceQuadruples; ++k) {
    const Graph g = random_connected_graph(rng, static_cast<Vertex>(4 + k % 5), 0.5);
    std::vector<Edge> sub;
    for (const Edge& e : g.edges()) {
      if (rng() % 3 != 0) {
        sub.push_back(e);
      }
    }
    if (sub.empty()) {
      sub.push_back(g.edges().front());
    }
    const Graph h = Graph::from_edges(std::span<const Edge>(sub));
    const std::uint64_t qv = 3 + k % 3;
    const FieldOrder q(qv);
    const std::uint64_t degree = 1 + rng() % 5;
    const ExponentVector nu = random_monomial(rng, sub, degree);
    // Half the pairs are congruent by construction: shift by q-1 copies.
    ExponentVector mu = random_monomial(rng, sub, degree);
    if (k % 2 == 0) {
      mu = nu;
      const Edge a = sub[rng() % sub.size()];
      const Edge b = sub[rng() % sub.size()];
      if (mu[a] >= q.modulus()) {
        mu[a] -= q.modulus();
        mu[b] += q.modulus();
      }
    }
    const bool in_h = binomial_in_ideal(h, q, nu, mu);
    const bool in_g = binomial_in_ideal(g, q, nu, mu);
    c.expect(in_h == in_g, "congruence differs between subgraph and graph at quadruple " + std::to_string(k));
    if (k % 2 == 0) {
      c.expect(in_g, "constructed congruent pair rejected at quadruple " + std::to_string(k));
    }
  }
  // Identifying two non-adjacent vertices never raises the regularity.
  std::size_t identified = 0;
  while (identified < kIdentifyInstances) {
    const Graph g = random_connected_graph(rng, static_cast<Vertex>(4 + identified % 6), 0.4);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex a : g.vertices()) {
      for (Vertex b : g.vertices()) {
        if (a < b && !g.has_edge(a, b)) {
          pairs.emplace_back(a, b);
        }
      }
    }
    if (pairs.empty()) {
      continue;
    }
    ++identified;
    const auto [a, b] = pairs[rng() % pairs.size()];
    const auto before = oracle(g, 3);
    const auto after = oracle(identify_vertices(g, a, b), 3);
    if (!before || !after) {
      c.fail("oracle truncated on identification instance");
      continue;
    }
    c.expect(*before >= *after, "identifying " + std::to_string(a) + "," + std::to_string(b) + " raised " +
                                    std::to_string(*before) + " to " + std::to_string(*after));
  }
  // Hilbert function shape on every oracle run of this program.
  c.expect(oracle_log.violations == 0, oracle_log.first);
  if (c.ok) {
    c.note = std::to_string(oracle_log.runs) + " oracle runs checked";
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Criterion()>>> criteria{
      {"closed families match the oracle (q=3,4)", table_families},
      {"bowtie ceil(5(q-2)/2) for q=3,4,5", bowtie_values},
      {"three even cycles 4, with chord 3 (q=3)", three_even_cycle_values},
      {"parallel paths 2,2,3 gives 4 (q=3)", parallel_path_value},
      {"theorem = peel = oracle on generated instances", theorem_cross_check},
      {"epsilon constant across decompositions", epsilon_invariance},
      {"taino sun k=2,4", taino_sun},
      {"block formula on bipartite assemblies", block_formula},
      {"property suite", property_suite},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    all = all && c.ok;
    std::printf("%s %zu %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                seconds_since(t0), c.note.empty() ? "" : ": ", c.note.c_str());
  }
  return all ? 0 : 1;
}
