#include "earreg/regularity.hpp"

#include <algorithm>
#include <numeric>

namespace earreg {

bool is_prime_power(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  std::uint64_t p = 2;
  while (p * p <= n && n % p != 0) {
    ++p;
  }
  if (n % p != 0) {
    return true;  // n is prime
  }
  while (n % p == 0) {
    n /= p;
  }
  return n == 1;
}

FieldOrder::FieldOrder(std::uint64_t q) : q_(q), prime_power_(is_prime_power(q)) {
  if (q < 3) {
    throw RegularityError("field order must be at least 3, got " + std::to_string(q));
  }
}

std::int64_t LinearForm::evaluate(const FieldOrder& q) const {
  const std::int64_t scaled = numerator * q.unit();
  const std::int64_t quotient = scaled >= 0 ? (scaled + denominator - 1) / denominator : scaled / denominator;
  return quotient + constant;
}

std::string LinearForm::to_string() const {
  std::string s;
  if (numerator == 0) {
    s = "0";
  } else {
    const std::string coeff = numerator == 1 ? "" : std::to_string(numerator);
    s = coeff + "(q-2)";
    if (denominator != 1) {
      s = "ceil(" + s + "/" + std::to_string(denominator) + ")";
    }
  }
  if (constant > 0) {
    s += "+" + std::to_string(constant);
  } else if (constant < 0) {
    s += std::to_string(constant);
  }
  return s;
}

std::optional<LinearForm> add(const std::optional<LinearForm>& a, const std::optional<LinearForm>& b) {
  if (!a || !b || a->denominator != 1 || b->denominator != 1) {
    return std::nullopt;
  }
  return LinearForm{a->numerator + b->numerator, 1, a->constant + b->constant};
}

RegularityResult RegularityResult::exact_value(const LinearForm& form, const FieldOrder& q) {
  RegularityResult r;
  r.kind = ResultKind::exact;
  r.lower = form.evaluate(q);
  r.upper = r.lower;
  r.lower_form = form;
  r.upper_form = form;
  return r;
}

std::int64_t RegularityResult::value() const {
  if (!determined()) {
    throw RegularityError("regularity is only bounded, not determined");
  }
  return lower;
}

namespace {

std::string vertex_list(const std::vector<Vertex>& vs) {
  std::string s = "{";
  for (std::size_t k = 0; k < vs.size(); ++k) {
    s += (k ? "," : "") + std::to_string(vs[k]);
  }
  return s + "}";
}

RegularityResult family_result(const LinearForm& form, const FieldOrder& q, std::string rule, std::string detail) {
  RegularityResult r = RegularityResult::exact_value(form, q);
  r.trace.push_back({std::move(rule), std::move(detail), r.lower});
  return r;
}

LinearForm complete_graph_form(std::size_t n) {
  const auto k = static_cast<std::int64_t>(n) - 1;
  return k % 2 == 0 ? LinearForm::units(k / 2) : LinearForm{k, 2, 0};
}

}  // namespace

std::optional<RegularityResult> reg_closed_family(const Graph& g, const FieldOrder& q) {
  if (!g.well_formed() || !is_connected(g)) {
    return std::nullopt;
  }
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  const auto m = static_cast<std::int64_t>(g.edge_count());
  const std::string size = "|V|=" + std::to_string(n);
  if (m == n - 1) {
    return family_result(LinearForm::units(n - 2), q, "tree", size + ", (|V|-2)(q-2)");
  }
  const bool two_regular =
      std::all_of(g.vertices().begin(), g.vertices().end(), [&](Vertex v) { return g.degree(v) == 2; });
  if (two_regular) {
    if (n % 2 == 1) {
      return family_result(LinearForm::units(n - 1), q, "odd-cycle", size + ", (|V|-1)(q-2)");
    }
    return family_result(LinearForm::units((n - 2) / 2), q, "even-cycle", size + ", (|V|-2)/2 (q-2)");
  }
  if (n >= 4 && m == n * (n - 1) / 2) {
    return family_result(complete_graph_form(g.vertex_count()), q, "complete-graph", size + ", ceil((n-1)(q-2)/2)");
  }
  if (auto coloring = find_two_coloring(g)) {
    std::int64_t a = 0;
    for (const auto& [v, c] : coloring->color) {
      a += c == 0 ? 1 : 0;
    }
    const std::int64_t b = n - a;
    if (m == a * b) {
      return family_result(LinearForm::units(std::max(a, b) - 1), q, "complete-bipartite",
                           "a=" + std::to_string(a) + ", b=" + std::to_string(b) + ", (max(a,b)-1)(q-2)");
    }
  }
  return std::nullopt;
}

namespace {

void require_weak_nested(const Graph& g, const EarDecomposition& d) {
  if (!is_bipartite(g)) {
    throw RegularityError("graph is not bipartite");
  }
  const ValidationReport report = validate(g, d);
  if (!report.weak_nested()) {
    std::string why = report.violations.empty() ? "nesting condition fails" : report.violations.front().message;
    if (report.violations.empty() && !report.notes.empty()) {
      why = report.notes.front().message;
    }
    throw RegularityError("decomposition is not weak nested: " + why);
  }
}

}  // namespace

RegularityResult reg_weak_nested(const Graph& g, const EarDecomposition& d, const FieldOrder& q) {
  require_weak_nested(g, d);
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  const auto eps = static_cast<std::int64_t>(epsilon(d));
  const std::int64_t total = n + eps - 3;
  if (total % 2 != 0) {
    throw InternalInconsistency("|V| + eps - 3 = " + std::to_string(total) + " is odd for a bipartite graph", d);
  }
  return family_result(LinearForm::units(total / 2), q, "weak-nested",
                       "|V|=" + std::to_string(n) + ", eps=" + std::to_string(eps) + ", (|V|+eps-3)/2 (q-2)");
}

RegularityResult reg_peel(const Graph& g, const EarDecomposition& d, const FieldOrder& q) {
  require_weak_nested(g, d);
  Graph graph = g;
  EarDecomposition decomposition = d;
  std::int64_t units = 0;
  std::vector<DerivationStep> trace;
  while (decomposition.ear_count() > 1) {
    const std::size_t i = select_reducible_ear(graph, decomposition);
    const Ear& ear = decomposition.ear(i);
    const bool pendant =
        ear.length() == 1 && (graph.degree(ear.first()) == 1 || graph.degree(ear.last()) == 1);
    std::int64_t step = 0;
    std::string rule;
    if (pendant) {
      step = 1;
      rule = "leaf";
    } else {
      step = static_cast<std::int64_t>(ear.length() / 2);
      rule = ear.closed() ? "pending-cycle" : (ear.even() ? "even-open-ear" : "odd-open-ear");
    }
    trace.push_back({rule, "P_" + std::to_string(i) + " " + vertex_list(ear.path) + ", length " +
                               std::to_string(ear.length()),
                     step * q.unit()});
    units += step;
    ReducedInstance reduced = remove_ear(graph, decomposition, i);
    if (!validate(reduced.graph, reduced.decomposition).weak_nested()) {
      throw InternalInconsistency("removing P_" + std::to_string(i) + " broke the weak nested property",
                                  reduced.decomposition);
    }
    graph = std::move(reduced.graph);
    decomposition = std::move(reduced.decomposition);
  }
  const Ear& last = decomposition.ear(1);
  std::int64_t base = 0;
  if (last.length() == 1) {
    trace.push_back({"single-edge", to_string(Edge::make(last.first(), last.last())), 0});
  } else if (last.closed() && last.even()) {
    base = static_cast<std::int64_t>(last.length() - 2) / 2;
    trace.push_back({"even-cycle", "length " + std::to_string(last.length()), base * q.unit()});
  } else {
    throw InternalInconsistency("peeling ended on an ear that is neither an edge nor an even cycle", decomposition);
  }
  RegularityResult r = RegularityResult::exact_value(LinearForm::units(units + base), q);
  r.trace = std::move(trace);
  return r;
}

RegularityResult reg_via_blocks(const Graph& g, const FieldOrder& q, const BlockRegularity& block_reg) {
  if (!is_bipartite(g)) {
    throw RegularityError("block formula requires a bipartite graph");
  }
  if (!is_connected(g)) {
    throw RegularityError("block formula requires a connected graph");
  }
  const BlockDecomposition blocks = block_decomposition(g);
  RegularityResult total;
  total.lower = 0;
  total.upper = 0;
  total.lower_form = LinearForm::units(0);
  total.upper_form = LinearForm::units(0);
  bool exact = true;
  for (const Graph& block : blocks.blocks) {
    const RegularityResult r = block_reg(block, q);
    exact = exact && r.determined();
    total.lower += r.lower;
    total.upper = (total.upper && r.upper) ? std::optional(*total.upper + *r.upper) : std::nullopt;
    total.lower_form = add(total.lower_form, r.lower_form);
    total.upper_form = add(total.upper_form, r.upper_form);
    const std::string how = r.trace.empty() ? "provided" : r.trace.back().rule;
    total.trace.push_back({"block", vertex_list(block.vertices()) + " via " + how, r.lower});
  }
  const auto extra = static_cast<std::int64_t>(blocks.blocks.size()) - 1;
  total.lower += extra * q.unit();
  if (total.upper) {
    *total.upper += extra * q.unit();
  }
  total.lower_form = add(total.lower_form, LinearForm::units(extra));
  total.upper_form = add(total.upper_form, LinearForm::units(extra));
  total.trace.push_back({"block-count", std::to_string(blocks.blocks.size()) + " blocks, (m-1)(q-2)",
                         extra * q.unit()});
  total.kind = exact ? ResultKind::exact : ResultKind::interval;
  return total;
}

BlockRegularity make_formula_provider(std::uint64_t search_budget) {
  return [search_budget](const Graph& block, const FieldOrder& q) {
    if (auto closed = reg_closed_family(block, q)) {
      return *closed;
    }
    if (is_bipartite(block)) {
      SearchOptions options;
      options.budget = search_budget;
      const SearchOutcome found = find_weak_nested(block, options);
      if (found.decomposition) {
        return reg_weak_nested(block, *found.decomposition, q);
      }
    }
    return reg_bounds(block, q);
  };
}

StrippedGraph strip_leaves(const Graph& g, const FieldOrder& q) {
  StrippedGraph out;
  for (Vertex v : g.vertices()) {
    if (g.degree(v) == 1) {
      out.removed.push_back(v);
    }
  }
  if (out.removed.empty()) {
    out.graph = g;
    return out;
  }
  Subgraph rest = remove_vertices(g, out.removed);
  if (rest.graph.empty()) {
    throw RegularityError("stripping the leaves removes every edge");
  }
  if (!rest.isolated.empty()) {
    throw RegularityError("stripping the leaves leaves isolated vertices " + vertex_list(rest.isolated));
  }
  out.graph = std::move(rest.graph);
  out.contribution = static_cast<std::int64_t>(out.removed.size()) * q.unit();
  return out;
}

namespace {

// Another ear of g joining a and b that does not start with the edge {a, skip}.
bool has_parallel_ear(const Graph& g, Vertex a, Vertex b, Vertex skip) {
  for (Vertex first : g.neighbors(a)) {
    if (first == skip) {
      continue;
    }
    Vertex prev = a;
    Vertex cur = first;
    while (cur != b && cur != a && g.degree(cur) == 2) {
      const auto& nb = g.neighbors(cur);
      const Vertex next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
    }
    if (cur == b) {
      return true;
    }
  }
  return false;
}

}  // namespace

RegularityResult reg_ear_attach(const Graph& g, const Ear& ear, const FieldOrder& q, const RegularityResult& reg_base,
                                const AttachOptions& options) {
  const std::size_t length = ear.length();
  if (length == 0) {
    throw RegularityError("ear must have at least one edge");
  }
  for (const Edge& e : ear.edges()) {
    if (!g.has_edge(e)) {
      throw RegularityError("ear edge " + to_string(e) + " is not in the graph");
    }
  }
  if (!is_ear_of(g, ear.path)) {
    throw RegularityError("path is not an ear of the graph: an inner vertex has degree other than two");
  }
  const Vertex a = ear.first();
  const Vertex b = ear.last();

  std::optional<AttachCase> which;
  if (length > 1 && length % 2 == 1 && a != b && g.has_edge(a, b)) {
    which = AttachCase::odd_adjacent_ends;
  } else if (length > 1 && length % 2 == 0 && a == b) {
    which = AttachCase::even_pending_cycle;
  } else if (options.modification_hypothesis && a != b && is_bipartite(g) &&
             has_parallel_ear(g, a, b, ear.path[1])) {
    which = AttachCase::parallel_ear;
  }
  if (!which) {
    throw RegularityError("no attachment case applies to ear " + vertex_list(ear.path));
  }

  // Every end-vertex must keep an edge once the ear is gone.
  const auto edges = ear.edges();
  Subgraph rest = remove_edges(g, edges);
  Subgraph base = remove_vertices(rest.graph, ear.inner());
  if (!base.isolated.empty()) {
    throw RegularityError("removing the ear leaves isolated vertices " + vertex_list(base.isolated));
  }

  const auto step = static_cast<std::int64_t>(length / 2);
  RegularityResult r = reg_base;
  r.lower += step * q.unit();
  if (r.upper) {
    *r.upper += step * q.unit();
  }
  r.lower_form = add(r.lower_form, LinearForm::units(step));
  r.upper_form = add(r.upper_form, LinearForm::units(step));
  const char* rule = *which == AttachCase::odd_adjacent_ends    ? "odd-ear-adjacent-ends"
                     : *which == AttachCase::even_pending_cycle ? "even-pending-cycle"
                                                                : "parallel-ear";
  r.trace.push_back({rule, vertex_list(ear.path) + ", floor(l/2)(q-2) with l=" + std::to_string(length),
                     step * q.unit()});
  return r;
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct Piece {
  Bits edges;
  std::size_t size = 0;
  std::int64_t units = 0;
  std::vector<Vertex> cycle;
};

std::size_t popcount(const Bits& b) {
  std::size_t n = 0;
  for (auto w : b) {
    n += static_cast<std::size_t>(__builtin_popcountll(w));
  }
  return n;
}

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

std::int64_t cycle_units(std::size_t length) {
  const auto l = static_cast<std::int64_t>(length);
  return l % 2 == 0 ? (l - 2) / 2 : l - 1;
}

std::vector<Piece> enumerate_cycles(const Graph& g, std::size_t cap) {
  const std::size_t words = (g.edge_count() + 63) / 64;
  std::vector<Piece> out;
  std::vector<Vertex> path;
  std::vector<char> on_path(g.vertex_count(), 0);
  auto edge_id = [&](Vertex x, Vertex y) { return *g.edge_index(Edge::make(x, y)); };
  std::function<void(Vertex)> dfs = [&](Vertex v) {
    if (out.size() >= cap) {
      return;
    }
    const Vertex start = path.front();
    for (Vertex w : g.neighbors(v)) {
      if (w == start && path.size() >= 3 && path[1] < path.back()) {
        Piece p;
        p.edges.assign(words, 0);
        for (std::size_t k = 0; k < path.size(); ++k) {
          set_bit(p.edges, edge_id(path[k], path[(k + 1) % path.size()]));
        }
        p.size = path.size();
        p.units = cycle_units(path.size());
        p.cycle = path;
        out.push_back(std::move(p));
        if (out.size() >= cap) {
          return;
        }
      } else if (w > start && !on_path[g.index_of(w)]) {
        on_path[g.index_of(w)] = 1;
        path.push_back(w);
        dfs(w);
        path.pop_back();
        on_path[g.index_of(w)] = 0;
      }
    }
  };
  for (Vertex s : g.vertices()) {
    path = {s};
    on_path[g.index_of(s)] = 1;
    dfs(s);
    on_path[g.index_of(s)] = 0;
  }
  std::stable_sort(out.begin(), out.end(), [](const Piece& x, const Piece& y) { return x.size < y.size; });
  return out;
}

struct Cover {
  std::int64_t units = 0;
  std::size_t cycles = 0;
  std::size_t extensions = 0;
};

// Grows a union of pieces that always shares an edge with the next piece.
// Cycles are scored by units per new edge; a two-edge path through one
// covered edge costs one unit per new edge.
std::optional<Cover> greedy_cover(const Graph& g, const std::vector<Piece>& cycles, const Bits& start,
                                  std::int64_t start_units) {
  const std::size_t words = start.size();
  Bits covered = start;
  Cover cover{start_units, 0, 0};
  std::size_t count = popcount(covered);
  std::vector<char> touched(g.vertex_count(), 0);
  auto refresh_touched = [&] {
    std::fill(touched.begin(), touched.end(), 0);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (covered[e / 64] >> (e % 64) & 1) {
        touched[g.index_of(g.edges()[e].u)] = 1;
        touched[g.index_of(g.edges()[e].v)] = 1;
      }
    }
  };
  while (count < g.edge_count()) {
    const Piece* best = nullptr;
    std::size_t best_new = 0;
    double best_score = 1.0;
    for (const Piece& p : cycles) {
      std::size_t shared = 0;
      std::size_t fresh = 0;
      for (std::size_t k = 0; k < words; ++k) {
        shared += static_cast<std::size_t>(__builtin_popcountll(p.edges[k] & covered[k]));
        fresh += static_cast<std::size_t>(__builtin_popcountll(p.edges[k] & ~covered[k]));
      }
      if (shared == 0 || fresh == 0) {
        continue;
      }
      const double score = static_cast<double>(p.units) / static_cast<double>(fresh);
      if (score < best_score || (score == best_score && best && fresh > best_new)) {
        best = &p;
        best_score = score;
        best_new = fresh;
      }
    }
    if (best) {
      for (std::size_t k = 0; k < words; ++k) {
        covered[k] |= best->edges[k];
      }
      cover.units += best->units;
      ++cover.cycles;
      count += best_new;
      continue;
    }
    refresh_touched();
    bool extended = false;
    for (std::size_t e = 0; e < g.edge_count() && !extended; ++e) {
      if (covered[e / 64] >> (e % 64) & 1) {
        continue;
      }
      if (touched[g.index_of(g.edges()[e].u)] || touched[g.index_of(g.edges()[e].v)]) {
        set_bit(covered, e);
        ++cover.units;
        ++cover.extensions;
        ++count;
        extended = true;
      }
    }
    if (!extended) {
      return std::nullopt;
    }
  }
  return cover;
}

// Hamiltonian cycle by DFS from the smallest vertex, within a step budget.
bool has_hamiltonian_cycle(const Graph& g, std::uint64_t budget) {
  const std::size_t n = g.vertex_count();
  if (n < 3) {
    return false;
  }
  std::vector<char> seen(n, 0);
  std::uint64_t steps = 0;
  const Vertex start = g.vertices().front();
  std::function<bool(Vertex, std::size_t)> dfs = [&](Vertex v, std::size_t depth) {
    if (++steps > budget) {
      return false;
    }
    if (depth == n) {
      return g.has_edge(v, start);
    }
    for (Vertex w : g.neighbors(v)) {
      const std::size_t i = g.index_of(w);
      if (!seen[i]) {
        seen[i] = 1;
        if (dfs(w, depth + 1)) {
          return true;
        }
        seen[i] = 0;
      }
    }
    return false;
  };
  seen[0] = 1;
  return dfs(start, 1);
}

struct Candidate {
  LinearForm form;
  std::string rule;
  std::string detail;
};

}  // namespace

RegularityResult reg_bounds(const Graph& g, const FieldOrder& q, const BoundsOptions& options) {
  if (!g.well_formed()) {
    throw RegularityError("bounds need a graph with edges and no isolated vertices");
  }
  if (g.vertex_count() > options.vertex_cap) {
    throw RegularityError("graph has " + std::to_string(g.vertex_count()) + " vertices, above the cap of " +
                          std::to_string(options.vertex_cap));
  }
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  const bool bipartite = is_bipartite(g);
  const bool connected = is_connected(g);
  std::vector<Candidate> lower;
  std::vector<Candidate> upper;

  const IndependentSet alpha = independence_number(g, options.vertex_cap);
  std::int64_t r = static_cast<std::int64_t>(alpha.size) - 1;
  std::string witness = "alpha=" + std::to_string(alpha.size) + ", every maximum set covers all edges";
  for (const Edge& e : g.edges()) {
    std::vector<Vertex> allowed;
    for (Vertex v : g.vertices()) {
      if (v != e.u && v != e.v) {
        allowed.push_back(v);
      }
    }
    const IndependentSet s = max_independent_subset(g, allowed, options.vertex_cap);
    if (s.size == alpha.size) {
      r = static_cast<std::int64_t>(alpha.size);
      witness = vertex_list(s.witness) + " leaves edge " + to_string(e);
      break;
    }
  }
  lower.push_back({LinearForm::units(r), "independent-set", witness});

  if (bipartite) {
    std::int64_t larger = 0;
    for (const auto& component : connected_components(g)) {
      const Graph h = edge_subgraph(g, [&] {
        std::vector<Edge> es;
        for (const Edge& e : g.edges()) {
          if (std::binary_search(component.begin(), component.end(), e.u)) {
            es.push_back(e);
          }
        }
        return es;
      }());
      const auto coloring = find_two_coloring(h);
      std::int64_t a = 0;
      for (const auto& [v, c] : coloring->color) {
        a += c == 0 ? 1 : 0;
      }
      larger += std::max<std::int64_t>(a, static_cast<std::int64_t>(h.vertex_count()) - a);
    }
    lower.push_back({LinearForm::units(larger - 1), "spanned-complete-bipartite",
                     "larger side " + std::to_string(larger)});
  } else if (n >= 4) {
    lower.push_back({complete_graph_form(g.vertex_count()), "spanned-complete-graph", "|V|=" + std::to_string(n)});
  }

  if (auto closed = reg_closed_family(g, q)) {
    lower.push_back({*closed->lower_form, "closed-family", closed->trace.front().rule});
    upper.push_back({*closed->upper_form, "closed-family", closed->trace.front().rule});
  }

  if (connected) {
    const auto cycles = enumerate_cycles(g, options.cycle_cap);
    std::optional<Cover> best;
    auto consider = [&](const Bits& start, std::int64_t units) {
      auto c = greedy_cover(g, cycles, start, units);
      if (c && (!best || c->units < best->units)) {
        best = c;
      }
    };
    const std::size_t words = (g.edge_count() + 63) / 64;
    const std::size_t starts = std::min<std::size_t>(cycles.size(), 64);
    for (std::size_t k = 0; k < starts; ++k) {
      consider(cycles[k].edges, cycles[k].units);
    }
    Bits first(words, 0);
    set_bit(first, 0);
    consider(first, 0);
    if (best) {
      upper.push_back({LinearForm::units(best->units), "union-cover",
                       std::to_string(best->cycles) + " cycles, " + std::to_string(best->extensions) +
                           " two-edge paths"});
    }
    if (bipartite) {
      upper.push_back({LinearForm::units(n - 2), "spanning-tree", "|V|=" + std::to_string(n)});
    }
    const bool usable_parity = bipartite || n % 2 == 1;
    if (usable_parity && has_hamiltonian_cycle(g, options.hamiltonian_budget)) {
      upper.push_back({LinearForm::units(cycle_units(g.vertex_count())), "spanning-cycle",
                       "length " + std::to_string(n)});
    }
  }

  RegularityResult result;
  result.kind = ResultKind::interval;
  const Candidate* lo = &lower.front();
  for (const Candidate& c : lower) {
    if (c.form.evaluate(q) > lo->form.evaluate(q)) {
      lo = &c;
    }
  }
  result.lower = lo->form.evaluate(q);
  result.lower_form = lo->form;
  result.trace.push_back({"lower:" + lo->rule, lo->detail, result.lower});
  const Candidate* hi = nullptr;
  for (const Candidate& c : upper) {
    if (!hi || c.form.evaluate(q) < hi->form.evaluate(q)) {
      hi = &c;
    }
  }
  if (hi) {
    result.upper = hi->form.evaluate(q);
    result.upper_form = hi->form;
    result.trace.push_back({"upper:" + hi->rule, hi->detail, *result.upper});
  } else {
    result.trace.push_back({"upper:none", "no upper bound rule applies", 0});
  }
  if (result.upper && *result.upper < result.lower) {
    throw InternalInconsistency("bounds cross: lower " + std::to_string(result.lower) + " > upper " +
                                std::to_string(*result.upper));
  }
  return result;
}

}  // namespace earreg
