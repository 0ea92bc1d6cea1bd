#include "earreg/ear_decomposition.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace earreg {

std::string_view to_string(EarKind kind) {
  switch (kind) {
    case EarKind::open_ear:
      return "open-ear";
    case EarKind::pending_cycle:
      return "pending-cycle";
    case EarKind::pendant_edge:
      return "pendant-edge";
    case EarKind::trivial_ear:
      return "trivial-ear";
  }
  return "?";
}

std::string_view to_string(DecompositionClass c) {
  switch (c) {
    case DecompositionClass::none:
      return "none";
    case DecompositionClass::plain:
      return "plain-ear-decomposition";
    case DecompositionClass::open:
      return "open";
    case DecompositionClass::nested:
      return "nested";
    case DecompositionClass::weak_nested:
      return "weak-nested";
  }
  return "?";
}

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::base_vertex:
      return "base-vertex";
    case Rule::path_shape:
      return "path-shape";
    case Rule::unknown_edge:
      return "unknown-edge";
    case Rule::edge_reused:
      return "edge-reused";
    case Rule::edges_uncovered:
      return "edges-uncovered";
    case Rule::end_vertex:
      return "end-vertex";
    case Rule::inner_vertex:
      return "inner-vertex";
    case Rule::no_host:
      return "no-host";
    case Rule::nesting:
      return "nesting";
  }
  return "?";
}

std::vector<Edge> Ear::edges() const {
  std::vector<Edge> out;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    out.push_back(Edge::make(path[k], path[k + 1]));
  }
  return out;
}

std::vector<Vertex> Ear::inner() const {
  if (path.size() <= 2) {
    return {};
  }
  return {path.begin() + 1, path.end() - 1};
}

std::optional<std::vector<Vertex>> induced_subpath(std::span<const Vertex> host, Vertex a, Vertex b) {
  std::vector<std::size_t> pos_a;
  std::vector<std::size_t> pos_b;
  for (std::size_t k = 0; k < host.size(); ++k) {
    if (host[k] == a) {
      pos_a.push_back(k);
    }
    if (host[k] == b) {
      pos_b.push_back(k);
    }
  }
  if (pos_a.empty() || pos_b.empty()) {
    return std::nullopt;
  }
  if (a == b) {
    return std::vector<Vertex>{a};
  }
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t pa : pos_a) {
    for (std::size_t pb : pos_b) {
      const std::size_t lo = std::min(pa, pb);
      const std::size_t hi = std::max(pa, pb);
      if (!best || std::make_tuple(hi - lo, lo) < std::make_tuple(best->second - best->first, best->first)) {
        best = std::make_pair(lo, hi);
      }
    }
  }
  return std::vector<Vertex>(host.begin() + static_cast<std::ptrdiff_t>(best->first),
                             host.begin() + static_cast<std::ptrdiff_t>(best->second) + 1);
}

EarDecomposition::EarDecomposition(Vertex base, std::vector<std::vector<Vertex>> paths) : base_(base) {
  std::set<Vertex> placed{base};
  std::vector<std::set<Vertex>> members{{base}};
  for (auto& p : paths) {
    Ear ear{std::move(p), EarKind::open_ear};
    std::optional<std::size_t> host;
    std::vector<Vertex> interval;
    if (ear.path.size() >= 2) {
      const bool first_in = placed.contains(ear.first());
      const bool last_in = placed.contains(ear.last());
      if (ear.length() == 1 && first_in != last_in) {
        ear.kind = EarKind::pendant_edge;
      } else if (ear.closed()) {
        ear.kind = EarKind::pending_cycle;
      } else if (ear.length() == 1) {
        ear.kind = EarKind::trivial_ear;
      }
      if (ear.kind == EarKind::pendant_edge || ear.closed()) {
        const Vertex anchor = ear.kind == EarKind::pendant_edge ? (first_in ? ear.first() : ear.last()) : ear.first();
        for (std::size_t j = 0; j < members.size(); ++j) {
          if (members[j].contains(anchor)) {
            host = j;
            interval = {anchor};
            break;
          }
        }
      } else {
        for (std::size_t j = 0; j < members.size(); ++j) {
          if (members[j].contains(ear.first()) && members[j].contains(ear.last())) {
            host = j;
            const std::vector<Vertex> host_path = j == 0 ? std::vector<Vertex>{base} : ears_[j - 1].path;
            interval = induced_subpath(host_path, ear.first(), ear.last()).value_or(std::vector<Vertex>{});
            break;
          }
        }
      }
    }
    placed.insert(ear.path.begin(), ear.path.end());
    members.emplace_back(ear.path.begin(), ear.path.end());
    ears_.push_back(std::move(ear));
    hosts_.push_back(host);
    intervals_.push_back(std::move(interval));
  }
}

const Ear& EarDecomposition::ear(std::size_t i) const {
  if (i == 0 || i > ears_.size()) {
    throw DecompositionError("ear index " + std::to_string(i) + " out of range");
  }
  return ears_[i - 1];
}

std::optional<std::size_t> EarDecomposition::nest_host(std::size_t i) const {
  (void)ear(i);
  return hosts_[i - 1];
}

const std::vector<Vertex>& EarDecomposition::stored_interval(std::size_t i) const {
  (void)ear(i);
  return intervals_[i - 1];
}

std::vector<Vertex> EarDecomposition::path_vertices(std::size_t p) const {
  if (p == 0) {
    return {base_};
  }
  return ear(p).path;
}

std::vector<std::vector<Vertex>> EarDecomposition::paths() const {
  std::vector<std::vector<Vertex>> out;
  for (const Ear& e : ears_) {
    out.push_back(e.path);
  }
  return out;
}

bool EarDecomposition::operator==(const EarDecomposition& other) const {
  return base_ == other.base_ && paths() == other.paths();
}

std::vector<Vertex> nest_interval(const EarDecomposition& d, std::size_t i) {
  if (!d.nest_host(i)) {
    throw DecompositionError("P_" + std::to_string(i) + " has no nest host");
  }
  return d.stored_interval(i);
}

std::size_t epsilon(const EarDecomposition& d) {
  return static_cast<std::size_t>(std::count_if(d.ears().begin(), d.ears().end(), [](const Ear& e) {
    return e.even() || e.kind == EarKind::pendant_edge;
  }));
}

namespace {

std::string path_name(std::size_t i) { return "P_" + std::to_string(i); }

}  // namespace

ValidationReport validate(const Graph& g, const EarDecomposition& d) {
  std::vector<Violation> structural;
  std::vector<Violation> attachment;
  std::vector<Violation> nesting;
  if (!g.has_vertex(d.base())) {
    structural.push_back({0, Rule::base_vertex, "base vertex " + std::to_string(d.base()) + " is not in the graph"});
  }
  if (d.ear_count() == 0) {
    structural.push_back({0, Rule::path_shape, "decomposition has no ears"});
  }

  std::set<Edge> used;
  std::set<Vertex> placed{d.base()};
  std::vector<std::set<Vertex>> members{{d.base()}};
  std::size_t pendants = 0;
  bool distinct_ends_after_first = true;

  for (std::size_t i = 1; i <= d.ear_count(); ++i) {
    const Ear& ear = d.ear(i);
    const auto& path = ear.path;
    if (path.size() < 2) {
      structural.push_back({i, Rule::path_shape, path_name(i) + " has length 0"});
      placed.insert(path.begin(), path.end());
      members.emplace_back(path.begin(), path.end());
      continue;
    }
    std::set<Vertex> tail(path.begin() + 1, path.end());
    if (tail.size() != ear.length()) {
      structural.push_back({i, Rule::path_shape, path_name(i) + " repeats a vertex"});
    }
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      if (path[k] == path[k + 1]) {
        structural.push_back({i, Rule::path_shape, path_name(i) + " has a self-loop"});
        continue;
      }
      const Edge e = Edge::make(path[k], path[k + 1]);
      if (!g.has_edge(e)) {
        structural.push_back({i, Rule::unknown_edge, path_name(i) + " uses " + to_string(e) + " which is not an edge"});
      } else if (!used.insert(e).second) {
        structural.push_back({i, Rule::edge_reused, to_string(e) + " appears in more than one path"});
      }
    }

    const bool first_in = placed.contains(ear.first());
    const bool last_in = placed.contains(ear.last());
    if (ear.length() == 1 && first_in != last_in) {
      ++pendants;
    } else {
      if (!first_in || !last_in) {
        attachment.push_back({i, Rule::end_vertex, path_name(i) + " has an end-vertex outside the earlier union"});
      }
      for (Vertex v : ear.inner()) {
        if (placed.contains(v)) {
          attachment.push_back({i, Rule::inner_vertex,
                                path_name(i) + " inner vertex " + std::to_string(v) + " already placed"});
        }
      }
      bool hosted = false;
      for (const auto& m : members) {
        if (m.contains(ear.first()) && m.contains(ear.last())) {
          hosted = true;
          break;
        }
      }
      if (!hosted) {
        nesting.push_back({i, Rule::no_host, path_name(i) + " is not nested in any earlier path"});
      }
      if (i >= 2 && ear.first() == ear.last()) {
        distinct_ends_after_first = false;
      }
    }
    placed.insert(path.begin(), path.end());
    members.emplace_back(path.begin(), path.end());
  }

  if (used.size() != g.edge_count()) {
    std::string missing;
    std::size_t shown = 0;
    for (const Edge& e : g.edges()) {
      if (!used.contains(e) && shown++ < 8) {
        missing += (missing.empty() ? "" : " ") + to_string(e);
      }
    }
    structural.push_back({0, Rule::edges_uncovered, "edges not covered by any path: " + missing});
  }

  if (structural.empty() && attachment.empty()) {
    // Nesting condition over every host that contains both end-vertices.
    for (std::size_t j = 1; j <= d.ear_count(); ++j) {
      const auto& host = d.ear(j).path;
      std::vector<std::pair<std::size_t, std::set<Edge>>> seen;
      for (std::size_t i = j + 1; i <= d.ear_count(); ++i) {
        const Ear& ear = d.ear(i);
        if (ear.kind == EarKind::pendant_edge || ear.first() == ear.last()) {
          continue;
        }
        if (!members[j].contains(ear.first()) || !members[j].contains(ear.last())) {
          continue;
        }
        const auto sub = induced_subpath(host, ear.first(), ear.last());
        std::set<Edge> interval;
        for (std::size_t k = 0; k + 1 < sub->size(); ++k) {
          interval.insert(Edge::make((*sub)[k], (*sub)[k + 1]));
        }
        for (const auto& [other, other_edges] : seen) {
          const bool disjoint = std::none_of(interval.begin(), interval.end(),
                                             [&](const Edge& e) { return other_edges.contains(e); });
          const bool inside = std::includes(other_edges.begin(), other_edges.end(), interval.begin(), interval.end());
          const bool outside = std::includes(interval.begin(), interval.end(), other_edges.begin(), other_edges.end());
          if (!disjoint && !inside && !outside) {
            nesting.push_back({i, Rule::nesting,
                               "nest intervals of " + path_name(i) + " and " + path_name(other) + " in " +
                                   path_name(j) + " overlap without containment"});
          }
        }
        seen.emplace_back(i, std::move(interval));
      }
    }
  }

  ValidationReport report;
  if (!structural.empty() || !attachment.empty()) {
    report.violations = std::move(structural);
    report.violations.insert(report.violations.end(), attachment.begin(), attachment.end());
    report.violations.insert(report.violations.end(), nesting.begin(), nesting.end());
    return report;
  }
  const bool plain = pendants == 0;
  if (nesting.empty()) {
    report.valid = true;
    report.classification = plain ? DecompositionClass::nested : DecompositionClass::weak_nested;
    report.open = plain && distinct_ends_after_first;
    return report;
  }
  if (plain) {
    report.valid = true;
    report.open = distinct_ends_after_first;
    report.classification = report.open ? DecompositionClass::open : DecompositionClass::plain;
    report.notes = std::move(nesting);
    return report;
  }
  report.violations = std::move(nesting);
  return report;
}

bool is_ear_of(const Graph& g, std::span<const Vertex> path) {
  if (path.size() < 2) {
    return false;
  }
  for (std::size_t k = 1; k + 1 < path.size(); ++k) {
    if (!g.has_vertex(path[k]) || g.degree(path[k]) != 2) {
      return false;
    }
  }
  return true;
}

std::size_t select_reducible_ear(const Graph& g, const EarDecomposition& d) {
  for (std::size_t i = 1; i <= d.ear_count(); ++i) {
    const Ear& ear = d.ear(i);
    if (ear.length() == 1 && (g.degree(ear.first()) == 1 || g.degree(ear.last()) == 1)) {
      return i;
    }
    if (!is_ear_of(g, ear.path)) {
      continue;
    }
    if (ear.closed()) {
      return i;
    }
    if (ear.kind == EarKind::pendant_edge) {
      continue;
    }
    bool all_ears = true;
    for (std::size_t k = 1; k <= d.ear_count() && all_ears; ++k) {
      const auto sub = induced_subpath(d.ear(k).path, ear.first(), ear.last());
      if (sub && !is_ear_of(g, *sub)) {
        all_ears = false;
      }
    }
    if (all_ears) {
      return i;
    }
  }
  throw InternalInconsistency("no reducible ear in a decomposition that should have one", d);
}

ReducedInstance remove_ear(const Graph& g, const EarDecomposition& d, std::size_t i) {
  if (d.ear_count() < 2) {
    throw DecompositionError("cannot remove the only ear of a decomposition");
  }
  const Ear& ear = d.ear(i);
  Vertex base = d.base();
  std::vector<Vertex> drop_vertices;
  if (ear.length() == 1 && (g.degree(ear.first()) == 1 || g.degree(ear.last()) == 1)) {
    const Vertex leaf = g.degree(ear.last()) == 1 ? ear.last() : ear.first();
    drop_vertices.push_back(leaf);
    if (leaf == base) {
      base = ear.first() == leaf ? ear.last() : ear.first();
    }
  } else {
    drop_vertices = ear.inner();
  }
  const auto edges = ear.edges();
  Subgraph without_edges = remove_edges(g, edges);
  Subgraph reduced = remove_vertices(without_edges.graph, drop_vertices);
  if (!reduced.graph.well_formed()) {
    throw DecompositionError("removing " + path_name(i) + " leaves isolated vertices or no edges");
  }
  std::vector<std::vector<Vertex>> paths;
  for (std::size_t k = 1; k <= d.ear_count(); ++k) {
    if (k != i) {
      paths.push_back(d.ear(k).path);
    }
  }
  return {std::move(reduced.graph), EarDecomposition(base, std::move(paths))};
}

namespace {

void check_open_ear(const Graph& g, std::span<const Vertex> path) {
  if (path.size() < 2) {
    throw DecompositionError("ear must have length at least 1");
  }
  if (path.front() == path.back()) {
    throw DecompositionError("bipartite ear modification needs an open ear");
  }
  std::set<Vertex> distinct(path.begin(), path.end());
  if (distinct.size() != path.size()) {
    throw DecompositionError("ear repeats a vertex");
  }
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (!g.has_edge(path[k], path[k + 1])) {
      throw DecompositionError("ear uses a non-edge");
    }
  }
  if (!is_ear_of(g, path)) {
    throw DecompositionError("inner vertices of the ear must have degree two");
  }
}

}  // namespace

Graph bipartite_ear_modification(const Graph& g, std::span<const Vertex> path, const EarModification& mode) {
  if (!is_bipartite(g)) {
    throw DecompositionError("bipartite ear modification needs a bipartite graph");
  }
  check_open_ear(g, path);
  const std::size_t length = path.size() - 1;
  std::set<Edge> ear_edges;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    ear_edges.insert(Edge::make(path[k], path[k + 1]));
  }
  std::vector<Edge> rest;
  for (const Edge& e : g.edges()) {
    if (!ear_edges.contains(e)) {
      rest.push_back(e);
    }
  }
  const Vertex a = path.front();
  const Vertex b = path.back();

  if (const auto* replace = std::get_if<ReplaceEar>(&mode)) {
    if (replace->new_length < 1) {
      throw DecompositionError("replacement ear must have length at least 1");
    }
    if (replace->new_length % 2 != length % 2) {
      throw DecompositionError("replacement length " + std::to_string(replace->new_length) +
                               " has different parity from " + std::to_string(length));
    }
    Vertex prev = a;
    Vertex fresh = g.max_vertex();
    for (std::size_t k = 1; k < replace->new_length; ++k) {
      ++fresh;
      rest.push_back(Edge::make(prev, fresh));
      prev = fresh;
    }
    rest.push_back(Edge::make(prev, b));
    return Graph::from_edges(std::span<const Edge>(rest));
  }

  if (length % 2 != 0) {
    throw DecompositionError("only even ears can be contracted");
  }
  const Vertex keep = std::min(a, b);
  const Vertex drop = std::max(a, b);
  std::vector<Edge> merged;
  for (const Edge& e : rest) {
    const Vertex u = e.u == drop ? keep : e.u;
    const Vertex v = e.v == drop ? keep : e.v;
    merged.push_back(Edge::make(u, v));
  }
  if (merged.empty()) {
    throw DecompositionError("contracting the ear leaves no edges");
  }
  return Graph::from_edges(std::span<const Edge>(merged));
}

std::optional<EarDecomposition> find_ear_decomposition(const Graph& g) {
  if (!g.well_formed() || !is_connected(g)) {
    return std::nullopt;
  }
  const std::size_t n = g.vertex_count();
  std::vector<int> disc(n, -1);
  std::vector<std::size_t> parent(n, 0);
  std::vector<std::size_t> order;
  // Iterative DFS visiting neighbors in ascending label order.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  disc[0] = 0;
  order.push_back(0);
  int timer = 1;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& nbrs = g.neighbors(g.vertices()[v]);
    if (next == nbrs.size()) {
      stack.pop_back();
      continue;
    }
    const std::size_t w = g.index_of(nbrs[next++]);
    if (disc[w] == -1) {
      disc[w] = timer++;
      parent[w] = v;
      order.push_back(w);
      stack.emplace_back(w, 0);
    }
  }

  std::vector<bool> marked(n, false);
  std::vector<std::vector<Vertex>> chains;
  std::size_t covered = 0;
  for (std::size_t v : order) {
    const Vertex vl = g.vertices()[v];
    for (Vertex wl : g.neighbors(vl)) {
      const std::size_t w = g.index_of(wl);
      const bool tree_edge = parent[w] == v && disc[w] > disc[v];
      if (tree_edge || disc[w] < disc[v]) {
        continue;
      }
      marked[v] = true;
      std::vector<Vertex> chain{vl, wl};
      std::size_t x = w;
      while (!marked[x]) {
        marked[x] = true;
        x = parent[x];
        chain.push_back(g.vertices()[x]);
      }
      covered += chain.size() - 1;
      chains.push_back(std::move(chain));
    }
  }
  if (covered != g.edge_count()) {
    return std::nullopt;
  }
  return EarDecomposition(g.vertices().front(), std::move(chains));
}

}  // namespace earreg
