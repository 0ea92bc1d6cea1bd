#include "earreg/generators.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

namespace earreg {

void check_config(const GeneratorConfig& cfg) {
  auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (cfg.ear_count < 1) {
    throw GeneratorError("ear_count must be at least 1");
  }
  if (cfg.max_ear_length < 1) {
    throw GeneratorError("max_ear_length must be at least 1");
  }
  if (!probability(cfg.pendant_edge_probability) || !probability(cfg.pending_cycle_probability)) {
    throw GeneratorError("probabilities must lie in [0, 1]");
  }
  if (cfg.max_vertices != 0 && cfg.max_vertices < 2) {
    throw GeneratorError("max_vertices must be 0 or at least 2");
  }
}

namespace {

class Builder {
 public:
  explicit Builder(const GeneratorConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    color_[1] = 0;
  }

  GeneratedInstance run() {
    first_ear();
    for (std::size_t i = 2; i <= cfg_.ear_count; ++i) {
      next_ear(i);
    }
    GeneratedInstance out{graph_of(edges_), EarDecomposition(1, paths_)};
    if (!is_bipartite(out.graph) || !validate(out.graph, out.decomposition).weak_nested()) {
      throw GeneratorError("generated instance failed validation");
    }
    return out;
  }

 private:
  static Graph graph_of(const std::set<Edge>& edges) {
    const std::vector<Edge> list(edges.begin(), edges.end());
    return Graph::from_edges(std::span<const Edge>(list));
  }

  bool room_for(std::size_t fresh) const {
    return cfg_.max_vertices == 0 || color_.size() + fresh <= cfg_.max_vertices;
  }

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  // Uniform length in [lo, max_ear_length] with the given parity.
  std::optional<std::size_t> pick_length(std::size_t lo, std::size_t parity) {
    std::vector<std::size_t> options;
    for (std::size_t l = lo; l <= cfg_.max_ear_length; ++l) {
      if (l % 2 == parity && room_for(l - 1)) {
        options.push_back(l);
      }
    }
    if (options.empty()) {
      return std::nullopt;
    }
    return options[pick(0, options.size() - 1)];
  }

  Vertex any_vertex() {
    auto it = color_.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(pick(0, color_.size() - 1)));
    return it->first;
  }

  // Path from a to b through `length - 1` fresh vertices.
  std::vector<Vertex> fresh_path(Vertex a, Vertex b, std::size_t length) const {
    std::vector<Vertex> path{a};
    Vertex next = static_cast<Vertex>(color_.rbegin()->first + 1);
    for (std::size_t k = 1; k < length; ++k) {
      path.push_back(next++);
    }
    path.push_back(b);
    return path;
  }

  void commit(const std::vector<Vertex>& path) {
    for (std::size_t k = 1; k < path.size(); ++k) {
      if (!color_.contains(path[k])) {
        color_[path[k]] = static_cast<std::uint8_t>(1 - color_.at(path[k - 1]));
      }
      edges_.insert(Edge::make(path[k - 1], path[k]));
    }
    paths_.push_back(path);
  }

  bool accepts(const std::vector<Vertex>& path) const {
    std::set<Edge> edges = edges_;
    for (std::size_t k = 1; k < path.size(); ++k) {
      if (!edges.insert(Edge::make(path[k - 1], path[k])).second) {
        return false;
      }
    }
    auto paths = paths_;
    paths.push_back(path);
    const Graph g = graph_of(edges);
    return is_bipartite(g) && validate(g, EarDecomposition(1, std::move(paths))).weak_nested();
  }

  void first_ear() {
    std::bernoulli_distribution pendant(cfg_.pendant_edge_probability);
    std::optional<std::size_t> length;
    if (!pendant(rng_)) {
      length = pick_length(4, 0);
    }
    if (!length && !room_for(1)) {
      throw GeneratorError("no room for a first ear");
    }
    commit(fresh_path(1, length ? 1 : static_cast<Vertex>(2), length.value_or(1)));
  }

  std::optional<std::vector<Vertex>> candidate() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double roll = u(rng_);
    if (roll < cfg_.pendant_edge_probability) {
      if (!room_for(1)) {
        return std::nullopt;
      }
      const Vertex a = any_vertex();
      return std::vector<Vertex>{a, static_cast<Vertex>(color_.rbegin()->first + 1)};
    }
    if (roll < cfg_.pendant_edge_probability + cfg_.pending_cycle_probability) {
      const Vertex a = any_vertex();
      const auto length = pick_length(4, 0);
      if (!length) {
        return std::nullopt;
      }
      return fresh_path(a, a, *length);
    }
    const auto& host = paths_[pick(0, paths_.size() - 1)];
    const std::size_t span = host.front() == host.back() ? host.size() - 1 : host.size();
    const std::size_t i = pick(0, span - 1);
    std::size_t j = pick(0, span - 1);
    if (i == j) {
      return std::nullopt;
    }
    const Vertex a = host[std::min(i, j)];
    const Vertex b = host[std::max(i, j)];
    const std::size_t parity = color_.at(a) == color_.at(b) ? 0 : 1;
    const auto length = pick_length(parity == 0 ? 2 : 1, parity);
    if (!length) {
      return std::nullopt;
    }
    return fresh_path(a, b, *length);
  }

  // Every attachment that fits the size limit, in a seeded random order.
  std::vector<std::vector<Vertex>> all_candidates() {
    std::vector<std::vector<Vertex>> out;
    const auto fresh = static_cast<Vertex>(color_.rbegin()->first + 1);
    for (const auto& [a, ca] : color_) {
      if (room_for(1)) {
        out.push_back({a, fresh});
      }
      for (std::size_t l = 4; l <= cfg_.max_ear_length; l += 2) {
        if (room_for(l - 1)) {
          out.push_back(fresh_path(a, a, l));
        }
      }
    }
    for (const auto& host : paths_) {
      const std::size_t span = host.front() == host.back() ? host.size() - 1 : host.size();
      for (std::size_t i = 0; i < span; ++i) {
        for (std::size_t j = i + 1; j < span; ++j) {
          const std::size_t parity = color_.at(host[i]) == color_.at(host[j]) ? 0 : 1;
          for (std::size_t l = parity == 0 ? 2 : 1; l <= cfg_.max_ear_length; l += 2) {
            if (room_for(l - 1)) {
              out.push_back(fresh_path(host[i], host[j], l));
            }
          }
        }
      }
    }
    std::shuffle(out.begin(), out.end(), rng_);
    return out;
  }

  void next_ear(std::size_t i) {
    for (std::size_t attempt = 0; attempt < cfg_.max_retries; ++attempt) {
      auto path = candidate();
      if (path && accepts(*path)) {
        commit(*path);
        return;
      }
    }
    for (const auto& path : all_candidates()) {
      if (accepts(path)) {
        commit(path);
        return;
      }
    }
    throw GeneratorError("no admissible attachment for ear " + std::to_string(i));
  }

  const GeneratorConfig& cfg_;
  std::mt19937_64 rng_;
  std::map<Vertex, std::uint8_t> color_;
  std::set<Edge> edges_;
  std::vector<std::vector<Vertex>> paths_;
};

}  // namespace

GeneratedInstance generate_weak_nested_bipartite(const GeneratorConfig& cfg) {
  check_config(cfg);
  return Builder(cfg).run();
}

namespace {

void check_taino(std::size_t k) {
  if (k < 2 || k % 2 != 0) {
    throw GeneratorError("taino sun needs an even k >= 2, got " + std::to_string(k));
  }
}

}  // namespace

Graph generate_taino_sun(std::size_t k) {
  check_taino(k);
  std::vector<Edge> edges;
  const auto n = static_cast<Vertex>(3 * k);
  for (Vertex v = 1; v <= n; ++v) {
    edges.push_back(Edge::make(v, v == n ? 1 : v + 1));
  }
  for (Vertex i = 1; i <= k; ++i) {
    edges.push_back(Edge::make(3 * i - 2, n + i));
    edges.push_back(Edge::make(n + i, 3 * i));
  }
  return Graph::from_edges(std::span<const Edge>(edges));
}

EarDecomposition taino_sun_decomposition(std::size_t k) {
  check_taino(k);
  const auto n = static_cast<Vertex>(3 * k);
  std::vector<std::vector<Vertex>> paths;
  std::vector<Vertex> cycle;
  for (Vertex v = 1; v <= n; ++v) {
    cycle.push_back(v);
  }
  cycle.push_back(1);
  paths.push_back(std::move(cycle));
  for (Vertex i = 1; i <= k; ++i) {
    paths.push_back({3 * i - 2, n + i, 3 * i});
  }
  return EarDecomposition(1, std::move(paths));
}

}  // namespace earreg
