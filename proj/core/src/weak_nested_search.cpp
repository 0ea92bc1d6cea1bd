#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

#include "earreg/ear_decomposition.hpp"

namespace earreg {

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found:
      return "found";
    case SearchStatus::budget_exhausted:
      return "budget-exhausted";
    case SearchStatus::not_found:
      return "not-found";
  }
  return "?";
}

namespace {

using EdgeBits = std::vector<std::uint64_t>;

bool bits_disjoint(const EdgeBits& a, const EdgeBits& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] & b[k]) {
      return false;
    }
  }
  return true;
}

bool bits_subset(const EdgeBits& a, const EdgeBits& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] & ~b[k]) {
      return false;
    }
  }
  return true;
}

struct Candidate {
  std::vector<std::size_t> path;  // dense vertex indices
  bool pendant = false;
};

class WeakNestedSearch {
 public:
  WeakNestedSearch(const Graph& g, const SearchOptions& options)
      : g_(g), options_(options), words_((g.edge_count() + 63) / 64) {
    incidence_.resize(g.vertex_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const std::size_t a = g.index_of(g.edges()[e].u);
      const std::size_t b = g.index_of(g.edges()[e].v);
      incidence_[a].emplace_back(b, e);
      incidence_[b].emplace_back(a, e);
    }
    for (auto& inc : incidence_) {
      std::sort(inc.begin(), inc.end());
    }
    if (options.seed) {
      rng_.seed(*options.seed);
    }
  }

  SearchOutcome run() {
    SearchOutcome outcome;
    std::vector<std::size_t> bases;
    if (options_.base) {
      if (auto idx = g_.find_index(*options_.base)) {
        bases.push_back(*idx);
      }
    } else {
      bases.resize(g_.vertex_count());
      std::iota(bases.begin(), bases.end(), 0);
      if (options_.seed) {
        std::shuffle(bases.begin(), bases.end(), rng_);
      }
    }
    for (std::size_t base : bases) {
      reset(base);
      if (descend()) {
        outcome.status = SearchStatus::found;
        outcome.decomposition = materialize(base);
        outcome.expansions = expansions_;
        return outcome;
      }
      if (exhausted_) {
        break;
      }
    }
    outcome.status = exhausted_ ? SearchStatus::budget_exhausted : SearchStatus::not_found;
    outcome.expansions = expansions_;
    return outcome;
  }

 private:
  void reset(std::size_t base) {
    in_union_.assign(g_.vertex_count(), 0);
    in_union_[base] = 1;
    covered_.assign(g_.edge_count(), 0);
    covered_count_ = 0;
    paths_.clear();
    pendant_.clear();
    paths_at_.assign(g_.vertex_count(), {});
    paths_at_[base].push_back(0);
    paths_.push_back({base});
    pendant_.push_back(false);
    intervals_.assign(1, {});
    failed_.clear();
  }

  bool tick() {
    if (expansions_ >= options_.budget) {
      exhausted_ = true;
      return false;
    }
    ++expansions_;
    return true;
  }

  std::size_t edge_between(std::size_t a, std::size_t b) const {
    auto it = std::lower_bound(incidence_[a].begin(), incidence_[a].end(), std::make_pair(b, std::size_t{0}));
    return it->second;
  }

  EdgeBits interval_bits(std::size_t host, std::size_t a, std::size_t b) const {
    std::vector<Vertex> labels;
    for (std::size_t v : paths_[host]) {
      labels.push_back(g_.vertices()[v]);
    }
    const auto sub = induced_subpath(labels, g_.vertices()[a], g_.vertices()[b]);
    EdgeBits bits(words_, 0);
    for (std::size_t k = 0; k + 1 < sub->size(); ++k) {
      const std::size_t e = edge_between(g_.index_of((*sub)[k]), g_.index_of((*sub)[k + 1]));
      bits[e / 64] |= std::uint64_t{1} << (e % 64);
    }
    return bits;
  }

  std::vector<std::size_t> common_hosts(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out;
    std::set_intersection(paths_at_[a].begin(), paths_at_[a].end(), paths_at_[b].begin(), paths_at_[b].end(),
                          std::back_inserter(out));
    return out;
  }

  bool admissible(const Candidate& c) const {
    if (c.pendant) {
      return true;
    }
    const std::size_t a = c.path.front();
    const std::size_t b = c.path.back();
    if (a == b) {
      return true;
    }
    const auto hosts = common_hosts(a, b);
    if (hosts.empty()) {
      return false;
    }
    for (std::size_t h : hosts) {
      if (h == 0) {
        continue;
      }
      const EdgeBits bits = interval_bits(h, a, b);
      for (const EdgeBits& other : intervals_[h]) {
        if (!bits_disjoint(bits, other) && !bits_subset(bits, other) && !bits_subset(other, bits)) {
          return false;
        }
      }
    }
    return true;
  }

  // Closing paths from union vertex `start` through fresh vertices.
  void extend(std::vector<std::size_t>& path, std::vector<char>& on_path, std::vector<Candidate>& out) {
    if (!tick()) {
      return;
    }
    const std::size_t v = path.back();
    const std::size_t start = path.front();
    for (const auto& [w, e] : incidence_[v]) {
      if (covered_[e]) {
        continue;
      }
      if (in_union_[w]) {
        const std::size_t length = path.size();
        if (w == start) {
          if (length < 3 || path[1] > path[length - 1]) {
            continue;
          }
        } else if (w < start) {
          continue;
        }
        path.push_back(w);
        out.push_back({path, false});
        path.pop_back();
      } else if (!on_path[w]) {
        on_path[w] = 1;
        path.push_back(w);
        extend(path, on_path, out);
        path.pop_back();
        on_path[w] = 0;
        if (exhausted_) {
          return;
        }
      }
    }
  }

  std::vector<Candidate> candidates() {
    std::vector<Candidate> ears;
    std::vector<Candidate> pendants;
    std::vector<char> on_path(g_.vertex_count(), 0);
    for (std::size_t a = 0; a < g_.vertex_count() && !exhausted_; ++a) {
      if (!in_union_[a]) {
        continue;
      }
      std::vector<std::size_t> path{a};
      extend(path, on_path, ears);
      for (const auto& [w, e] : incidence_[a]) {
        if (!covered_[e] && !in_union_[w]) {
          pendants.push_back({{a, w}, true});
        }
      }
    }
    if (options_.seed) {
      std::shuffle(ears.begin(), ears.end(), rng_);
      std::shuffle(pendants.begin(), pendants.end(), rng_);
    }
    std::stable_sort(ears.begin(), ears.end(),
                     [](const Candidate& x, const Candidate& y) { return x.path.size() < y.path.size(); });
    std::vector<Candidate> out;
    for (auto& c : ears) {
      if (admissible(c)) {
        out.push_back(std::move(c));
      }
    }
    for (auto& c : pendants) {
      out.push_back(std::move(c));
    }
    return out;
  }

  struct Undo {
    std::vector<std::size_t> new_vertices;
    std::vector<std::size_t> hosts_touched;
  };

  Undo apply(const Candidate& c) {
    Undo undo;
    const std::size_t id = paths_.size();
    if (!c.pendant && c.path.front() != c.path.back()) {
      for (std::size_t h : common_hosts(c.path.front(), c.path.back())) {
        if (h != 0) {
          intervals_[h].push_back(interval_bits(h, c.path.front(), c.path.back()));
          undo.hosts_touched.push_back(h);
        }
      }
    }
    for (std::size_t k = 0; k + 1 < c.path.size(); ++k) {
      covered_[edge_between(c.path[k], c.path[k + 1])] = 1;
      ++covered_count_;
    }
    for (std::size_t k = 0; k < c.path.size(); ++k) {
      const std::size_t v = c.path[k];
      if (k + 1 == c.path.size() && v == c.path.front()) {
        break;
      }
      if (!in_union_[v]) {
        in_union_[v] = 1;
        undo.new_vertices.push_back(v);
      }
      paths_at_[v].push_back(id);
    }
    paths_.push_back(c.path);
    pendant_.push_back(c.pendant);
    intervals_.emplace_back();
    return undo;
  }

  void revert(const Candidate& c, const Undo& undo) {
    const std::size_t id = paths_.size() - 1;
    paths_.pop_back();
    pendant_.pop_back();
    intervals_.pop_back();
    for (std::size_t h : undo.hosts_touched) {
      intervals_[h].pop_back();
    }
    for (std::size_t k = 0; k + 1 < c.path.size(); ++k) {
      covered_[edge_between(c.path[k], c.path[k + 1])] = 0;
      --covered_count_;
    }
    for (std::size_t v : c.path) {
      auto& at = paths_at_[v];
      if (!at.empty() && at.back() == id) {
        at.pop_back();
      }
    }
    for (std::size_t v : undo.new_vertices) {
      in_union_[v] = 0;
    }
  }

  // Paths with their kinds, sorted; feasibility of completing a partial
  // decomposition only depends on this set.
  std::string state_key() const {
    std::vector<std::string> parts;
    for (std::size_t p = 1; p < paths_.size(); ++p) {
      std::string s(1, pendant_[p] ? 'p' : 'e');
      for (std::size_t v : paths_[p]) {
        s += std::to_string(v);
        s += ',';
      }
      parts.push_back(std::move(s));
    }
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (const auto& s : parts) {
      key += s;
      key += ';';
    }
    return key;
  }

  bool descend() {
    if (covered_count_ == g_.edge_count()) {
      return true;
    }
    std::string key = state_key();
    if (failed_.contains(key)) {
      return false;
    }
    const auto cands = candidates();
    if (exhausted_) {
      return false;
    }
    for (const Candidate& c : cands) {
      if (!tick()) {
        return false;
      }
      Undo undo = apply(c);
      if (descend()) {
        return true;
      }
      revert(c, undo);
      if (exhausted_) {
        return false;
      }
    }
    failed_.insert(std::move(key));
    return false;
  }

  EarDecomposition materialize(std::size_t base) const {
    std::vector<std::vector<Vertex>> paths;
    for (std::size_t p = 1; p < paths_.size(); ++p) {
      std::vector<Vertex> labels;
      for (std::size_t v : paths_[p]) {
        labels.push_back(g_.vertices()[v]);
      }
      paths.push_back(std::move(labels));
    }
    return EarDecomposition(g_.vertices()[base], std::move(paths));
  }

  const Graph& g_;
  SearchOptions options_;
  std::size_t words_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidence_;
  std::mt19937_64 rng_;

  std::vector<char> in_union_;
  std::vector<char> covered_;
  std::size_t covered_count_ = 0;
  std::vector<std::vector<std::size_t>> paths_;
  std::vector<bool> pendant_;
  std::vector<std::vector<std::size_t>> paths_at_;
  std::vector<std::vector<EdgeBits>> intervals_;
  std::unordered_set<std::string> failed_;

  std::uint64_t expansions_ = 0;
  bool exhausted_ = false;
};

}  // namespace

SearchOutcome find_weak_nested(const Graph& g, const SearchOptions& options) {
  if (!g.well_formed() || !is_connected(g)) {
    return {};
  }
  return WeakNestedSearch(g, options).run();
}

}  // namespace earreg
