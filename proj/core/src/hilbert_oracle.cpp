#include "earreg/hilbert_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <thread>

namespace earreg {

std::uint64_t total_degree(const ExponentVector& e) {
  std::uint64_t d = 0;
  for (const auto& [edge, k] : e) {
    d += k;
  }
  return d;
}

ResidueVector residue_of(const Graph& g, const FieldOrder& q, const ExponentVector& e) {
  std::vector<std::uint64_t> sums(g.vertex_count(), 0);
  for (const auto& [edge, k] : e) {
    if (!g.has_edge(edge)) {
      throw OracleError("exponent on edge " + to_string(edge) + " which is not in the graph");
    }
    sums[g.index_of(edge.u)] += k;
    sums[g.index_of(edge.v)] += k;
  }
  ResidueVector r;
  r.residues.reserve(sums.size());
  for (std::uint64_t s : sums) {
    r.residues.push_back(static_cast<std::uint32_t>(s % q.modulus()));
  }
  return r;
}

bool binomial_in_ideal(const Graph& g, const FieldOrder& q, const ExponentVector& nu, const ExponentVector& mu) {
  if (total_degree(nu) != total_degree(mu)) {
    throw OracleError("binomial is not homogeneous: degrees " + std::to_string(total_degree(nu)) + " and " +
                      std::to_string(total_degree(mu)));
  }
  return residue_of(g, q, nu) == residue_of(g, q, mu);
}

ResidueCodec::ResidueCodec(const Graph& g, const FieldOrder& q)
    : vertices_(g.vertex_count()), modulus_(q.modulus()) {
  bits_ = std::max(1u, static_cast<unsigned>(std::bit_width(modulus_ - 1)));
  if (static_cast<std::uint64_t>(bits_) * vertices_ > 64) {
    throw OracleError("residue vectors of " + std::to_string(vertices_) + " vertices at q=" + std::to_string(q.q()) +
                      " do not fit in 64 bits");
  }
  mask_ = (std::uint64_t{1} << bits_) - 1;
  for (const Edge& e : g.edges()) {
    edge_offsets_.emplace_back(static_cast<unsigned>(g.index_of(e.u)) * bits_,
                               static_cast<unsigned>(g.index_of(e.v)) * bits_);
  }
}

std::uint64_t ResidueCodec::encode(const ResidueVector& r) const {
  std::uint64_t packed = 0;
  for (std::size_t i = 0; i < r.residues.size(); ++i) {
    packed |= (static_cast<std::uint64_t>(r.residues[i]) % modulus_) << (i * bits_);
  }
  return packed;
}

ResidueVector ResidueCodec::decode(std::uint64_t packed) const {
  ResidueVector r;
  r.residues.resize(vertices_);
  for (std::size_t i = 0; i < vertices_; ++i) {
    r.residues[i] = static_cast<std::uint32_t>((packed >> (i * bits_)) & mask_);
  }
  return r;
}

namespace {

// Above this many packed bits the dense bitmap would be too large.
constexpr unsigned kDenseBits = 28;

void expand_sparse(std::span<const std::uint64_t> chunk, const ResidueCodec& codec, StateSet& out) {
  out.clear();
  out.reserve(chunk.size() * codec.edge_count());
  for (std::uint64_t s : chunk) {
    for (std::size_t e = 0; e < codec.edge_count(); ++e) {
      out.push_back(codec.shift(s, e));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

template <typename F>
void run_split(std::size_t n, unsigned workers, F&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::thread> threads;
  const std::size_t per = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(n, w * per);
    const std::size_t hi = std::min(n, lo + per);
    threads.emplace_back([&, w, lo, hi] { body(w, lo, hi); });
  }
  for (auto& t : threads) {
    t.join();
  }
}

}  // namespace

StateSet degree_step(const StateSet& frontier, const ResidueCodec& codec, unsigned workers) {
  if (frontier.empty() || codec.edge_count() == 0) {
    return {};
  }
  if (codec.total_bits() <= kDenseBits) {
    const std::size_t universe = std::size_t{1} << codec.total_bits();
    std::vector<std::uint64_t> bitmap((universe + 63) / 64, 0);
    run_split(frontier.size(), workers, [&](unsigned, std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k) {
        for (std::size_t e = 0; e < codec.edge_count(); ++e) {
          const std::uint64_t s = codec.shift(frontier[k], e);
          std::atomic_ref<std::uint64_t>(bitmap[s / 64]).fetch_or(std::uint64_t{1} << (s % 64),
                                                                  std::memory_order_relaxed);
        }
      }
    });
    StateSet out;
    for (std::size_t w = 0; w < bitmap.size(); ++w) {
      for (std::uint64_t bits = bitmap[w]; bits; bits &= bits - 1) {
        out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)));
      }
    }
    return out;
  }
  workers = std::max(1u, workers);
  std::vector<StateSet> parts(workers);
  run_split(frontier.size(), workers, [&](unsigned w, std::size_t lo, std::size_t hi) {
    expand_sparse(std::span(frontier).subspan(lo, hi - lo), codec, parts[w]);
  });
  StateSet out = std::move(parts[0]);
  for (std::size_t w = 1; w < parts.size(); ++w) {
    StateSet merged;
    merged.reserve(out.size() + parts[w].size());
    std::set_union(out.begin(), out.end(), parts[w].begin(), parts[w].end(), std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

std::vector<ResidueVector> degree_step(std::span<const ResidueVector> frontier, const Graph& g, const FieldOrder& q) {
  std::vector<ResidueVector> out;
  for (const ResidueVector& r : frontier) {
    for (const Edge& e : g.edges()) {
      ResidueVector next = r;
      for (Vertex v : {e.u, e.v}) {
        auto& x = next.residues.at(g.index_of(v));
        x = static_cast<std::uint32_t>((x + 1) % q.modulus());
      }
      out.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HilbertProfile hilbert_profile(const Graph& g, const FieldOrder& q, const OracleLimits& limits) {
  const auto started = std::chrono::steady_clock::now();
  HilbertProfile profile;
  auto finish = [&] {
    profile.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return profile;
  };
  if (g.empty()) {
    throw OracleError("graph has no edges");
  }
  const ResidueCodec codec(g, q);
  StateSet current{0};
  profile.hf.push_back(1);
  std::uint64_t d = 0;
  std::optional<std::uint64_t> stable_at;
  unsigned extra_left = limits.extra_degrees;
  while (true) {
    if (!stable_at && d >= limits.max_degree) {
      profile.truncated = true;
      profile.reason = "degree limit " + std::to_string(limits.max_degree) + " reached";
      return finish();
    }
    StateSet next = degree_step(current, codec, limits.workers);
    if (next.size() > limits.max_states) {
      profile.truncated = true;
      profile.reason = "state limit " + std::to_string(limits.max_states) + " exceeded at degree " +
                       std::to_string(d + 1);
      return finish();
    }
    profile.hf.push_back(next.size());
    if (!stable_at && next.size() == current.size()) {
      stable_at = d;
      profile.regularity = d;
      profile.deg_x = current.size();
    } else if (stable_at) {
      --extra_left;
    }
    current = std::move(next);
    ++d;
    if (stable_at && extra_left == 0) {
      return finish();
    }
  }
}

std::uint64_t regularity_oracle(const Graph& g, const FieldOrder& q, const OracleLimits& limits) {
  const HilbertProfile profile = hilbert_profile(g, q, limits);
  if (profile.truncated) {
    throw OracleError("oracle truncated: " + profile.reason);
  }
  return profile.regularity;
}

}  // namespace earreg
