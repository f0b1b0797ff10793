#pragma once

// Ground truth for small instances: two independent exact deciders, a minimum
// hitting set search, and a seeded instance generator.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hsk/core.hpp"
#include "hsk/errors.hpp"

namespace hsk {

inline constexpr std::size_t kDefaultOracleCeiling = 25;

// HSK_ORACLE_CEILING, when set to a positive integer, overrides the default.
inline std::size_t default_oracle_ceiling() {
  if (const char* env = std::getenv("HSK_ORACLE_CEILING")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return kDefaultOracleCeiling;
}

namespace detail {

inline void check_ceiling(const Hypergraph& h, std::size_t ceiling) {
  if (h.vertex_count() > ceiling) {
    throw OracleCeilingExceeded("oracle: " + std::to_string(h.vertex_count()) + " vertices exceed the ceiling of " +
                                std::to_string(ceiling));
  }
}

// Branch on the vertices of the first edge nobody hits yet.
inline bool branch_hitting_set(const Hypergraph& h, std::vector<int>& hits, std::vector<VertexId>& chosen,
                               std::int64_t budget) {
  const Edge* open = nullptr;
  for (const Edge& e : h.edges()) {
    bool hit = false;
    for (VertexId v : e) hit = hit || hits[v] > 0;
    if (!hit) {
      open = &e;
      break;
    }
  }
  if (open == nullptr) return true;
  if (budget == 0 || open->empty()) return false;
  for (VertexId v : *open) {
    ++hits[v];
    chosen.push_back(v);
    if (branch_hitting_set(h, hits, chosen, budget - 1)) return true;
    chosen.pop_back();
    --hits[v];
  }
  return false;
}

}  // namespace detail

// A hitting set of size at most k, or nullopt when none exists.
inline std::optional<std::vector<VertexId>> find_hitting_set(const Hypergraph& h, std::int64_t k,
                                                             std::size_t ceiling = default_oracle_ceiling()) {
  detail::check_ceiling(h, ceiling);
  if (k < 0) return std::nullopt;
  std::vector<int> hits(h.vertex_count(), 0);
  std::vector<VertexId> chosen;
  if (!detail::branch_hitting_set(h, hits, chosen, k)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

inline bool decide_brute_force(const Instance& inst, std::size_t ceiling = default_oracle_ceiling()) {
  return find_hitting_set(inst.graph, inst.k, ceiling).has_value();
}

// Second decider: tries every vertex subset of size <= k as a bitmask.
inline bool decide_by_enumeration(const Instance& inst, std::size_t ceiling = default_oracle_ceiling()) {
  const Hypergraph& h = inst.graph;
  detail::check_ceiling(h, ceiling);
  if (h.vertex_count() > 63) throw OracleCeilingExceeded("enumeration oracle: more than 63 vertices");
  if (inst.k < 0) return false;
  std::vector<std::uint64_t> masks;
  for (const Edge& e : h.edges()) {
    std::uint64_t mask = 0;
    for (VertexId v : e) mask |= std::uint64_t{1} << v;
    masks.push_back(mask);
  }
  const std::size_t n = h.vertex_count();
  const std::size_t size_cap = std::min<std::size_t>(n, static_cast<std::size_t>(inst.k));
  auto hits_all = [&](std::uint64_t set) {
    for (std::uint64_t m : masks) {
      if ((m & set) == 0) return false;
    }
    return true;
  };
  // Subsets of each size in turn, via the next-combination bit trick.
  for (std::size_t size = 0; size <= size_cap; ++size) {
    if (size == 0) {
      if (hits_all(0)) return true;
      continue;
    }
    std::uint64_t set = (std::uint64_t{1} << size) - 1;
    const std::uint64_t end = std::uint64_t{1} << n;
    while (set < end) {
      if (hits_all(set)) return true;
      const std::uint64_t low = set & (~set + 1);
      const std::uint64_t ripple = set + low;
      set = ripple | (((set ^ ripple) >> 2) / low);
    }
  }
  return false;
}

// Minimum hitting set of h; nullopt when an empty edge makes it unhittable.
inline std::optional<std::vector<VertexId>> min_hitting_set(const Hypergraph& h,
                                                            std::size_t ceiling = default_oracle_ceiling()) {
  detail::check_ceiling(h, ceiling);
  if (h.has_empty_edge()) return std::nullopt;
  for (std::int64_t k = 0;; ++k) {
    if (auto found = find_hitting_set(h, k, ceiling)) return found;
  }
}

inline bool check_equivalence(const Instance& a, const Instance& b, std::size_t ceiling = default_oracle_ceiling()) {
  return decide_brute_force(a, ceiling) == decide_brute_force(b, ceiling);
}

struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  int d = 3;
  std::int64_t k = 0;
  std::optional<std::size_t> planted;  // force a hitting set of this size
};

// Uniform draw in [0, bound) from a 64-bit Mersenne Twister by rejection, so a
// seed produces the same stream with any standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// Edge sizes are uniform in {2..d}; vertices within an edge are drawn without
// replacement. With `planted`, a set S is drawn first and every edge takes its
// first vertex from S. Duplicate edges are redrawn.
inline Instance generate(const GenSpec& spec) {
  if (spec.d < 3) throw UnsupportedParameter("generate: d must be at least 3");
  if (spec.n < static_cast<std::size_t>(spec.d)) {
    throw UnsupportedParameter("generate: n must be at least d so every edge size is drawable");
  }
  if (spec.planted && (*spec.planted == 0 || *spec.planted > spec.n)) {
    throw UnsupportedParameter("generate: planted size must be in [1, n]");
  }
  std::mt19937_64 rng(spec.seed);

  auto draw_distinct = [&](std::vector<VertexId>& out, std::size_t count) {
    while (out.size() < count) {
      const auto v = static_cast<VertexId>(uniform_below(rng, spec.n));
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  };

  std::vector<VertexId> planted;
  if (spec.planted) draw_distinct(planted, *spec.planted);

  std::set<std::vector<VertexId>> edges;
  std::vector<std::vector<VertexId>> ordered;
  const std::size_t attempts = 100 * spec.m + 100;
  for (std::size_t attempt = 0; attempt < attempts && edges.size() < spec.m; ++attempt) {
    const std::size_t size = 2 + uniform_below(rng, static_cast<std::uint64_t>(spec.d - 1));
    std::vector<VertexId> e;
    if (!planted.empty()) e.push_back(planted[uniform_below(rng, planted.size())]);
    draw_distinct(e, size);
    std::sort(e.begin(), e.end());
    if (edges.insert(e).second) ordered.push_back(std::move(e));
  }
  if (edges.size() < spec.m) {
    throw UnsupportedParameter("generate: could not draw " + std::to_string(spec.m) + " distinct edges");
  }

  Instance inst = Instance::from_ids(spec.n, ordered, spec.d, spec.k);
  inst.comments.push_back("generated seed=" + std::to_string(spec.seed) + " n=" + std::to_string(spec.n) +
                          " m=" + std::to_string(spec.m) + " d=" + std::to_string(spec.d) +
                          " k=" + std::to_string(spec.k) +
                          " plant=" + (spec.planted ? std::to_string(*spec.planted) : std::string("none")));
  return inst;
}

}  // namespace hsk
