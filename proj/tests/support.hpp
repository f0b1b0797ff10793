#pragma once

// Shared helpers for the test suites: the 5-vertex crown example,
// exhaustive reference routines, and a generator of instances that survive
// Rules 1-5 so the LP crown rule actually runs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hsk/hsk.hpp"

namespace hsk::fixtures {

// Edges {v1,v2,v4},{v1,v2,v5},{v2,v3,v4},{v2,v3,v5}; ids v1..v5 -> 0..4.
inline Instance five_vertex(std::int64_t k = 1) {
  const std::vector<std::string> labels = {"v1", "v2", "v3", "v4", "v5"};
  return normalize(labels,
                   {{"v1", "v2", "v4"}, {"v1", "v2", "v5"}, {"v2", "v3", "v4"}, {"v2", "v3", "v5"}}, 3, k);
}

inline Instance make(std::size_t n, const std::vector<std::vector<VertexId>>& edges, std::int64_t k, int d = 3) {
  return Instance::from_ids(n, edges, d, k);
}

// Maximum matching size by trying every edge subset (graphs with few edges).
inline std::size_t brute_force_matching(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::size_t best = 0;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t size) -> void {
    best = std::max(best, size);
    if (size + (edges.size() - i) <= best) return;
    for (std::size_t j = i; j < edges.size(); ++j) {
      auto [u, v] = edges[j];
      if (used[u] || used[v]) continue;
      used[u] = used[v] = 1;
      self(self, j + 1, size + 1);
      used[u] = used[v] = 0;
    }
  };
  rec(rec, 0, 0);
  return best;
}

// Minimum of sum(x) over the polytope by visiting every vertex: choose n tight
// constraints among the rows and the 2n box faces, solve, keep feasible points.
inline std::optional<Rational> polytope_vertex_minimum(const LPProblem& p) {
  const std::size_t n = p.variable_count;
  struct Face {
    std::vector<Rational> coef;
    Rational rhs;
  };
  std::vector<Face> faces;
  for (const auto& c : p.constraints) {
    Face f{std::vector<Rational>(n, 0), Rational(c.lower_bound)};
    for (auto v : c.variables) f.coef[v] = 1;
    faces.push_back(f);
  }
  for (std::size_t v = 0; v < n; ++v) {
    Face lo{std::vector<Rational>(n, 0), 0};
    lo.coef[v] = 1;
    Face hi = lo;
    hi.rhs = 1;
    faces.push_back(lo);
    faces.push_back(hi);
  }
  auto feasible = [&](const std::vector<Rational>& x) {
    for (std::size_t v = 0; v < n; ++v) {
      if (x[v] < 0 || x[v] > 1) return false;
    }
    for (const auto& c : p.constraints) {
      Rational s = 0;
      for (auto v : c.variables) s += x[v];
      if (s < c.lower_bound) return false;
    }
    return true;
  };
  if (n == 0) {
    return feasible({}) ? std::optional<Rational>(0) : std::nullopt;
  }

  std::optional<Rational> best;
  std::vector<std::size_t> pick(n);
  auto solve_system = [&]() -> std::optional<std::vector<Rational>> {
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m[r][c] = faces[pick[r]].coef[c];
      m[r][n] = faces[pick[r]].rhs;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && m[piv][col] == 0) ++piv;
      if (piv == n) return std::nullopt;
      std::swap(m[piv], m[col]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        const Rational f = m[r][col] / m[col][col];
        for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
      }
    }
    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = m[r][n] / m[r][r];
    return x;
  };
  auto rec = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
    if (depth == n) {
      if (auto x = solve_system(); x && feasible(*x)) {
        Rational s = 0;
        for (const auto& v : *x) s += v;
        if (!best || s < *best) best = s;
      }
      return;
    }
    for (std::size_t i = from; i < faces.size(); ++i) {
      pick[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

// Random instance whose vertex set is shuffled; `blocks` copies of the complete
// 3-uniform hypergraph on 4 vertices are added on fresh vertices.
//
// Core (k >= 2): a planted solution S of size k. Each s in S owns k hub vertices;
// every crown vertex a gets edges {s, hub, a} for two or more distinct s, so its
// link is never a star and has matching number <= k. Hubs are cross-linked
// through other members of S so no hub is dominated.
struct WorkloadSpec {
  std::uint64_t seed = 0;
  std::int64_t k = 2;
  std::size_t crown_vertices = 12;
  std::size_t blocks = 0;
  std::size_t noise_edges = 0;  // extra edges through S, kept yes-preserving
};

inline Instance crown_workload(const WorkloadSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(uniform_below(rng, bound)); };
  const auto k = static_cast<std::size_t>(std::max<std::int64_t>(spec.k, 0));
  std::vector<std::vector<VertexId>> edges;
  VertexId next = 0;

  std::vector<VertexId> solution;
  std::vector<std::vector<VertexId>> hubs;
  std::vector<VertexId> crown;
  if (k >= 2 && spec.crown_vertices > 0) {
    for (std::size_t i = 0; i < k; ++i) solution.push_back(next++);
    hubs.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) hubs[i].push_back(next++);
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t other = (i + 1 + pick(k - 1)) % k;
        edges.push_back({solution[other], hubs[i][j], hubs[other][pick(k)]});
      }
    }
    for (std::size_t c = 0; c < spec.crown_vertices; ++c) {
      const VertexId a = next++;
      crown.push_back(a);
      std::vector<std::size_t> owners(k);
      std::iota(owners.begin(), owners.end(), 0);
      std::shuffle(owners.begin(), owners.end(), rng);
      const std::size_t fan = 2 + pick(k - 1);
      for (std::size_t f = 0; f < fan; ++f) {
        const std::size_t s = owners[f];
        edges.push_back({solution[s], hubs[s][pick(k)], a});
      }
    }
    for (std::size_t e = 0; e < spec.noise_edges; ++e) {
      const VertexId s = solution[pick(k)];
      VertexId u = static_cast<VertexId>(pick(next));
      VertexId w = static_cast<VertexId>(pick(next));
      if (u == s || w == s || u == w) continue;
      edges.push_back({s, u, w});
    }
  }
  for (std::size_t b = 0; b < spec.blocks; ++b) {
    const VertexId base = next;
    next += 4;
    for (VertexId skip = 0; skip < 4; ++skip) {
      std::vector<VertexId> e;
      for (VertexId v = 0; v < 4; ++v) {
        if (v != skip) e.push_back(base + v);
      }
      edges.push_back(e);
    }
  }

  std::vector<VertexId> perm(next);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& e : edges) {
    for (auto& v : e) v = perm[v];
  }
  Instance inst = Instance::from_ids(next, edges, 3, spec.k);
  inst.comments.push_back("workload seed=" + std::to_string(spec.seed));
  return inst;
}

}  // namespace hsk::fixtures
