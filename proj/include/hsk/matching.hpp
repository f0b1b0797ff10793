#pragma once

// Maximum matchings (bipartite and general), alternating-path reachability and
// the bipartite crown finder built on top of them.
//
// Every routine is deterministic: vertices are scanned in increasing index order
// and adjacency lists are sorted, so the same input always yields the same
// matching.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsk/errors.hpp"

namespace hsk {

inline constexpr std::uint32_t kUnmatched = std::numeric_limits<std::uint32_t>::max();

class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  // adjacency[a] lists the B-neighbours of A-vertex a.
  BipartiteGraph(std::size_t a_count, std::size_t b_count,
                 std::vector<std::vector<std::uint32_t>> adjacency)
      : a_count_(a_count), b_count_(b_count), adjacency_(std::move(adjacency)) {
    if (adjacency_.size() != a_count_) {
      throw ContractError("bipartite graph: adjacency must have one list per A-vertex");
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      if (!list.empty() && list.back() >= b_count_) {
        throw ContractError("bipartite graph: B-index out of range");
      }
    }
  }

  std::size_t a_count() const noexcept { return a_count_; }
  std::size_t b_count() const noexcept { return b_count_; }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t a) const { return adjacency_.at(a); }

  bool has_edge(std::uint32_t a, std::uint32_t b) const {
    const auto& list = adjacency_.at(a);
    return std::binary_search(list.begin(), list.end(), b);
  }

 private:
  std::size_t a_count_ = 0;
  std::size_t b_count_ = 0;
  std::vector<std::vector<std::uint32_t>> adjacency_;
};

struct BipartiteMatching {
  std::vector<std::uint32_t> mate_of_a;  // B-index or kUnmatched
  std::vector<std::uint32_t> mate_of_b;  // A-index or kUnmatched
  std::size_t size = 0;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t a = 0; a < mate_of_a.size(); ++a) {
      if (mate_of_a[a] != kUnmatched) out.emplace_back(a, mate_of_a[a]);
    }
    return out;
  }
};

inline BipartiteMatching hopcroft_karp(const BipartiteGraph& g) {
  const std::size_t na = g.a_count();
  const std::size_t nb = g.b_count();
  BipartiteMatching m{std::vector<std::uint32_t>(na, kUnmatched),
                      std::vector<std::uint32_t>(nb, kUnmatched), 0};
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> layer(na);
  std::vector<std::size_t> cursor(na);

  // Layers free A-vertices at 0 and reports whether some free B-vertex is reachable.
  auto bfs = [&] {
    std::queue<std::uint32_t> queue;
    for (std::uint32_t a = 0; a < na; ++a) {
      layer[a] = m.mate_of_a[a] == kUnmatched ? 0 : kInf;
      if (layer[a] == 0) queue.push(a);
    }
    bool found = false;
    while (!queue.empty()) {
      std::uint32_t a = queue.front();
      queue.pop();
      for (std::uint32_t b : g.neighbors(a)) {
        std::uint32_t next = m.mate_of_b[b];
        if (next == kUnmatched) {
          found = true;
        } else if (layer[next] == kInf) {
          layer[next] = layer[a] + 1;
          queue.push(next);
        }
      }
    }
    return found;
  };

  auto dfs = [&](auto&& self, std::uint32_t a) -> bool {
    const auto& adj = g.neighbors(a);
    for (std::size_t& i = cursor[a]; i < adj.size(); ++i) {
      std::uint32_t b = adj[i];
      std::uint32_t next = m.mate_of_b[b];
      if (next == kUnmatched || (layer[next] == layer[a] + 1 && self(self, next))) {
        m.mate_of_a[a] = b;
        m.mate_of_b[b] = a;
        ++i;
        return true;
      }
    }
    layer[a] = kInf;
    return false;
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (std::uint32_t a = 0; a < na; ++a) {
      if (m.mate_of_a[a] == kUnmatched && dfs(dfs, a)) ++m.size;
    }
  }
  return m;
}

// Undirected graph without loops or parallel edges.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  SimpleGraph(std::size_t vertex_count, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges)
      : adjacency_(vertex_count) {
    for (auto [u, v] : edges) {
      if (u >= vertex_count || v >= vertex_count) throw ContractError("simple graph: vertex out of range");
      if (u == v) throw ContractError("simple graph: self-loop");
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adjacency_.at(v); }

  bool has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto& list = adjacency_.at(u);
    return std::binary_search(list.begin(), list.end(), v);
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& list : adjacency_) total += list.size();
    return total / 2;
  }

 private:
  std::vector<std::vector<std::uint32_t>> adjacency_;
};

struct GeneralMatching {
  std::vector<std::uint32_t> mate;  // kUnmatched for free vertices
  std::size_t size = 0;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t v = 0; v < mate.size(); ++v) {
      if (mate[v] != kUnmatched && v < mate[v]) out.emplace_back(v, mate[v]);
    }
    return out;
  }
};

// Edmonds' blossom algorithm. Grows an alternating tree from each free vertex in
// index order, contracting odd cycles on the fly. With `limit` set, stops as soon
// as the matching reaches that size.
inline GeneralMatching blossom_max_matching(const SimpleGraph& g,
                                            std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  const std::size_t n = g.vertex_count();
  GeneralMatching m{std::vector<std::uint32_t>(n, kUnmatched), 0};
  if (limit == 0) return m;
  std::vector<std::uint32_t> parent(n), base(n);
  std::vector<char> in_tree(n), in_blossom(n), on_path(n);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);

  auto lowest_common_base = [&](std::uint32_t a, std::uint32_t b) {
    std::fill(on_path.begin(), on_path.end(), 0);
    while (true) {
      a = base[a];
      on_path[a] = 1;
      if (m.mate[a] == kUnmatched) break;
      a = parent[m.mate[a]];
    }
    while (true) {
      b = base[b];
      if (on_path[b]) return b;
      b = parent[m.mate[b]];
    }
  };

  auto mark_path = [&](std::uint32_t v, std::uint32_t b, std::uint32_t child) {
    while (base[v] != b) {
      in_blossom[base[v]] = in_blossom[base[m.mate[v]]] = 1;
      parent[v] = child;
      child = m.mate[v];
      v = parent[m.mate[v]];
    }
  };

  // Returns the free endpoint of an augmenting path from root, or kUnmatched.
  auto find_path = [&](std::uint32_t root) {
    std::fill(in_tree.begin(), in_tree.end(), 0);
    std::fill(parent.begin(), parent.end(), kUnmatched);
    for (std::uint32_t v = 0; v < n; ++v) base[v] = v;
    queue.clear();
    queue.push_back(root);
    in_tree[root] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t v = queue[head];
      for (std::uint32_t to : g.neighbors(v)) {
        if (base[v] == base[to] || m.mate[v] == to) continue;
        if (to == root || (m.mate[to] != kUnmatched && parent[m.mate[to]] != kUnmatched)) {
          // Odd cycle: contract it into its base.
          std::uint32_t b = lowest_common_base(v, to);
          std::fill(in_blossom.begin(), in_blossom.end(), 0);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (std::uint32_t u = 0; u < n; ++u) {
            if (in_blossom[base[u]]) {
              base[u] = b;
              if (!in_tree[u]) {
                in_tree[u] = 1;
                queue.push_back(u);
              }
            }
          }
        } else if (parent[to] == kUnmatched) {
          parent[to] = v;
          if (m.mate[to] == kUnmatched) return to;
          std::uint32_t next = m.mate[to];
          in_tree[next] = 1;
          queue.push_back(next);
        }
      }
    }
    return kUnmatched;
  };

  for (std::uint32_t root = 0; root < n && m.size < limit; ++root) {
    if (m.mate[root] != kUnmatched) continue;
    std::uint32_t v = find_path(root);
    if (v == kUnmatched) continue;
    while (v != kUnmatched) {
      std::uint32_t pv = parent[v];
      std::uint32_t ppv = m.mate[pv];
      m.mate[v] = pv;
      m.mate[pv] = v;
      v = ppv;
    }
    ++m.size;
  }
  return m;
}

// A Hall-deficient crown of a bipartite graph: N(crown_a) = crown_b, every
// crown_b vertex matched into crown_a, and |crown_a| >= |crown_b| + 1.
struct BipartiteCrown {
  std::vector<std::uint32_t> crown_a;  // sorted A-indices (I)
  std::vector<std::uint32_t> crown_b;  // sorted B-indices (J)
  std::vector<std::uint32_t> mate;     // mate[i] is the A-index matched to crown_b[i]
};

// Runs a maximum matching, then collects every vertex reachable from an
// unmatched A-vertex along alternating paths. Returns nullopt iff the matching
// saturates A.
inline std::optional<BipartiteCrown> find_bipartite_crown(const BipartiteGraph& g) {
  const BipartiteMatching m = hopcroft_karp(g);
  std::vector<char> seen_a(g.a_count(), 0), seen_b(g.b_count(), 0);
  std::queue<std::uint32_t> queue;
  for (std::uint32_t a = 0; a < g.a_count(); ++a) {
    if (m.mate_of_a[a] == kUnmatched) {
      seen_a[a] = 1;
      queue.push(a);
    }
  }
  if (queue.empty()) return std::nullopt;

  while (!queue.empty()) {
    std::uint32_t a = queue.front();
    queue.pop();
    for (std::uint32_t b : g.neighbors(a)) {
      if (seen_b[b]) continue;
      seen_b[b] = 1;
      std::uint32_t next = m.mate_of_b[b];
      if (next == kUnmatched) throw InternalError("find_bipartite_crown: augmenting path after maximum matching");
      if (!seen_a[next]) {
        seen_a[next] = 1;
        queue.push(next);
      }
    }
  }

  BipartiteCrown crown;
  for (std::uint32_t a = 0; a < g.a_count(); ++a) {
    if (seen_a[a]) crown.crown_a.push_back(a);
  }
  for (std::uint32_t b = 0; b < g.b_count(); ++b) {
    if (seen_b[b]) {
      crown.crown_b.push_back(b);
      crown.mate.push_back(m.mate_of_b[b]);
    }
  }
  return crown;
}

// Largest number of hyperedges through a subedge e whose pairwise intersection is
// exactly e, given e's extensions: the one-vertex extensions `singletons` plus the
// two-vertex extensions as edges of `pairs` (both over the same vertex indices).
// No two-vertex extension may contain a one-vertex extension; that holds once
// superset edges are gone, and is checked here.
inline std::size_t packing_exactly_e(std::span<const std::uint32_t> singletons, const SimpleGraph& pairs,
                                     std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  for (std::uint32_t v : singletons) {
    if (v < pairs.vertex_count() && !pairs.neighbors(v).empty()) {
      throw ContractError("packing_exactly_e: a two-vertex extension contains a one-vertex extension");
    }
  }
  const std::size_t count = singletons.size();
  if (count >= limit) return count;
  return count + blossom_max_matching(pairs, limit - count).size;
}

}  // namespace hsk
