#pragma once

// Hypergraph and instance model shared by every reduction rule.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hsk/errors.hpp"

namespace hsk {

using VertexId = std::uint32_t;

// Strictly increasing list of vertices. Used both for hyperedges and for subedges;
// the empty edge only appears as the witness of an unhittable instance.
class Edge {
 public:
  Edge() = default;
  Edge(std::initializer_list<VertexId> vertices) : Edge(std::vector<VertexId>(vertices)) {}
  explicit Edge(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  }

  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  VertexId operator[](std::size_t i) const { return vertices_[i]; }
  auto begin() const noexcept { return vertices_.begin(); }
  auto end() const noexcept { return vertices_.end(); }

  bool contains(VertexId v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  // True iff every vertex of `sub` is in this edge.
  bool includes(const Edge& sub) const {
    return std::includes(vertices_.begin(), vertices_.end(), sub.begin(), sub.end());
  }

  std::size_t intersection_size(const Edge& other) const {
    std::size_t count = 0;
    auto a = vertices_.begin();
    auto b = other.vertices_.begin();
    while (a != vertices_.end() && b != other.vertices_.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++count;
        ++a;
        ++b;
      }
    }
    return count;
  }

  Edge without(VertexId v) const {
    Edge out;
    out.vertices_.reserve(vertices_.size());
    for (VertexId u : vertices_) {
      if (u != v) out.vertices_.push_back(u);
    }
    return out;
  }

  Edge with(VertexId v) const {
    Edge out = *this;
    auto pos = std::lower_bound(out.vertices_.begin(), out.vertices_.end(), v);
    if (pos == out.vertices_.end() || *pos != v) out.vertices_.insert(pos, v);
    return out;
  }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge& a, const Edge& b) { return a.vertices_ <=> b.vertices_; }

 private:
  std::vector<VertexId> vertices_;
};

// H = (V, E) with V = {0, .., n-1}. Edges have set semantics and are kept in
// lexicographic order, which is the canonical order every rule iterates in.
class Hypergraph {
 public:
  Hypergraph() : Hypergraph(0, 3, {}) {}

  Hypergraph(std::size_t vertex_count, int max_edge_size, std::vector<Edge> edges)
      : n_(vertex_count), d_(max_edge_size), edges_(std::move(edges)) {
    if (d_ < 1) throw ContractError("hypergraph: maximum edge size must be positive");
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    incidence_.assign(n_, {});
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.size() > static_cast<std::size_t>(d_)) {
        throw ContractError("hypergraph: edge of size " + std::to_string(e.size()) +
                            " exceeds d = " + std::to_string(d_));
      }
      for (VertexId v : e) {
        if (v >= n_) throw ContractError("hypergraph: vertex id " + std::to_string(v) + " out of range");
        incidence_[v].push_back(i);
      }
    }
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  int max_edge_size() const noexcept { return d_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  // Indices into edges() of the hyperedges containing v, increasing.
  std::span<const std::uint32_t> edges_of(VertexId v) const { return incidence_.at(v); }
  std::size_t degree(VertexId v) const { return incidence_.at(v).size(); }

  bool has_edge(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

  // The empty edge sorts before everything else.
  bool has_empty_edge() const { return !edges_.empty() && edges_.front().empty(); }

  std::size_t total_edge_size() const {
    std::size_t total = 0;
    for (const Edge& e : edges_) total += e.size();
    return total;
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  int d_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> incidence_;
};

struct Instance {
  Hypergraph graph;
  // May reach -1 after a forced vertex is taken; the controller turns that into a verdict.
  std::int64_t k = 0;
  // External name of every vertex, indexed by id.
  std::vector<std::string> labels;
  // Provenance lines carried from the source file or generator.
  std::vector<std::string> comments;

  std::size_t vertex_count() const noexcept { return graph.vertex_count(); }
  std::size_t edge_count() const noexcept { return graph.edge_count(); }
  int max_edge_size() const noexcept { return graph.max_edge_size(); }

  // Instance over ids 0..n-1 labelled "1".."n", the file-format convention.
  static Instance from_ids(std::size_t n, const std::vector<std::vector<VertexId>>& edges, int d,
                           std::int64_t k) {
    if (d < 3) throw UnsupportedParameter("d must be at least 3, got " + std::to_string(d));
    std::vector<Edge> built;
    built.reserve(edges.size());
    for (const auto& raw : edges) built.emplace_back(raw);
    Instance inst{Hypergraph(n, d, std::move(built)), k, {}, {}};
    inst.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) inst.labels.push_back(std::to_string(i + 1));
    return inst;
  }
};

// Builds an instance from external labels. Ids follow first appearance: first the
// `labels` list in order, then labels that only occur inside edges. An empty raw
// edge is kept as the unhittable witness so the controller can answer no.
inline Instance normalize(std::span<const std::string> labels,
                          const std::vector<std::vector<std::string>>& raw_edges, int d,
                          std::int64_t k) {
  if (d < 3) throw UnsupportedParameter("d must be at least 3, got " + std::to_string(d));
  std::vector<std::string> names;
  std::unordered_map<std::string, VertexId> ids;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = ids.try_emplace(name, static_cast<VertexId>(names.size()));
    if (inserted) names.push_back(name);
    return it->second;
  };
  for (const auto& name : labels) intern(name);

  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (std::size_t i = 0; i < raw_edges.size(); ++i) {
    std::vector<VertexId> vs;
    vs.reserve(raw_edges[i].size());
    for (const auto& name : raw_edges[i]) vs.push_back(intern(name));
    Edge e(std::move(vs));
    if (e.size() > static_cast<std::size_t>(d)) {
      throw FormatError("edge " + std::to_string(i + 1) + " has " + std::to_string(e.size()) +
                        " vertices, more than d = " + std::to_string(d));
    }
    edges.push_back(std::move(e));
  }
  return Instance{Hypergraph(names.size(), d, std::move(edges)), k, std::move(names), {}};
}

// Keeps the vertices flagged in `keep`, renumbering them densely in increasing
// order, and re-expresses `edges` (given in the old ids) over the survivors.
inline Instance rebuild_instance(const Instance& from, const std::vector<bool>& keep,
                                 const std::vector<Edge>& edges, std::int64_t k) {
  const std::size_t n = from.vertex_count();
  if (keep.size() != n) throw ContractError("rebuild_instance: keep mask has wrong length");
  constexpr VertexId kDropped = ~VertexId{0};
  std::vector<VertexId> remap(n, kDropped);
  std::vector<std::string> labels;
  for (VertexId v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    remap[v] = static_cast<VertexId>(labels.size());
    labels.push_back(v < from.labels.size() ? from.labels[v] : std::to_string(v + 1));
  }
  std::vector<Edge> mapped;
  mapped.reserve(edges.size());
  for (const Edge& e : edges) {
    std::vector<VertexId> vs;
    vs.reserve(e.size());
    for (VertexId v : e) {
      if (v >= n || remap[v] == kDropped) {
        throw ContractError("rebuild_instance: edge references a removed vertex");
      }
      vs.push_back(remap[v]);
    }
    mapped.emplace_back(std::move(vs));
  }
  return Instance{Hypergraph(labels.size(), from.max_edge_size(), std::move(mapped)), k,
                  std::move(labels), from.comments};
}

// E(s): the hyperedges of H containing every vertex of s.
inline std::vector<Edge> incident_edges(const Hypergraph& h, const Edge& s) {
  if (s.empty()) throw ContractError("incident_edges: subedge must be nonempty");
  for (VertexId v : s) {
    if (v >= h.vertex_count()) return {};
  }
  // Scan from the lowest-degree vertex of s.
  VertexId pivot = s[0];
  for (VertexId v : s) {
    if (h.degree(v) < h.degree(pivot)) pivot = v;
  }
  std::vector<Edge> out;
  for (std::uint32_t idx : h.edges_of(pivot)) {
    const Edge& e = h.edges()[idx];
    if (e.includes(s)) out.push_back(e);
  }
  return out;
}

// True iff no hyperedge contains two members of x.
inline bool is_independent(const Hypergraph& h, std::span<const VertexId> x) {
  std::vector<bool> member(h.vertex_count(), false);
  for (VertexId v : x) {
    if (v >= h.vertex_count()) throw ContractError("is_independent: vertex out of range");
    member[v] = true;
  }
  for (const Edge& e : h.edges()) {
    int hits = 0;
    for (VertexId v : e) {
      if (member[v] && ++hits > 1) return false;
    }
  }
  return true;
}

// All i-subsets of members of w, sorted and deduplicated.
inline std::vector<Edge> subedges_of(std::span<const Edge> w, std::size_t i) {
  std::vector<Edge> out;
  if (i == 0) return out;
  std::vector<std::size_t> pick(i);
  std::vector<VertexId> buffer(i);
  for (const Edge& e : w) {
    const std::size_t s = e.size();
    if (s < i) continue;
    for (std::size_t j = 0; j < i; ++j) pick[j] = j;
    while (true) {
      for (std::size_t j = 0; j < i; ++j) buffer[j] = e[pick[j]];
      out.emplace_back(buffer);
      // Advance to the next combination in lexicographic order.
      std::size_t j = i;
      while (j > 0 && pick[j - 1] == s - i + (j - 1)) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t t = j; t < i; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// base^exp clamped to INT64_MAX.
inline std::int64_t saturating_pow(std::int64_t base, int exp) {
  constexpr std::int64_t kMax = INT64_MAX;
  std::int64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && result > kMax / base) return kMax;
    result *= base;
  }
  return result;
}

}  // namespace hsk
