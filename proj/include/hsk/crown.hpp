#pragma once

// HS crown decompositions (I, J, M): I independent, J every subedge that
// completes a member of I to a hyperedge, M an injective matching J -> I.
// Removing I, dropping the edges through I and adding J as edges yields an
// equivalent instance with the same budget.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hsk/core.hpp"
#include "hsk/errors.hpp"
#include "hsk/matching.hpp"

namespace hsk {

struct HSCrown {
  std::vector<VertexId> independent;  // I
  std::vector<Edge> subedges;         // J
  std::vector<VertexId> matched_to;   // M(subedges[i]) = matched_to[i]

  bool strict() const { return independent.size() >= subedges.size() + 1; }
};

struct CrownVerdict {
  bool ids_in_range = true;
  bool independent = true;        // condition 1
  bool subedges_complete = true;  // condition 2: J is exactly the induced subedge set
  bool matching_valid = true;     // condition 3
  bool strict = false;
  std::vector<std::string> failures;

  bool valid() const { return ids_in_range && independent && subedges_complete && matching_valid; }
};

class InvalidCrown : public ContractError {
 public:
  explicit InvalidCrown(CrownVerdict verdict)
      : ContractError("invalid HS crown: " + join(verdict.failures)), verdict_(std::move(verdict)) {}
  const CrownVerdict& verdict() const noexcept { return verdict_; }

 private:
  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
    return out;
  }
  CrownVerdict verdict_;
};

// {e \ {x} : e in E, x in e and x in I}, sorted. A unit edge {x} contributes the
// empty set, which no crown may contain.
inline std::vector<Edge> induced_subedges(const Hypergraph& h, std::span<const VertexId> independent) {
  std::vector<Edge> out;
  for (VertexId x : independent) {
    for (std::uint32_t idx : h.edges_of(x)) out.push_back(h.edges()[idx].without(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline CrownVerdict validate_hs_crown(const Hypergraph& h, const HSCrown& c) {
  CrownVerdict v;
  const std::size_t n = h.vertex_count();
  for (VertexId x : c.independent) {
    if (x >= n) v.ids_in_range = false;
  }
  for (const Edge& y : c.subedges) {
    for (VertexId u : y) {
      if (u >= n) v.ids_in_range = false;
    }
  }
  for (VertexId x : c.matched_to) {
    if (x >= n) v.ids_in_range = false;
  }
  if (!v.ids_in_range) {
    v.independent = v.subedges_complete = v.matching_valid = false;
    v.failures.emplace_back("vertex id out of range");
    return v;
  }

  std::vector<VertexId> members = c.independent;
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    v.independent = false;
    v.failures.emplace_back("I lists a vertex twice");
  } else if (!is_independent(h, members)) {
    v.independent = false;
    v.failures.emplace_back("I is not independent");
  }

  std::vector<Edge> expected = induced_subedges(h, members);
  std::vector<Edge> given = c.subedges;
  std::sort(given.begin(), given.end());
  if (!expected.empty() && expected.front().empty()) {
    v.subedges_complete = false;
    v.failures.emplace_back("a unit edge passes through I");
  } else if (std::adjacent_find(given.begin(), given.end()) != given.end() || given != expected) {
    v.subedges_complete = false;
    v.failures.emplace_back("J is not the set of subedges completing I to hyperedges");
  }

  if (c.matched_to.size() != c.subedges.size()) {
    v.matching_valid = false;
    v.failures.emplace_back("M does not assign every member of J");
  } else {
    std::vector<VertexId> image = c.matched_to;
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
      v.matching_valid = false;
      v.failures.emplace_back("M is not injective");
    }
    for (std::size_t i = 0; i < c.subedges.size() && v.matching_valid; ++i) {
      const VertexId x = c.matched_to[i];
      const Edge& y = c.subedges[i];
      if (!std::binary_search(members.begin(), members.end(), x)) {
        v.matching_valid = false;
        v.failures.emplace_back("M maps into a vertex outside I");
      } else if (y.contains(x) || !h.has_edge(y.with(x))) {
        v.matching_valid = false;
        v.failures.emplace_back("M pairs a subedge with a vertex that does not complete it to a hyperedge");
      }
    }
  }

  v.strict = c.strict();
  return v;
}

// (V - I, (E - E(I)) + J), same k. Survivors keep their relative order.
inline Instance apply_hs_crown(const Instance& inst, const HSCrown& c) {
  CrownVerdict verdict = validate_hs_crown(inst.graph, c);
  if (!verdict.valid()) throw InvalidCrown(std::move(verdict));
  std::vector<bool> keep(inst.vertex_count(), true);
  for (VertexId x : c.independent) keep[x] = false;
  std::vector<Edge> edges;
  for (const Edge& e : inst.graph.edges()) {
    bool touches = false;
    for (VertexId u : e) touches = touches || !keep[u];
    if (!touches) edges.push_back(e);
  }
  edges.insert(edges.end(), c.subedges.begin(), c.subedges.end());
  return rebuild_instance(inst, keep, edges, inst.k);
}

// Bipartite graph with A = `independent`, B = `subedges` (sorted) and a ~ b iff
// subedges[b] + independent[a] is a hyperedge.
inline BipartiteGraph crown_search_graph(const Hypergraph& h, std::span<const VertexId> independent,
                                         std::span<const Edge> subedges) {
  std::vector<std::vector<std::uint32_t>> adjacency(independent.size());
  for (std::size_t a = 0; a < independent.size(); ++a) {
    const VertexId x = independent[a];
    for (std::uint32_t idx : h.edges_of(x)) {
      Edge rest = h.edges()[idx].without(x);
      auto pos = std::lower_bound(subedges.begin(), subedges.end(), rest);
      if (pos != subedges.end() && *pos == rest) {
        adjacency[a].push_back(static_cast<std::uint32_t>(pos - subedges.begin()));
      }
    }
  }
  return BipartiteGraph(independent.size(), subedges.size(), std::move(adjacency));
}

// Runs the bipartite crown finder on crown_search_graph and maps the result back.
inline std::optional<HSCrown> find_crown_between(const Hypergraph& h, std::span<const VertexId> independent,
                                                 std::span<const Edge> subedges) {
  const auto found = find_bipartite_crown(crown_search_graph(h, independent, subedges));
  if (!found) return std::nullopt;
  HSCrown crown;
  for (std::uint32_t a : found->crown_a) crown.independent.push_back(independent[a]);
  for (std::size_t i = 0; i < found->crown_b.size(); ++i) {
    crown.subedges.push_back(subedges[found->crown_b[i]]);
    crown.matched_to.push_back(independent[found->mate[i]]);
  }
  return crown;
}

// Given a nonempty independent set I, returns a strict crown with I' inside I and
// J' inside J(I), or nullopt when a maximum matching saturates I.
inline std::optional<HSCrown> find_strict_crown_from_independent_set(const Hypergraph& h,
                                                                     std::span<const VertexId> independent) {
  for (const Edge& e : h.edges()) {
    if (e.size() < 2) throw ContractError("find_strict_crown: every edge must have at least two vertices");
  }
  if (independent.empty()) throw ContractError("find_strict_crown: I must be nonempty");
  std::vector<VertexId> members(independent.begin(), independent.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (VertexId x : members) {
    if (x >= h.vertex_count()) throw ContractError("find_strict_crown: vertex out of range");
  }
  if (!is_independent(h, members)) throw ContractError("find_strict_crown: I is not independent");
  const std::vector<Edge> subedges = induced_subedges(h, members);
  return find_crown_between(h, members, subedges);
}

inline std::string to_text(const HSCrown& c, const std::vector<std::string>& labels = {}) {
  auto name = [&](VertexId v) { return v < labels.size() ? labels[v] : std::to_string(v + 1); };
  auto edge_text = [&](const Edge& e) {
    std::string s = "{";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + name(e[i]);
    return s + "}";
  };
  std::ostringstream out;
  out << "crown I={";
  for (std::size_t i = 0; i < c.independent.size(); ++i) out << (i ? "," : "") << name(c.independent[i]);
  out << "} J={";
  for (std::size_t i = 0; i < c.subedges.size(); ++i) out << (i ? "," : "") << edge_text(c.subedges[i]);
  out << "} M={";
  for (std::size_t i = 0; i < c.subedges.size() && i < c.matched_to.size(); ++i) {
    out << (i ? "," : "") << edge_text(c.subedges[i]) << "->" << name(c.matched_to[i]);
  }
  out << "}";
  return out.str();
}

}  // namespace hsk
