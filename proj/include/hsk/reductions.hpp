#pragma once

// The six reduction rules and the controller that applies them until the
// instance is decided or has at most (2d-2)k^(d-1) + k vertices.
//
// Each rule assumes every lower-numbered rule is inapplicable; reduce() enforces
// that by always applying the lowest applicable rule.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hsk/core.hpp"
#include "hsk/crown.hpp"
#include "hsk/errors.hpp"
#include "hsk/lp.hpp"
#include "hsk/matching.hpp"

namespace hsk {

enum class Verdict { kUndecided, kYes, kNo };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kYes:
      return "yes";
    case Verdict::kNo:
      return "no";
    default:
      return "kernel";
  }
}

struct TraceStep {
  int rule = 0;
  std::size_t vertices_removed = 0;
  std::size_t edges_removed = 0;
  std::size_t edges_added = 0;
  std::int64_t k_delta = 0;
  std::size_t n_after = 0;
  std::size_t m_after = 0;
  std::int64_t k_after = 0;
  std::string note;
};

struct ReductionTrace {
  std::vector<TraceStep> steps;
  Verdict verdict = Verdict::kUndecided;
};

struct RuleOutcome {
  bool applied = false;
  bool verdict_no = false;
  std::optional<Instance> instance;  // set iff applied
  TraceStep entry;
  std::optional<HSCrown> crown;  // the crown Rule 6 applied, in the input's ids
};

// (2d-2) k^(d-1) + k, saturating.
inline std::int64_t kernel_bound(int d, std::int64_t k) {
  const std::int64_t power = saturating_pow(k, d - 1);
  const std::int64_t factor = 2 * static_cast<std::int64_t>(d) - 2;
  if (power > (INT64_MAX - k) / factor) return INT64_MAX;
  return factor * power + k;
}

namespace detail {

inline std::string label_of(const Instance& inst, VertexId v) {
  return v < inst.labels.size() ? inst.labels[v] : std::to_string(v + 1);
}

inline std::string edge_text(const Instance& inst, const Edge& e) {
  std::string s = "{";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + label_of(inst, e[i]);
  return s + "}";
}

// Packages a transformation given as (surviving vertices, new edge set in the
// old ids, new k) into an outcome with before/after statistics.
inline RuleOutcome finish(int rule, const Instance& before, const std::vector<bool>& keep,
                          std::vector<Edge> edges, std::int64_t k, std::string note) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const auto& old_edges = before.graph.edges();
  std::vector<Edge> scratch;
  std::set_difference(old_edges.begin(), old_edges.end(), edges.begin(), edges.end(), std::back_inserter(scratch));
  const std::size_t removed = scratch.size();
  scratch.clear();
  std::set_difference(edges.begin(), edges.end(), old_edges.begin(), old_edges.end(), std::back_inserter(scratch));
  const std::size_t added = scratch.size();

  RuleOutcome out;
  out.applied = true;
  out.instance = rebuild_instance(before, keep, edges, k);
  out.entry.rule = rule;
  out.entry.vertices_removed = before.vertex_count() - out.instance->vertex_count();
  out.entry.edges_removed = removed;
  out.entry.edges_added = added;
  out.entry.k_delta = k - before.k;
  out.entry.n_after = out.instance->vertex_count();
  out.entry.m_after = out.instance->edge_count();
  out.entry.k_after = k;
  out.entry.note = std::move(note);
  return out;
}

}  // namespace detail

// Rule 1. If E(x) is contained in E(y) for some y != x, delete x from the vertex
// set and from every edge through it. The edges through x stay, shrunk by one;
// deleting E(x) outright turns {{x,y},{z,w}}, k=1 into a yes-instance.
inline RuleOutcome rule1_vertex_domination(const Instance& inst) {
  const Hypergraph& h = inst.graph;
  const std::size_t n = h.vertex_count();
  for (VertexId x = 0; x < n; ++x) {
    std::optional<VertexId> dominator;
    const auto incident = h.edges_of(x);
    if (incident.empty()) {
      if (n >= 2) dominator = x == 0 ? 1 : 0;
    } else {
      // Candidates are the vertices shared by every edge through x.
      std::vector<VertexId> common(h.edges()[incident[0]].begin(), h.edges()[incident[0]].end());
      for (std::size_t i = 1; i < incident.size() && !common.empty(); ++i) {
        const Edge& e = h.edges()[incident[i]];
        std::erase_if(common, [&](VertexId v) { return !e.contains(v); });
      }
      for (VertexId y : common) {
        if (y != x) {
          dominator = y;
          break;
        }
      }
    }
    if (!dominator) continue;

    std::vector<bool> keep(n, true);
    keep[x] = false;
    std::vector<Edge> edges;
    edges.reserve(h.edge_count());
    for (const Edge& e : h.edges()) edges.push_back(e.contains(x) ? e.without(x) : e);
    return detail::finish(1, inst, keep, std::move(edges), inst.k,
                          detail::label_of(inst, x) + " dominated by " + detail::label_of(inst, *dominator));
  }
  return {};
}

// Rule 2. Drop an edge that is a proper superset of another edge.
inline RuleOutcome rule2_edge_domination(const Instance& inst) {
  const Hypergraph& h = inst.graph;
  const auto& edges = h.edges();
  for (std::size_t idx = 0; idx < edges.size(); ++idx) {
    const Edge& big = edges[idx];
    const std::size_t s = big.size();
    if (s == 0) continue;
    // Every nonempty proper subset, plus the empty one when the empty edge is present.
    std::optional<Edge> found;
    if (h.has_empty_edge()) found = Edge{};
    for (std::uint32_t mask = 1; !found && mask + 1 < (1u << s); ++mask) {
      std::vector<VertexId> vs;
      for (std::size_t j = 0; j < s; ++j) {
        if (mask & (1u << j)) vs.push_back(big[j]);
      }
      Edge sub(std::move(vs));
      if (h.has_edge(sub)) found = std::move(sub);
    }
    if (!found) continue;
    std::vector<Edge> rest;
    rest.reserve(edges.size() - 1);
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (j != idx) rest.push_back(edges[j]);
    }
    return detail::finish(2, inst, std::vector<bool>(h.vertex_count(), true), std::move(rest), inst.k,
                          detail::edge_text(inst, big) + " contains " + detail::edge_text(inst, *found));
  }
  return {};
}

// Rule 3. A unit edge {v} forces v: take it, k -= 1. Every edge through v is
// dropped; after Rule 2 that is only {v} itself.
inline RuleOutcome rule3_unit_edge(const Instance& inst) {
  const Hypergraph& h = inst.graph;
  for (const Edge& e : h.edges()) {
    if (e.size() != 1) continue;
    const VertexId v = e[0];
    std::vector<bool> keep(h.vertex_count(), true);
    keep[v] = false;
    std::vector<Edge> rest;
    for (const Edge& f : h.edges()) {
      if (!f.contains(v)) rest.push_back(f);
    }
    return detail::finish(3, inst, keep, std::move(rest), inst.k - 1, "forced " + detail::label_of(inst, v));
  }
  return {};
}

// Rule 4. A (d-2)-subedge e that is the pairwise intersection of more than k
// hyperedges must be hit by every small solution, so E(e) is replaced by e.
inline RuleOutcome rule4_high_degree_subedge(const Instance& inst) {
  const Hypergraph& h = inst.graph;
  const int d = h.max_edge_size();
  if (d < 3 || inst.k < 0) return {};
  const std::size_t core_size = static_cast<std::size_t>(d - 2);
  const std::size_t limit = static_cast<std::size_t>(inst.k) + 1;

  for (const Edge& e : subedges_of(h.edges(), core_size)) {
    if (h.has_edge(e)) continue;
    const std::vector<Edge> through = incident_edges(h, e);
    if (through.size() < limit) continue;

    std::map<VertexId, std::uint32_t> local;
    auto local_id = [&](VertexId v) {
      return local.try_emplace(v, static_cast<std::uint32_t>(local.size())).first->second;
    };
    std::vector<std::uint32_t> singletons;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (const Edge& f : through) {
      std::vector<VertexId> ext;
      for (VertexId v : f) {
        if (!e.contains(v)) ext.push_back(v);
      }
      if (ext.size() == 1) {
        singletons.push_back(local_id(ext[0]));
      } else if (ext.size() == 2) {
        pairs.emplace_back(local_id(ext[0]), local_id(ext[1]));
      }
    }
    const std::size_t packing = packing_exactly_e(singletons, SimpleGraph(local.size(), pairs), limit);
    if (packing <= static_cast<std::size_t>(inst.k)) continue;

    std::vector<Edge> rest;
    for (const Edge& f : h.edges()) {
      if (!f.includes(e)) rest.push_back(f);
    }
    rest.push_back(e);
    return detail::finish(4, inst, std::vector<bool>(h.vertex_count(), true), std::move(rest), inst.k,
                          "subedge " + detail::edge_text(inst, e) + " packs more than " + std::to_string(inst.k) +
                              " edges");
  }
  return {};
}

// Greedy maximal family of pairwise weakly related edges (|e1 & e2| <= d-2),
// scanning edges in canonical order.
inline std::vector<Edge> greedy_weakly_related_family(const Hypergraph& h) {
  const std::size_t cap = static_cast<std::size_t>(std::max(h.max_edge_size() - 2, 0));
  std::vector<Edge> family;
  for (const Edge& e : h.edges()) {
    bool related = true;
    for (const Edge& w : family) {
      if (e.intersection_size(w) > cap) {
        related = false;
        break;
      }
    }
    if (related) family.push_back(e);
  }
  return family;
}

// Rule 5. Skipped when it was the most recent rule. Otherwise, with a greedy
// maximal weakly related family W, for i = d-2 down to 1 and every i-subedge e
// of W: if more than k^(d-1-i) members of W contain e, every edge containing e
// is replaced by e. W is live (deleted edges leave it; inserted subedges never
// join it) and k is unchanged. Counts as applied even when nothing changes.
inline RuleOutcome rule5_weakly_related_counting(const Instance& inst, int last_rule) {
  if (last_rule == 5) return {};
  const Hypergraph& h = inst.graph;
  const int d = h.max_edge_size();

  const std::vector<Edge> family = greedy_weakly_related_family(h);
  std::vector<char> alive(family.size(), 1);
  std::set<Edge> current(h.edges().begin(), h.edges().end());
  std::size_t triggered = 0;

  for (int i = d - 2; i >= 1; --i) {
    std::vector<Edge> live;
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (alive[j]) live.push_back(family[j]);
    }
    const std::int64_t threshold = saturating_pow(inst.k, d - 1 - i);
    for (const Edge& e : subedges_of(live, static_cast<std::size_t>(i))) {
      std::int64_t count = 0;
      for (std::size_t j = 0; j < family.size(); ++j) {
        if (alive[j] && family[j].includes(e)) ++count;
      }
      if (count <= threshold) continue;
      for (std::size_t j = 0; j < family.size(); ++j) {
        if (family[j].includes(e)) alive[j] = 0;
      }
      std::erase_if(current, [&](const Edge& f) { return f.includes(e); });
      current.insert(e);
      ++triggered;
    }
  }

  RuleOutcome out =
      detail::finish(5, inst, std::vector<bool>(h.vertex_count(), true), {current.begin(), current.end()}, inst.k,
                     "family of " + std::to_string(family.size()) + " edges, " + std::to_string(triggered) +
                         " subedges promoted");
  return out;
}

// Called with each LP Rule 6 solves, before the crown search.
using LpObserver = std::function<void(const Instance&, const LPProblem&, const ExactLPSolution&)>;

// Rule 6. Above the kernel bound, solve the LP exactly, take A = {x = 0} with
// the subedges B they complete, and look for a Hall-deficient crown between A and
// B. Found: apply it (k unchanged). Not found: the instance is a no-instance.
inline RuleOutcome rule6_lp_crown(const Instance& inst, const LpObserver& on_lp = {}) {
  const Hypergraph& h = inst.graph;
  if (inst.k < 0) throw ContractError("rule6: negative budget");
  for (const Edge& e : h.edges()) {
    if (e.size() < 2) throw ContractError("rule6: every edge must have at least two vertices");
  }
  const std::int64_t bound = kernel_bound(h.max_edge_size(), inst.k);
  if (static_cast<std::int64_t>(h.vertex_count()) <= bound) return {};

  const LPProblem lp = build_shs_lp(h);
  const ExactLPSolution sol = solve_exact(lp);
  if (on_lp) on_lp(inst, lp, sol);
  const CrownCandidates candidates = extract_crown_candidates(h, sol);
  std::optional<HSCrown> crown = find_crown_between(h, candidates.zero_vertices, candidates.subedges);

  if (!crown) {
    RuleOutcome out;
    out.verdict_no = true;
    out.entry.rule = 6;
    out.entry.n_after = h.vertex_count();
    out.entry.m_after = h.edge_count();
    out.entry.k_after = inst.k;
    out.entry.note = "LP objective " + sol.objective.get_str() + ", no crown among " +
                     std::to_string(candidates.zero_vertices.size()) + " zero vertices: no-instance";
    return out;
  }

  const CrownVerdict verdict = validate_hs_crown(h, *crown);
  if (!verdict.valid() || crown->independent.empty() || !verdict.strict) {
    throw InternalError("rule6: crown search produced an invalid crown");
  }
  std::string note = "LP objective " + sol.objective.get_str() + ", " + to_text(*crown, inst.labels);
  RuleOutcome out = detail::finish(6, inst, [&] {
    std::vector<bool> keep(h.vertex_count(), true);
    for (VertexId x : crown->independent) keep[x] = false;
    return keep;
  }(), [&] {
    std::vector<Edge> edges;
    for (const Edge& e : h.edges()) {
      bool touches = false;
      for (VertexId x : crown->independent) touches = touches || e.contains(x);
      if (!touches) edges.push_back(e);
    }
    edges.insert(edges.end(), crown->subedges.begin(), crown->subedges.end());
    return edges;
  }(), inst.k, std::move(note));
  out.crown = std::move(crown);
  return out;
}

struct ReduceOptions {
  // Sees every applied rule (and Rule 6's no-verdict) with the instance it ran on.
  std::function<void(const Instance& before, const RuleOutcome&)> on_step;
  LpObserver on_lp;
};

struct ReduceResult {
  Verdict verdict = Verdict::kUndecided;
  Instance instance;  // the kernel, or the instance the verdict was reached on
  ReductionTrace trace;
  std::array<std::size_t, 7> rule_counts{};  // index = rule number
};

// 2(|V|+|E|) + |V| + 2|E| + 4 rule applications; exceeding it is an engine bug.
inline std::size_t iteration_ceiling(const Instance& inst) {
  const std::size_t n = inst.vertex_count();
  const std::size_t m = inst.edge_count();
  return 2 * (n + m) + n + 2 * m + 4;
}

inline ReduceResult reduce(Instance inst, const ReduceOptions& options = {}) {
  ReduceResult result;
  const std::size_t ceiling = iteration_ceiling(inst);
  std::size_t applications = 0;
  int last_rule = 0;

  auto decide = [&](Verdict v) {
    result.verdict = v;
    result.trace.verdict = v;
    result.instance = std::move(inst);
    return std::move(result);
  };

  while (true) {
    if (inst.k < 0 || inst.graph.has_empty_edge()) return decide(Verdict::kNo);
    if (inst.edge_count() == 0) return decide(Verdict::kYes);
    if (inst.k == 0) return decide(Verdict::kNo);
    if (++applications > ceiling) throw InternalError("reduce: exceeded the rule application ceiling");

    RuleOutcome outcome = rule1_vertex_domination(inst);
    if (!outcome.applied) outcome = rule2_edge_domination(inst);
    if (!outcome.applied) outcome = rule3_unit_edge(inst);
    if (!outcome.applied) outcome = rule4_high_degree_subedge(inst);
    if (!outcome.applied) outcome = rule5_weakly_related_counting(inst, last_rule);
    if (!outcome.applied) outcome = rule6_lp_crown(inst, options.on_lp);

    if (outcome.verdict_no) {
      if (options.on_step) options.on_step(inst, outcome);
      result.trace.steps.push_back(outcome.entry);
      return decide(Verdict::kNo);
    }
    if (!outcome.applied) return decide(Verdict::kUndecided);

    if (options.on_step) options.on_step(inst, outcome);
    last_rule = outcome.entry.rule;
    ++result.rule_counts[static_cast<std::size_t>(last_rule)];
    result.trace.steps.push_back(std::move(outcome.entry));
    inst = std::move(*outcome.instance);
  }
}

}  // namespace hsk
