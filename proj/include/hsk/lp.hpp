#pragma once

// The LP  min sum_v x_v  s.t.  sum_{v in e} x_v >= |e| - 1 for every edge e,
// 0 <= x_v <= 1, solved exactly over the rationals.
//
// Its optimum marks crown candidates: vertices at exactly 0 form an independent
// set whose edges are completed by vertices at exactly 1. Telling 0 from "tiny"
// is the whole point, so nothing here ever rounds.

#include <gmpxx.h>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "hsk/core.hpp"
#include "hsk/errors.hpp"

namespace hsk {

using Rational = mpq_class;

struct LpConstraint {
  std::vector<std::uint32_t> variables;  // sorted, distinct
  std::int64_t lower_bound = 0;          // sum of the listed variables >= lower_bound
};

// min sum of all variables subject to the covering rows and 0 <= x <= 1.
struct LPProblem {
  std::size_t variable_count = 0;
  std::vector<LpConstraint> constraints;
};

struct ExactLPSolution {
  std::vector<Rational> values;
  Rational objective;
  // Columns basic at termination: j < variable_count is a structural variable,
  // larger indices are the slacks of the internal rows in order.
  std::vector<std::size_t> basis;
  std::size_t pivots = 0;
};

inline LPProblem build_shs_lp(const Hypergraph& h) {
  LPProblem p;
  p.variable_count = h.vertex_count();
  p.constraints.reserve(h.edge_count());
  for (const Edge& e : h.edges()) {
    LpConstraint c;
    c.variables.assign(e.begin(), e.end());
    c.lower_bound = static_cast<std::int64_t>(e.size()) - 1;
    p.constraints.push_back(std::move(c));
  }
  return p;
}

// Human-readable listing, one constraint per line.
inline std::string to_text(const LPProblem& p, const std::vector<std::string>& names = {}) {
  auto name = [&](std::uint32_t v) { return v < names.size() ? "x_" + names[v] : "x" + std::to_string(v + 1); };
  std::ostringstream out;
  out << "minimize:";
  for (std::uint32_t v = 0; v < p.variable_count; ++v) out << (v == 0 ? " " : " + ") << name(v);
  if (p.variable_count == 0) out << " 0";
  out << '\n';
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const LpConstraint& c = p.constraints[i];
    out << "c" << (i + 1) << ':';
    for (std::size_t j = 0; j < c.variables.size(); ++j) out << (j == 0 ? " " : " + ") << name(c.variables[j]);
    if (c.variables.empty()) out << " 0";
    out << " >= " << c.lower_bound << '\n';
  }
  out << "bounds: 0 <= x <= 1 for all " << p.variable_count << " variables\n";
  return out.str();
}

template <class Backend>
concept LpBackend = requires(const LPProblem& p) {
  { Backend::solve(p) } -> std::same_as<ExactLPSolution>;
};

// Dense-tableau primal simplex with Bland's rule in exact arithmetic.
//
// Substituting y = 1 - x turns every covering row into a packing row
// sum_{v in e} y_v <= |e| - lower_bound with a nonnegative right-hand side, so
// the all-slack basis (x = 1) is feasible from the start and no artificial phase
// is needed. The bound y_v <= 1 is only materialised for variables that no row
// with right-hand side <= 1 already caps.
struct DenseTableauSimplex {
  static ExactLPSolution solve(const LPProblem& p) {
    const std::size_t n = p.variable_count;

    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<Rational> rhs;
    std::vector<char> capped(n, 0);
    for (const LpConstraint& c : p.constraints) {
      for (std::size_t j = 0; j < c.variables.size(); ++j) {
        if (c.variables[j] >= n || (j > 0 && c.variables[j] <= c.variables[j - 1])) {
          throw ContractError("simplex: constraint variables must be sorted, distinct and in range");
        }
      }
      const std::int64_t room = static_cast<std::int64_t>(c.variables.size()) - c.lower_bound;
      if (room < 0) throw InternalError("simplex: a constraint cannot be met inside the unit box");
      if (room <= 1) {
        for (std::uint32_t v : c.variables) capped[v] = 1;
      }
      rows.push_back(c.variables);
      rhs.emplace_back(room);
    }
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!capped[v]) {
        rows.push_back({v});
        rhs.emplace_back(1);
      }
    }

    const std::size_t m = rows.size();
    const std::size_t cols = n + m;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::uint32_t v : rows[i]) t[i][v] = 1;
      t[i][n + i] = 1;
      basis[i] = n + i;
    }
    // Reduced costs of max sum y; obj_rhs tracks minus the current value.
    std::vector<Rational> reduced(cols);
    for (std::size_t j = 0; j < n; ++j) reduced[j] = 1;
    Rational obj_rhs = 0;

    std::size_t pivots = 0;
    std::vector<std::size_t> support;
    while (true) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(reduced[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols) break;

      std::size_t leave = m;
      Rational best_ratio;
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        Rational ratio = rhs[i] / t[i][enter];
        if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m) throw InternalError("simplex: unbounded direction in a bounded problem");

      auto& prow = t[leave];
      const Rational pivot = prow[enter];
      support.clear();
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(prow[j]) != 0) {
          prow[j] /= pivot;
          support.push_back(j);
        }
      }
      rhs[leave] /= pivot;

      for (std::size_t i = 0; i < m; ++i) {
        if (i == leave || sgn(t[i][enter]) == 0) continue;
        const Rational factor = t[i][enter];
        for (std::size_t j : support) t[i][j] -= factor * prow[j];
        rhs[i] -= factor * rhs[leave];
      }
      if (sgn(reduced[enter]) != 0) {
        const Rational factor = reduced[enter];
        for (std::size_t j : support) reduced[j] -= factor * prow[j];
        obj_rhs -= factor * rhs[leave];
      }
      basis[leave] = enter;
      ++pivots;
    }

    std::vector<Rational> y(n);
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) y[basis[i]] = rhs[i];
    }
    ExactLPSolution sol;
    sol.values.reserve(n);
    sol.objective = 0;
    for (std::size_t v = 0; v < n; ++v) {
      sol.values.push_back(Rational(1) - y[v]);
      sol.objective += sol.values.back();
    }
    sol.basis = std::move(basis);
    sol.pivots = pivots;
    return sol;
  }
};

static_assert(LpBackend<DenseTableauSimplex>);

// Exact check of every constraint and box bound; empty string means feasible.
inline std::string feasibility_violation(const LPProblem& p, const ExactLPSolution& sol) {
  if (sol.values.size() != p.variable_count) return "value vector has wrong length";
  Rational total = 0;
  for (std::size_t v = 0; v < sol.values.size(); ++v) {
    if (sgn(sol.values[v]) < 0 || sol.values[v] > 1) return "variable " + std::to_string(v) + " outside [0,1]";
    total += sol.values[v];
  }
  if (total != sol.objective) return "objective does not equal the sum of values";
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    Rational lhs = 0;
    for (std::uint32_t v : p.constraints[i].variables) lhs += sol.values[v];
    if (lhs < p.constraints[i].lower_bound) return "constraint " + std::to_string(i) + " violated";
  }
  return {};
}

template <LpBackend Backend = DenseTableauSimplex>
ExactLPSolution solve_exact(const LPProblem& p) {
  ExactLPSolution sol = Backend::solve(p);
  if (auto why = feasibility_violation(p, sol); !why.empty()) {
    throw InternalError("solve_exact: returned point is infeasible: " + why);
  }
  return sol;
}

// A = {x_v = 0}, VB = {x_v = 1}, B = {e \ {x} : x in e, x in A}.
struct CrownCandidates {
  std::vector<VertexId> zero_vertices;  // A
  std::vector<VertexId> one_vertices;   // VB
  std::vector<Edge> subedges;           // B, sorted
};

inline CrownCandidates extract_crown_candidates(const Hypergraph& h, const ExactLPSolution& sol) {
  if (sol.values.size() != h.vertex_count()) {
    throw ContractError("extract_crown_candidates: solution does not match the hypergraph");
  }
  CrownCandidates out;
  std::vector<char> zero(h.vertex_count(), 0);
  for (VertexId v = 0; v < h.vertex_count(); ++v) {
    if (sgn(sol.values[v]) == 0) {
      zero[v] = 1;
      out.zero_vertices.push_back(v);
    } else if (sol.values[v] == 1) {
      out.one_vertices.push_back(v);
    }
  }
  for (const Edge& e : h.edges()) {
    for (VertexId x : e) {
      if (!zero[x]) continue;
      for (VertexId u : e) {
        if (u != x && sol.values[u] != 1) {
          throw InternalError("extract_crown_candidates: an edge through a zero vertex has a vertex below 1");
        }
      }
      Edge rest = e.without(x);
      if (!rest.empty()) out.subedges.push_back(std::move(rest));
    }
  }
  std::sort(out.subedges.begin(), out.subedges.end());
  out.subedges.erase(std::unique(out.subedges.begin(), out.subedges.end()), out.subedges.end());
  return out;
}

}  // namespace hsk
