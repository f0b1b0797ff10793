#pragma once

// Differential harness: kernelize generated instances and compare the outcome
// with the brute-force oracle on the original. Trials run on worker threads;
// each owns its instance and trace.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hsk/core.hpp"
#include "hsk/crown.hpp"
#include "hsk/oracle.hpp"
#include "hsk/reductions.hpp"

namespace hsk {

struct VerifyConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t max_n = 16;  // vertex counts are drawn from [d, max_n]
  std::size_t max_m = 40;  // edge counts are drawn from [1, max_m]
  int d = 3;
  std::int64_t max_k = 4;  // budgets are drawn from [1, max_k]
  std::size_t threads = 0;  // 0: hardware concurrency
  std::size_t oracle_ceiling = default_oracle_ceiling();
};

struct TrialOutcome {
  GenSpec spec;
  bool oracle_yes = false;
  Verdict verdict = Verdict::kUndecided;
  bool kernelizer_yes = false;
  std::size_t kernel_vertices = 0;
  std::int64_t kernel_k = 0;
  std::string trace;
};

struct VerifyReport {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::size_t kernels = 0;
  std::size_t bound_violations = 0;
  std::size_t crowns_applied = 0;   // Rule 6 crowns
  std::size_t crown_failures = 0;   // Rule 6 crowns failing validation, empty I, or not strict
  std::size_t rule6_no_verdicts = 0;
  std::array<std::size_t, 7> rule_counts{};
  std::vector<TrialOutcome> disagreements;

  bool all_agree() const { return agreements == trials; }
};

inline std::string format_trace(const ReductionTrace& trace) {
  std::ostringstream out;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    out << "step " << (i + 1) << ": rule " << s.rule << " -v" << s.vertices_removed << " -e" << s.edges_removed
        << " +e" << s.edges_added << " dk=" << s.k_delta << " -> n=" << s.n_after << " m=" << s.m_after
        << " k=" << s.k_after;
    if (!s.note.empty()) out << "  [" << s.note << "]";
    out << '\n';
  }
  out << "verdict: " << to_string(trace.verdict) << '\n';
  return out.str();
}

// SplitMix64 step, used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Spec of trial `index`: n, m, k and an optional planted size drawn from the
// trial's own seed. Half the trials plant a solution of size <= k.
inline GenSpec trial_spec(const VerifyConfig& cfg, std::size_t index) {
  const std::uint64_t seed = mix_seed(cfg.seed * 0x100000001b3ULL + index);
  std::mt19937_64 rng(seed);
  const auto lo_n = static_cast<std::size_t>(cfg.d);
  const std::size_t hi_n = std::max(cfg.max_n, lo_n);
  GenSpec spec;
  spec.seed = seed;
  spec.d = cfg.d;
  spec.n = lo_n + uniform_below(rng, hi_n - lo_n + 1);
  spec.k = 1 + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(std::max<std::int64_t>(cfg.max_k, 1))));
  // Keep m within what n can support as distinct edges.
  const std::size_t room = spec.n * (spec.n - 1) / 2;
  spec.m = 1 + uniform_below(rng, std::min(cfg.max_m, room));
  if (uniform_below(rng, 2) == 0) {
    spec.planted = 1 + uniform_below(rng, std::min<std::uint64_t>(static_cast<std::uint64_t>(spec.k), spec.n));
  }
  return spec;
}

inline TrialOutcome run_trial(const GenSpec& spec, std::size_t ceiling, VerifyReport& local) {
  const Instance original = generate(spec);
  TrialOutcome out;
  out.spec = spec;
  out.oracle_yes = decide_brute_force(original, ceiling);

  ReduceOptions options;
  options.on_step = [&](const Instance& before, const RuleOutcome& step) {
    if (step.entry.rule != 6) return;
    if (step.verdict_no) {
      ++local.rule6_no_verdicts;
      return;
    }
    ++local.crowns_applied;
    const CrownVerdict v = validate_hs_crown(before.graph, *step.crown);
    if (!v.valid() || step.crown->independent.empty() || !v.strict) ++local.crown_failures;
  };
  const ReduceResult result = reduce(original, options);
  out.verdict = result.verdict;
  for (std::size_t r = 1; r <= 6; ++r) local.rule_counts[r] += result.rule_counts[r];
  if (result.verdict == Verdict::kUndecided) {
    ++local.kernels;
    out.kernel_vertices = result.instance.vertex_count();
    out.kernel_k = result.instance.k;
    if (static_cast<std::int64_t>(out.kernel_vertices) > kernel_bound(spec.d, out.kernel_k)) ++local.bound_violations;
    out.kernelizer_yes = decide_brute_force(result.instance, ceiling);
  } else {
    out.kernelizer_yes = result.verdict == Verdict::kYes;
  }
  if (out.kernelizer_yes != out.oracle_yes) out.trace = format_trace(result.trace);
  return out;
}

inline VerifyReport run_differential(const VerifyConfig& cfg) {
  VerifyReport report;
  report.trials = cfg.trials;
  std::size_t workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(cfg.trials, 1));

  std::atomic<std::size_t> next{0};
  std::mutex join;
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      VerifyReport local;
      std::vector<TrialOutcome> bad;
      try {
        for (std::size_t i = next++; i < cfg.trials; i = next++) {
          TrialOutcome t = run_trial(trial_spec(cfg, i), cfg.oracle_ceiling, local);
          if (t.kernelizer_yes == t.oracle_yes) {
            ++local.agreements;
          } else {
            bad.push_back(std::move(t));
          }
        }
      } catch (...) {
        std::lock_guard lock(join);
        if (!failure) failure = std::current_exception();
      }
      std::lock_guard lock(join);
      report.agreements += local.agreements;
      report.kernels += local.kernels;
      report.bound_violations += local.bound_violations;
      report.crowns_applied += local.crowns_applied;
      report.crown_failures += local.crown_failures;
      report.rule6_no_verdicts += local.rule6_no_verdicts;
      for (std::size_t r = 0; r < 7; ++r) report.rule_counts[r] += local.rule_counts[r];
      for (auto& t : bad) report.disagreements.push_back(std::move(t));
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::sort(report.disagreements.begin(), report.disagreements.end(),
            [](const TrialOutcome& a, const TrialOutcome& b) { return a.spec.seed < b.spec.seed; });
  return report;
}

}  // namespace hsk
