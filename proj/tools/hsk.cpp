// hsk: d-Hitting Set kernelizer front end.
//
//   hsk kernelize <file> [--trace] [--report-json PATH] [--dump-lp] [--dump-crowns] [--k K]
//   hsk solve <file> [--k K]
//   hsk gen --seed S --n N --m M --d D --k K [--plant P]
//   hsk verify --trials T --seed S --n N --d D --kmax K [--mmax M] [--threads W]
//
// Exit codes: 0 kernel emitted (or gen/verify success), 10 decided yes,
// 20 decided no, 1 usage or format error, 2 internal consistency error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hsk/hsk.hpp"
#include "json.hpp"

namespace {

constexpr int kExitKernel = 0;
constexpr int kExitYes = 10;
constexpr int kExitNo = 20;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hsk::FormatError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int verdict_exit(hsk::Verdict v) {
  switch (v) {
    case hsk::Verdict::kYes:
      return kExitYes;
    case hsk::Verdict::kNo:
      return kExitNo;
    default:
      return kExitKernel;
  }
}

struct KernelizeArgs {
  std::string file;
  bool trace = false;
  bool dump_lp = false;
  bool dump_crowns = false;
  std::string report_path;
  std::optional<std::int64_t> k;
};

int run_kernelize(const KernelizeArgs& args) {
  hsk::Instance inst = hsk::parse_instance(read_input(args.file));
  const std::int64_t file_k = inst.k;
  if (args.k) inst.k = *args.k;
  const std::size_t n0 = inst.vertex_count();
  const std::size_t m0 = inst.edge_count();
  const std::int64_t k0 = inst.k;
  const int d = inst.max_edge_size();

  hsk::ReduceOptions options;
  if (args.dump_lp) {
    options.on_lp = [](const hsk::Instance& at, const hsk::LPProblem& lp, const hsk::ExactLPSolution& sol) {
      std::cerr << "c LP on " << at.vertex_count() << " vertices, k=" << at.k << '\n' << hsk::to_text(lp, at.labels);
      std::cerr << "solution:";
      for (std::size_t v = 0; v < sol.values.size(); ++v) std::cerr << " x_" << at.labels[v] << '=' << sol.values[v];
      std::cerr << "\nobjective: " << sol.objective << "  pivots: " << sol.pivots << '\n';
    };
  }
  if (args.dump_crowns) {
    options.on_step = [](const hsk::Instance& before, const hsk::RuleOutcome& step) {
      if (step.crown) std::cerr << hsk::to_text(*step.crown, before.labels) << '\n';
    };
  }

  const auto start = std::chrono::steady_clock::now();
  hsk::ReduceResult result = hsk::reduce(std::move(inst), options);
  const double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (args.trace) std::cerr << hsk::format_trace(result.trace);

  const hsk::Instance& out = result.instance;
  const std::int64_t bound = hsk::kernel_bound(d, out.k);
  if (result.verdict == hsk::Verdict::kUndecided && static_cast<std::int64_t>(out.vertex_count()) > bound) {
    std::cerr << "internal error: kernel exceeds the vertex bound\n";
    return kExitInternal;
  }

  if (!args.report_path.empty()) {
    nlohmann::json report = {
        {"verdict", hsk::to_string(result.verdict)},
        {"d", d},
        {"n_initial", n0},
        {"m_initial", m0},
        {"k_initial", k0},
        {"k_file", file_k},
        {"k_overridden", args.k.has_value()},
        {"n_final", out.vertex_count()},
        {"m_final", out.edge_count()},
        {"k_final", out.k},
        {"bound", bound},
        {"steps", result.trace.steps.size()},
        {"wall_time_ms", wall_ms},
    };
    for (int r = 1; r <= 6; ++r) report["rule" + std::to_string(r)] = result.rule_counts[static_cast<std::size_t>(r)];
    std::ofstream rep(args.report_path);
    if (!rep) throw hsk::FormatError("cannot write report to '" + args.report_path + "'");
    rep << report.dump() << '\n';
  }

  if (result.verdict != hsk::Verdict::kUndecided) return verdict_exit(result.verdict);

  hsk::Instance kernel = out;
  kernel.comments.push_back("kernel: n " + std::to_string(n0) + " -> " + std::to_string(kernel.vertex_count()) +
                            ", m " + std::to_string(m0) + " -> " + std::to_string(kernel.edge_count()) + ", k " +
                            std::to_string(k0) + " -> " + std::to_string(kernel.k));
  for (std::size_t v = 0; v < kernel.labels.size(); ++v) {
    kernel.comments.push_back("vertex " + std::to_string(v + 1) + " " + kernel.labels[v]);
  }
  std::cout << hsk::write_instance(kernel);
  return kExitKernel;
}

int run_solve(const std::string& file, std::optional<std::int64_t> k) {
  hsk::Instance inst = hsk::parse_instance(read_input(file));
  if (k) inst.k = *k;
  const hsk::ReduceResult result = hsk::reduce(std::move(inst));
  bool yes = result.verdict == hsk::Verdict::kYes;
  if (result.verdict == hsk::Verdict::kUndecided) yes = hsk::decide_brute_force(result.instance);
  std::cout << (yes ? "yes" : "no") << '\n';
  return yes ? kExitYes : kExitNo;
}

int run_gen(const hsk::GenSpec& spec) {
  std::cout << hsk::write_instance(hsk::generate(spec));
  return 0;
}

int run_verify(const hsk::VerifyConfig& cfg) {
  const hsk::VerifyReport report = hsk::run_differential(cfg);
  for (const auto& t : report.disagreements) {
    std::cout << "DISAGREE seed=" << t.spec.seed << " n=" << t.spec.n << " m=" << t.spec.m << " d=" << t.spec.d
              << " k=" << t.spec.k << " oracle=" << (t.oracle_yes ? "yes" : "no")
              << " kernelizer=" << (t.kernelizer_yes ? "yes" : "no") << '\n'
              << t.trace;
  }
  std::cout << "rules applied:";
  for (int r = 1; r <= 6; ++r) std::cout << " r" << r << '=' << report.rule_counts[static_cast<std::size_t>(r)];
  std::cout << "\nrule 6: " << report.crowns_applied << " crowns, " << report.crown_failures << " invalid, "
            << report.rule6_no_verdicts << " no-verdicts\n";
  std::cout << "kernels: " << report.kernels << ", bound violations: " << report.bound_violations << '\n';
  std::cout << report.agreements << '/' << report.trials << " agree\n";
  const bool ok = report.all_agree() && report.crown_failures == 0 && report.bound_violations == 0;
  return ok ? 0 : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"d-Hitting Set kernelizer"};
  app.require_subcommand(1);

  KernelizeArgs kargs;
  std::int64_t kernelize_k = 0;
  auto* kernelize = app.add_subcommand("kernelize", "Reduce an instance to a kernel or a verdict");
  kernelize->add_option("file", kargs.file, "Instance file ('-' for stdin)")->required();
  kernelize->add_flag("--trace", kargs.trace, "Print the rule trace to stderr");
  kernelize->add_option("--report-json", kargs.report_path, "Write a JSON report to this path");
  kernelize->add_flag("--dump-lp", kargs.dump_lp, "Print every LP solved to stderr");
  kernelize->add_flag("--dump-crowns", kargs.dump_crowns, "Print every crown applied to stderr");
  auto* kernelize_k_opt = kernelize->add_option("--k", kernelize_k, "Override the budget from the file");

  std::string solve_file;
  std::int64_t solve_k = 0;
  auto* solve = app.add_subcommand("solve", "Decide an instance (kernelize, then brute force the kernel)");
  solve->add_option("file", solve_file, "Instance file ('-' for stdin)")->required();
  auto* solve_k_opt = solve->add_option("--k", solve_k, "Override the budget from the file");

  hsk::GenSpec spec;
  std::size_t plant = 0;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--seed", spec.seed)->required();
  gen->add_option("--n", spec.n)->required();
  gen->add_option("--m", spec.m)->required();
  gen->add_option("--d", spec.d)->required();
  gen->add_option("--k", spec.k)->required();
  auto* plant_opt = gen->add_option("--plant", plant, "Plant a hitting set of this size");

  hsk::VerifyConfig cfg;
  auto* verify = app.add_subcommand("verify", "Differential test of the kernelizer against the oracle");
  verify->add_option("--trials", cfg.trials)->required();
  verify->add_option("--seed", cfg.seed)->required();
  verify->add_option("--n", cfg.max_n, "Largest vertex count")->required();
  verify->add_option("--d", cfg.d)->required();
  verify->add_option("--kmax", cfg.max_k)->required();
  verify->add_option("--mmax", cfg.max_m, "Largest edge count");
  verify->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*kernelize) {
      if (*kernelize_k_opt) kargs.k = kernelize_k;
      return run_kernelize(kargs);
    }
    if (*solve) return run_solve(solve_file, *solve_k_opt ? std::optional<std::int64_t>(solve_k) : std::nullopt);
    if (*gen) {
      if (*plant_opt) spec.planted = plant;
      return run_gen(spec);
    }
    if (*verify) return run_verify(cfg);
  } catch (const hsk::FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hsk::UnsupportedParameter& e) {
    std::cerr << "unsupported parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hsk::OracleCeilingExceeded& e) {
    std::cerr << "oracle: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
