// Command-line harness: experiment grids, gap reports, instance generation,
// lower-bound construction checks and schedule inspection.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psi/ape.hpp"
#include "psi/harness.hpp"
#include "psi/hypervolume.hpp"
#include "psi/kernels.hpp"
#include "psi/lowerbound.hpp"
#include "psi/pareto.hpp"

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string set_str(const std::vector<int>& arms) {
  std::string out = "{";
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(arms[i] + 1);  // arms are reported 1-based
  }
  return out + "}";
}

std::vector<long long> parse_budget_list(const std::string& csv) {
  std::vector<long long> out;
  std::stringstream ss{csv};
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stoll(cell));
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss{csv};
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

struct CommonInstanceOpts {
  std::string instance;
  std::uint64_t gen_seed = 0;
  bool header = false;
  std::optional<double> sigma;

  void attach(CLI::App* cmd) {
    cmd->add_option("--instance", instance,
                    "instance source: exp:1..exp:8 or an instance CSV path")
        ->required();
    cmd->add_option("--gen-seed", gen_seed, "generator seed (random blocks)");
    cmd->add_flag("--header", header, "instance file starts with a K,D header");
    cmd->add_option("--sigma", sigma,
                    "override the per-dimension noise scale with one value");
  }

  psi::BanditInstance resolve() const {
    psi::ExperimentSpec spec;
    spec.instance = instance;
    spec.gen_seed = gen_seed;
    spec.file_has_header = header;
    spec.sigma = sigma;
    return psi::resolve_instance(spec);
  }
};

int cmd_run(const CommonInstanceOpts& inst_opts, psi::ExperimentSpec spec,
            const std::string& budgets_csv, const std::string& metric_name,
            const std::string& hv_ref_csv, const std::string& out_path,
            bool timing) {
  spec.instance = inst_opts.instance;
  spec.gen_seed = inst_opts.gen_seed;
  spec.file_has_header = inst_opts.header;
  spec.sigma = inst_opts.sigma;
  if (!budgets_csv.empty()) spec.budgets = parse_budget_list(budgets_csv);
  if (metric_name == "psi-k") {
    spec.metric = psi::Metric::PsiKLoss;
    if (!spec.k)
      throw CLI::ValidationError("--metric", "psi-k requires --k");
  } else if (metric_name != "error") {
    throw CLI::ValidationError("--metric", "must be 'error' or 'psi-k'");
  }
  if (!hv_ref_csv.empty()) {
    spec.hv_ref = parse_double_list(hv_ref_csv);
    spec.hv_metric = true;
  }

  const auto rows = psi::run_grid(spec);
  if (out_path.empty() || out_path == "-")
    psi::emit_csv(rows, std::cout, timing);
  else
    psi::emit_csv(rows, out_path, timing);

  for (const auto& r : rows) {
    std::cerr << r.algorithm << " T=" << r.T;
    if (r.failed)
      std::cerr << " failed: " << r.note << '\n';
    else
      std::cerr << " error_rate=" << fmt(r.error_rate)
                << " log10=" << fmt(r.log10_error) << " ("
                << fmt(r.wall_time_s) << " s)"
                << (r.note.empty() ? "" : " [" + r.note + "]") << '\n';
  }
  return 0;
}

int cmd_gaps(const CommonInstanceOpts& inst_opts, std::optional<int> k) {
  const psi::BanditInstance inst = inst_opts.resolve();
  const psi::GapProfile profile = psi::complexity_profile(inst.means);
  std::cout << "K=" << inst.means.arms() << " D=" << inst.means.dims() << "\n";
  std::cout << "pareto_set " << set_str(profile.pareto) << "\n";
  std::cout << "arm,gap,optimal\n";
  std::vector<char> optimal(inst.means.arms(), 0);
  for (int i : profile.pareto) optimal[i] = 1;
  for (int i = 0; i < inst.means.arms(); ++i)
    std::cout << i + 1 << ',' << fmt(profile.delta[i]) << ','
              << (optimal[i] ? 1 : 0) << "\n";
  std::cout << "H " << fmt(profile.h1) << "\n";
  std::cout << "H2 " << fmt(profile.h2) << "\n";
  if (k) {
    const psi::RelaxedGapProfile relaxed = psi::relaxed_profile(inst.means, *k);
    std::cout << "k " << *k << "\nomega_k " << fmt(relaxed.omega_k) << "\n";
    std::cout << "H2_k " << fmt(relaxed.h2_k) << "\n";
  }
  return 0;
}

int cmd_gen(const CommonInstanceOpts& inst_opts, const std::string& out_path) {
  const psi::BanditInstance inst = inst_opts.resolve();
  psi::save_instance(inst, out_path);
  std::cerr << "wrote " << inst.means.arms() << "x" << inst.means.dims()
            << " instance to " << out_path << '\n';
  return 0;
}

int cmd_lb(const CommonInstanceOpts& inst_opts, const std::string& variant_name,
           std::optional<long long> T) {
  const psi::BanditInstance inst = inst_opts.resolve();
  psi::InstanceClass variant;
  if (variant_name == "b")
    variant = psi::InstanceClass::Base;
  else if (variant_name == "bprime")
    variant = psi::InstanceClass::Extended;
  else
    throw CLI::ValidationError("--variant", "must be 'b' or 'bprime'");

  const psi::ClassBReport rep = psi::class_b_check(inst.means, variant);
  std::cout << "member " << (rep.member ? "true" : "false") << "\n";
  for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
  if (!rep.member) return 0;

  std::cout << "i,pareto_changed,max_gap_deviation,H,H_alt\n";
  for (int i = -1; i < inst.means.arms(); ++i) {
    const auto g = psi::verify_gap_preservation(inst.means, i, variant);
    std::cout << i + 1 << ',' << (g.pareto_changed ? 1 : 0) << ','
              << fmt(g.max_gap_deviation) << ',' << fmt(g.h_original) << ','
              << fmt(g.h_alternative) << "\n";
  }
  if (T) {
    const double sigma = inst.sigma.empty() ? 1.0 : inst.sigma.front();
    const double h1 = psi::complexity_profile(inst.means).h1;
    std::cout << "lb_value(T=" << *T << ", sigma=" << fmt(sigma) << ") "
              << fmt(psi::lb_value(*T, h1, sigma)) << "\n";
  }
  return 0;
}

int cmd_schedule(const std::string& algo, int K, long long T) {
  const psi::AlgoSpec spec = psi::parse_algo(algo);
  psi::Schedule s;
  switch (spec.kind) {
    case psi::AlgoSpec::Kind::EgeSr:
    case psi::AlgoSpec::Kind::EgeSrK:
      s = psi::schedule_sr(K, T);
      break;
    case psi::AlgoSpec::Kind::EgeSh:
      s = psi::schedule_sh(K, T);
      break;
    case psi::AlgoSpec::Kind::EgeGg:
      s = psi::schedule_gg(K, T, spec.gg_rounds);
      break;
    case psi::AlgoSpec::Kind::Uniform:
      s = psi::schedule_uniform(K, T);
      break;
    default:
      throw CLI::ValidationError("--algo", "no schedule for " + algo);
  }
  auto print_vec = [](const char* name, const auto& v) {
    std::cout << name << "=(";
    for (std::size_t i = 0; i < v.size(); ++i)
      std::cout << (i ? "," : "") << v[i];
    std::cout << ")\n";
  };
  print_vec("lambda", s.active);
  print_vec("t", s.pulls);
  print_vec("n", psi::cumulative_pulls(s));
  std::cout << "cost " << psi::nominal_cost(s) << " of T=" << T << "\n";
  const auto rep = psi::validate_schedule(s, K, T);
  std::cout << "valid " << (rep.ok ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-budget Pareto set identification bench"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  std::string kernel = "auto";
  app.add_option("--kernel", kernel, "margin kernel: auto, scalar or avx2");

  // run
  auto* run = app.add_subcommand("run", "run an (algorithm x budget) grid");
  CommonInstanceOpts run_inst;
  run_inst.attach(run);
  psi::ExperimentSpec spec;
  std::string budgets_csv, metric_name = "error", hv_ref_csv, out_path = "-";
  bool timing = false, hv_flag = false;
  run->add_option("--algo", spec.algorithms,
                  "algorithms: ege-sr ege-sh ege-gg:R uniform ege-sr-k:k "
                  "ape-fb:a|oracle[*c] ape-fb-adapt[:floor]")
      ->required()
      ->delimiter(',');
  run->add_option("--budgets", budgets_csv,
                  "comma-separated budgets; default: 8 log-spaced points");
  run->add_option("--trials", spec.trials, "trials per cell")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", spec.master_seed, "master seed for the samplers");
  run->add_option("--metric", metric_name, "error (default) or psi-k");
  run->add_option("--k", spec.k, "relaxation parameter for psi-k");
  run->add_flag("--hv", hv_flag, "also report the hypervolume fraction");
  run->add_option("--hv-ref", hv_ref_csv,
                  "hypervolume reference point (default: min means - 1e-6)");
  run->add_option("--threads", spec.threads, "worker threads (0 = hardware)");
  run->add_option("--out", out_path, "output CSV path ('-' = stdout)");
  run->add_flag("--timing", timing, "append a wall_time_s column");

  // gaps
  auto* gaps = app.add_subcommand("gaps", "print the gap/complexity profile");
  CommonInstanceOpts gaps_inst;
  gaps_inst.attach(gaps);
  std::optional<int> gaps_k;
  gaps->add_option("--k", gaps_k, "also print the k-relaxed profile");

  // gen
  auto* gen = app.add_subcommand("gen", "write a generated instance to CSV");
  CommonInstanceOpts gen_inst;
  gen_inst.attach(gen);
  std::string gen_out;
  gen->add_option("--out", gen_out, "output instance CSV path")->required();

  // lb
  auto* lb = app.add_subcommand(
      "lb", "lower-bound family membership and construction report");
  CommonInstanceOpts lb_inst;
  lb_inst.attach(lb);
  std::string variant_name = "b";
  std::optional<long long> lb_T;
  lb->add_option("--variant", variant_name, "instance family: b or bprime");
  lb->add_option("--T", lb_T, "also print the error floor at this budget");

  // schedule
  auto* sched = app.add_subcommand("schedule", "print a schedule");
  std::string sched_algo;
  int sched_K = 0;
  long long sched_T = 0;
  sched->add_option("--algo", sched_algo, "ege-sr, ege-sh, ege-gg:R or uniform")
      ->required();
  sched->add_option("--K", sched_K, "arm count")->required();
  sched->add_option("--T", sched_T, "budget")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    psi::kern::select_impl(kernel.c_str());
    if (run->parsed()) {
      spec.hv_metric = hv_flag || !hv_ref_csv.empty();
      return cmd_run(run_inst, spec, budgets_csv, metric_name, hv_ref_csv,
                     out_path, timing);
    }
    if (gaps->parsed()) return cmd_gaps(gaps_inst, gaps_k);
    if (gen->parsed()) return cmd_gen(gen_inst, gen_out);
    if (lb->parsed()) return cmd_lb(lb_inst, variant_name, lb_T);
    if (sched->parsed()) return cmd_schedule(sched_algo, sched_K, sched_T);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
