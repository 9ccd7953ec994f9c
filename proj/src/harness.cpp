#include "psi/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "psi/ape.hpp"
#include "psi/hypervolume.hpp"
#include "psi/pareto.hpp"

namespace psi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  const int i = static_cast<int>(v);
  if (v != i) throw std::invalid_argument(what + " must be an integer: " + s);
  return i;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(threads, count);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

AlgoSpec parse_algo(const std::string& token) {
  AlgoSpec spec;
  spec.label = token;
  const auto colon = token.find(':');
  const std::string head = token.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : token.substr(colon + 1);

  auto require_arg = [&](const char* what) {
    if (arg.empty())
      throw std::invalid_argument(std::string(what) + " requires an argument: " +
                                  token);
  };
  auto forbid_arg = [&] {
    if (colon != std::string::npos)
      throw std::invalid_argument("unexpected argument in: " + token);
  };

  if (head == "ege-sr") {
    forbid_arg();
    spec.kind = AlgoSpec::Kind::EgeSr;
  } else if (head == "ege-sh") {
    forbid_arg();
    spec.kind = AlgoSpec::Kind::EgeSh;
  } else if (head == "uniform") {
    forbid_arg();
    spec.kind = AlgoSpec::Kind::Uniform;
  } else if (head == "ege-gg") {
    require_arg("ege-gg");
    spec.kind = AlgoSpec::Kind::EgeGg;
    spec.gg_rounds = parse_int(arg, "ege-gg round count");
  } else if (head == "ege-sr-k") {
    require_arg("ege-sr-k");
    spec.kind = AlgoSpec::Kind::EgeSrK;
    spec.k = parse_int(arg, "ege-sr-k parameter");
  } else if (head == "ape-fb") {
    require_arg("ape-fb");
    spec.kind = AlgoSpec::Kind::ApeFb;
    if (arg.rfind("oracle", 0) == 0) {
      spec.ape_oracle = true;
      const auto star = arg.find('*');
      spec.ape_oracle_scale =
          star == std::string::npos
              ? 1.0
              : parse_double(arg.substr(star + 1), "oracle scale");
    } else {
      spec.ape_a = parse_double(arg, "ape-fb parameter");
      if (spec.ape_a < 0.0)
        throw std::invalid_argument("ape-fb parameter must be >= 0: " + token);
    }
  } else if (head == "ape-fb-adapt") {
    spec.kind = AlgoSpec::Kind::ApeFbAdapt;
    if (!arg.empty()) spec.adapt_floor = parse_double(arg, "adapt floor");
    if (!(spec.adapt_floor > 0.0))
      throw std::invalid_argument("adapt floor must be > 0: " + token);
  } else {
    throw std::invalid_argument("unknown algorithm: " + token);
  }
  return spec;
}

BanditInstance resolve_instance(const ExperimentSpec& spec) {
  BanditInstance inst = [&] {
    if (spec.instance.rfind("exp:", 0) == 0)
      return gen_experiment(parse_int(spec.instance.substr(4), "experiment id"),
                            spec.gen_seed);
    std::string path = spec.instance;
    if (path.rfind("file:", 0) == 0) path = path.substr(5);
    return load_instance(path, spec.file_has_header);
  }();
  if (spec.sigma) {
    if (!(*spec.sigma >= 0.0))
      throw std::invalid_argument("sigma override must be >= 0");
    std::fill(inst.sigma.begin(), inst.sigma.end(), *spec.sigma);
  }
  return inst;
}

std::vector<long long> default_budgets(const BanditInstance& instance,
                                       const std::vector<AlgoSpec>& algos,
                                       bool generated) {
  const int K = instance.means.arms();
  const int D = instance.means.dims();
  long long rmax = 1;
  for (const auto& a : algos) {
    switch (a.kind) {
      case AlgoSpec::Kind::EgeSr:
      case AlgoSpec::Kind::EgeSrK:
        rmax = std::max<long long>(rmax, K - 1);
        break;
      case AlgoSpec::Kind::EgeSh:
        rmax = std::max<long long>(
            rmax, static_cast<long long>(std::ceil(std::log2(double(K)))));
        break;
      case AlgoSpec::Kind::EgeGg:
        rmax = std::max<long long>(rmax, 2LL * a.gg_rounds);
        break;
      default:
        break;
    }
  }
  long long t_max;
  if (!generated && K == 20 && D == 3)
    t_max = 2500;
  else if (!generated && K == 206 && D == 2)
    t_max = 5000;
  else
    t_max = static_cast<long long>(std::ceil(complexity_profile(instance.means).h1));

  const long long t_min = std::max<long long>(K * rmax, K);
  std::vector<long long> grid;
  if (t_max <= t_min) {
    grid.push_back(std::max(t_min, t_max));
    return grid;
  }
  const double lo = std::log(static_cast<double>(t_min));
  const double hi = std::log(static_cast<double>(t_max));
  for (int i = 0; i < 8; ++i) {
    const auto t = static_cast<long long>(
        std::llround(std::exp(lo + (hi - lo) * i / 7.0)));
    if (grid.empty() || t > grid.back()) grid.push_back(t);
  }
  return grid;
}

TrialJudgement judge_trial(const TrialRecord& record, const MeanMatrix& truth,
                           Metric metric, std::optional<int> k,
                           const std::optional<std::vector<double>>& hv_ref) {
  const std::vector<int> optimal = pareto_set(truth);
  TrialJudgement j;
  if (metric == Metric::PsiKLoss) {
    if (!k) throw std::invalid_argument("judge_trial: PsiKLoss needs k");
    j.loss = psi_k_loss(record.recommended, optimal, *k);
  } else {
    j.loss = record.recommended == optimal ? 0 : 1;
  }
  j.rounds = record.rounds_used;
  j.samples = record.samples_used;
  j.hv = hv_ref ? hv_fraction(record.recommended, truth, *hv_ref) : kNaN;
  return j;
}

namespace {

struct PerTrial {
  unsigned char loss = 0;
  int rounds = 0;
  long long samples = 0;
  double hv = 0.0;
};

struct CellSetup {
  AlgoSpec algo;
  long long T = 0;
  Schedule schedule;       // EGE kinds
  double ape_a = 0.0;      // resolved parameter
  std::string note;
};

ResultRow run_cell(const BanditInstance& inst, const std::vector<int>& truth,
                   const CellSetup& cell, const ExperimentSpec& spec,
                   const std::optional<std::vector<double>>& hv_ref,
                   int threads) {
  const auto started = std::chrono::steady_clock::now();
  const int n = spec.trials;
  std::vector<PerTrial> slots(n);

  parallel_for(n, threads, [&](int trial) {
    SeededSampler sampler{inst, spec.master_seed,
                          static_cast<std::uint64_t>(trial)};
    TrialRecord rec;
    switch (cell.algo.kind) {
      case AlgoSpec::Kind::EgeSr:
      case AlgoSpec::Kind::EgeSh:
      case AlgoSpec::Kind::EgeGg:
      case AlgoSpec::Kind::Uniform:
        rec = ege_run(sampler, cell.schedule, cell.T);
        break;
      case AlgoSpec::Kind::EgeSrK:
        rec = ege_sr_k_run(sampler, cell.T, cell.algo.k);
        break;
      case AlgoSpec::Kind::ApeFb: {
        ApeConfig config;
        config.a = cell.ape_a;
        rec = ape_fb_run(sampler, cell.T, config);
        break;
      }
      case AlgoSpec::Kind::ApeFbAdapt:
        rec = ape_fb_adapt_run(sampler, cell.T, cell.algo.adapt_floor);
        break;
    }

    PerTrial& out = slots[trial];
    if (spec.metric == Metric::PsiKLoss)
      out.loss = static_cast<unsigned char>(
          psi_k_loss(rec.recommended, std::span<const int>{truth}, *spec.k));
    else
      out.loss = rec.recommended == truth ? 0 : 1;
    out.rounds = rec.rounds_used;
    out.samples = rec.samples_used;
    if (hv_ref) out.hv = hv_fraction(rec.recommended, inst.means, *hv_ref);
  });

  ResultRow row;
  row.algorithm = cell.algo.label;
  row.T = cell.T;
  row.trials = n;
  row.note = cell.note;
  double tau_sum = 0.0, samples_sum = 0.0, hv_sum = 0.0;
  for (const PerTrial& s : slots) {
    row.failures += s.loss;
    tau_sum += s.rounds;
    samples_sum += static_cast<double>(s.samples);
    hv_sum += s.hv;
  }
  row.error_rate = static_cast<double>(row.failures) / n;
  row.log10_error =
      std::log10(std::max(row.error_rate, 1.0 / (10.0 * n)));
  row.mean_tau = tau_sum / n;
  row.mean_samples = samples_sum / n;
  row.mean_hv_fraction = hv_ref ? hv_sum / n : kNaN;
  row.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return row;
}

}  // namespace

std::vector<ResultRow> run_grid(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("run_grid: trials >= 1");
  if (spec.metric == Metric::PsiKLoss && !spec.k)
    throw std::invalid_argument("run_grid: PsiKLoss metric requires k");
  const BanditInstance inst = resolve_instance(spec);
  const bool generated = spec.instance.rfind("exp:", 0) == 0;
  const std::vector<int> truth = pareto_set(inst.means);
  const int K = inst.means.arms();

  std::vector<AlgoSpec> algos;
  algos.reserve(spec.algorithms.size());
  for (const auto& token : spec.algorithms) algos.push_back(parse_algo(token));
  if (algos.empty()) throw std::invalid_argument("run_grid: no algorithms");

  std::vector<long long> budgets = spec.budgets;
  if (budgets.empty()) budgets = default_budgets(inst, algos, generated);
  for (long long t : budgets)
    if (t < K)
      throw std::invalid_argument("run_grid: budget " + std::to_string(t) +
                                  " below K = " + std::to_string(K));

  std::optional<std::vector<double>> hv_ref;
  if (spec.hv_metric) {
    if (spec.hv_ref) {
      if (spec.hv_ref->size() != static_cast<std::size_t>(inst.means.dims()))
        throw std::invalid_argument("run_grid: hv reference dimension mismatch");
      for (int i = 0; i < K; ++i)
        for (int d = 0; d < inst.means.dims(); ++d)
          if (!((*spec.hv_ref)[d] <= inst.means(i, d)))
            throw std::invalid_argument(
                "run_grid: hv reference must be weakly dominated by every "
                "arm mean");
      hv_ref = spec.hv_ref;
    } else {
      std::vector<double> ref(inst.means.dims(),
                              std::numeric_limits<double>::infinity());
      for (int i = 0; i < K; ++i)
        for (int d = 0; d < inst.means.dims(); ++d)
          ref[d] = std::min(ref[d], inst.means(i, d));
      for (double& v : ref) v -= 1e-6;
      hv_ref = std::move(ref);
    }
  }

  // The oracle-tuned baseline needs the true hardness; compute it once and
  // only when requested so degenerate instances still run the other cells.
  std::optional<double> h1;
  for (const auto& a : algos)
    if (a.kind == AlgoSpec::Kind::ApeFb && a.ape_oracle && !h1)
      h1 = complexity_profile(inst.means).h1;

  const int threads = spec.threads > 0
                          ? spec.threads
                          : std::max(1u, std::thread::hardware_concurrency());

  std::vector<ResultRow> rows;
  for (const auto& algo : algos) {
    for (long long T : budgets) {
      CellSetup cell;
      cell.algo = algo;
      cell.T = T;
      try {
        switch (algo.kind) {
          case AlgoSpec::Kind::EgeSr: cell.schedule = schedule_sr(K, T); break;
          case AlgoSpec::Kind::EgeSh: cell.schedule = schedule_sh(K, T); break;
          case AlgoSpec::Kind::EgeGg:
            cell.schedule = schedule_gg(K, T, algo.gg_rounds);
            break;
          case AlgoSpec::Kind::Uniform:
            cell.schedule = schedule_uniform(K, T);
            break;
          case AlgoSpec::Kind::EgeSrK:
            (void)schedule_sr(K, T);  // trials may not throw inside workers
            break;
          case AlgoSpec::Kind::ApeFb:
            if (algo.ape_oracle) {
              const double bound = tune_a(*h1, T, K);
              cell.ape_a = algo.ape_oracle_scale * bound;
              if (cell.ape_a > bound)
                cell.note = "a exceeds the guarantee range";
            } else {
              cell.ape_a = algo.ape_a;
            }
            break;
          default: break;
        }
        rows.push_back(run_cell(inst, truth, cell, spec, hv_ref, threads));
      } catch (const std::exception& e) {
        ResultRow row;
        row.algorithm = algo.label;
        row.T = T;
        row.failed = true;
        row.note = e.what();
        row.error_rate = row.log10_error = row.mean_tau = row.mean_samples =
            row.mean_hv_fraction = row.wall_time_s = kNaN;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out,
              bool timing) {
  out << "algorithm,T,trials,failures,error_rate,log10_error,mean_tau,"
         "mean_samples,mean_hv_fraction";
  if (timing) out << ",wall_time_s";
  out << ",note\n";
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.T << ',' << r.trials << ',' << r.failures
        << ',' << fmt(r.error_rate) << ',' << fmt(r.log10_error) << ','
        << fmt(r.mean_tau) << ',' << fmt(r.mean_samples) << ','
        << fmt(r.mean_hv_fraction);
    if (timing) out << ',' << fmt(r.wall_time_s);
    out << ',' << r.note << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path,
              bool timing) {
  std::ofstream out{path};
  if (!out) throw std::runtime_error("cannot write CSV: " + path);
  emit_csv(rows, out, timing);
  if (!out) throw std::runtime_error("CSV write failed: " + path);
}

}  // namespace psi
