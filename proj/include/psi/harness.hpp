#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psi/ege.hpp"
#include "psi/envs.hpp"

namespace psi {

enum class Metric { Error, PsiKLoss };

struct AlgoSpec {
  enum class Kind { EgeSr, EgeSh, EgeGg, Uniform, EgeSrK, ApeFb, ApeFbAdapt };
  Kind kind = Kind::EgeSr;
  int gg_rounds = 0;          // ege-gg
  int k = 0;                  // ege-sr-k
  double ape_a = 0.0;         // ape-fb with an explicit parameter
  bool ape_oracle = false;    // ape-fb tuned from the true hardness
  double ape_oracle_scale = 1.0;
  double adapt_floor = 1e-3;  // ape-fb-adapt
  std::string label;          // canonical id, used in result rows
};

/// Parses "ege-sr", "ege-sh", "ege-gg:R", "uniform", "ege-sr-k:k",
/// "ape-fb:a", "ape-fb:oracle[*c]" and "ape-fb-adapt[:floor]".
AlgoSpec parse_algo(const std::string& token);

struct ExperimentSpec {
  std::string instance;            // "exp:N" or an instance CSV path
  std::uint64_t gen_seed = 0;      // seed for generator randomness
  bool file_has_header = false;
  std::optional<double> sigma;     // overrides the instance noise scale
  std::vector<std::string> algorithms;
  std::vector<long long> budgets;  // empty selects the default grid
  int trials = 1;
  std::uint64_t master_seed = 0;
  Metric metric = Metric::Error;
  std::optional<int> k;            // required for the PsiKLoss metric
  bool hv_metric = false;
  std::optional<std::vector<double>> hv_ref;  // default: min of means - 1e-6
  int threads = 0;                 // 0 = hardware concurrency
};

struct ResultRow {
  std::string algorithm;
  long long T = 0;
  int trials = 0;
  long long failures = 0;
  double error_rate = 0.0;
  double log10_error = 0.0;  // clamped at 1/(10*trials) before the log
  double mean_tau = 0.0;
  double mean_samples = 0.0;
  double mean_hv_fraction = 0.0;  // NaN when the metric is off
  double wall_time_s = 0.0;       // informational; not serialised by default
  std::string note;               // tuning flags or per-cell failure reason
  bool failed = false;
};

/// Runs the (algorithm x budget) grid. Each trial uses stream id = trial
/// index, so identical (spec, master_seed) replays identical rows regardless
/// of the worker count. Per-cell errors (e.g. a budget too small for a
/// schedule) mark the cell failed and the grid continues.
std::vector<ResultRow> run_grid(const ExperimentSpec& spec);

struct TrialJudgement {
  int loss = 0;
  int rounds = 0;
  long long samples = 0;
  double hv = 0.0;  // NaN when not requested
};

/// Scores one trial against the true means.
TrialJudgement judge_trial(const TrialRecord& record, const MeanMatrix& truth,
                           Metric metric, std::optional<int> k,
                           const std::optional<std::vector<double>>& hv_ref);

/// Stable-column CSV: header plus one row per result, floats at 17
/// significant digits, NaN cells empty. `timing` appends a wall_time_s
/// column.
void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out,
              bool timing = false);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path,
              bool timing = false);

/// Instance named by an ExperimentSpec ("exp:N" generator or CSV path),
/// with the sigma override applied.
BanditInstance resolve_instance(const ExperimentSpec& spec);

/// Default budget grid: 8 log-spaced points from K*R_max (R_max over the
/// requested algorithms) up to ceil(h1) for generated instances, or the
/// conventional budgets for the real-data shapes (2500 for 20x3, 5000 for
/// 206x2 files).
std::vector<long long> default_budgets(const BanditInstance& instance,
                                       const std::vector<AlgoSpec>& algos,
                                       bool generated);

}  // namespace psi
