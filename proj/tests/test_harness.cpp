#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "psi/harness.hpp"
#include "psi/pareto.hpp"

using namespace psi;

namespace {

ExperimentSpec base_spec() {
  ExperimentSpec spec;
  spec.instance = "exp:8";
  spec.sigma = 0.0;
  spec.algorithms = {"ege-sr"};
  spec.budgets = {400};
  spec.trials = 8;
  spec.master_seed = 5;
  spec.threads = 2;
  return spec;
}

std::string csv_of(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  emit_csv(rows, out);
  return out.str();
}

}  // namespace

TEST_CASE("algorithm tokens parse into their configurations") {
  CHECK(parse_algo("ege-sr").kind == AlgoSpec::Kind::EgeSr);
  CHECK(parse_algo("ege-sh").kind == AlgoSpec::Kind::EgeSh);
  CHECK(parse_algo("uniform").kind == AlgoSpec::Kind::Uniform);
  CHECK(parse_algo("ege-gg:4").gg_rounds == 4);
  CHECK(parse_algo("ege-sr-k:3").k == 3);
  CHECK(parse_algo("ape-fb:2.5").ape_a == 2.5);
  CHECK(parse_algo("ape-fb:oracle").ape_oracle);
  CHECK(parse_algo("ape-fb:oracle*10").ape_oracle_scale == 10.0);
  CHECK(parse_algo("ape-fb:oracle*0.1").ape_oracle_scale == 0.1);
  CHECK(parse_algo("ape-fb-adapt").kind == AlgoSpec::Kind::ApeFbAdapt);
  CHECK(parse_algo("ape-fb-adapt:0.01").adapt_floor == 0.01);
  CHECK_THROWS_AS(parse_algo("ucb"), std::invalid_argument);
  CHECK_THROWS_AS(parse_algo("ege-gg"), std::invalid_argument);
  CHECK_THROWS_AS(parse_algo("ege-sr:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_algo("ape-fb:-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_algo("ape-fb-adapt:0"), std::invalid_argument);
}

TEST_CASE("infeasible relaxed cells fail without tearing the grid down") {
  ExperimentSpec spec = base_spec();
  spec.instance = "exp:6";                    // K = 10
  spec.algorithms = {"ege-sr-k:2", "uniform"};
  spec.budgets = {10};                        // too small for the sr grid
  const auto rows = run_grid(spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].failed);
  CHECK(!rows[1].failed);
}

TEST_CASE("user reference points are validated up front") {
  ExperimentSpec spec = base_spec();
  spec.hv_metric = true;
  spec.hv_ref = std::vector<double>{0.6, 0.6};  // above some arm means
  CHECK_THROWS_AS(run_grid(spec), std::invalid_argument);
}

TEST_CASE("noise-free grids never fail") {
  ExperimentSpec spec = base_spec();
  spec.algorithms = {"ege-sr", "ege-sh", "uniform", "ape-fb:1", "ape-fb-adapt"};
  spec.hv_metric = true;
  const auto rows = run_grid(spec);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    CHECK(!row.failed);
    CHECK(row.failures == 0);
    CHECK(row.error_rate == 0.0);
    CHECK(row.mean_hv_fraction == doctest::Approx(1.0).epsilon(1e-12));
    // zero failures clamp the log at 1/(10*trials)
    CHECK(row.log10_error ==
          doctest::Approx(std::log10(1.0 / 80.0)).epsilon(1e-12));
  }
}

TEST_CASE("identical specs replay byte-identical tables") {
  ExperimentSpec spec = base_spec();
  spec.sigma = 0.3;
  spec.trials = 50;
  spec.algorithms = {"ege-sr", "uniform", "ape-fb:oracle"};
  spec.budgets = {300, 900};
  const std::string first = csv_of(run_grid(spec));
  const std::string second = csv_of(run_grid(spec));
  CHECK(first == second);

  spec.threads = 1;  // worker count must not matter
  const std::string serial = csv_of(run_grid(spec));
  CHECK(first == serial);

  spec.master_seed = 6;  // the seed must matter
  CHECK(csv_of(run_grid(spec)) != first);
}

TEST_CASE("relaxed metric counts subset recommendations as successes") {
  ExperimentSpec spec = base_spec();
  spec.instance = "exp:6";
  spec.algorithms = {"ege-sr-k:3"};
  spec.metric = Metric::PsiKLoss;
  spec.k = 3;
  spec.budgets = {2000};
  const auto rows = run_grid(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].failures == 0);
  CHECK(rows[0].mean_tau == doctest::Approx(3.0));  // noise-free stop at k
  CHECK(rows[0].mean_samples < 2000);

  spec.k.reset();
  CHECK_THROWS_AS(run_grid(spec), std::invalid_argument);
}

TEST_CASE("moderate noise on the three-arm instance stays under 1% error") {
  const MeanMatrix t{3, 2, {1.0, 0.2, 0.2, 1.0, 0.5, 0.1}};
  const std::string path = "/tmp/psi_harness_i3.csv";
  save_instance(BanditInstance{t, 0.3}, path);

  ExperimentSpec spec;
  spec.instance = path;
  spec.algorithms = {"ege-sr"};
  spec.budgets = {2000};
  spec.trials = 1000;
  spec.master_seed = 3;
  spec.threads = 2;
  const auto rows = run_grid(spec);
  CHECK(rows[0].error_rate < 0.01);
  std::remove(path.c_str());
}

TEST_CASE("failed cells are reported and the grid continues") {
  ExperimentSpec spec = base_spec();
  spec.instance = "exp:6";                 // K = 10
  spec.algorithms = {"ege-sh", "uniform"};  // halving gets zero pulls at T = 10
  spec.budgets = {10};
  const auto rows = run_grid(spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].failed);
  CHECK(!rows[1].failed);
  CHECK(rows[1].error_rate == 0.0);
}

TEST_CASE("oracle scaling beyond the guarantee is flagged") {
  ExperimentSpec spec = base_spec();
  spec.algorithms = {"ape-fb:oracle*10", "ape-fb:oracle"};
  const auto rows = run_grid(spec);
  CHECK(rows[0].note == "a exceeds the guarantee range");
  CHECK(rows[1].note.empty());
}

TEST_CASE("csv column order is pinned") {
  const std::string golden =
      "algorithm,T,trials,failures,error_rate,log10_error,mean_tau,"
      "mean_samples,mean_hv_fraction,note\n";
  CHECK(csv_of({}) == golden);
}

TEST_CASE("csv values round-trip at full precision") {
  ExperimentSpec spec = base_spec();
  spec.sigma = 0.37;
  spec.trials = 33;
  const auto rows = run_grid(spec);
  const std::string csv = csv_of(rows);

  std::istringstream in{csv};
  std::string line;
  std::getline(in, line);  // header
  std::getline(in, line);
  std::stringstream row{line};
  std::string cell;
  std::getline(row, cell, ',');
  CHECK(cell == "ege-sr");
  std::getline(row, cell, ',');
  CHECK(std::stoll(cell) == rows[0].T);
  std::getline(row, cell, ',');
  std::getline(row, cell, ',');
  std::getline(row, cell, ',');
  CHECK(std::stod(cell) == rows[0].error_rate);  // 17 digits are lossless
  std::getline(row, cell, ',');
  CHECK(std::stod(cell) == rows[0].log10_error);
}

TEST_CASE("judging a single trial") {
  const MeanMatrix t{3, 2, {1.0, 0.2, 0.2, 1.0, 0.5, 0.1}};
  TrialRecord rec;
  rec.recommended = {0, 1};
  rec.rounds_used = 2;
  rec.samples_used = 60;
  const auto j =
      judge_trial(rec, t, Metric::Error, std::nullopt, std::nullopt);
  CHECK(j.loss == 0);
  CHECK(j.samples == 60);

  rec.recommended = {0};
  CHECK(judge_trial(rec, t, Metric::Error, std::nullopt, std::nullopt).loss ==
        1);
  CHECK(judge_trial(rec, t, Metric::PsiKLoss, 1, std::nullopt).loss == 0);

  const std::vector<double> ref{0.0, 0.0};
  const auto withhv = judge_trial(rec, t, Metric::Error, std::nullopt,
                                  std::optional<std::vector<double>>{ref});
  CHECK(withhv.hv == doctest::Approx(0.2 / 0.36).epsilon(1e-12));
}

TEST_CASE("default budget grids stay within their stated range") {
  const BanditInstance inst = gen_experiment(8, 0);
  const std::vector<AlgoSpec> algos{parse_algo("ege-sr"), parse_algo("uniform")};
  const auto grid = default_budgets(inst, algos, true);
  REQUIRE(!grid.empty());
  CHECK(grid.front() >= 5);
  CHECK(grid.back() ==
        static_cast<long long>(std::ceil(complexity_profile(inst.means).h1)));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}
