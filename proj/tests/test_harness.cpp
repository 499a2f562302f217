#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "saacert/bounds.hpp"
#include "saacert/harness.hpp"

#include <cmath>
#include <cstdlib>

using namespace saacert;

namespace {

ExperimentConfig small_trp_config() {
  ExperimentConfig cfg;
  cfg.problem = make_trp_problem(2, {1.0, 1.0}, {3.0, 3.0});
  cfg.n_samples = 15;
  cfg.epsilons = {0.1, 0.3, 0.5, 0.7};
  cfg.replications = 400;
  cfg.violation_mode = ExactTrpViolation{};
  cfg.seed = 2024;
  cfg.bounds_requested = {{"gamma-tail-trp", 0.0, 1, 0, 0},
                          {"vc-tail", 9.5, 1, 0, 0}};
  return cfg;
}

bool reports_equal(const ExperimentReport &a, const ExperimentReport &b) {
  if (a.violations != b.violations) return false;
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].empirical_prob != b.rows[i].empirical_prob) return false;
    if (a.rows[i].ci_lo != b.rows[i].ci_lo || a.rows[i].ci_hi != b.rows[i].ci_hi)
      return false;
    if (a.rows[i].bounds.size() != b.rows[i].bounds.size()) return false;
    for (std::size_t k = 0; k < a.rows[i].bounds.size(); ++k)
      if (a.rows[i].bounds[k].second.value != b.rows[i].bounds[k].second.value)
        return false;
  }
  return true;
}

} // namespace

TEST_CASE("run_experiment is deterministic across thread counts") {
  ExperimentConfig cfg = small_trp_config();
  setenv("SAA_CERTIFY_THREADS", "1", 1);
  ExperimentReport serial = run_experiment(cfg);
  setenv("SAA_CERTIFY_THREADS", "4", 1);
  ExperimentReport parallel = run_experiment(cfg);
  unsetenv("SAA_CERTIFY_THREADS");
  ExperimentReport defaulted = run_experiment(cfg);
  CHECK(reports_equal(serial, parallel));
  CHECK(reports_equal(serial, defaulted));
}

TEST_CASE("empirical probabilities are non-increasing in epsilon") {
  ExperimentReport rep = run_experiment(small_trp_config());
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    CHECK(rep.rows[i].empirical_prob <= rep.rows[i - 1].empirical_prob);
}

TEST_CASE("closed form never exceeds the VC bound in any report row") {
  ExperimentReport rep = run_experiment(small_trp_config());
  for (const ReportRow &row : rep.rows) {
    double gamma = row.bounds[0].second.value;
    double vc = row.bounds[1].second.value;
    CHECK(gamma <= vc + 1e-12);
  }
}

TEST_CASE("epsilon grid validation") {
  ExperimentConfig cfg = small_trp_config();
  cfg.epsilons = {0.5, 0.3};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg.epsilons = {0.0, 0.5};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg.epsilons = {};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("exact violation mode requires a TRP source") {
  ExperimentConfig cfg = small_trp_config();
  cfg.problem.source = UniformEntryGenerator{2, 3, 2, -1.0, 1.0};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("monte-carlo mode runs end to end on TRP") {
  ExperimentConfig cfg = small_trp_config();
  cfg.replications = 30;
  cfg.violation_mode = MonteCarloViolation{500};
  ExperimentReport rep = run_experiment(cfg);
  CHECK(rep.violation_mode == "monte-carlo");
  CHECK(rep.violations.size() == 30);
  for (double v : rep.violations) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("exact TRP violations track the gamma tail (DKW 99% band)") {
  ExperimentConfig cfg;
  cfg.problem = make_trp_problem(3, {1.0, 1.0, 1.0}, {2.0, 2.0, 2.0});
  cfg.n_samples = 25;
  cfg.epsilons.clear();
  for (int i = 1; i <= 19; ++i) cfg.epsilons.push_back(0.05 * i);
  cfg.replications = 20000;
  cfg.violation_mode = ExactTrpViolation{};
  cfg.seed = 314159;
  ExperimentReport rep = run_experiment(cfg);
  const double band =
      std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(cfg.replications)));
  for (const ReportRow &row : rep.rows) {
    double predicted = gamma_tail_trp(3, 25, row.epsilon);
    CHECK(std::fabs(row.empirical_prob - predicted) <= band);
  }
}

TEST_CASE("default_trp_grid shape") {
  TrpGrid g = default_trp_grid(20, 1000000, 30, 20);
  CHECK(g.n_values.size() == 20);
  CHECK(g.sample_sizes.size() == 30);
  CHECK(g.eps_values.size() == 20);
  CHECK(g.sample_sizes.front() == 1);
  CHECK(g.sample_sizes.back() == 1000000);
  CHECK(g.eps_values.front() == doctest::Approx(0.01));
  CHECK(g.eps_values.back() == doctest::Approx(0.9));
}

TEST_CASE("verify_appendix holds on a small grid with positive margins") {
  TrpGrid g = default_trp_grid(5, 1000, 8, 6);
  AppendixVerification v = verify_appendix(g);
  CHECK(v.all_hold);
  CHECK(v.worst_margin > 0.0);
  CHECK(v.rows.size() == 5 * 8 * 6);
  for (const TrpGridCell &cell : v.rows) CHECK(cell.holds);
}

TEST_CASE("compare_bounds flags vacuous bounds with zero tightness") {
  ExperimentConfig cfg = small_trp_config();
  cfg.bounds_requested.push_back({"vc-tail", 500.0, 1, 0, 0}); // hugely vacuous
  ExperimentReport rep = run_experiment(cfg);
  auto table = compare_bounds(rep);
  bool saw_vacuous = false, saw_tight = false;
  for (const ComparisonRow &row : table) {
    if (row.vacuous) {
      CHECK(row.tightness == 0.0);
      saw_vacuous = true;
    } else {
      CHECK(row.tightness > 0.0);
      saw_tight = true;
    }
  }
  CHECK(saw_vacuous);
  CHECK(saw_tight);
}

TEST_CASE("unknown bound family is rejected") {
  ExperimentConfig cfg = small_trp_config();
  cfg.bounds_requested = {{"no-such-family", 0.0, 1, 0, 0}};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}
