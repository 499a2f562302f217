#pragma once

#include "saacert/bounds.hpp"
#include "saacert/saa.hpp"

#include <string>

namespace saacert {

// A bound family attached to an experiment, evaluated at each epsilon row.
struct BoundRequest {
  std::string family; // vc-tail | chain-binomial-tail | chain-chernoff-tail |
                      // gamma-tail-trp | finite-direct-tail
  double d = 0.0;                   // vc-tail
  std::uint64_t m = 1;              // chain-* order
  std::uint64_t n = 0;              // gamma-tail-trp dimension; 0 = problem n
  std::uint64_t infeasible_count = 0; // finite-direct-tail
};

struct MonteCarloViolation {
  std::size_t m_draws = 10000;
};
struct ExactTrpViolation {};
using ViolationMode = std::variant<ExactTrpViolation, MonteCarloViolation>;

struct ExperimentConfig {
  TwoStageProblem problem;
  std::size_t n_samples = 1; // N per replication
  Vector epsilons;           // strictly increasing, in (0,1)
  std::size_t replications = 1;
  ViolationMode violation_mode = ExactTrpViolation{};
  std::uint64_t seed = 0;
  std::vector<BoundRequest> bounds_requested;
};

struct ReportRow {
  double epsilon = 0.0;
  double empirical_prob = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::vector<std::pair<std::string, BoundValue>> bounds; // order = requests
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::size_t n_samples = 0;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  std::size_t problem_dim = 0;
  std::string violation_mode;
  double runtime_seconds = 0.0;
  std::vector<double> violations; // V(x*_r) per replication, in order
};

// R replicated SAA runs with derived seeds; empirical P^N(V > eps) with
// Wilson intervals, plus each requested bound per epsilon. Deterministic
// for a fixed config regardless of SAA_CERTIFY_THREADS.
ExperimentReport run_experiment(const ExperimentConfig &config);

struct TrpGridCell {
  std::uint64_t n = 0;
  std::uint64_t n_samples = 0;
  double epsilon = 0.0;
  double log_lhs = 0.0;
  double log_rhs = 0.0;
  double margin = 0.0; // ln(rhs) - ln(lhs)
  bool holds = false;
};

struct AppendixVerification {
  bool all_hold = false;
  double worst_margin = 0.0;
  std::vector<TrpGridCell> rows;
};

struct TrpGrid {
  std::vector<std::uint64_t> n_values;
  std::vector<std::uint64_t> sample_sizes;
  std::vector<double> eps_values;
};

// Full Cartesian sweep of trp_inequality_check.
AppendixVerification verify_appendix(const TrpGrid &grid);

// Default acceptance-style grid: n 1..n_max, `sample_points` log-spaced
// sample sizes in [1, sample_max], `eps_points` equispaced in [0.01, 0.9].
TrpGrid default_trp_grid(std::uint64_t n_max = 20, std::uint64_t sample_max = 1000000,
                         std::size_t sample_points = 30, std::size_t eps_points = 20);

struct ComparisonRow {
  double epsilon = 0.0;
  double empirical = 0.0;
  std::string bound_id;
  double bound_value = 0.0;
  bool vacuous = false;
  double tightness = 0.0; // bound / max(empirical, 1/R); 0 when vacuous
};

std::vector<ComparisonRow> compare_bounds(const ExperimentReport &report);

} // namespace saacert
