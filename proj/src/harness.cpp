#include "saacert/harness.hpp"

#include "saacert/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace saacert {

namespace {

std::size_t thread_budget() {
  if (const char *env = std::getenv("SAA_CERTIFY_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

BoundValue evaluate_bound(const BoundRequest &req, std::size_t n_samples,
                          std::size_t problem_dim, double epsilon) {
  if (req.family == "vc-tail") return vc_tail(n_samples, req.d, epsilon);
  if (req.family == "chain-binomial-tail") {
    BoundValue b;
    b.value = chain_binomial_tail(n_samples, req.m, epsilon);
    return b;
  }
  if (req.family == "chain-chernoff-tail")
    return chain_chernoff_tail(n_samples, req.m, epsilon);
  if (req.family == "gamma-tail-trp") {
    BoundValue b;
    std::uint64_t n = req.n == 0 ? problem_dim : req.n;
    b.value = gamma_tail_trp(n, n_samples, epsilon);
    return b;
  }
  if (req.family == "finite-direct-tail") {
    FiniteDirectQuery q;
    q.infeasible_count = req.infeasible_count;
    q.eta = epsilon;
    q.n_samples = n_samples;
    return finite_direct_tail(q);
  }
  throw std::invalid_argument("unknown bound family: " + req.family);
}

double replicate_violation(const ExperimentConfig &cfg, std::size_t r) {
  const std::uint64_t sample_seed = derive_seed(cfg.seed, r, 0);
  if (std::holds_alternative<ExactTrpViolation>(cfg.violation_mode)) {
    const auto *trp = std::get_if<TrpGenerator>(&cfg.problem.source);
    if (trp == nullptr)
      throw std::invalid_argument("exact violation mode requires a TRP source");
    Vector x = solve_trp_analytic(draw_trp_samples(trp->n, cfg.n_samples, sample_seed));
    return violation_exact_trp(x);
  }
  const auto &mc = std::get<MonteCarloViolation>(cfg.violation_mode);
  std::vector<Scenario> scenarios =
      draw_scenarios(cfg.problem.source, cfg.n_samples, sample_seed);
  SaaSolution sol = solve_saa(cfg.problem, scenarios);
  return violation_monte_carlo(cfg.problem, sol.x, mc.m_draws,
                               derive_seed(cfg.seed, r, 1))
      .estimate;
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig &cfg) {
  if (cfg.replications < 1 || cfg.n_samples < 1)
    throw std::invalid_argument("run_experiment: N and R must be >= 1");
  if (cfg.epsilons.empty())
    throw std::invalid_argument("run_experiment: epsilons must be nonempty");
  for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
    if (!(cfg.epsilons[i] > 0.0 && cfg.epsilons[i] < 1.0))
      throw std::invalid_argument("run_experiment: epsilon outside (0,1)");
    if (i > 0 && !(cfg.epsilons[i] > cfg.epsilons[i - 1]))
      throw std::invalid_argument("run_experiment: epsilons must be increasing");
  }

  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t r_total = cfg.replications;
  std::vector<double> violations(r_total);

  // Replications are independent given derived seeds; each slot is written
  // exactly once, so the result does not depend on the thread count.
  const std::size_t workers = std::min(thread_budget(), r_total);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  if (workers <= 1) {
    for (std::size_t r = 0; r < r_total; ++r)
      violations[r] = replicate_violation(cfg, r);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t wi = 0; wi < workers; ++wi) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t r = next.fetch_add(1);
          if (r >= r_total) return;
          try {
            violations[r] = replicate_violation(cfg, r);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto &t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentReport rep;
  rep.n_samples = cfg.n_samples;
  rep.replications = r_total;
  rep.seed = cfg.seed;
  rep.problem_dim = cfg.problem.n;
  rep.violation_mode = std::holds_alternative<ExactTrpViolation>(cfg.violation_mode)
                           ? "exact-trp"
                           : "monte-carlo";
  rep.violations = violations;

  for (double eps : cfg.epsilons) {
    ReportRow row;
    row.epsilon = eps;
    std::size_t count = 0;
    for (double v : violations)
      if (v > eps) ++count;
    row.empirical_prob = static_cast<double>(count) / static_cast<double>(r_total);
    wilson_interval(count, r_total, row.ci_lo, row.ci_hi);
    for (const BoundRequest &req : cfg.bounds_requested)
      row.bounds.emplace_back(req.family,
                              evaluate_bound(req, cfg.n_samples, cfg.problem.n, eps));
    rep.rows.push_back(std::move(row));
  }

  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

TrpGrid default_trp_grid(std::uint64_t n_max, std::uint64_t sample_max,
                         std::size_t sample_points, std::size_t eps_points) {
  TrpGrid g;
  for (std::uint64_t n = 1; n <= n_max; ++n) g.n_values.push_back(n);
  for (std::size_t i = 0; i < sample_points; ++i) {
    double t = sample_points == 1
                   ? 0.0
                   : static_cast<double>(i) / static_cast<double>(sample_points - 1);
    auto v = static_cast<std::uint64_t>(
        std::llround(std::pow(static_cast<double>(sample_max), t)));
    g.sample_sizes.push_back(std::max<std::uint64_t>(v, 1));
  }
  g.sample_sizes.erase(std::unique(g.sample_sizes.begin(), g.sample_sizes.end()),
                       g.sample_sizes.end());
  for (std::size_t i = 0; i < eps_points; ++i) {
    double t = eps_points == 1
                   ? 0.0
                   : static_cast<double>(i) / static_cast<double>(eps_points - 1);
    g.eps_values.push_back(0.01 + t * (0.9 - 0.01));
  }
  return g;
}

AppendixVerification verify_appendix(const TrpGrid &grid) {
  if (grid.n_values.empty() || grid.sample_sizes.empty() || grid.eps_values.empty())
    throw std::invalid_argument("verify_appendix: empty grid");
  AppendixVerification out;
  out.all_hold = true;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t n : grid.n_values) {
    for (std::uint64_t ns : grid.sample_sizes) {
      for (double eps : grid.eps_values) {
        TrpInequalityResult r = trp_inequality_check(n, ns, eps);
        TrpGridCell cell;
        cell.n = n;
        cell.n_samples = ns;
        cell.epsilon = eps;
        cell.log_lhs = r.log_lhs;
        cell.log_rhs = r.log_rhs;
        cell.margin = r.log_rhs - r.log_lhs;
        cell.holds = r.holds;
        out.all_hold = out.all_hold && r.holds;
        out.worst_margin = std::min(out.worst_margin, cell.margin);
        out.rows.push_back(cell);
      }
    }
  }
  return out;
}

std::vector<ComparisonRow> compare_bounds(const ExperimentReport &report) {
  if (report.rows.empty() || report.rows.front().bounds.empty())
    throw std::invalid_argument("compare_bounds: report has no bounds attached");
  std::vector<ComparisonRow> table;
  const double floor_p = 1.0 / static_cast<double>(report.replications);
  for (const ReportRow &row : report.rows) {
    for (const auto &[id, bound] : row.bounds) {
      ComparisonRow c;
      c.epsilon = row.epsilon;
      c.empirical = row.empirical_prob;
      c.bound_id = id;
      c.bound_value = bound.value;
      c.vacuous = bound.vacuous || bound.value > 1.0;
      c.tightness =
          c.vacuous ? 0.0 : bound.value / std::max(row.empirical_prob, floor_p);
      table.push_back(std::move(c));
    }
  }
  return table;
}

} // namespace saacert
