#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "saacert/rng.hpp"
#include "saacert/saa.hpp"

#include <cmath>

using namespace saacert;

namespace {

double max_abs_diff(const Vector &a, const Vector &b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

} // namespace

TEST_CASE("draw_trp_samples is deterministic in the seed") {
  auto a = draw_trp_samples(3, 10, 42);
  auto b = draw_trp_samples(3, 10, 42);
  auto c = draw_trp_samples(3, 10, 43);
  REQUIRE(a.size() == 10);
  CHECK(a == b);
  CHECK(a != c);
  for (const Vector &s : a) {
    REQUIRE(s.size() == 3);
    for (double v : s) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }
}

TEST_CASE("TRP scenario encoding: W=[I|I], T=-I, h=-xi") {
  TwoStageProblem p = make_trp_problem(2, {1.0, 1.0}, {2.0, 2.0});
  auto scenarios = draw_scenarios(p.source, 4, 7);
  auto samples = draw_trp_samples(2, 4, 7);
  REQUIRE(scenarios.size() == 4);
  for (std::size_t s = 0; s < 4; ++s) {
    const Scenario &sc = scenarios[s];
    REQUIRE(sc.w.rows() == 2);
    REQUIRE(sc.w.cols() == 4);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(sc.w(i, j) == (i == j ? 1.0 : 0.0));
        CHECK(sc.w(i, 2 + j) == (i == j ? 1.0 : 0.0));
        CHECK(sc.t(i, j) == (i == j ? -1.0 : 0.0));
      }
      CHECK(sc.h[i] == -samples[s][i]);
      CHECK(sc.q[i] == 2.0);
      CHECK(sc.q[2 + i] == 0.0);
    }
  }
}

TEST_CASE("solve_trp_analytic is the componentwise maximum") {
  Vector x = solve_trp_analytic({{0.2, 0.9}, {0.5, 0.1}, {0.4, 0.3}});
  CHECK(x[0] == 0.5);
  CHECK(x[1] == 0.9);
  CHECK_THROWS_AS(solve_trp_analytic({{1.5, 0.2}}), std::invalid_argument);
  CHECK_THROWS_AS(solve_trp_analytic({}), std::invalid_argument);
}

TEST_CASE("violation_exact_trp") {
  CHECK(violation_exact_trp({0.5, 0.5}) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(violation_exact_trp({1.0, 1.0, 1.0}) == doctest::Approx(0.0));
}

TEST_CASE("analytic and simplex TRP solutions agree") {
  SplitMix64 rng(1234);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 1 + rng.next_u64() % 3;
    Vector c(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = 0.1 + rng.next_double();
      q[i] = c[i] + 0.5 + rng.next_double(); // recourse dearer than capacity
    }
    TwoStageProblem p = make_trp_problem(n, c, q);
    std::uint64_t seed = rng.next_u64();
    std::size_t big_n = 2 + rng.next_u64() % 8;
    Vector analytic = solve_trp_analytic(draw_trp_samples(n, big_n, seed));
    SaaSolution sol = solve_saa(p, draw_scenarios(p.source, big_n, seed));
    CHECK(sol.status == LpStatus::Optimal);
    CHECK(max_abs_diff(sol.x, analytic) <= 1e-7);
  }
}

TEST_CASE("deterministic equivalent block structure and objective split") {
  TwoStageProblem p = make_trp_problem(2, {1.0, 3.0}, {4.0, 5.0});
  auto scenarios = draw_scenarios(p.source, 3, 11);
  DeterministicEquivalent de = build_deterministic_equivalent(p, scenarios);
  CHECK_FALSE(de.split_x);
  REQUIRE(de.recourse_offsets.size() == 3);
  REQUIRE(de.recourse_rows.size() == 3);

  SaaSolution sol = solve_saa(p, scenarios);
  LpOutcome lp = lp_solve(de.c, de.a, de.b);
  REQUIRE(lp.status == LpStatus::Optimal);
  // Objective decomposes as c'x + (1/N) sum_i q'y_i.
  double first = dot(p.c, sol.x);
  double recourse = 0.0;
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t j = 0; j < scenarios[s].q.size(); ++j)
      recourse += scenarios[s].q[j] * lp.x[de.recourse_offsets[s] + j] / 3.0;
  CHECK(sol.objective == doctest::Approx(first + recourse).epsilon(1e-7));
}

TEST_CASE("solve_saa is reproducible: same seed, same fingerprint and x") {
  TwoStageProblem p = make_trp_problem(2, {1.0, 1.0}, {3.0, 3.0});
  SaaSolution a = solve_saa(p, draw_scenarios(p.source, 20, 99));
  SaaSolution b = solve_saa(p, draw_scenarios(p.source, 20, 99));
  CHECK(a.sample_fingerprint == b.sample_fingerprint);
  CHECK(a.x == b.x);
  SaaSolution c = solve_saa(p, draw_scenarios(p.source, 20, 100));
  CHECK(a.sample_fingerprint != c.sample_fingerprint);
}

TEST_CASE("finite support sampling draws from the listed scenarios") {
  Scenario s1{DenseMatrix(1, 1, {1.0}), DenseMatrix(1, 1, {0.0}), {1.0}, {1.0}};
  Scenario s2{DenseMatrix(1, 1, {1.0}), DenseMatrix(1, 1, {0.0}), {2.0}, {1.0}};
  FiniteSupport fs{{s1, s2}, {0.25, 0.75}};
  auto draws = draw_scenarios(fs, 200, 5);
  REQUIRE(draws.size() == 200);
  std::size_t count2 = 0;
  for (const Scenario &d : draws) {
    REQUIRE((d.h[0] == 1.0 || d.h[0] == 2.0));
    if (d.h[0] == 2.0) ++count2;
  }
  // 0.75 +- 5 sigma at 200 draws.
  CHECK(count2 > 200 * 0.75 - 5 * std::sqrt(200 * 0.75 * 0.25));
  CHECK(count2 < 200 * 0.75 + 5 * std::sqrt(200 * 0.75 * 0.25));
}

TEST_CASE("infeasible SAA reports the blocking scenario") {
  // First stage forces x <= 0.5 but a scenario demands x >= xi with xi near 1;
  // y + s = x - xi with y,s >= 0 is then infeasible.
  TwoStageProblem p;
  p.n = 1;
  p.c = {1.0};
  p.first_stage.a = DenseMatrix(1, 1, {1.0});
  p.first_stage.b = {0.5};
  p.first_stage.x_nonneg = true;
  Scenario hard;
  hard.w = DenseMatrix(1, 2, {1.0, 1.0});
  hard.t = DenseMatrix(1, 1, {-1.0});
  hard.h = {-0.9}; // xi = 0.9 > 0.5
  hard.q = {1.0, 0.0};
  p.source = FiniteSupport{{hard}, {1.0}};
  CHECK_THROWS_AS(solve_saa(p, {hard}), SaaInfeasibleError);
}

TEST_CASE("violation_monte_carlo brackets the exact TRP violation") {
  TwoStageProblem p = make_trp_problem(2, {1.0, 1.0}, {3.0, 3.0});
  Vector x = {0.8, 0.7};
  double exact = violation_exact_trp(x); // 1 - 0.56 = 0.44
  ViolationEstimate est = violation_monte_carlo(p, x, 20000, 31);
  CHECK(est.ci_lo <= exact);
  CHECK(est.ci_hi >= exact);
  CHECK(std::fabs(est.estimate - exact) < 5.0 * est.stderr_ + 1e-9);
  // Same seed, same estimate.
  ViolationEstimate again = violation_monte_carlo(p, x, 20000, 31);
  CHECK(est.estimate == again.estimate);
}

TEST_CASE("wilson_interval sanity") {
  double lo, hi;
  wilson_interval(0, 100, lo, hi);
  CHECK(lo <= 1e-12);
  CHECK(hi > 0.0);
  wilson_interval(100, 100, lo, hi);
  CHECK(hi >= 1.0 - 1e-12);
  CHECK(lo < 1.0);
  wilson_interval(50, 100, lo, hi);
  CHECK(lo < 0.5);
  CHECK(hi > 0.5);
  CHECK(hi - lo < 0.25);
}

TEST_CASE("fingerprint distinguishes scenario sets") {
  TwoStageProblem p = make_trp_problem(2, {1.0, 1.0}, {3.0, 3.0});
  auto a = draw_scenarios(p.source, 5, 1);
  auto b = draw_scenarios(p.source, 5, 2);
  CHECK(fingerprint_scenarios(a) == fingerprint_scenarios(a));
  CHECK(fingerprint_scenarios(a) != fingerprint_scenarios(b));
}
