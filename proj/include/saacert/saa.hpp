#pragma once

#include "saacert/matrix.hpp"
#include "saacert/simplex.hpp"

#include <cstdint>
#include <variant>

namespace saacert {

// One realization of second-stage data: W y + T x = h, y >= 0, cost q^T y.
struct Scenario {
  DenseMatrix w; // m1 x n1
  DenseMatrix t; // m1 x n
  Vector h;      // m1
  Vector q;      // n1
};

struct FiniteSupport {
  std::vector<Scenario> scenarios;
  Vector weights; // sum to 1 within 1e-12
};

// Two-stage resource planning: demands xi uniform on [0,1]^n, recourse
// y <= x - xi encoded as y + s = x - xi with slack s >= 0, so W = [I | I],
// T = -I, h = -xi, recourse cost [q; 0].
struct TrpGenerator {
  std::size_t n = 1;
  Vector c; // first-stage cost, > 0 componentwise
  Vector q; // recourse cost, > 0 componentwise
};

struct UniformEntryGenerator {
  std::size_t m1 = 1; // recourse rows
  std::size_t n1 = 1; // recourse columns
  std::size_t n = 1;  // first-stage dimension
  double lo = 0.0;
  double hi = 1.0;
};

using ScenarioSource = std::variant<FiniteSupport, TrpGenerator, UniformEntryGenerator>;

struct FirstStageSystem {
  DenseMatrix a; // rows x n, meaning A x <= b
  Vector b;
  bool x_nonneg = true;
};

struct TwoStageProblem {
  std::size_t n = 1;
  Vector c;
  FirstStageSystem first_stage;
  ScenarioSource source;
};

struct SaaSolution {
  Vector x;
  double objective = 0.0;
  LpStatus status = LpStatus::Optimal;
  std::uint64_t sample_fingerprint = 0;
};

struct SaaInfeasibleError : std::runtime_error {
  std::size_t blocking_scenario;
  explicit SaaInfeasibleError(std::size_t idx)
      : std::runtime_error("SAA deterministic equivalent infeasible"),
        blocking_scenario(idx) {}
};

struct SaaUnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Standard-form block LP with the index maps needed to test the block
// structure and recover x.
struct DeterministicEquivalent {
  Vector c;
  DenseMatrix a;
  Vector b;
  std::size_t x_offset = 0;       // x (or x+) columns start here
  std::size_t x_minus_offset = 0; // valid iff split_x
  bool split_x = false;           // x unrestricted, split x = x+ - x-
  std::vector<std::size_t> recourse_offsets; // y_i column starts
  std::vector<std::size_t> recourse_rows;    // scenario row-block starts
};

std::vector<Scenario> draw_scenarios(const ScenarioSource &source, std::size_t count,
                                     std::uint64_t seed);

// Raw uniform demand vectors for the TRP family. draw_scenarios consumes the
// same stream, so the analytic and simplex paths see identical samples.
std::vector<Vector> draw_trp_samples(std::size_t n, std::size_t count,
                                     std::uint64_t seed);

DeterministicEquivalent build_deterministic_equivalent(
    const TwoStageProblem &problem, const std::vector<Scenario> &scenarios);

SaaSolution solve_saa(const TwoStageProblem &problem,
                      const std::vector<Scenario> &scenarios);

// Closed form for the TRP family: componentwise maximum of the samples.
Vector solve_trp_analytic(const std::vector<Vector> &samples);

// V(x) = 1 - prod x_i for uniform demands on [0,1]^n.
double violation_exact_trp(const Vector &x);

struct ViolationEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  double ci_lo = 0.0; // Wilson score, 95%
  double ci_hi = 0.0;
};

ViolationEstimate violation_monte_carlo(const TwoStageProblem &problem,
                                        const Vector &x, std::size_t m_draws,
                                        std::uint64_t seed);

// Wilson 95% score interval for k successes out of n trials.
void wilson_interval(std::size_t k, std::size_t n, double &lo, double &hi);

std::uint64_t fingerprint_scenarios(const std::vector<Scenario> &scenarios);

// Convenience: a TwoStageProblem wrapping TrpGenerator(n, c, q).
TwoStageProblem make_trp_problem(std::size_t n, Vector c, Vector q);

} // namespace saacert
