#include "saacert/saa.hpp"

#include "saacert/rays.hpp"
#include "saacert/rng.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <unordered_map>

namespace saacert {

namespace {

Scenario trp_scenario(const Vector &xi, const Vector &q) {
  const std::size_t n = xi.size();
  Scenario s;
  s.w = DenseMatrix(n, 2 * n);
  s.t = DenseMatrix(n, n);
  s.h.assign(n, 0.0);
  s.q.assign(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    s.w(i, i) = 1.0;     // y_i
    s.w(i, n + i) = 1.0; // slack
    s.t(i, i) = -1.0;
    s.h[i] = -xi[i];
    s.q[i] = q[i];
  }
  return s;
}

void validate_source(const ScenarioSource &source) {
  if (const auto *fs = std::get_if<FiniteSupport>(&source)) {
    if (fs->scenarios.empty() || fs->scenarios.size() != fs->weights.size())
      throw std::invalid_argument("FiniteSupport: scenarios/weights mismatch");
    double sum = 0.0;
    for (double w : fs->weights) {
      if (w < 0.0) throw std::invalid_argument("FiniteSupport: negative weight");
      sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("FiniteSupport: weights must sum to 1");
  } else if (const auto *trp = std::get_if<TrpGenerator>(&source)) {
    if (trp->n < 1 || trp->c.size() != trp->n || trp->q.size() != trp->n)
      throw std::invalid_argument("TrpGenerator: dimension mismatch");
    for (double v : trp->c)
      if (!(v > 0.0)) throw std::invalid_argument("TrpGenerator: c must be > 0");
    for (double v : trp->q)
      if (!(v > 0.0)) throw std::invalid_argument("TrpGenerator: q must be > 0");
  } else {
    const auto &u = std::get<UniformEntryGenerator>(source);
    if (u.m1 < 1 || u.n1 < 1 || u.n < 1 || !(u.lo <= u.hi))
      throw std::invalid_argument("UniformEntryGenerator: invalid template");
  }
}

} // namespace

std::vector<Scenario> draw_scenarios(const ScenarioSource &source, std::size_t count,
                                     std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("draw_scenarios: count must be >= 1");
  validate_source(source);
  SplitMix64 rng(seed);
  std::vector<Scenario> out;
  out.reserve(count);

  if (const auto *fs = std::get_if<FiniteSupport>(&source)) {
    for (std::size_t i = 0; i < count; ++i) {
      double u = rng.next_double();
      double cum = 0.0;
      std::size_t pick = fs->scenarios.size() - 1;
      for (std::size_t k = 0; k < fs->weights.size(); ++k) {
        cum += fs->weights[k];
        if (u < cum) {
          pick = k;
          break;
        }
      }
      out.push_back(fs->scenarios[pick]);
    }
  } else if (const auto *trp = std::get_if<TrpGenerator>(&source)) {
    for (const Vector &xi : draw_trp_samples(trp->n, count, seed))
      out.push_back(trp_scenario(xi, trp->q));
  } else {
    const auto &u = std::get<UniformEntryGenerator>(source);
    auto draw = [&] { return u.lo + (u.hi - u.lo) * rng.next_double(); };
    for (std::size_t i = 0; i < count; ++i) {
      Scenario s;
      s.w = DenseMatrix(u.m1, u.n1);
      s.t = DenseMatrix(u.m1, u.n);
      s.h.assign(u.m1, 0.0);
      s.q.assign(u.n1, 0.0);
      for (double &v : s.w.data()) v = draw();
      for (double &v : s.t.data()) v = draw();
      for (double &v : s.h) v = draw();
      for (double &v : s.q) v = draw();
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<Vector> draw_trp_samples(std::size_t n, std::size_t count,
                                     std::uint64_t seed) {
  if (n < 1 || count < 1)
    throw std::invalid_argument("draw_trp_samples: n and count must be >= 1");
  SplitMix64 rng(seed);
  std::vector<Vector> out(count, Vector(n));
  for (Vector &xi : out)
    for (double &v : xi) v = rng.next_double();
  return out;
}

DeterministicEquivalent build_deterministic_equivalent(
    const TwoStageProblem &problem, const std::vector<Scenario> &scenarios) {
  if (scenarios.empty())
    throw std::invalid_argument("build_deterministic_equivalent: no scenarios");
  const std::size_t n = problem.n;
  if (problem.c.size() != n)
    throw std::invalid_argument("build_deterministic_equivalent: cost size");
  const std::size_t fs_rows = problem.first_stage.a.rows();
  if (fs_rows > 0 && problem.first_stage.a.cols() != n)
    throw std::invalid_argument("build_deterministic_equivalent: A cols != n");

  DeterministicEquivalent de;
  de.split_x = !problem.first_stage.x_nonneg;
  de.x_offset = 0;
  std::size_t ncols = n;
  if (de.split_x) {
    de.x_minus_offset = n;
    ncols = 2 * n;
  }
  const std::size_t slack_offset = ncols;
  ncols += fs_rows;
  for (const Scenario &s : scenarios) {
    if (s.t.cols() != n || s.w.rows() != s.t.rows() || s.h.size() != s.w.rows() ||
        s.q.size() != s.w.cols())
      throw std::invalid_argument("build_deterministic_equivalent: scenario dims");
    de.recourse_offsets.push_back(ncols);
    ncols += s.w.cols();
  }

  std::size_t nrows = fs_rows;
  for (const Scenario &s : scenarios) {
    de.recourse_rows.push_back(nrows);
    nrows += s.w.rows();
  }

  de.c.assign(ncols, 0.0);
  de.a = DenseMatrix(nrows, ncols);
  de.b.assign(nrows, 0.0);

  const double inv_n = 1.0 / static_cast<double>(scenarios.size());
  for (std::size_t j = 0; j < n; ++j) {
    de.c[de.x_offset + j] = problem.c[j];
    if (de.split_x) de.c[de.x_minus_offset + j] = -problem.c[j];
  }
  for (std::size_t i = 0; i < scenarios.size(); ++i)
    for (std::size_t j = 0; j < scenarios[i].q.size(); ++j)
      de.c[de.recourse_offsets[i] + j] = inv_n * scenarios[i].q[j];

  // First stage: A x + s = b.
  for (std::size_t r = 0; r < fs_rows; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      de.a(r, de.x_offset + j) = problem.first_stage.a(r, j);
      if (de.split_x) de.a(r, de.x_minus_offset + j) = -problem.first_stage.a(r, j);
    }
    de.a(r, slack_offset + r) = 1.0;
    de.b[r] = problem.first_stage.b[r];
  }

  // Scenario blocks: W_i y_i + T_i x = h_i.
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const Scenario &s = scenarios[i];
    const std::size_t r0 = de.recourse_rows[i];
    for (std::size_t r = 0; r < s.w.rows(); ++r) {
      for (std::size_t j = 0; j < n; ++j) {
        de.a(r0 + r, de.x_offset + j) = s.t(r, j);
        if (de.split_x) de.a(r0 + r, de.x_minus_offset + j) = -s.t(r, j);
      }
      for (std::size_t j = 0; j < s.w.cols(); ++j)
        de.a(r0 + r, de.recourse_offsets[i] + j) = s.w(r, j);
      de.b[r0 + r] = s.h[r];
    }
  }
  return de;
}

std::uint64_t fingerprint_scenarios(const std::vector<Scenario> &scenarios) {
  std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a over raw double bits
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  auto mix_d = [&](double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    mix(bits);
  };
  for (const Scenario &s : scenarios) {
    mix(s.w.rows());
    mix(s.w.cols());
    for (double d : s.w.data()) mix_d(d);
    for (double d : s.t.data()) mix_d(d);
    for (double d : s.h) mix_d(d);
    for (double d : s.q) mix_d(d);
  }
  return h;
}

SaaSolution solve_saa(const TwoStageProblem &problem,
                      const std::vector<Scenario> &scenarios) {
  DeterministicEquivalent de = build_deterministic_equivalent(problem, scenarios);
  LpOutcome lp = lp_solve(de.c, de.a, de.b);
  if (lp.status == LpStatus::Infeasible) {
    // Identify a blocking scenario for the error report: the first whose
    // recourse system alone rejects every first-stage point is most useful,
    // but a cheap per-scenario check at x = 0 already names a culprit.
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      std::vector<Scenario> single{scenarios[i]};
      DeterministicEquivalent de1 = build_deterministic_equivalent(problem, single);
      if (lp_solve(de1.c, de1.a, de1.b).status == LpStatus::Infeasible)
        throw SaaInfeasibleError(i);
    }
    throw SaaInfeasibleError(0);
  }
  if (lp.status == LpStatus::Unbounded)
    throw SaaUnboundedError("SAA deterministic equivalent unbounded");

  SaaSolution sol;
  sol.status = LpStatus::Optimal;
  sol.objective = lp.objective;
  sol.x.assign(problem.n, 0.0);
  for (std::size_t j = 0; j < problem.n; ++j) {
    sol.x[j] = lp.x[de.x_offset + j];
    if (de.split_x) sol.x[j] -= lp.x[de.x_minus_offset + j];
  }
  sol.sample_fingerprint = fingerprint_scenarios(scenarios);

  // Feasibility contract: x must pass the per-scenario Farkas check.
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const Scenario &s = scenarios[i];
    Vector rhs = s.h;
    Vector tx = s.t.apply(sol.x);
    for (std::size_t r = 0; r < rhs.size(); ++r) rhs[r] -= tx[r];
    if (!lp_feasible_nonneg(s.w, rhs)) throw SaaInfeasibleError(i);
  }
  return sol;
}

Vector solve_trp_analytic(const std::vector<Vector> &samples) {
  if (samples.empty()) throw std::invalid_argument("solve_trp_analytic: empty input");
  Vector x = samples.front();
  for (double v : x)
    if (v < 0.0 || v > 1.0)
      throw std::invalid_argument("solve_trp_analytic: entries must be in [0,1]");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].size() != x.size())
      throw std::invalid_argument("solve_trp_analytic: ragged samples");
    for (std::size_t j = 0; j < x.size(); ++j) {
      double v = samples[i][j];
      if (v < 0.0 || v > 1.0)
        throw std::invalid_argument("solve_trp_analytic: entries must be in [0,1]");
      x[j] = std::max(x[j], v);
    }
  }
  return x;
}

double violation_exact_trp(const Vector &x) {
  double prod = 1.0;
  for (double v : x) {
    if (v < 0.0 || v > 1.0)
      throw std::invalid_argument("violation_exact_trp: entries must be in [0,1]");
    prod *= v;
  }
  return 1.0 - prod;
}

void wilson_interval(std::size_t k, std::size_t n, double &lo, double &hi) {
  const double z = 1.959963984540054; // 97.5% normal quantile
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  lo = std::max(0.0, center - half);
  hi = std::min(1.0, center + half);
}

ViolationEstimate violation_monte_carlo(const TwoStageProblem &problem,
                                        const Vector &x, std::size_t m_draws,
                                        std::uint64_t seed) {
  if (m_draws < 1) throw std::invalid_argument("violation_monte_carlo: M must be >= 1");
  std::vector<Scenario> draws = draw_scenarios(problem.source, m_draws, seed);

  // Rays are cached per distinct W (exact byte hash); Farkas on the rays is
  // much cheaper than a phase-1 LP when W repeats across draws.
  std::unordered_map<std::string, RaySet> ray_cache;
  auto w_key = [](const DenseMatrix &w) {
    std::string key;
    key.reserve(16 + w.data().size() * sizeof(double));
    std::uint64_t dims[2] = {w.rows(), w.cols()};
    key.append(reinterpret_cast<const char *>(dims), sizeof(dims));
    key.append(reinterpret_cast<const char *>(w.data().data()),
               w.data().size() * sizeof(double));
    return key;
  };

  std::size_t violations = 0;
  for (const Scenario &s : draws) {
    bool feasible;
    if (pointedness_check(s.w)) {
      std::string key = w_key(s.w);
      auto it = ray_cache.find(key);
      if (it == ray_cache.end())
        it = ray_cache.emplace(key, enumerate_extreme_rays(s.w)).first;
      feasible = farkas_in_domain(it->second, s.t, s.h, x);
    } else {
      Vector rhs = s.h;
      Vector tx = s.t.apply(x);
      for (std::size_t r = 0; r < rhs.size(); ++r) rhs[r] -= tx[r];
      feasible = lp_feasible_nonneg(s.w, rhs);
    }
    if (!feasible) ++violations;
  }

  ViolationEstimate est;
  est.estimate = static_cast<double>(violations) / static_cast<double>(m_draws);
  est.stderr_ = std::sqrt(est.estimate * (1.0 - est.estimate) /
                          static_cast<double>(m_draws));
  wilson_interval(violations, m_draws, est.ci_lo, est.ci_hi);
  return est;
}

TwoStageProblem make_trp_problem(std::size_t n, Vector c, Vector q) {
  TwoStageProblem p;
  p.n = n;
  p.c = c;
  p.first_stage.a = DenseMatrix(0, n);
  p.first_stage.x_nonneg = true;
  TrpGenerator gen;
  gen.n = n;
  gen.c = std::move(c);
  gen.q = std::move(q);
  p.source = std::move(gen);
  return p;
}

} // namespace saacert
