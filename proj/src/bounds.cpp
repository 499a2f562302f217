#include "saacert/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace saacert {

namespace {

constexpr double kE = 2.718281828459045;

void check_unit_interval(double v, const char *name) {
  if (!(v > 0.0 && v < 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in (0,1)");
}

std::uint64_t ceil_to_count(double v) {
  double c = std::ceil(v);
  if (!(c >= 1.0)) c = 1.0;
  return static_cast<std::uint64_t>(c);
}

// Exact C(n,k) for n <= 60 fits in 64 bits (C(60,30) ~ 1.18e17).
std::uint64_t binom_exact(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

} // namespace

double ln_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  if (n <= 60) return std::log(static_cast<double>(binom_exact(n, k)));
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

std::uint64_t vc_sample_complexity(double d, double epsilon, double delta) {
  check_unit_interval(epsilon, "epsilon");
  check_unit_interval(delta, "delta");
  if (d < 0.0) throw std::invalid_argument("d must be nonnegative");
  double v = (4.0 / epsilon) * (d * std::log(12.0 / epsilon) + std::log(2.0 / delta));
  return ceil_to_count(v);
}

double vc_tail_log(std::uint64_t n_samples, double d, double epsilon) {
  check_unit_interval(epsilon, "epsilon");
  if (n_samples < 1) throw std::invalid_argument("N must be >= 1");
  if (d < 0.0) throw std::invalid_argument("d must be nonnegative");
  return std::log(2.0) - static_cast<double>(n_samples) * epsilon / 4.0 +
         d * std::log(12.0 / epsilon);
}

BoundValue vc_tail(std::uint64_t n_samples, double d, double epsilon) {
  double lg = vc_tail_log(n_samples, d, epsilon);
  BoundValue b;
  b.value = std::exp(lg);
  b.vacuous = lg > 0.0;
  return b;
}

double chain_binomial_tail(std::uint64_t n_samples, std::uint64_t m, double epsilon) {
  check_unit_interval(epsilon, "epsilon");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (n_samples < 1) throw std::invalid_argument("N must be >= 1");
  if (m > n_samples) return 1.0;

  const double log_eps = std::log(epsilon);
  const double log_1m = std::log1p(-epsilon);
  const double n = static_cast<double>(n_samples);
  double sum = 0.0, comp = 0.0; // Kahan
  for (std::uint64_t k = 0; k < m; ++k) {
    double lt = ln_binomial(n_samples, k) + static_cast<double>(k) * log_eps +
                (n - static_cast<double>(k)) * log_1m;
    double term = std::exp(lt);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return std::min(sum, 1.0);
}

BoundValue chain_chernoff_tail(std::uint64_t n_samples, std::uint64_t m,
                               double epsilon) {
  check_unit_interval(epsilon, "epsilon");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (n_samples < 1) throw std::invalid_argument("N must be >= 1");
  double ne = static_cast<double>(n_samples) * epsilon;
  double slack = ne - static_cast<double>(m) + 1.0;
  BoundValue b;
  if (slack < 0.0) {
    b.value = 1.0;
    b.vacuous = true;
    return b;
  }
  b.value = std::exp(-(slack * slack) / (2.0 * ne));
  return b;
}

std::uint64_t chain_sufficient_n(std::uint64_t m, double epsilon, double delta) {
  check_unit_interval(epsilon, "epsilon");
  check_unit_interval(delta, "delta");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  double v = (kE / (kE - 1.0)) * (1.0 / epsilon) *
             (static_cast<double>(m) - 1.0 + std::log(1.0 / delta));
  return ceil_to_count(v);
}

std::uint64_t finite_sample_complexity(std::uint64_t cardinality, double epsilon,
                                       double delta) {
  if (cardinality < 1) throw std::invalid_argument("cardinality must be >= 1");
  double d = std::log2(static_cast<double>(cardinality) + 1.0);
  return vc_sample_complexity(d, epsilon, delta);
}

BoundValue finite_direct_tail(const FiniteDirectQuery &q) {
  if (!(q.eta > 0.0 && q.eta <= 1.0))
    throw std::invalid_argument("eta must lie in (0,1]");
  if (q.n_samples < 1) throw std::invalid_argument("N must be >= 1");
  BoundValue b;
  if (q.infeasible_count == 0) return b; // empty union
  if (q.eta == 1.0) return b;
  double lg = std::log(static_cast<double>(q.infeasible_count)) +
              static_cast<double>(q.n_samples) * std::log1p(-q.eta);
  b.value = std::exp(lg);
  b.vacuous = lg > 0.0;
  return b;
}

double gamma_tail_trp_log(std::uint64_t n, std::uint64_t n_samples, double epsilon) {
  check_unit_interval(epsilon, "epsilon");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n_samples < 1) throw std::invalid_argument("N must be >= 1");

  // L = ln(1/(1-eps)); tail = sum_{i<n} exp(i ln(NL) - lgamma(i+1) - NL).
  const double rate = -static_cast<double>(n_samples) * std::log1p(-epsilon);
  const double log_rate = std::log(rate);
  double max_t = -std::numeric_limits<double>::infinity();
  std::vector<double> logs(n);
  double lgam = 0.0; // lgamma(i+1) built incrementally
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i > 0) lgam += std::log(static_cast<double>(i));
    logs[i] = static_cast<double>(i) * log_rate - lgam;
    max_t = std::max(max_t, logs[i]);
  }
  double sum = 0.0, comp = 0.0;
  for (double lt : logs) {
    double y = std::exp(lt - max_t) - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return max_t + std::log(sum) - rate;
}

double gamma_tail_trp(std::uint64_t n, std::uint64_t n_samples, double epsilon) {
  double v = std::exp(gamma_tail_trp_log(n, n_samples, epsilon));
  if (v < -1e-12 || v > 1.0 + 1e-12)
    throw std::logic_error("gamma_tail_trp: value escaped [0,1]");
  return std::min(std::max(v, 0.0), 1.0);
}

TrpInequalityResult trp_inequality_check(std::uint64_t n, std::uint64_t n_samples,
                                         double epsilon) {
  TrpInequalityResult r;
  r.log_lhs = gamma_tail_trp_log(n, n_samples, epsilon);
  r.log_rhs = vc_tail_log(n_samples, static_cast<double>(n), epsilon);
  r.lhs = std::exp(r.log_lhs);
  r.rhs_n = std::exp(r.log_rhs);
  r.holds = r.log_lhs <= r.log_rhs;
  return r;
}

} // namespace saacert
