#pragma once

#include <cstdint>
#include <stdexcept>

namespace saacert {

// A tail bound value. Bounds exceeding 1 (or Chernoff forms outside their
// validity region) are reported verbatim with the vacuous flag set, never
// clamped: the regime information matters for bound-comparison tables.
struct BoundValue {
  double value = 0.0;
  bool vacuous = false;
};

// N >= (4/eps)(d ln(12/eps) + ln(2/delta)); smallest integer satisfying it.
std::uint64_t vc_sample_complexity(double d, double epsilon, double delta);

// 2 exp(-N eps/4) (12/eps)^d, evaluated as exp(ln 2 - N eps/4 + d ln(12/eps)).
BoundValue vc_tail(std::uint64_t n_samples, double d, double epsilon);
double vc_tail_log(std::uint64_t n_samples, double d, double epsilon);

// Binomial head sum_{k=0}^{m-1} C(N,k) eps^k (1-eps)^{N-k}; exactly 1 when
// m > N. Log-space terms, compensated summation.
double chain_binomial_tail(std::uint64_t n_samples, std::uint64_t m, double epsilon);

// exp(-(N eps - m + 1)^2 / (2 N eps)); vacuous when N eps < m - 1.
BoundValue chain_chernoff_tail(std::uint64_t n_samples, std::uint64_t m, double epsilon);

// ceil((e/(e-1)) (1/eps) (m - 1 + ln(1/delta))).
std::uint64_t chain_sufficient_n(std::uint64_t m, double epsilon, double delta);

// vc_sample_complexity with d = log2(cardinality + 1).
std::uint64_t finite_sample_complexity(std::uint64_t cardinality, double epsilon,
                                       double delta);

struct FiniteDirectQuery {
  std::uint64_t infeasible_count = 0;
  double eta = 1.0; // min violation over infeasible points, in (0, 1]
  std::uint64_t n_samples = 1;
};

// |X^Infea| (1-eta)^N; bounds the probability the SAA solution violates at
// level eta (and hence any level >= eta).
BoundValue finite_direct_tail(const FiniteDirectQuery &q);

// Upper gamma tail sum_{i=0}^{n-1} (N L)^i / i! e^{-N L}, L = ln(1/(1-eps)).
double gamma_tail_trp(std::uint64_t n, std::uint64_t n_samples, double epsilon);
double gamma_tail_trp_log(std::uint64_t n, std::uint64_t n_samples, double epsilon);

struct TrpInequalityResult {
  double lhs = 0.0;
  double rhs_n = 0.0;
  double log_lhs = 0.0;
  double log_rhs = 0.0;
  bool holds = false;
};

// Gamma tail vs the exponent-n relaxation of the VC tail (valid since the
// recourse domain's d_VC is at least n). Compared in log space.
TrpInequalityResult trp_inequality_check(std::uint64_t n, std::uint64_t n_samples,
                                         double epsilon);

// ln C(n, k); exact integer arithmetic for n <= 60, ln-Gamma otherwise.
double ln_binomial(std::uint64_t n, std::uint64_t k);

} // namespace saacert
