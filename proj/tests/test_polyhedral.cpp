#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "saacert/rays.hpp"
#include "saacert/rng.hpp"
#include "saacert/simplex.hpp"

#include <algorithm>
#include <cmath>

using namespace saacert;

namespace {

DenseMatrix identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, SplitMix64 &rng) {
  DenseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = 2.0 * rng.next_double() - 1.0;
  return m;
}

bool contains_unit_vector(const RaySet &rs, std::size_t axis) {
  for (const Vector &r : rs.rays) {
    bool ok = true;
    for (std::size_t i = 0; i < r.size(); ++i) {
      double want = i == axis ? 1.0 : 0.0;
      if (std::fabs(r[i] - want) > 1e-9) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

} // namespace

TEST_CASE("lp_solve on a tiny LP") {
  // min -x1 - x2  s.t.  x1 + x2 + s = 1, all >= 0  ->  objective -1.
  DenseMatrix a(1, 3, {1.0, 1.0, 1.0});
  LpOutcome out = lp_solve({-1.0, -1.0, 0.0}, a, {1.0});
  CHECK(out.status == LpStatus::Optimal);
  CHECK(out.objective == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(out.x[0] + out.x[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("lp_solve detects infeasibility and unboundedness") {
  DenseMatrix a(1, 1, {1.0});
  CHECK(lp_solve({1.0}, a, {-1.0}).status == LpStatus::Infeasible);
  // min -x1  s.t.  x1 - x2 = 0: both can grow together.
  DenseMatrix a2(1, 2, {1.0, -1.0});
  CHECK(lp_solve({-1.0, 0.0}, a2, {0.0}).status == LpStatus::Unbounded);
}

TEST_CASE("lp_solve handles negative right-hand sides") {
  // x1 - x2 = -3, minimize x1 + x2 -> x = (0, 3).
  DenseMatrix a(1, 2, {1.0, -1.0});
  LpOutcome out = lp_solve({1.0, 1.0}, a, {-3.0});
  CHECK(out.status == LpStatus::Optimal);
  CHECK(out.objective == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("lp_feasible_nonneg") {
  DenseMatrix w(2, 2, {1.0, 0.0, 0.0, 1.0});
  CHECK(lp_feasible_nonneg(w, {1.0, 2.0}));
  CHECK_FALSE(lp_feasible_nonneg(w, {-1.0, 2.0}));
}

TEST_CASE("pointedness_check") {
  CHECK(pointedness_check(identity(3)));
  DenseMatrix flat(2, 1, {1.0, 0.0}); // rank 1 < 2
  CHECK_FALSE(pointedness_check(flat));
}

TEST_CASE("rays of the nonnegative orthant") {
  RaySet rs = enumerate_extreme_rays(identity(3));
  REQUIRE(rs.rays.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(contains_unit_vector(rs, i));
}

TEST_CASE("rays of the TRP recourse cone W = [I | I]") {
  DenseMatrix w(2, 4, {1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0});
  RaySet rs = enumerate_extreme_rays(w);
  REQUIRE(rs.rays.size() == 2);
  CHECK(contains_unit_vector(rs, 0));
  CHECK(contains_unit_vector(rs, 1));
}

TEST_CASE("a known non-simplicial cone in R^3") {
  // {a : a3 >= 0, a3 +- a1 >= 0, a3 +- a2 >= 0}: pyramid over a square,
  // extreme rays (+-1, +-1, 1).
  DenseMatrix w(3, 5, {0.0, 1.0, -1.0, 0.0, 0.0,
                       0.0, 0.0, 0.0, 1.0, -1.0,
                       1.0, 1.0, 1.0, 1.0, 1.0});
  RaySet rs = enumerate_extreme_rays(w);
  REQUIRE(rs.rays.size() == 4);
  int matched = 0;
  for (double s1 : {-1.0, 1.0})
    for (double s2 : {-1.0, 1.0})
      for (const Vector &r : rs.rays)
        if (std::fabs(r[0] - s1) < 1e-9 && std::fabs(r[1] - s2) < 1e-9 &&
            std::fabs(r[2] - 1.0) < 1e-9)
          ++matched;
  CHECK(matched == 4);
}

TEST_CASE("non-pointed cone raises with a lineality certificate") {
  DenseMatrix w(3, 2, {1.0, 0.0, 0.0, 1.0, 0.0, 0.0}); // rank 2 < 3
  try {
    enumerate_extreme_rays(w);
    FAIL("expected NonPointedConeError");
  } catch (const NonPointedConeError &e) {
    REQUIRE(e.lineality.size() == 3);
    double norm = 0.0;
    for (double v : e.lineality) norm += v * v;
    CHECK(norm > 1e-12);
    Vector prod = w.apply_transpose(e.lineality);
    for (double v : prod) CHECK(std::fabs(v) < 1e-8);
  }
}

TEST_CASE("normalize_ray scales the largest-magnitude entry to +-1") {
  Vector r = {0.0, -3.0, 1.5};
  normalize_ray(r);
  CHECK(r[1] == doctest::Approx(-1.0));
  CHECK(r[2] == doctest::Approx(0.5));
}

TEST_CASE("cone_membership on the orthant") {
  RaySet rs = enumerate_extreme_rays(identity(3));
  CHECK(cone_membership(rs, {1.0, 2.0, 0.5}));
  CHECK(cone_membership(rs, {0.0, 0.0, 0.0}));
  CHECK_FALSE(cone_membership(rs, {1.0, -1.0, 0.5}));
}

TEST_CASE("farkas_in_domain agrees with direct LP feasibility") {
  SplitMix64 rng(4242);
  int tested = 0;
  while (tested < 120) {
    std::size_t m1 = 2 + rng.next_u64() % 3; // 2..4
    std::size_t n1 = m1 + rng.next_u64() % 3;
    DenseMatrix w = random_matrix(m1, n1, rng);
    if (!pointedness_check(w)) continue;
    RaySet rs;
    try {
      rs = enumerate_extreme_rays(w);
    } catch (const NonPointedConeError &) {
      continue;
    }
    std::size_t n = 2;
    DenseMatrix t = random_matrix(m1, n, rng);
    Vector h(m1), x(n);
    for (double &v : h) v = 2.0 * rng.next_double() - 1.0;
    for (double &v : x) v = rng.next_double();
    Vector rhs = h;
    Vector tx = t.apply(x);
    for (std::size_t i = 0; i < m1; ++i) rhs[i] -= tx[i];
    CHECK(farkas_in_domain(rs, t, h, x) == lp_feasible_nonneg(w, rhs));
    ++tested;
  }
}

TEST_CASE("every enumerated ray is feasible and extreme") {
  SplitMix64 rng(777);
  int tested = 0;
  while (tested < 40) {
    std::size_t m1 = 2 + rng.next_u64() % 3;
    std::size_t n1 = m1 + 1 + rng.next_u64() % 3;
    DenseMatrix w = random_matrix(m1, n1, rng);
    if (!pointedness_check(w)) continue;
    RaySet rs;
    try {
      rs = enumerate_extreme_rays(w);
    } catch (const NonPointedConeError &) {
      continue;
    }
    for (const Vector &r : rs.rays) {
      Vector p = w.apply_transpose(r);
      std::vector<std::size_t> tight;
      for (std::size_t j = 0; j < n1; ++j) {
        CHECK(p[j] >= -1e-9);
        if (std::fabs(p[j]) <= 1e-7) tight.push_back(j);
      }
      // Extremality: the tight columns span a subspace of dimension m1-1.
      REQUIRE(tight.size() + 1 >= m1);
      DenseMatrix cols(m1, tight.size());
      for (std::size_t c = 0; c < tight.size(); ++c)
        for (std::size_t i = 0; i < m1; ++i) cols(i, c) = w(i, tight[c]);
      CHECK(matrix_rank(cols) == m1 - 1);
    }
    ++tested;
  }
}

TEST_CASE("farkas_in_domain with an empty ray set is vacuously true") {
  RaySet rs;
  rs.dim = 2;
  DenseMatrix t(2, 1, {1.0, 1.0});
  CHECK(farkas_in_domain(rs, t, {5.0, -5.0}, {0.3}));
}
