#include "saacert/vc.hpp"

#include <algorithm>
#include <cmath>

namespace saacert {

namespace {

constexpr double kE = 2.718281828459045;

double composition_bound(double sum_d, std::size_t m) {
  return kVcCompK * sum_d * std::log(kVcCompC * static_cast<double>(m));
}

void require(bool cond, const char *msg) {
  if (!cond) throw std::invalid_argument(msg);
}

} // namespace

VcExpr VcExpr::atom(std::uint64_t d) {
  VcExpr e;
  e.kind = Kind::Atom;
  e.d = d;
  return e;
}

VcExpr VcExpr::halfspace(std::uint64_t dim, bool affine) {
  require(dim >= 1, "Halfspace: dim must be positive");
  VcExpr e;
  e.kind = Kind::Halfspace;
  e.dim = dim;
  e.affine = affine;
  return e;
}

VcExpr VcExpr::dual_halfspace(std::uint64_t dim) {
  require(dim >= 1, "DualHalfspace: dim must be positive");
  VcExpr e;
  e.kind = Kind::DualHalfspace;
  e.dim = dim;
  return e;
}

VcExpr VcExpr::sparse_dual_halfspace(std::uint64_t dim, std::uint64_t sparsity) {
  require(dim >= 1, "SparseDualHalfspace: dim must be positive");
  require(sparsity <= dim, "SparseDualHalfspace: sparsity > dim");
  VcExpr e;
  e.kind = Kind::SparseDualHalfspace;
  e.dim = dim;
  e.sparsity = sparsity;
  return e;
}

VcExpr VcExpr::finite_class(std::uint64_t cardinality) {
  require(cardinality >= 1, "FiniteClass: cardinality must be positive");
  VcExpr e;
  e.kind = Kind::FiniteClass;
  e.cardinality = cardinality;
  return e;
}

VcExpr VcExpr::chain(std::uint64_t order) {
  require(order >= 1, "Chain: order must be positive");
  VcExpr e;
  e.kind = Kind::Chain;
  e.order = order;
  return e;
}

VcExpr VcExpr::intersect(std::vector<VcExpr> children) {
  require(!children.empty(), "Intersect: children must be nonempty");
  VcExpr e;
  e.kind = Kind::Intersect;
  e.children = std::move(children);
  return e;
}

VcExpr VcExpr::union_of(std::vector<VcExpr> children) {
  require(!children.empty(), "Union: children must be nonempty");
  VcExpr e;
  e.kind = Kind::Union;
  e.children = std::move(children);
  return e;
}

double eval_vc_upper(const VcExpr &expr) {
  switch (expr.kind) {
  case VcExpr::Kind::Atom:
    return static_cast<double>(expr.d);
  case VcExpr::Kind::Halfspace:
    require(expr.dim >= 1, "Halfspace: dim must be positive");
    return static_cast<double>(expr.dim) + (expr.affine ? 1.0 : 0.0);
  case VcExpr::Kind::DualHalfspace:
    require(expr.dim >= 1, "DualHalfspace: dim must be positive");
    return static_cast<double>(expr.dim);
  case VcExpr::Kind::SparseDualHalfspace: {
    require(expr.dim >= 1, "SparseDualHalfspace: dim must be positive");
    require(expr.sparsity <= expr.dim, "SparseDualHalfspace: sparsity > dim");
    double d = static_cast<double>(expr.dim);
    double d0 = static_cast<double>(expr.sparsity);
    return 2.0 * (d0 + 1.0) * std::log2((d * kE + kE) / (d0 + 1.0));
  }
  case VcExpr::Kind::FiniteClass:
    require(expr.cardinality >= 1, "FiniteClass: cardinality must be positive");
    return std::log2(static_cast<double>(expr.cardinality));
  case VcExpr::Kind::Chain: {
    require(expr.order >= 1, "Chain: order must be positive");
    double m = static_cast<double>(expr.order);
    double bound = composition_bound(m, expr.order);
    // A single chain cannot shatter two points, so order 1 is exactly 1.
    if (expr.order == 1) bound = std::min(bound, 1.0);
    return bound;
  }
  case VcExpr::Kind::Intersect:
  case VcExpr::Kind::Union: {
    require(!expr.children.empty(), "composition: children must be nonempty");
    double sum = 0.0;
    for (const VcExpr &c : expr.children) sum += eval_vc_upper(c);
    if (expr.children.size() == 1) return sum; // composition bound is vacuous
    return composition_bound(sum, expr.children.size());
  }
  }
  throw std::logic_error("eval_vc_upper: unknown expression kind");
}

double two_stage_vc(std::uint64_t n, std::uint64_t j) {
  require(n >= 1 && j >= 1, "two_stage_vc: arguments must be >= 1");
  double dj = static_cast<double>(j);
  return kVcCompK * dj * (static_cast<double>(n) + 1.0) * std::log(kVcCompC * dj);
}

double mip_vc(std::uint64_t n, std::uint64_t j, std::uint64_t zcard) {
  require(n >= 1 && j >= 1 && zcard >= 1, "mip_vc: arguments must be >= 1");
  double dj = static_cast<double>(j);
  double dz = static_cast<double>(zcard);
  return kVcCompK * kVcCompK * dz * dj * (static_cast<double>(n) + 2.0) *
         std::log(kVcCompC * dj) * std::log(kVcCompC * dz);
}

double sparse_two_stage_vc(std::uint64_t n, std::uint64_t n0, std::uint64_t j) {
  require(n >= 1 && j >= 1, "sparse_two_stage_vc: n, J must be >= 1");
  require(n0 <= n, "sparse_two_stage_vc: n0 > n");
  double dn = static_cast<double>(n);
  double dn0 = static_cast<double>(n0);
  double sparse_dim = 2.0 * (dn0 + 1.0) * std::log2((dn * kE + kE) / (dn0 + 1.0));
  return kVcCompK * static_cast<double>(j) * sparse_dim *
         std::log(kVcCompC * static_cast<double>(j));
}

std::uint64_t chain_order_two_stage(std::uint64_t q,
                                    const std::vector<std::uint64_t> &ray_counts) {
  require(q >= 1, "chain_order_two_stage: q must be >= 1");
  require(!ray_counts.empty(), "chain_order_two_stage: ray_counts empty");
  std::uint64_t sum = 0;
  for (std::uint64_t r : ray_counts) {
    require(r >= 1, "chain_order_two_stage: ray counts must be positive");
    sum += r;
  }
  return q * sum;
}

std::uint64_t extreme_ray_count_bound(std::uint64_t m1, std::uint64_t n1) {
  require(m1 >= 1, "extreme_ray_count_bound: m1 must be >= 1");
  std::uint64_t k = m1 - 1;
  if (k > n1) return 0;
  k = std::min(k, n1 - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n1 - k + i) / i; // exact: intermediate is divisible
  }
  return result;
}

std::size_t empirical_vc(const FiniteTrace &trace, std::size_t point_cap) {
  if (trace.sets.empty()) throw std::invalid_argument("empirical_vc: empty trace");
  if (trace.num_points > point_cap)
    throw TraceCapacityError("empirical_vc: trace exceeds point cap");
  for (const auto &s : trace.sets)
    if (s.size() != trace.num_points)
      throw std::invalid_argument("empirical_vc: ragged bit-vector");

  const std::size_t n = trace.num_points;

  // Pack each set's membership as a bitmask over points (n <= point_cap <= 64).
  std::vector<std::uint64_t> masks;
  masks.reserve(trace.sets.size());
  for (const auto &s : trace.sets) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (s[i]) m |= (std::uint64_t{1} << i);
    masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  auto shattered = [&](const std::vector<std::size_t> &pts) {
    const std::size_t k = pts.size();
    std::vector<bool> seen(std::size_t{1} << k, false);
    std::size_t found = 0;
    for (std::uint64_t m : masks) {
      std::size_t pattern = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (m & (std::uint64_t{1} << pts[i])) pattern |= (std::size_t{1} << i);
      if (!seen[pattern]) {
        seen[pattern] = true;
        if (++found == (std::size_t{1} << k)) return true;
      }
    }
    return false;
  };

  auto next_combination = [n](std::vector<std::size_t> &c) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
      if (c[i] != i + n - k) {
        ++c[i];
        for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  // Increasing cardinality with early exit: if no k-subset is shattered,
  // no larger subset can be (shattering is hereditary downward).
  std::size_t best = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    bool any = false;
    std::vector<std::size_t> pts(k);
    for (std::size_t i = 0; i < k; ++i) pts[i] = i;
    do {
      if (shattered(pts)) {
        any = true;
        break;
      }
    } while (next_combination(pts));
    if (!any) break;
    best = k;
  }
  return best;
}

} // namespace saacert
