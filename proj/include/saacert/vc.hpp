#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace saacert {

// Composition constants from the union/intersection bound:
// K = e/((e-1) ln 2), C = e/ln 2.
inline constexpr double kVcCompK = 2.2823099498022305;
inline constexpr double kVcCompC = 3.9216517136564487;

// Expression tree for a hypothesis class with a computable VC upper bound.
struct VcExpr {
  enum class Kind {
    Atom,               // known VC dimension d
    Halfspace,          // {a^T x (+ b) >= 0} in R^dim
    DualHalfspace,      // {(y,z) : y^T x <= z} over x in R^dim
    SparseDualHalfspace,// dual halfspaces with ||x||_0 <= sparsity
    FiniteClass,        // |H| = cardinality
    Chain,              // chain-constrained of given order
    Intersect,
    Union,
  };

  Kind kind = Kind::Atom;
  std::uint64_t d = 0;          // Atom
  std::uint64_t dim = 0;        // Halfspace / DualHalfspace / SparseDualHalfspace
  bool affine = false;          // Halfspace
  std::uint64_t sparsity = 0;   // SparseDualHalfspace
  std::uint64_t cardinality = 0;// FiniteClass
  std::uint64_t order = 0;      // Chain
  std::vector<VcExpr> children; // Intersect / Union

  static VcExpr atom(std::uint64_t d);
  static VcExpr halfspace(std::uint64_t dim, bool affine);
  static VcExpr dual_halfspace(std::uint64_t dim);
  static VcExpr sparse_dual_halfspace(std::uint64_t dim, std::uint64_t sparsity);
  static VcExpr finite_class(std::uint64_t cardinality);
  static VcExpr chain(std::uint64_t order);
  static VcExpr intersect(std::vector<VcExpr> children);
  static VcExpr union_of(std::vector<VcExpr> children);
};

// Upper bound on the VC dimension of the class described by `expr`.
// Bounds are returned as reals; any ceiling happens where they feed a
// sample-complexity formula.
double eval_vc_upper(const VcExpr &expr);

// d_VC bound for a two-stage recourse domain: J halfspace systems in (n+1)
// parameters composed by intersection.
double two_stage_vc(std::uint64_t n, std::uint64_t j);

// Mixed-integer recourse variant over a finite integer range of size zcard.
double mip_vc(std::uint64_t n, std::uint64_t j, std::uint64_t zcard);

// Sparse first-stage decisions: ||x||_0 <= n0 out of n coordinates.
double sparse_two_stage_vc(std::uint64_t n, std::uint64_t n0, std::uint64_t j);

// Chain order of the recourse domain: q * sum of per-matrix ray counts.
std::uint64_t chain_order_two_stage(std::uint64_t q,
                                    const std::vector<std::uint64_t> &ray_counts);

// Combinatorial ceiling C(n1, m1-1) on extreme-ray counts; 0 when the
// choice is overfull.
std::uint64_t extreme_ray_count_bound(std::uint64_t m1, std::uint64_t n1);

// Membership trace of a finite set system over named points.
struct FiniteTrace {
  std::size_t num_points = 0;
  std::vector<std::vector<bool>> sets; // each of length num_points
};

struct TraceCapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact VC dimension of the traced class by exhaustive shattering search.
// Enumerates subsets in increasing cardinality; shattering is hereditary
// downward so the first empty level stops the search.
std::size_t empirical_vc(const FiniteTrace &trace, std::size_t point_cap = 20);

} // namespace saacert
