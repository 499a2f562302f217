#include "saacert/json_io.hpp"

#include <cstdio>
#include <set>

namespace saacert {

using nlohmann::json;

namespace {

void check_keys(const json &j, const std::set<std::string> &allowed,
                const char *context) {
  if (!j.is_object()) throw SchemaError(std::string(context) + ": expected object");
  for (const auto &item : j.items()) {
    if (allowed.find(item.key()) == allowed.end())
      throw SchemaError(std::string(context) + ": unknown field '" + item.key() + "'");
  }
}

const json &require_field(const json &j, const char *key, const char *context) {
  auto it = j.find(key);
  if (it == j.end())
    throw SchemaError(std::string(context) + ": missing field '" + key + "'");
  return *it;
}

Vector vector_from_json(const json &j, const char *context) {
  if (!j.is_array()) throw SchemaError(std::string(context) + ": expected array");
  Vector v;
  v.reserve(j.size());
  for (const auto &x : j) v.push_back(x.get<double>());
  return v;
}

json vector_to_json(const Vector &v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json vc_expr_to_json(const VcExpr &e) {
  json j;
  switch (e.kind) {
  case VcExpr::Kind::Atom:
    j = {{"op", "atom"}, {"d", e.d}};
    break;
  case VcExpr::Kind::Halfspace:
    j = {{"op", "halfspace"}, {"dim", e.dim}, {"affine", e.affine}};
    break;
  case VcExpr::Kind::DualHalfspace:
    j = {{"op", "dual-halfspace"}, {"dim", e.dim}};
    break;
  case VcExpr::Kind::SparseDualHalfspace:
    j = {{"op", "sparse-dual-halfspace"}, {"dim", e.dim}, {"sparsity", e.sparsity}};
    break;
  case VcExpr::Kind::FiniteClass:
    j = {{"op", "finite"}, {"cardinality", e.cardinality}};
    break;
  case VcExpr::Kind::Chain:
    j = {{"op", "chain"}, {"order", e.order}};
    break;
  case VcExpr::Kind::Intersect:
  case VcExpr::Kind::Union: {
    json kids = json::array();
    for (const VcExpr &c : e.children) kids.push_back(vc_expr_to_json(c));
    j = {{"op", e.kind == VcExpr::Kind::Intersect ? "intersect" : "union"},
         {"children", std::move(kids)}};
    break;
  }
  }
  return j;
}

VcExpr vc_expr_from_json(const json &j) {
  if (!j.is_object()) throw SchemaError("VcExpr: expected object");
  std::string op = require_field(j, "op", "VcExpr").get<std::string>();
  if (op == "atom") {
    check_keys(j, {"op", "d"}, "VcExpr(atom)");
    return VcExpr::atom(require_field(j, "d", "VcExpr(atom)").get<std::uint64_t>());
  }
  if (op == "halfspace") {
    check_keys(j, {"op", "dim", "affine"}, "VcExpr(halfspace)");
    return VcExpr::halfspace(
        require_field(j, "dim", "VcExpr(halfspace)").get<std::uint64_t>(),
        require_field(j, "affine", "VcExpr(halfspace)").get<bool>());
  }
  if (op == "dual-halfspace") {
    check_keys(j, {"op", "dim"}, "VcExpr(dual-halfspace)");
    return VcExpr::dual_halfspace(
        require_field(j, "dim", "VcExpr(dual-halfspace)").get<std::uint64_t>());
  }
  if (op == "sparse-dual-halfspace") {
    check_keys(j, {"op", "dim", "sparsity"}, "VcExpr(sparse-dual-halfspace)");
    return VcExpr::sparse_dual_halfspace(
        require_field(j, "dim", "VcExpr(sparse)").get<std::uint64_t>(),
        require_field(j, "sparsity", "VcExpr(sparse)").get<std::uint64_t>());
  }
  if (op == "finite") {
    check_keys(j, {"op", "cardinality"}, "VcExpr(finite)");
    return VcExpr::finite_class(
        require_field(j, "cardinality", "VcExpr(finite)").get<std::uint64_t>());
  }
  if (op == "chain") {
    check_keys(j, {"op", "order"}, "VcExpr(chain)");
    return VcExpr::chain(require_field(j, "order", "VcExpr(chain)").get<std::uint64_t>());
  }
  if (op == "intersect" || op == "union") {
    check_keys(j, {"op", "children"}, "VcExpr(composition)");
    const json &kids = require_field(j, "children", "VcExpr(composition)");
    if (!kids.is_array() || kids.empty())
      throw SchemaError("VcExpr: children must be a nonempty array");
    std::vector<VcExpr> children;
    for (const auto &k : kids) children.push_back(vc_expr_from_json(k));
    return op == "intersect" ? VcExpr::intersect(std::move(children))
                             : VcExpr::union_of(std::move(children));
  }
  throw SchemaError("VcExpr: unknown op '" + op + "'");
}

json matrix_to_json(const DenseMatrix &m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", vector_to_json(m.data())}};
}

DenseMatrix matrix_from_json(const json &j) {
  check_keys(j, {"rows", "cols", "data"}, "matrix");
  auto rows = require_field(j, "rows", "matrix").get<std::size_t>();
  auto cols = require_field(j, "cols", "matrix").get<std::size_t>();
  Vector data = vector_from_json(require_field(j, "data", "matrix"), "matrix.data");
  if (data.size() != rows * cols)
    throw SchemaError("matrix: data length != rows*cols");
  return DenseMatrix(rows, cols, std::move(data));
}

json rayset_to_json(const RaySet &rays) {
  json arr = json::array();
  for (const Vector &r : rays.rays) arr.push_back(vector_to_json(r));
  return {{"dim", rays.dim}, {"count", rays.rays.size()}, {"rays", std::move(arr)}};
}

json problem_to_json(const TwoStageProblem &p) {
  json source;
  if (const auto *fs = std::get_if<FiniteSupport>(&p.source)) {
    json scen = json::array();
    for (const Scenario &s : fs->scenarios)
      scen.push_back({{"W", matrix_to_json(s.w)},
                      {"T", matrix_to_json(s.t)},
                      {"h", vector_to_json(s.h)},
                      {"q", vector_to_json(s.q)}});
    source = {{"kind", "finite"},
              {"scenarios", std::move(scen)},
              {"weights", vector_to_json(fs->weights)}};
  } else if (const auto *trp = std::get_if<TrpGenerator>(&p.source)) {
    source = {{"kind", "trp"},
              {"n", trp->n},
              {"c", vector_to_json(trp->c)},
              {"q", vector_to_json(trp->q)}};
  } else {
    const auto &u = std::get<UniformEntryGenerator>(p.source);
    source = {{"kind", "uniform"}, {"m1", u.m1}, {"n1", u.n1},
              {"n", u.n},          {"lo", u.lo}, {"hi", u.hi}};
  }
  return {{"schema_version", 1},
          {"n", p.n},
          {"c", vector_to_json(p.c)},
          {"first_stage",
           {{"A", matrix_to_json(p.first_stage.a)},
            {"b", vector_to_json(p.first_stage.b)},
            {"x_nonneg", p.first_stage.x_nonneg}}},
          {"source", std::move(source)}};
}

TwoStageProblem problem_from_json(const json &j) {
  check_keys(j, {"schema_version", "n", "c", "first_stage", "source"}, "problem");
  if (require_field(j, "schema_version", "problem").get<int>() != 1)
    throw SchemaError("problem: unsupported schema_version");
  TwoStageProblem p;
  p.n = require_field(j, "n", "problem").get<std::size_t>();
  p.c = vector_from_json(require_field(j, "c", "problem"), "problem.c");

  const json &fs = require_field(j, "first_stage", "problem");
  check_keys(fs, {"A", "b", "x_nonneg"}, "first_stage");
  p.first_stage.a = matrix_from_json(require_field(fs, "A", "first_stage"));
  p.first_stage.b = vector_from_json(require_field(fs, "b", "first_stage"), "b");
  p.first_stage.x_nonneg = require_field(fs, "x_nonneg", "first_stage").get<bool>();

  const json &src = require_field(j, "source", "problem");
  std::string kind = require_field(src, "kind", "source").get<std::string>();
  if (kind == "trp") {
    check_keys(src, {"kind", "n", "c", "q"}, "source(trp)");
    TrpGenerator g;
    g.n = require_field(src, "n", "source").get<std::size_t>();
    g.c = vector_from_json(require_field(src, "c", "source"), "source.c");
    g.q = vector_from_json(require_field(src, "q", "source"), "source.q");
    p.source = std::move(g);
  } else if (kind == "finite") {
    check_keys(src, {"kind", "scenarios", "weights"}, "source(finite)");
    FiniteSupport g;
    for (const auto &sj : require_field(src, "scenarios", "source")) {
      check_keys(sj, {"W", "T", "h", "q"}, "scenario");
      Scenario s;
      s.w = matrix_from_json(require_field(sj, "W", "scenario"));
      s.t = matrix_from_json(require_field(sj, "T", "scenario"));
      s.h = vector_from_json(require_field(sj, "h", "scenario"), "scenario.h");
      s.q = vector_from_json(require_field(sj, "q", "scenario"), "scenario.q");
      g.scenarios.push_back(std::move(s));
    }
    g.weights = vector_from_json(require_field(src, "weights", "source"), "weights");
    p.source = std::move(g);
  } else if (kind == "uniform") {
    check_keys(src, {"kind", "m1", "n1", "n", "lo", "hi"}, "source(uniform)");
    UniformEntryGenerator g;
    g.m1 = require_field(src, "m1", "source").get<std::size_t>();
    g.n1 = require_field(src, "n1", "source").get<std::size_t>();
    g.n = require_field(src, "n", "source").get<std::size_t>();
    g.lo = require_field(src, "lo", "source").get<double>();
    g.hi = require_field(src, "hi", "source").get<double>();
    p.source = g;
  } else {
    throw SchemaError("source: unknown kind '" + kind + "'");
  }
  return p;
}

json config_to_json(const ExperimentConfig &c) {
  json mode;
  if (std::holds_alternative<ExactTrpViolation>(c.violation_mode))
    mode = {{"kind", "exact-trp"}};
  else
    mode = {{"kind", "monte-carlo"},
            {"M", std::get<MonteCarloViolation>(c.violation_mode).m_draws}};
  json bounds = json::array();
  for (const BoundRequest &b : c.bounds_requested) {
    json bj = {{"family", b.family}};
    if (b.family == "vc-tail") bj["d"] = b.d;
    if (b.family == "chain-binomial-tail" || b.family == "chain-chernoff-tail")
      bj["m"] = b.m;
    if (b.family == "gamma-tail-trp" && b.n != 0) bj["n"] = b.n;
    if (b.family == "finite-direct-tail") bj["infeasible_count"] = b.infeasible_count;
    bounds.push_back(std::move(bj));
  }
  return {{"schema_version", 1},
          {"problem", problem_to_json(c.problem)},
          {"N", c.n_samples},
          {"epsilons", vector_to_json(c.epsilons)},
          {"replications", c.replications},
          {"violation_mode", std::move(mode)},
          {"seed", c.seed},
          {"bounds", std::move(bounds)}};
}

ExperimentConfig config_from_json(const json &j) {
  check_keys(j,
             {"schema_version", "problem", "N", "epsilons", "replications",
              "violation_mode", "seed", "bounds"},
             "config");
  if (require_field(j, "schema_version", "config").get<int>() != 1)
    throw SchemaError("config: unsupported schema_version");
  ExperimentConfig c;
  c.problem = problem_from_json(require_field(j, "problem", "config"));
  c.n_samples = require_field(j, "N", "config").get<std::size_t>();
  c.epsilons = vector_from_json(require_field(j, "epsilons", "config"), "epsilons");
  c.replications = require_field(j, "replications", "config").get<std::size_t>();
  c.seed = require_field(j, "seed", "config").get<std::uint64_t>();

  const json &mode = require_field(j, "violation_mode", "config");
  std::string kind = require_field(mode, "kind", "violation_mode").get<std::string>();
  if (kind == "exact-trp") {
    check_keys(mode, {"kind"}, "violation_mode");
    c.violation_mode = ExactTrpViolation{};
  } else if (kind == "monte-carlo") {
    check_keys(mode, {"kind", "M"}, "violation_mode");
    MonteCarloViolation mc;
    mc.m_draws = require_field(mode, "M", "violation_mode").get<std::size_t>();
    c.violation_mode = mc;
  } else {
    throw SchemaError("violation_mode: unknown kind '" + kind + "'");
  }

  for (const auto &bj : require_field(j, "bounds", "config")) {
    check_keys(bj, {"family", "d", "m", "n", "infeasible_count"}, "bound request");
    BoundRequest b;
    b.family = require_field(bj, "family", "bound request").get<std::string>();
    if (bj.contains("d")) b.d = bj["d"].get<double>();
    if (bj.contains("m")) b.m = bj["m"].get<std::uint64_t>();
    if (bj.contains("n")) b.n = bj["n"].get<std::uint64_t>();
    if (bj.contains("infeasible_count"))
      b.infeasible_count = bj["infeasible_count"].get<std::uint64_t>();
    c.bounds_requested.push_back(std::move(b));
  }
  return c;
}

std::string report_to_csv(const ExperimentReport &report) {
  std::string out = "epsilon,empirical,ci_lo,ci_hi";
  if (!report.rows.empty())
    for (const auto &[id, bound] : report.rows.front().bounds) out += "," + id;
  out += "\n";
  for (const ReportRow &row : report.rows) {
    out += format_double(row.epsilon) + "," + format_double(row.empirical_prob) +
           "," + format_double(row.ci_lo) + "," + format_double(row.ci_hi);
    for (const auto &[id, bound] : row.bounds) out += "," + format_double(bound.value);
    out += "\n";
  }
  return out;
}

json report_to_json(const ExperimentReport &report) {
  json rows = json::array();
  for (const ReportRow &row : report.rows) {
    json bounds = json::object();
    for (const auto &[id, bound] : row.bounds)
      bounds[id] = {{"value", bound.value}, {"vacuous", bound.vacuous}};
    rows.push_back({{"epsilon", row.epsilon},
                    {"empirical_prob", row.empirical_prob},
                    {"ci_lo", row.ci_lo},
                    {"ci_hi", row.ci_hi},
                    {"bounds", std::move(bounds)}});
  }
  return {{"schema_version", 1},
          {"rows", std::move(rows)},
          {"metadata",
           {{"N", report.n_samples},
            {"replications", report.replications},
            {"seed", report.seed},
            {"problem_dim", report.problem_dim},
            {"violation_mode", report.violation_mode},
            {"runtime_seconds", report.runtime_seconds}}}};
}

json solution_to_json(const SaaSolution &sol) {
  const char *status = sol.status == LpStatus::Optimal      ? "optimal"
                       : sol.status == LpStatus::Infeasible ? "infeasible"
                                                            : "unbounded";
  return {{"x", vector_to_json(sol.x)},
          {"objective", sol.objective},
          {"status", status},
          {"sample_fingerprint", sol.sample_fingerprint}};
}

json verification_to_json(const AppendixVerification &v) {
  return {{"all_hold", v.all_hold},
          {"worst_margin", v.worst_margin},
          {"cells", v.rows.size()}};
}

} // namespace saacert
