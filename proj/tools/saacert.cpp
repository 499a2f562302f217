#include "saacert/bounds.hpp"
#include "saacert/harness.hpp"
#include "saacert/json_io.hpp"
#include "saacert/rays.hpp"
#include "saacert/rng.hpp"
#include "saacert/vc.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;
using namespace saacert;

// Reproducible by default: every seeded subcommand uses this when --seed is
// omitted.
constexpr std::uint64_t kDefaultSeed = 0x5aacde7a11u;

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsageError = 2;
constexpr int kExitTheoremViolation = 3;

json load_json_arg(const std::string &arg) {
  // Inline JSON or a file path.
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '['))
    return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw std::runtime_error("cannot open file: " + arg);
  return json::parse(in);
}

void emit(const std::string &format, const json &j, const std::string &text) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

struct BoundArgs {
  std::string family;
  std::uint64_t n_samples = 0;
  double d = -1.0;
  std::uint64_t m = 0;
  std::uint64_t dim = 0;
  std::uint64_t cardinality = 0;
  std::uint64_t count = 0;
  double eps = 0.0;
  double delta = 0.0;
  double eta = 0.0;
};

void need(bool present, const char *flag) {
  if (!present)
    throw CLI::ValidationError(std::string("missing required flag ") + flag);
}

int run_bound(const BoundArgs &a, const std::string &format) {
  json j;
  std::string text;
  if (a.family == "vc-tail") {
    need(a.n_samples > 0, "--n");
    need(a.d >= 0.0, "--d");
    need(a.eps > 0.0, "--eps");
    BoundValue b = vc_tail(a.n_samples, a.d, a.eps);
    j = {{"family", a.family}, {"value", b.value}, {"vacuous", b.vacuous}};
    text = format_double(b.value) + (b.vacuous ? " (vacuous)" : "");
  } else if (a.family == "vc-sample-complexity") {
    need(a.d >= 0.0, "--d");
    need(a.eps > 0.0, "--eps");
    need(a.delta > 0.0, "--delta");
    std::uint64_t n = vc_sample_complexity(a.d, a.eps, a.delta);
    j = {{"family", a.family}, {"value", n}};
    text = std::to_string(n);
  } else if (a.family == "chain-binomial-tail") {
    need(a.n_samples > 0, "--n");
    need(a.m > 0, "--m");
    need(a.eps > 0.0, "--eps");
    double v = chain_binomial_tail(a.n_samples, a.m, a.eps);
    j = {{"family", a.family}, {"value", v}};
    text = format_double(v);
  } else if (a.family == "chain-chernoff-tail") {
    need(a.n_samples > 0, "--n");
    need(a.m > 0, "--m");
    need(a.eps > 0.0, "--eps");
    BoundValue b = chain_chernoff_tail(a.n_samples, a.m, a.eps);
    j = {{"family", a.family}, {"value", b.value}, {"vacuous", b.vacuous}};
    text = format_double(b.value) + (b.vacuous ? " (vacuous)" : "");
  } else if (a.family == "chain-sufficient-n") {
    need(a.m > 0, "--m");
    need(a.eps > 0.0, "--eps");
    need(a.delta > 0.0, "--delta");
    std::uint64_t n = chain_sufficient_n(a.m, a.eps, a.delta);
    j = {{"family", a.family}, {"value", n}};
    text = std::to_string(n);
  } else if (a.family == "finite-sample-complexity") {
    need(a.cardinality > 0, "--cardinality");
    need(a.eps > 0.0, "--eps");
    need(a.delta > 0.0, "--delta");
    std::uint64_t n = finite_sample_complexity(a.cardinality, a.eps, a.delta);
    j = {{"family", a.family}, {"value", n}};
    text = std::to_string(n);
  } else if (a.family == "finite-direct-tail") {
    need(a.n_samples > 0, "--n");
    need(a.eta > 0.0, "--eta");
    FiniteDirectQuery q{a.count, a.eta, a.n_samples};
    BoundValue b = finite_direct_tail(q);
    j = {{"family", a.family}, {"value", b.value}, {"vacuous", b.vacuous}};
    text = format_double(b.value) + (b.vacuous ? " (vacuous)" : "");
  } else if (a.family == "gamma-tail-trp") {
    need(a.n_samples > 0, "--n");
    need(a.dim > 0, "--dim");
    need(a.eps > 0.0, "--eps");
    double v = gamma_tail_trp(a.dim, a.n_samples, a.eps);
    j = {{"family", a.family}, {"value", v}};
    text = format_double(v);
  } else if (a.family == "trp-inequality") {
    need(a.n_samples > 0, "--n");
    need(a.dim > 0, "--dim");
    need(a.eps > 0.0, "--eps");
    TrpInequalityResult r = trp_inequality_check(a.dim, a.n_samples, a.eps);
    j = {{"family", a.family},
         {"lhs", r.lhs},
         {"rhs_n", r.rhs_n},
         {"log_lhs", r.log_lhs},
         {"log_rhs", r.log_rhs},
         {"holds", r.holds}};
    text = "lhs=" + format_double(r.lhs) + " rhs=" + format_double(r.rhs_n) +
           " holds=" + (r.holds ? "true" : "false");
  } else {
    throw CLI::ValidationError("unknown --family '" + a.family + "'");
  }
  emit(format, j, text);
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Feasibility certificates for SAA solutions of two-stage "
               "stochastic programs"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  BoundArgs ba;
  auto *bound = app.add_subcommand("bound", "Evaluate one tail/sample-size bound");
  bound->add_option("--family", ba.family, "Bound family")->required();
  bound->add_option("--n", ba.n_samples, "Sample size N");
  bound->add_option("--d", ba.d, "VC dimension bound d");
  bound->add_option("--m", ba.m, "Chain order m");
  bound->add_option("--dim", ba.dim, "TRP dimension n");
  bound->add_option("--cardinality", ba.cardinality, "Finite class cardinality");
  bound->add_option("--count", ba.count, "Infeasible point count");
  bound->add_option("--eps", ba.eps, "Violation tolerance epsilon");
  bound->add_option("--delta", ba.delta, "Confidence delta");
  bound->add_option("--eta", ba.eta, "Minimum violation eta");

  std::string expr_arg;
  auto *vcdim = app.add_subcommand("vcdim", "Evaluate a VC upper-bound expression");
  vcdim->add_option("--expr", expr_arg, "Expression JSON (inline or file)")->required();

  std::string matrix_arg;
  auto *rays_cmd = app.add_subcommand("rays", "Enumerate extreme rays of {a : a^T W >= 0}");
  rays_cmd->add_option("--matrix", matrix_arg, "W matrix JSON (inline or file)")
      ->required();

  std::string problem_arg;
  std::size_t saa_n = 0;
  std::uint64_t seed = kDefaultSeed;
  auto *solve = app.add_subcommand("solve-saa", "Sample scenarios and solve the SAA");
  solve->add_option("--problem", problem_arg, "Problem JSON (inline or file)")
      ->required();
  solve->add_option("--N", saa_n, "Scenarios to sample")->required();
  solve->add_option("--seed", seed, "RNG seed");

  std::string config_arg, out_path, json_out_path;
  auto *experiment = app.add_subcommand("experiment", "Run a replicated experiment");
  experiment->add_option("--config", config_arg, "Config JSON (inline or file)")
      ->required();
  experiment->add_option("--out", out_path, "Write report CSV here");
  experiment->add_option("--json-out", json_out_path, "Write report JSON here");

  std::uint64_t n_max = 20, big_n_max = 1000000;
  std::size_t eps_grid = 20, n_grid = 30;
  auto *verify = app.add_subcommand("verify-appendix",
                                    "Check the closed-form tail inequality on a grid");
  verify->add_option("--n-max", n_max, "Max TRP dimension");
  verify->add_option("--N-max", big_n_max, "Max sample size (log-spaced)");
  verify->add_option("--N-grid", n_grid, "Number of sample-size grid points");
  verify->add_option("--eps-grid", eps_grid, "Number of epsilon grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (bound->parsed()) return run_bound(ba, format);

    if (vcdim->parsed()) {
      VcExpr expr = vc_expr_from_json(load_json_arg(expr_arg));
      double v = eval_vc_upper(expr);
      emit(format, {{"vc_upper", v}}, format_double(v));
      return kExitOk;
    }

    if (rays_cmd->parsed()) {
      DenseMatrix w = matrix_from_json(load_json_arg(matrix_arg));
      RaySet rays = enumerate_extreme_rays(w);
      json j = rayset_to_json(rays);
      std::string text = "dim=" + std::to_string(rays.dim) +
                         " count=" + std::to_string(rays.rays.size());
      for (const Vector &r : rays.rays) {
        text += "\n";
        for (std::size_t i = 0; i < r.size(); ++i)
          text += (i ? " " : "") + format_double(r[i]);
      }
      emit(format, j, text);
      return kExitOk;
    }

    if (solve->parsed()) {
      TwoStageProblem p = problem_from_json(load_json_arg(problem_arg));
      std::vector<Scenario> scenarios = draw_scenarios(p.source, saa_n, seed);
      SaaSolution sol = solve_saa(p, scenarios);
      json j = solution_to_json(sol);
      std::string text = "objective=" + format_double(sol.objective) + " x=[";
      for (std::size_t i = 0; i < sol.x.size(); ++i)
        text += (i ? " " : "") + format_double(sol.x[i]);
      text += "]";
      emit(format, j, text);
      return kExitOk;
    }

    if (experiment->parsed()) {
      ExperimentConfig cfg = config_from_json(load_json_arg(config_arg));
      ExperimentReport report = run_experiment(cfg);
      std::string csv = report_to_csv(report);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write: " + out_path);
        out << csv;
      }
      if (!json_out_path.empty()) {
        std::ofstream out(json_out_path);
        if (!out) throw std::runtime_error("cannot write: " + json_out_path);
        out << report_to_json(report).dump(2) << "\n";
      }
      if (format == "json")
        std::cout << report_to_json(report).dump(2) << "\n";
      else
        std::cout << csv;
      return kExitOk;
    }

    if (verify->parsed()) {
      TrpGrid grid = default_trp_grid(n_max, big_n_max, n_grid, eps_grid);
      AppendixVerification v = verify_appendix(grid);
      json j = verification_to_json(v);
      std::string text = std::string("all_hold=") + (v.all_hold ? "true" : "false") +
                         " worst_margin=" + format_double(v.worst_margin) +
                         " cells=" + std::to_string(v.rows.size());
      emit(format, j, text);
      // A failing cell contradicts the closed-form inequality, which holds
      // for all (n, N, eps): that is an implementation bug, not bad input.
      return v.all_hold ? kExitOk : kExitTheoremViolation;
    }
  } catch (const CLI::ValidationError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const SchemaError &e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "json error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsageError;
}
