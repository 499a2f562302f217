#pragma once

#include "saacert/harness.hpp"
#include "saacert/rays.hpp"
#include "saacert/vc.hpp"

#include <json.hpp>

#include <string>

namespace saacert {

// All schemas carry "schema_version": 1 at the document level where noted;
// unknown fields are rejected so long-lived config files fail loudly.

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17 significant digits: doubles round-trip exactly through text.
std::string format_double(double v);

nlohmann::json vc_expr_to_json(const VcExpr &expr);
VcExpr vc_expr_from_json(const nlohmann::json &j);

nlohmann::json matrix_to_json(const DenseMatrix &m);
DenseMatrix matrix_from_json(const nlohmann::json &j);

nlohmann::json rayset_to_json(const RaySet &rays);

nlohmann::json problem_to_json(const TwoStageProblem &p);
TwoStageProblem problem_from_json(const nlohmann::json &j);

nlohmann::json config_to_json(const ExperimentConfig &c);
ExperimentConfig config_from_json(const nlohmann::json &j);

// CSV: one row per epsilon; columns epsilon, empirical, ci_lo, ci_hi, then
// one column per requested bound, in request order. This is the stable
// interface.
std::string report_to_csv(const ExperimentReport &report);
nlohmann::json report_to_json(const ExperimentReport &report);

nlohmann::json solution_to_json(const SaaSolution &sol);
nlohmann::json verification_to_json(const AppendixVerification &v);

} // namespace saacert
