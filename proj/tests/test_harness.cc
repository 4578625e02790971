#include <doctest.h>

#include "locorder/harness.hpp"

using namespace locorder;

namespace {

SyntheticModel model(const char* C, const char* rho, const char* e0, long count) {
  SyntheticModel m;
  m.C = C;
  m.rho = rho;
  m.e0 = e0;
  m.count = count;
  return m;
}

BigScalar rel_err(const BigScalar& got, const BigScalar& want) {
  return abs((got - want) / want);
}

}  // namespace

TEST_CASE("grid config round-trips through JSON and validates") {
  GridConfig c;
  CHECK(c.methods.size() == 6);
  CHECK(c.problems.size() == 7);
  CHECK(c.modes == std::vector<EstimatorMode>{EstimatorMode::cloc});
  CHECK(c.eta == 2200);
  c.validate();

  c.methods = {"phi2", "phi5"};
  c.modes = {EstimatorMode::pcloc, EstimatorMode::cloc};
  c.eta = 700;
  c.parallelism = 3;
  c.format = "markdown";
  GridConfig back = GridConfig::from_json(c.to_json());
  CHECK(back.to_json().dump() == c.to_json().dump());
  CHECK(back.modes == c.modes);

  GridConfig defaults = GridConfig::from_json(nlohmann::ordered_json::object());
  CHECK(defaults.methods.size() == 6);
  CHECK(defaults.eta == 2200);

  GridConfig bad = c;
  bad.methods = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.methods = {"phi9"};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.problems = {"g1"};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.eta = 49;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.format = "yaml";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.parallelism = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.modes = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("model sequences follow the prescribed error law") {
  ModelSequence quad = generate_model_sequence(model("1", "2", "1e-2", 4));
  REQUIRE(quad.errors.size() == 4);
  REQUIRE(quad.residuals.size() == 4);
  CHECK(quad.digits >= 64);
  const long d = quad.digits;
  BigScalar tol("1e-40", d);
  CHECK(rel_err(BigScalar(quad.errors[0], d), BigScalar("1e-2", d)) < tol);
  CHECK(rel_err(BigScalar(quad.errors[1], d), BigScalar("1e-4", d)) < tol);
  CHECK(rel_err(BigScalar(quad.errors[2], d), BigScalar("1e-8", d)) < tol);
  CHECK(rel_err(BigScalar(quad.errors[3], d), BigScalar("1e-16", d)) < tol);
  // f_0 = 3 e_0 (1 + e_0)
  CHECK(rel_err(BigScalar(quad.residuals[0], d), BigScalar("0.0303", d)) < tol);

  ModelSequence scaled = generate_model_sequence(model("1e-3", "2", "1e-2", 3));
  CHECK(rel_err(BigScalar(scaled.errors[1], d), BigScalar("1e-7", d)) < tol);
  CHECK(rel_err(BigScalar(scaled.errors[2], d), BigScalar("1e-17", d)) < tol);

  // an irrational order: |e_1| = |e_0|^phi
  SyntheticModel golden = model("1", "1.61803398874989484820458683436563811772", "1e-4", 2);
  ModelSequence g = generate_model_sequence(golden);
  BigScalar e1(g.errors[1], g.digits);
  BigScalar want = pow(BigScalar("1e-4", g.digits), BigScalar(golden.rho, g.digits));
  CHECK(rel_err(e1, want) < BigScalar("1e-30", g.digits));
}

TEST_CASE("invalid models are rejected") {
  CHECK_THROWS_AS(generate_model_sequence(model("1e3", "2", "1e-2", 3)), model_invalid_error);
  CHECK_THROWS_AS(generate_model_sequence(model("1", "2", "1.5", 2)), model_invalid_error);
  CHECK_THROWS_AS(generate_model_sequence(model("1", "2", "0", 2)), model_invalid_error);
  CHECK_THROWS_AS(generate_model_sequence(model("1", "2", "1e-2", 0)), std::invalid_argument);
  CHECK_THROWS_AS(generate_model_sequence(model("1", "1", "1e-2", 3)), std::invalid_argument);
  // model JSON round-trip
  SyntheticModel m = model("1e-1", "3", "1e-3", 7);
  m.c = "0.5";
  m.sigma = "2";
  SyntheticModel back = SyntheticModel::from_json(m.to_json());
  CHECK(back.to_json().dump() == m.to_json().dump());
}

TEST_CASE("propositions hold on well-formed models") {
  PropositionReport rep =
      verify_propositions({model("1", "2", "1e-2", 8), model("0.01", "3", "1e-3", 7)});
  CHECK(rep.all_pass);
  REQUIRE(rep.models.size() == 2);
  for (const auto& v : rep.models) {
    CHECK(v.valid);
    CHECK(v.all_pass);
    std::vector<std::string> names;
    for (const auto& check : v.checks) names.push_back(check.name);
    CHECK(names == std::vector<std::string>{"order_identity", "reconstruction_hat",
                                            "reconstruction_tilde", "reconstruction_breve",
                                            "aitken_slope"});
  }
  nlohmann::ordered_json j = rep.to_json();
  CHECK(j.at("all_pass").get<bool>());
  CHECK(j.at("models").size() == 2);
}

TEST_CASE("an invalid model is skipped without failing the suite") {
  PropositionReport rep =
      verify_propositions({model("1e3", "2", "1e-2", 3), model("1", "2", "1e-2", 8)});
  CHECK(rep.all_pass);
  CHECK(!rep.models[0].valid);
  CHECK(!rep.models[0].invalid_reason.empty());
  CHECK(rep.models[0].checks.empty());
  CHECK(rep.models[1].valid);
}

TEST_CASE("the default model family verifies") {
  std::vector<SyntheticModel> models = default_proposition_models();
  CHECK(models.size() == 48);
  PropositionReport rep = verify_propositions(models);
  CHECK(rep.all_pass);
  long valid = 0, skipped = 0;
  for (const auto& v : rep.models) {
    if (v.valid) {
      ++valid;
      CHECK(v.all_pass);
    } else {
      ++skipped;
    }
  }
  // C = 1e3 defeats rho <= 1 + sqrt(2) from e_0 = 1e-2 and phi from 1e-4
  CHECK(valid == 44);
  CHECK(skipped == 4);
}

TEST_CASE("a small grid reproduces single runs and emits stable tables") {
  GridConfig config;
  config.methods = {"phi1"};
  config.problems = {"f1", "f5"};
  config.modes = {EstimatorMode::cloc};
  config.eta = 300;
  config.parallelism = 2;

  GridReport grid = run_grid(config);
  CHECK(grid.errors.empty());
  REQUIRE(grid.reports.size() == 2);
  CHECK(grid.counts.size() == 1);
  CHECK(grid.counts[0].size() == 2);
  CHECK(grid.counts[0][0] == grid.reports[0].I);
  CHECK(grid.counts[0][1] == grid.reports[1].I);
  CHECK(grid.report_for("phi1", "f5", EstimatorMode::cloc).problem_id == "f5");
  CHECK_THROWS_AS(grid.report_for("phi2", "f1", EstimatorMode::cloc), std::out_of_range);

  RunReport solo = run(method_spec("phi1"), get_problem("f1"), EstimatorMode::cloc, 300);
  CHECK(grid.reports[0].to_json().dump() == solo.to_json().dump());

  REQUIRE(grid.intervals.size() == 4);
  for (size_t kind = 0; kind < 4; ++kind) {
    const ErrorInterval& iv = grid.intervals[kind];
    CHECK(iv.method_id == "phi1");
    REQUIRE(!iv.lo.empty());
    REQUIRE(!iv.hi.empty());
    CHECK(BigScalar(iv.lo, 64) <= BigScalar(iv.hi, 64));
    // endpoints are attained by actual runs
    std::vector<std::string> cells;
    for (const auto& r : grid.reports) {
      const auto& delta = kind == 0   ? r.delta_lambda_bar
                          : kind == 1 ? r.delta_lambda_hat
                          : kind == 2 ? r.delta_lambda_tilde
                                      : r.delta_lambda_breve;
      if (delta) cells.push_back(*delta);
    }
    CHECK(std::find(cells.begin(), cells.end(), iv.lo) != cells.end());
    CHECK(std::find(cells.begin(), cells.end(), iv.hi) != cells.end());
  }

  std::string csv = emit_table(grid, "csv");
  CHECK(csv.substr(0, csv.find('\n')) ==
        "method,problem,I,delta_lambda_bar,delta_lambda_hat,delta_lambda_tilde,"
        "delta_lambda_breve");
  CHECK(csv.find("phi1,f1,") != std::string::npos);
  CHECK(csv.find("phi1,f5,") != std::string::npos);

  std::string md = emit_table(grid, "markdown");
  CHECK(md.substr(0, 2) == "| ");
  CHECK(md.find("| phi1 | f1 |") != std::string::npos);

  nlohmann::ordered_json j = nlohmann::ordered_json::parse(emit_table(grid, "json"));
  CHECK(j.at("reports").size() == 2);
  CHECK(j.at("intervals").size() == 4);

  std::string summary = emit_summary(grid, "csv");
  CHECK(summary.substr(0, summary.find('\n')) ==
        "method,I_f1,I_f5,delta_lambda_bar,delta_lambda_hat,delta_lambda_tilde,"
        "delta_lambda_breve");
  CHECK(summary.find("\"[") != std::string::npos);  // interval cells are quoted
  CHECK_THROWS_AS(emit_table(grid, "yaml"), std::invalid_argument);

  // a second sweep of the same config is byte-identical
  GridReport again = run_grid(config);
  CHECK(emit_table(again, "csv") == csv);
  CHECK(emit_summary(again, "csv") == summary);
  CHECK(again.to_json().dump() == grid.to_json().dump());
}
