#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "locorder/driver.hpp"

namespace locorder {

// Selection for a benchmark sweep. Defaults reproduce the reference dataset:
// every method against every problem, driven by the true-error schedule.
struct GridConfig {
  std::vector<std::string> methods = method_ids();
  std::vector<std::string> problems = problem_ids();
  std::vector<EstimatorMode> modes = {EstimatorMode::cloc};
  long eta = 2200;
  std::string output_dir;
  std::string format = "csv";  // csv | markdown | json
  long parallelism = 0;        // 0: hardware concurrency

  void validate() const;
  nlohmann::ordered_json to_json() const;
  static GridConfig from_json(const nlohmann::ordered_json& j);
};

// Range of |rho - lambda| over the selected problems for one method and one
// estimator. Endpoints are copies of the attained per-run delta strings.
struct ErrorInterval {
  std::string method_id;
  std::string estimator;  // cloc | acloc | ecloc | pcloc
  std::string lo;
  std::string hi;
};

struct GridReport {
  GridConfig config;
  // Ordered method-major, then problem, then mode, matching the config lists.
  std::vector<RunReport> reports;
  // I per (method, problem), taken from the first configured mode.
  std::vector<std::vector<long>> counts;
  // Four intervals per method, first configured mode. Runs whose estimate is
  // absent do not contribute.
  std::vector<ErrorInterval> intervals;
  std::vector<std::string> errors;

  const RunReport& report_for(const std::string& method_id, const std::string& problem_id,
                              EstimatorMode mode) const;
  nlohmann::ordered_json to_json() const;
};

GridReport run_grid(const GridConfig& config);

// Per-run table: method, problem, I, and the four order-estimate errors at
// four significant digits. Formats: csv, markdown, json (full grid report).
std::string emit_table(const GridReport& grid, const std::string& format);

// One row per method: iteration counts per problem and the four error
// intervals at two significant digits.
std::string emit_summary(const GridReport& grid, const std::string& format);

class model_invalid_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Prescribed-error model e_{n+1} = C |e_n|^rho (1 + c |e_n|^sigma) with
// residuals gamma e_n (1 + e_n). All parameters are decimal strings; count is
// the number of errors generated, e_0 included.
struct SyntheticModel {
  std::string C;
  std::string rho;
  std::string sigma = "1";
  std::string c = "0";
  std::string e0;
  std::string gamma = "3";
  long count = 8;

  nlohmann::ordered_json to_json() const;
  static SyntheticModel from_json(const nlohmann::ordered_json& j);
};

struct ModelSequence {
  std::vector<std::string> errors;
  std::vector<std::string> residuals;
  long digits = 0;
};

// Throws model_invalid_error unless the error magnitudes stay below one and
// decrease strictly.
ModelSequence generate_model_sequence(const SyntheticModel& model);

std::vector<SyntheticModel> default_proposition_models();

struct PropositionCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ModelVerification {
  SyntheticModel model;
  bool valid = false;
  std::string invalid_reason;
  std::vector<PropositionCheck> checks;
  bool all_pass = false;
};

struct PropositionReport {
  std::vector<ModelVerification> models;
  bool all_pass = false;  // over valid models; invalid ones are skipped

  nlohmann::ordered_json to_json() const;
};

PropositionReport verify_propositions(const std::vector<SyntheticModel>& models);

}  // namespace locorder
