#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "locorder/bigscalar.hpp"
#include "locorder/estimators.hpp"
#include "locorder/methods.hpp"
#include "locorder/problems.hpp"

namespace locorder {

enum class EstimatorMode { cloc, acloc, ecloc, pcloc };

const std::vector<EstimatorMode>& all_modes();
const char* mode_name(EstimatorMode mode);
EstimatorMode parse_mode(const std::string& name);
bool mode_needs_root(EstimatorMode mode);

struct PrecisionPolicy {
  long bootstrap_digits = 64;
  long max_digits = 0;  // 0: ceil(rho * (eta + 2)) + 1024, chosen per run
  bool monotone = true;
  long iteration_cap = 1000;
};

enum class StopReason { criterion_met, exact_zero, degenerate, iteration_cap, domain_error };

const char* stop_reason_name(StopReason reason);
StopReason parse_stop_reason(const std::string& name);

// Full trace of one driven run. All extended-precision values are carried as
// decimal strings so the report survives serialization losslessly.
struct RunReport {
  std::string method_id;
  std::string problem_id;
  EstimatorMode mode = EstimatorMode::cloc;
  long eta = 0;
  long I = 0;  // accepted iterates beyond the seeds
  StopReason stop_reason = StopReason::criterion_met;
  std::vector<std::string> iterates;        // seeds first, then x_1..x_I
  std::vector<std::string> residuals;       // f at each stored point, final precision
  std::vector<long> digits_schedule;        // working precision used for x_1..x_I
  long final_digits = 0;                    // precision in effect when the run stopped
  std::optional<std::string> lambda_bar, lambda_hat, lambda_tilde, lambda_breve;
  std::optional<std::string> delta_lambda_bar, delta_lambda_hat, delta_lambda_tilde,
      delta_lambda_breve;

  int seed_count() const;

  nlohmann::ordered_json to_json() const;
  static RunReport from_json(const nlohmann::ordered_json& j);
};

// Mantissa length the mode's schedule asks for, floor(factor * (-log10 q + 2)).
// A quantity >= 1 keeps the bootstrap precision; a zero quantity means the
// iteration already converged exactly.
long adaptive_digits(EstimatorMode mode, const BigScalar& rho, const BigScalar& quantity);

// Stopping threshold exponent T and the criterion quantity < 10^-T.
BigScalar threshold_exponent(EstimatorMode mode, const BigScalar& rho, long eta);
BigScalar stop_threshold(EstimatorMode mode, const BigScalar& rho, long eta);
bool should_stop(EstimatorMode mode, const BigScalar& rho, long eta, const BigScalar& quantity);

RunReport run(const MethodSpec& method, const TestProblem& problem, EstimatorMode mode,
              long eta, const PrecisionPolicy& policy = {});

struct LambdaSet {
  std::optional<BigScalar> bar, hat, tilde, breve;
};

// Recomputes the four order estimates at indices I, I-1, ... from the stored
// trace; values whose window the trace cannot supply are absent.
LambdaSet lambdas_at_I(const RunReport& report);

}  // namespace locorder
