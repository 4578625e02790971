#include "locorder/driver.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace locorder {

namespace {

constexpr long kScheduleDigits = 64;
constexpr long kLambdaDigits = 40;
constexpr long kResidualDigits = 50;

BigScalar mode_factor(EstimatorMode mode, const BigScalar& rho) {
  const BigScalar one(1, rho.digits());
  const BigScalar two(2, rho.digits());
  switch (mode) {
    case EstimatorMode::cloc:
      return rho;
    case EstimatorMode::acloc:
      return rho * rho * rho / (rho - one);
    case EstimatorMode::ecloc:
      return rho * rho * rho / (two * rho - one);
    case EstimatorMode::pcloc:
      return rho * rho / (rho - one);
  }
  throw std::invalid_argument("unknown estimator mode");
}

// Reference roots are deterministic, so refining once per (problem, digits)
// and sharing the decimal string across runs is safe.
std::string cached_root_value(const TestProblem& problem, long digits) {
  static std::mutex mu;
  static std::map<std::pair<std::string, long>, std::string> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(problem.id, digits);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, reference_root(problem, digits).value).first;
  }
  return it->second;
}

BigScalar root_for(const TestProblem& problem, long eta) {
  return BigScalar(cached_root_value(problem, eta + 64), eta + 84);
}

BigScalar widened(const BigScalar& x, long digits) {
  return x.digits() >= digits ? x : x.with_digits(digits);
}

// Driving magnitude evaluated at the candidate's index, or absent while the
// mode's window is not yet available.
std::optional<BigScalar> driving_quantity(EstimatorMode mode, const TestProblem& problem,
                                          const std::vector<BigScalar>& xs, const BigScalar& xc,
                                          long digits, const std::optional<BigScalar>& alpha,
                                          long eta) {
  switch (mode) {
    case EstimatorMode::cloc:
      return abs(xc.with_digits(eta + 80) - *alpha);
    case EstimatorMode::acloc: {
      if (xs.size() < 2) return std::nullopt;
      BigScalar den = xs[xs.size() - 1].with_digits(digits + 20) - xs[xs.size() - 2];
      if (den.is_zero()) throw degenerate_error("quantity: equal iterates");
      return abs((xc.with_digits(digits + 20) - xs.back()) / den);
    }
    case EstimatorMode::ecloc: {
      if (xs.size() < 2) return std::nullopt;
      BigScalar xw = xc.with_digits(digits + 20);
      BigScalar dd = xw - BigScalar(2, digits + 20) * xs.back() + xs[xs.size() - 2];
      if (dd.is_zero()) throw degenerate_error("quantity: zero second difference");
      BigScalar d = xw - xs.back();
      return abs(d * d / dd);
    }
    case EstimatorMode::pcloc: {
      BigScalar fn = eval(problem, xc, 0, digits);
      BigScalar fm = eval(problem, xs.back(), 0, digits);
      if (fm.is_zero()) throw degenerate_error("quantity: zero residual");
      return abs(fn / fm);
    }
  }
  throw std::invalid_argument("unknown estimator mode");
}

std::optional<std::string> estimate_str(const Estimate& est) {
  if (est.status != EstimateStatus::ok) return std::nullopt;
  return est.value.str(kLambdaDigits);
}

std::optional<std::string> delta_str(const Estimate& est, const BigScalar& rho) {
  if (est.status != EstimateStatus::ok) return std::nullopt;
  return abs(rho - est.value).str(kLambdaDigits);
}

// The four Definition-style order estimates at the admissible index, from
// in-memory iterates. Window precisions: true errors at eta + 80 digits,
// iterate differences at final + 20, residuals at the final working
// precision.
void fill_lambdas(RunReport& report, const TestProblem& problem,
                  const std::vector<BigScalar>& xs, long final_digits) {
  size_t n = xs.size() - 1;
  BigScalar rho = order_of(report.method_id, kScheduleDigits);
  if (report.I >= 1) {
    BigScalar alpha = root_for(problem, report.eta);
    BigScalar e_n = xs[n].with_digits(report.eta + 80) - alpha;
    BigScalar e_m = xs[n - 1].with_digits(report.eta + 80) - alpha;
    Estimate bar = cloc(e_n, e_m);
    report.lambda_bar = estimate_str(bar);
    report.delta_lambda_bar = delta_str(bar, rho);

    try {
      BigScalar f_n = eval(problem, xs[n], 0, final_digits);
      BigScalar f_m = eval(problem, xs[n - 1], 0, final_digits);
      Estimate breve = pcloc(f_n, f_m);
      report.lambda_breve = estimate_str(breve);
      report.delta_lambda_breve = delta_str(breve, rho);
    } catch (const std::domain_error&) {
      // an accepted iterate can sit outside f's domain after a domain_error
      // stop; the residual estimator is then simply unavailable
    }
  }
  if (report.I >= 2) {
    Estimate hat = acloc(widened(xs[n], final_digits + 20),
                         widened(xs[n - 1], final_digits + 20), xs[n - 2]);
    report.lambda_hat = estimate_str(hat);
    report.delta_lambda_hat = delta_str(hat, rho);
  }
  if (report.I >= 3) {
    Estimate tilde = ecloc(widened(xs[n], final_digits + 20),
                           widened(xs[n - 1], final_digits + 20),
                           widened(xs[n - 2], final_digits + 20), xs[n - 3]);
    report.lambda_tilde = estimate_str(tilde);
    report.delta_lambda_tilde = delta_str(tilde, rho);
  }
}

void fill_residuals(RunReport& report, const TestProblem& problem,
                    const std::vector<BigScalar>& xs, long final_digits) {
  report.residuals.clear();
  for (const auto& x : xs) {
    try {
      report.residuals.push_back(eval(problem, x, 0, final_digits).str(kResidualDigits));
    } catch (const std::domain_error&) {
      report.residuals.push_back("nan");
    }
  }
}

}  // namespace

const std::vector<EstimatorMode>& all_modes() {
  static const std::vector<EstimatorMode> modes = {EstimatorMode::cloc, EstimatorMode::acloc,
                                                   EstimatorMode::ecloc, EstimatorMode::pcloc};
  return modes;
}

const char* mode_name(EstimatorMode mode) {
  switch (mode) {
    case EstimatorMode::cloc: return "cloc";
    case EstimatorMode::acloc: return "acloc";
    case EstimatorMode::ecloc: return "ecloc";
    case EstimatorMode::pcloc: return "pcloc";
  }
  throw std::invalid_argument("unknown estimator mode");
}

EstimatorMode parse_mode(const std::string& name) {
  for (EstimatorMode m : all_modes()) {
    if (name == mode_name(m)) return m;
  }
  throw std::invalid_argument("unknown estimator mode: '" + name + "'");
}

bool mode_needs_root(EstimatorMode mode) { return mode == EstimatorMode::cloc; }

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::criterion_met: return "criterion_met";
    case StopReason::exact_zero: return "exact_zero";
    case StopReason::degenerate: return "degenerate";
    case StopReason::iteration_cap: return "iteration_cap";
    case StopReason::domain_error: return "domain_error";
  }
  throw std::invalid_argument("unknown stop reason");
}

StopReason parse_stop_reason(const std::string& name) {
  for (StopReason r : {StopReason::criterion_met, StopReason::exact_zero, StopReason::degenerate,
                       StopReason::iteration_cap, StopReason::domain_error}) {
    if (name == stop_reason_name(r)) return r;
  }
  throw std::invalid_argument("unknown stop reason: '" + name + "'");
}

int RunReport::seed_count() const { return static_cast<int>(iterates.size()) - static_cast<int>(I); }

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["method_id"] = method_id;
  j["problem_id"] = problem_id;
  j["mode"] = mode_name(mode);
  j["eta"] = eta;
  j["I"] = I;
  j["stop_reason"] = stop_reason_name(stop_reason);
  j["iterates"] = iterates;
  j["residuals"] = residuals;
  j["digits_schedule"] = digits_schedule;
  j["final_digits"] = final_digits;
  auto put = [&j](const char* key, const std::optional<std::string>& v) {
    if (v) {
      j[key] = *v;
    } else {
      j[key] = nullptr;
    }
  };
  put("lambda_bar", lambda_bar);
  put("lambda_hat", lambda_hat);
  put("lambda_tilde", lambda_tilde);
  put("lambda_breve", lambda_breve);
  put("delta_lambda_bar", delta_lambda_bar);
  put("delta_lambda_hat", delta_lambda_hat);
  put("delta_lambda_tilde", delta_lambda_tilde);
  put("delta_lambda_breve", delta_lambda_breve);
  return j;
}

RunReport RunReport::from_json(const nlohmann::ordered_json& j) {
  RunReport r;
  r.method_id = j.at("method_id").get<std::string>();
  r.problem_id = j.at("problem_id").get<std::string>();
  r.mode = parse_mode(j.at("mode").get<std::string>());
  r.eta = j.at("eta").get<long>();
  r.I = j.at("I").get<long>();
  r.stop_reason = parse_stop_reason(j.at("stop_reason").get<std::string>());
  r.iterates = j.at("iterates").get<std::vector<std::string>>();
  r.residuals = j.at("residuals").get<std::vector<std::string>>();
  r.digits_schedule = j.at("digits_schedule").get<std::vector<long>>();
  r.final_digits = j.at("final_digits").get<long>();
  auto opt = [&j](const char* key) -> std::optional<std::string> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<std::string>();
  };
  r.lambda_bar = opt("lambda_bar");
  r.lambda_hat = opt("lambda_hat");
  r.lambda_tilde = opt("lambda_tilde");
  r.lambda_breve = opt("lambda_breve");
  r.delta_lambda_bar = opt("delta_lambda_bar");
  r.delta_lambda_hat = opt("delta_lambda_hat");
  r.delta_lambda_tilde = opt("delta_lambda_tilde");
  r.delta_lambda_breve = opt("delta_lambda_breve");
  return r;
}

long adaptive_digits(EstimatorMode mode, const BigScalar& rho, const BigScalar& quantity) {
  if (quantity.is_zero()) throw std::domain_error("adaptive_digits: converged exactly");
  BigScalar q = abs(quantity).with_digits(kScheduleDigits);
  if (q >= BigScalar(1, kScheduleDigits)) return 0;
  BigScalar r = rho.with_digits(kScheduleDigits);
  // The tiny pre-floor nudge keeps quantities that are exact powers of ten on
  // the intended side of the integer boundary; real iteration quantities
  // never land within 1e-12 of one.
  BigScalar want = mode_factor(mode, r) * (-log10(q) + BigScalar(2, kScheduleDigits)) +
                   BigScalar("1e-12", kScheduleDigits);
  return floor(want).to_long();
}

BigScalar threshold_exponent(EstimatorMode mode, const BigScalar& rho, long eta) {
  BigScalar r = rho.with_digits(kScheduleDigits);
  BigScalar e(eta, kScheduleDigits);
  const BigScalar one(1, kScheduleDigits);
  const BigScalar two(2, kScheduleDigits);
  switch (mode) {
    case EstimatorMode::cloc: return e;
    case EstimatorMode::acloc: return e * (r - one) / (r * r);
    case EstimatorMode::ecloc: return e * (two * r - one) / (r * r);
    case EstimatorMode::pcloc: return e * (r - one) / r;
  }
  throw std::invalid_argument("unknown estimator mode");
}

BigScalar stop_threshold(EstimatorMode mode, const BigScalar& rho, long eta) {
  return pow(BigScalar(10, kScheduleDigits), -threshold_exponent(mode, rho, eta));
}

bool should_stop(EstimatorMode mode, const BigScalar& rho, long eta, const BigScalar& quantity) {
  return abs(quantity) < stop_threshold(mode, rho, eta);
}

RunReport run(const MethodSpec& method, const TestProblem& problem, EstimatorMode mode,
              long eta, const PrecisionPolicy& policy) {
  if (eta < 1) throw std::invalid_argument("run: eta must be positive");
  if (policy.bootstrap_digits < 30) {
    throw std::invalid_argument("run: bootstrap_digits must be at least 30");
  }
  BigScalar rho = order_of(method, kScheduleDigits);
  long auto_cap =
      (-floor(-(rho * BigScalar(eta + 2, kScheduleDigits)))).to_long() + 1024;
  long cap = policy.max_digits > 0 ? policy.max_digits : auto_cap;
  if (cap < auto_cap - 1024 + 64) {
    throw std::invalid_argument("run: max_digits below ceil(rho*(eta+2)) + 64");
  }

  RunReport report;
  report.method_id = method.id;
  report.problem_id = problem.id;
  report.mode = mode;
  report.eta = eta;

  const long boot = policy.bootstrap_digits;
  std::vector<BigScalar> xs;
  if (method.memory == 1) {
    xs.emplace_back(problem.x_minus1_x0.first, boot);
    xs.emplace_back(problem.x_minus1_x0.second, boot);
  } else {
    xs.emplace_back(problem.x0, boot);
  }
  const long i0 = method.memory == 1 ? -1 : 0;
  auto newest_index = [&] { return i0 + static_cast<long>(xs.size()) - 1; };

  std::optional<BigScalar> alpha;
  if (mode_needs_root(mode)) alpha = root_for(problem, eta);

  const BigScalar thresh = stop_threshold(mode, rho, eta);
  long digits = boot;
  bool finished = false;

  try {
    if (eval(problem, xs.back(), 0, boot).is_zero()) {
      report.I = newest_index();
      report.stop_reason = StopReason::exact_zero;
      finished = true;
    }
  } catch (const std::domain_error&) {
    report.I = newest_index();
    report.stop_reason = StopReason::domain_error;
    finished = true;
  }

  for (long it = 0; it < policy.iteration_cap && !finished; ++it) {
    std::optional<BigScalar> q;
    try {
      MethodState state;
      state.current = xs.back();
      if (method.memory == 1) state.previous = xs[xs.size() - 2];
      BigScalar xc = step(method, state, problem, digits);
      if (!xc.is_finite()) throw degenerate_error("step: non-finite iterate");
      q = driving_quantity(mode, problem, xs, xc, digits, alpha, eta);
      if (q && q->is_zero()) {
        xs.push_back(std::move(xc));
        report.digits_schedule.push_back(digits);
        report.I = newest_index();
        report.stop_reason = StopReason::exact_zero;
        finished = true;
        break;
      }
      if (q && *q < thresh) {
        // The candidate would need a longer mantissa than the criterion
        // grants, so it is discarded and the previous iterate is the best
        // admissible point.
        report.I = newest_index();
        report.stop_reason = StopReason::criterion_met;
        finished = true;
        break;
      }
      xs.push_back(std::move(xc));
      report.digits_schedule.push_back(digits);
    } catch (const degenerate_error&) {
      report.I = newest_index();
      report.stop_reason = StopReason::degenerate;
      finished = true;
      break;
    } catch (const std::domain_error&) {
      report.I = newest_index();
      report.stop_reason = StopReason::domain_error;
      finished = true;
      break;
    }
    if (q && *q < BigScalar(1, kScheduleDigits)) {
      long want = adaptive_digits(mode, rho, *q);
      long next = policy.monotone ? std::max(digits, want) : std::max(want, boot);
      digits = std::min(next, cap);
    }
  }
  if (!finished) {
    report.I = newest_index();
    report.stop_reason = StopReason::iteration_cap;
  }

  report.final_digits = digits;
  for (const auto& x : xs) report.iterates.push_back(x.str());
  fill_residuals(report, problem, xs, digits);
  fill_lambdas(report, problem, xs, digits);
  return report;
}

LambdaSet lambdas_at_I(const RunReport& report) {
  const TestProblem& problem = get_problem(report.problem_id);
  const long dig = report.final_digits;

  std::vector<BigScalar> xs;
  long seed_digits = report.digits_schedule.empty() ? dig : report.digits_schedule.front();
  for (size_t k = 0; k < report.iterates.size(); ++k) {
    long k_accepted = static_cast<long>(k) - (report.seed_count() - 1) - 1;
    long d = k_accepted < 0 ? seed_digits : report.digits_schedule[static_cast<size_t>(k_accepted)];
    xs.emplace_back(report.iterates[k], d);
  }

  LambdaSet out;
  if (xs.size() < 2) return out;
  size_t n = xs.size() - 1;
  if (report.I >= 1) {
    BigScalar alpha = root_for(problem, report.eta);
    Estimate bar = cloc(xs[n].with_digits(report.eta + 80) - alpha,
                        xs[n - 1].with_digits(report.eta + 80) - alpha);
    if (bar.status == EstimateStatus::ok) out.bar = bar.value;
    try {
      Estimate breve = pcloc(eval(problem, xs[n], 0, dig), eval(problem, xs[n - 1], 0, dig));
      if (breve.status == EstimateStatus::ok) out.breve = breve.value;
    } catch (const std::domain_error&) {
    }
  }
  if (report.I >= 2) {
    Estimate hat =
        acloc(widened(xs[n], dig + 20), widened(xs[n - 1], dig + 20), xs[n - 2]);
    if (hat.status == EstimateStatus::ok) out.hat = hat.value;
  }
  if (report.I >= 3) {
    Estimate tilde = ecloc(widened(xs[n], dig + 20), widened(xs[n - 1], dig + 20),
                           widened(xs[n - 2], dig + 20), xs[n - 3]);
    if (tilde.status == EstimateStatus::ok) out.tilde = tilde.value;
  }
  return out;
}

}  // namespace locorder
