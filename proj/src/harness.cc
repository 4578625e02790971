#include "locorder/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace locorder {

namespace {

constexpr long kCompareDigits = 64;

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string sci_or_empty(const std::optional<std::string>& value, int sig) {
  if (!value) return "";
  return format_sci(BigScalar(*value, kCompareDigits), sig);
}

const std::optional<std::string>& delta_of(const RunReport& r, EstimatorMode kind) {
  switch (kind) {
    case EstimatorMode::cloc: return r.delta_lambda_bar;
    case EstimatorMode::acloc: return r.delta_lambda_hat;
    case EstimatorMode::ecloc: return r.delta_lambda_tilde;
    case EstimatorMode::pcloc: return r.delta_lambda_breve;
  }
  throw std::invalid_argument("unknown estimator mode");
}

std::string join_row(const std::vector<std::string>& cells, const std::string& format) {
  std::string out;
  if (format == "markdown") {
    out = "|";
    for (const auto& c : cells) out += " " + c + " |";
  } else {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ",";
      out += csv_cell(cells[i]);
    }
  }
  return out + "\n";
}

std::string markdown_rule(size_t columns) {
  std::string out = "|";
  for (size_t i = 0; i < columns; ++i) out += " --- |";
  return out + "\n";
}

struct PresimResult {
  double max_magnitude = 0.0;  // largest -log10|e_n| reached
  long count = 0;
};

double parsed_double(const std::string& s) { return BigScalar(s, 30).to_double(); }

}  // namespace

void GridConfig::validate() const {
  if (methods.empty()) throw std::invalid_argument("grid: empty method selection");
  if (problems.empty()) throw std::invalid_argument("grid: empty problem selection");
  if (modes.empty()) throw std::invalid_argument("grid: empty mode selection");
  if (eta < 50) throw std::invalid_argument("grid: eta must be at least 50");
  if (parallelism < 0) throw std::invalid_argument("grid: parallelism must be nonnegative");
  if (format != "csv" && format != "markdown" && format != "json") {
    throw std::invalid_argument("grid: format must be csv, markdown, or json");
  }
  for (const auto& m : methods) {
    try {
      method_spec(m);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("grid: unknown method id '" + m + "'");
    }
  }
  for (const auto& p : problems) {
    try {
      get_problem(p);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("grid: unknown problem id '" + p + "'");
    }
  }
}

nlohmann::ordered_json GridConfig::to_json() const {
  nlohmann::ordered_json j;
  j["methods"] = methods;
  j["problems"] = problems;
  std::vector<std::string> mode_names;
  for (EstimatorMode m : modes) mode_names.emplace_back(mode_name(m));
  j["modes"] = mode_names;
  j["eta"] = eta;
  j["output_dir"] = output_dir;
  j["format"] = format;
  j["parallelism"] = parallelism;
  return j;
}

GridConfig GridConfig::from_json(const nlohmann::ordered_json& j) {
  GridConfig c;
  if (j.contains("methods")) c.methods = j.at("methods").get<std::vector<std::string>>();
  if (j.contains("problems")) c.problems = j.at("problems").get<std::vector<std::string>>();
  if (j.contains("modes")) {
    c.modes.clear();
    for (const auto& name : j.at("modes")) c.modes.push_back(parse_mode(name.get<std::string>()));
  }
  if (j.contains("eta")) c.eta = j.at("eta").get<long>();
  if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (j.contains("parallelism")) c.parallelism = j.at("parallelism").get<long>();
  return c;
}

const RunReport& GridReport::report_for(const std::string& method_id,
                                        const std::string& problem_id,
                                        EstimatorMode mode) const {
  auto mi = std::find(config.methods.begin(), config.methods.end(), method_id);
  auto pi = std::find(config.problems.begin(), config.problems.end(), problem_id);
  auto ei = std::find(config.modes.begin(), config.modes.end(), mode);
  if (mi == config.methods.end() || pi == config.problems.end() || ei == config.modes.end()) {
    throw std::out_of_range("grid report: run not in configured selection");
  }
  size_t idx = ((mi - config.methods.begin()) * config.problems.size() +
                (pi - config.problems.begin())) *
                   config.modes.size() +
               (ei - config.modes.begin());
  return reports[idx];
}

nlohmann::ordered_json GridReport::to_json() const {
  nlohmann::ordered_json j;
  j["config"] = config.to_json();
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& r : reports) runs.push_back(r.to_json());
  j["reports"] = runs;
  j["counts"] = counts;
  nlohmann::ordered_json ivals = nlohmann::ordered_json::array();
  for (const auto& iv : intervals) {
    nlohmann::ordered_json o;
    o["method"] = iv.method_id;
    o["estimator"] = iv.estimator;
    o["lo"] = iv.lo;
    o["hi"] = iv.hi;
    ivals.push_back(o);
  }
  j["intervals"] = ivals;
  j["errors"] = errors;
  return j;
}

GridReport run_grid(const GridConfig& config) {
  config.validate();

  const size_t n_methods = config.methods.size();
  const size_t n_problems = config.problems.size();
  const size_t n_modes = config.modes.size();
  const size_t n_tasks = n_methods * n_problems * n_modes;

  GridReport grid;
  grid.config = config;
  grid.reports.resize(n_tasks);
  std::vector<std::string> slot_errors(n_tasks);

  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      size_t k = cursor.fetch_add(1);
      if (k >= n_tasks) break;
      size_t mi = k / (n_problems * n_modes);
      size_t pi = (k / n_modes) % n_problems;
      size_t ei = k % n_modes;
      const std::string& mid = config.methods[mi];
      const std::string& pid = config.problems[pi];
      EstimatorMode mode = config.modes[ei];
      try {
        grid.reports[k] = run(method_spec(mid), get_problem(pid), mode, config.eta);
      } catch (const std::exception& e) {
        slot_errors[k] = mid + "/" + pid + "/" + mode_name(mode) + ": " + e.what();
        grid.reports[k].method_id = mid;
        grid.reports[k].problem_id = pid;
        grid.reports[k].mode = mode;
        grid.reports[k].eta = config.eta;
        grid.reports[k].stop_reason = StopReason::degenerate;
      }
    }
  };

  size_t jobs = config.parallelism > 0 ? static_cast<size_t>(config.parallelism)
                                       : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, n_tasks);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& e : slot_errors) {
    if (!e.empty()) grid.errors.push_back(e);
  }

  auto first_mode_report = [&](size_t mi, size_t pi) -> const RunReport& {
    return grid.reports[(mi * n_problems + pi) * n_modes];
  };
  grid.counts.assign(n_methods, std::vector<long>(n_problems, 0));
  for (size_t mi = 0; mi < n_methods; ++mi) {
    for (size_t pi = 0; pi < n_problems; ++pi) {
      grid.counts[mi][pi] = first_mode_report(mi, pi).I;
    }
  }
  for (size_t mi = 0; mi < n_methods; ++mi) {
    for (EstimatorMode kind : all_modes()) {
      ErrorInterval iv;
      iv.method_id = config.methods[mi];
      iv.estimator = mode_name(kind);
      std::optional<BigScalar> lo, hi;
      for (size_t pi = 0; pi < n_problems; ++pi) {
        const auto& delta = delta_of(first_mode_report(mi, pi), kind);
        if (!delta) continue;
        BigScalar v(*delta, kCompareDigits);
        if (!lo || v < *lo) {
          lo = v;
          iv.lo = *delta;
        }
        if (!hi || v > *hi) {
          hi = v;
          iv.hi = *delta;
        }
      }
      grid.intervals.push_back(std::move(iv));
    }
  }
  return grid;
}

std::string emit_table(const GridReport& grid, const std::string& format) {
  if (format == "json") return grid.to_json().dump(2) + "\n";
  if (format != "csv" && format != "markdown") {
    throw std::invalid_argument("emit_table: format must be csv, markdown, or json");
  }
  std::string out;
  std::vector<std::string> header = {"method",           "problem",
                                     "I",                "delta_lambda_bar",
                                     "delta_lambda_hat", "delta_lambda_tilde",
                                     "delta_lambda_breve"};
  out += join_row(header, format);
  if (format == "markdown") out += markdown_rule(header.size());
  for (const auto& r : grid.reports) {
    std::vector<std::string> cells = {r.method_id,
                                      r.problem_id,
                                      std::to_string(r.I),
                                      sci_or_empty(r.delta_lambda_bar, 4),
                                      sci_or_empty(r.delta_lambda_hat, 4),
                                      sci_or_empty(r.delta_lambda_tilde, 4),
                                      sci_or_empty(r.delta_lambda_breve, 4)};
    out += join_row(cells, format);
  }
  return out;
}

std::string emit_summary(const GridReport& grid, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["counts"] = grid.counts;
    nlohmann::ordered_json ivals = nlohmann::ordered_json::array();
    for (const auto& iv : grid.intervals) {
      nlohmann::ordered_json o;
      o["method"] = iv.method_id;
      o["estimator"] = iv.estimator;
      o["lo"] = iv.lo;
      o["hi"] = iv.hi;
      ivals.push_back(o);
    }
    j["intervals"] = ivals;
    return j.dump(2) + "\n";
  }
  if (format != "csv" && format != "markdown") {
    throw std::invalid_argument("emit_summary: format must be csv, markdown, or json");
  }
  auto interval_cell = [&](size_t mi, size_t kind) -> std::string {
    const ErrorInterval& iv = grid.intervals[mi * 4 + kind];
    if (iv.lo.empty() || iv.hi.empty()) return "";
    return "[" + format_sci(BigScalar(iv.lo, kCompareDigits), 2) + ", " +
           format_sci(BigScalar(iv.hi, kCompareDigits), 2) + "]";
  };
  std::string out;
  std::vector<std::string> header = {"method"};
  for (const auto& p : grid.config.problems) header.push_back("I_" + p);
  header.insert(header.end(), {"delta_lambda_bar", "delta_lambda_hat", "delta_lambda_tilde",
                               "delta_lambda_breve"});
  out += join_row(header, format);
  if (format == "markdown") out += markdown_rule(header.size());
  for (size_t mi = 0; mi < grid.config.methods.size(); ++mi) {
    std::vector<std::string> cells = {grid.config.methods[mi]};
    for (size_t pi = 0; pi < grid.config.problems.size(); ++pi) {
      cells.push_back(std::to_string(grid.counts[mi][pi]));
    }
    for (size_t kind = 0; kind < 4; ++kind) cells.push_back(interval_cell(mi, kind));
    out += join_row(cells, format);
  }
  return out;
}

nlohmann::ordered_json SyntheticModel::to_json() const {
  nlohmann::ordered_json j;
  j["C"] = C;
  j["rho"] = rho;
  j["sigma"] = sigma;
  j["c"] = c;
  j["e0"] = e0;
  j["gamma"] = gamma;
  j["count"] = count;
  return j;
}

SyntheticModel SyntheticModel::from_json(const nlohmann::ordered_json& j) {
  SyntheticModel m;
  m.C = j.at("C").get<std::string>();
  m.rho = j.at("rho").get<std::string>();
  if (j.contains("sigma")) m.sigma = j.at("sigma").get<std::string>();
  if (j.contains("c")) m.c = j.at("c").get<std::string>();
  m.e0 = j.at("e0").get<std::string>();
  if (j.contains("gamma")) m.gamma = j.at("gamma").get<std::string>();
  if (j.contains("count")) m.count = j.at("count").get<long>();
  return m;
}

ModelSequence generate_model_sequence(const SyntheticModel& model) {
  if (model.count < 1) throw std::invalid_argument("model: count must be positive");

  double log_c_abs = std::log10(std::fabs(parsed_double(model.C)));
  double rho_d = parsed_double(model.rho);
  double e0_d = std::fabs(parsed_double(model.e0));
  if (!(rho_d > 1.0)) throw std::invalid_argument("model: rho must exceed one");
  if (e0_d == 0.0) throw model_invalid_error("model: e0 must be nonzero");

  double magnitude = -std::log10(e0_d);
  double max_magnitude = magnitude;
  for (long n = 1; n < model.count; ++n) {
    magnitude = rho_d * magnitude - log_c_abs;
    max_magnitude = std::max(max_magnitude, magnitude);
  }
  if (!(max_magnitude < 2e6)) {
    throw std::invalid_argument("model: sequence magnitude exceeds the supported precision");
  }
  long digits = std::max<long>(64, static_cast<long>(std::ceil(std::max(0.0, max_magnitude))) + 40);

  const BigScalar C(model.C, digits);
  const BigScalar rho(model.rho, digits);
  const BigScalar sigma(model.sigma, digits);
  const BigScalar c(model.c, digits);
  const BigScalar gamma(model.gamma, digits);
  const BigScalar one(1, digits);

  ModelSequence seq;
  seq.digits = digits;
  BigScalar e(model.e0, digits);
  for (long n = 0; n < model.count; ++n) {
    BigScalar mag = abs(e);
    if (mag >= one) {
      throw model_invalid_error("model: |e_" + std::to_string(n) + "| is not below one");
    }
    if (n > 0) {
      BigScalar prev(seq.errors.back(), digits);
      if (mag >= abs(prev)) {
        throw model_invalid_error("model: |e_" + std::to_string(n) + "| does not decrease");
      }
    }
    seq.errors.push_back(e.str());
    seq.residuals.push_back((gamma * e * (one + e)).str());
    if (n + 1 < model.count) {
      BigScalar correction = c.is_zero() ? one : one + c * pow(mag, sigma);
      e = C * pow(mag, rho) * correction;
    }
  }
  return seq;
}

std::vector<SyntheticModel> default_proposition_models() {
  static const std::vector<std::string> constants = {"1e-3", "1e-1", "10", "1e3"};
  static const std::vector<std::string> seeds = {"1e-2", "1e-4"};

  std::vector<std::string> orders;
  for (const auto& mid : method_ids()) orders.push_back(order_of(mid, 80).str(78));

  auto presim_count = [](double log_c_abs, double rho_d, double d0) -> long {
    double d = d0;
    long n = 0;
    while (n < 40) {
      double next = rho_d * d - log_c_abs;
      if (next <= d) return n + 2;
      d = next;
      ++n;
      if (d >= 120.0 && n >= 6) break;
    }
    return n + 1;
  };

  std::vector<SyntheticModel> models;
  for (const auto& C : constants) {
    for (const auto& rho : orders) {
      for (const auto& e0 : seeds) {
        SyntheticModel m;
        m.C = C;
        m.rho = rho;
        m.e0 = e0;
        m.count = presim_count(std::log10(std::fabs(parsed_double(C))), parsed_double(rho),
                               -std::log10(std::fabs(parsed_double(e0))));
        models.push_back(std::move(m));
      }
    }
  }
  return models;
}

namespace {

BigScalar magnitude_log10(const BigScalar& x) { return log10(abs(x)); }

PropositionCheck log_magnitude_check(const std::string& name, const BigScalar& recon,
                                     const BigScalar& truth) {
  PropositionCheck check;
  check.name = name;
  BigScalar truth_mag = magnitude_log10(truth);
  BigScalar err = abs(magnitude_log10(recon) - truth_mag);
  check.pass = err <= abs(truth_mag) * BigScalar("0.01", kCompareDigits);
  check.detail = "log10|reconstructed|=" + format_sci(magnitude_log10(recon), 6) +
                 " log10|true|=" + format_sci(truth_mag, 6);
  return check;
}

ModelVerification verify_one(const SyntheticModel& model) {
  ModelVerification v;
  v.model = model;
  ModelSequence seq;
  try {
    seq = generate_model_sequence(model);
  } catch (const model_invalid_error& e) {
    v.invalid_reason = e.what();
    return v;
  }
  v.valid = true;

  const long digits = seq.digits;
  const BigScalar rho(model.rho, digits);
  const BigScalar C(model.C, digits);
  const BigScalar c(model.c, digits);
  const BigScalar one(1, digits);
  const BigScalar two(2, digits);

  std::vector<BigScalar> e;
  std::vector<BigScalar> f;
  for (const auto& s : seq.errors) e.emplace_back(s, digits);
  for (const auto& s : seq.residuals) f.emplace_back(s, digits);
  const size_t n = e.size() - 1;

  auto aitken_error = [&](size_t k) {
    BigScalar d1 = e[k] - e[k - 1];
    BigScalar d2 = e[k] - two * e[k - 1] + e[k - 2];
    return d1 * d1 / d2;
  };

  if (n >= 1) {
    PropositionCheck check;
    check.name = "order_identity";
    BigScalar lam = log(abs(e[n])) / log(abs(e[n - 1]));
    if (c.is_zero()) {
      BigScalar pred = rho + log(abs(C)) / log(abs(e[n - 1]));
      BigScalar rel = abs(lam - pred) / abs(pred);
      check.pass = rel <= BigScalar("1e-15", kCompareDigits);
      check.detail = "lambda_bar=" + lam.str(20) + " predicted=" + pred.str(20);
    } else {
      check.pass = abs(lam - rho) <= BigScalar("0.5", kCompareDigits);
      check.detail = "lambda_bar=" + lam.str(20) + " rho=" + rho.str(20);
    }
    v.checks.push_back(std::move(check));
  }
  if (n >= 2) {
    BigScalar q_hat = abs((e[n] - e[n - 1]) / (e[n - 1] - e[n - 2]));
    BigScalar recon_hat = pow(abs(C), one / (one - rho)) * pow(q_hat, rho * rho / (rho - one));
    v.checks.push_back(log_magnitude_check("reconstruction_hat", recon_hat, e[n]));

    BigScalar te = aitken_error(n);
    BigScalar recon_tilde = pow(abs(C), (rho - one) / (two * rho - one)) *
                            pow(abs(te), rho * rho / (two * rho - one));
    v.checks.push_back(log_magnitude_check("reconstruction_tilde", recon_tilde, e[n]));
  }
  if (n >= 1) {
    BigScalar q_breve = abs(f[n] / f[n - 1]);
    BigScalar recon_breve = pow(abs(C), one / (one - rho)) * pow(q_breve, rho / (rho - one));
    v.checks.push_back(log_magnitude_check("reconstruction_breve", recon_breve, e[n]));
  }
  if (n >= 5) {
    PropositionCheck check;
    check.name = "aitken_slope";
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = n - 3; k <= n; ++k) {
      double x = magnitude_log10(e[k]).to_double();
      double y = magnitude_log10(aitken_error(k)).to_double();
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    double rho_d = rho.to_double();
    double target = (2 * rho_d - 1) / (rho_d * rho_d);
    check.pass = std::fabs(slope - target) <= 1e-3 * std::fabs(target);
    std::ostringstream os;
    os << "slope=" << slope << " target=" << target;
    check.detail = os.str();
    v.checks.push_back(std::move(check));
  }

  v.all_pass = !v.checks.empty();
  for (const auto& check : v.checks) v.all_pass = v.all_pass && check.pass;
  return v;
}

}  // namespace

PropositionReport verify_propositions(const std::vector<SyntheticModel>& models) {
  PropositionReport report;
  report.all_pass = true;
  for (const auto& m : models) {
    ModelVerification v = verify_one(m);
    if (v.valid) report.all_pass = report.all_pass && v.all_pass;
    report.models.push_back(std::move(v));
  }
  return report;
}

nlohmann::ordered_json PropositionReport::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& v : models) {
    nlohmann::ordered_json o;
    o["model"] = v.model.to_json();
    o["valid"] = v.valid;
    if (!v.valid) o["invalid_reason"] = v.invalid_reason;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& check : v.checks) {
      nlohmann::ordered_json co;
      co["name"] = check.name;
      co["pass"] = check.pass;
      co["detail"] = check.detail;
      checks.push_back(co);
    }
    o["checks"] = checks;
    o["all_pass"] = v.all_pass;
    entries.push_back(o);
  }
  j["models"] = entries;
  j["all_pass"] = all_pass;
  return j;
}

}  // namespace locorder
