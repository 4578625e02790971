#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "locorder/driver.hpp"
#include "locorder/harness.hpp"

namespace {

using namespace locorder;

constexpr int kExitRunFailed = 1;
constexpr int kExitUsage = 2;

std::string delta_cell(const std::optional<std::string>& delta) {
  if (!delta) return "";
  return format_sci(BigScalar(*delta, 64), 4);
}

void print_run_text(const RunReport& report, bool trace) {
  std::cout << "method        " << report.method_id << "\n";
  std::cout << "problem       " << report.problem_id << "\n";
  std::cout << "mode          " << mode_name(report.mode) << "\n";
  std::cout << "eta           " << report.eta << "\n";
  std::cout << "I             " << report.I << "\n";
  std::cout << "stop_reason   " << stop_reason_name(report.stop_reason) << "\n";
  std::cout << "final_digits  " << report.final_digits << "\n";
  auto lam = [](const std::optional<std::string>& l, const std::optional<std::string>& d) {
    if (!l) return std::string("-");
    return format_sci(BigScalar(*l, 64), 12) + "  (delta " + delta_cell(d) + ")";
  };
  std::cout << "lambda_bar    " << lam(report.lambda_bar, report.delta_lambda_bar) << "\n";
  std::cout << "lambda_hat    " << lam(report.lambda_hat, report.delta_lambda_hat) << "\n";
  std::cout << "lambda_tilde  " << lam(report.lambda_tilde, report.delta_lambda_tilde) << "\n";
  std::cout << "lambda_breve  " << lam(report.lambda_breve, report.delta_lambda_breve) << "\n";
  if (trace) {
    int seeds = report.seed_count();
    for (size_t k = 0; k < report.iterates.size(); ++k) {
      long n = static_cast<long>(k) - (seeds - 1);
      long dig = n <= 0 ? (report.digits_schedule.empty() ? report.final_digits
                                                          : report.digits_schedule.front())
                        : report.digits_schedule[static_cast<size_t>(n - 1)];
      std::cout << "x_" << n << " [" << dig << " digits] = " << report.iterates[k] << "\n";
      std::cout << "f_" << n << " = " << report.residuals[k] << "\n";
    }
  }
}

void print_run_table(const RunReport& report, const std::string& format) {
  std::vector<std::string> header = {"method",           "problem",
                                     "I",                "delta_lambda_bar",
                                     "delta_lambda_hat", "delta_lambda_tilde",
                                     "delta_lambda_breve"};
  std::vector<std::string> cells = {report.method_id,
                                    report.problem_id,
                                    std::to_string(report.I),
                                    delta_cell(report.delta_lambda_bar),
                                    delta_cell(report.delta_lambda_hat),
                                    delta_cell(report.delta_lambda_tilde),
                                    delta_cell(report.delta_lambda_breve)};
  if (format == "markdown") {
    auto row = [](const std::vector<std::string>& cs) {
      std::string out = "|";
      for (const auto& c : cs) out += " " + c + " |";
      return out + "\n";
    };
    std::cout << row(header);
    std::string rule = "|";
    for (size_t i = 0; i < header.size(); ++i) rule += " --- |";
    std::cout << rule << "\n" << row(cells);
  } else {
    auto row = [](const std::vector<std::string>& cs) {
      std::string out;
      for (size_t i = 0; i < cs.size(); ++i) {
        if (i) out += ",";
        out += cs[i];
      }
      return out + "\n";
    };
    std::cout << row(header) << row(cells);
  }
}

int cmd_run(const std::string& method, const std::string& problem, const std::string& mode_s,
            long eta, bool trace, const std::string& format) {
  RunReport report = run(method_spec(method), get_problem(problem), parse_mode(mode_s), eta);
  if (format == "json") {
    std::cout << report.to_json().dump(2) << "\n";
  } else if (format == "csv" || format == "markdown") {
    print_run_table(report, format);
  } else if (format == "text") {
    print_run_text(report, trace);
  } else {
    throw std::invalid_argument("run: format must be text, csv, markdown, or json");
  }
  bool ok = report.stop_reason == StopReason::criterion_met ||
            report.stop_reason == StopReason::exact_zero;
  return ok ? 0 : kExitRunFailed;
}

int cmd_grid(const GridConfig& config) {
  GridReport grid = run_grid(config);
  const std::string& fmt = config.format;
  if (config.output_dir.empty()) {
    std::cout << emit_table(grid, fmt);
    if (fmt != "json") {
      std::cout << "\n" << emit_summary(grid, fmt);
    }
  } else {
    std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    auto write = [&dir](const std::string& name, const std::string& content) {
      std::filesystem::path p = dir / name;
      std::ofstream out(p);
      out << content;
      if (!out) throw std::runtime_error("grid: cannot write " + p.string());
      std::cout << "wrote " << p.string() << "\n";
    };
    if (fmt == "json") {
      write("grid.json", emit_table(grid, "json"));
    } else {
      const char* ext = fmt == "markdown" ? "md" : "csv";
      write(std::string("runs.") + ext, emit_table(grid, fmt));
      write(std::string("summary.") + ext, emit_summary(grid, fmt));
    }
    if (fmt != "json") std::cout << "\n" << emit_summary(grid, fmt);
  }
  int failed = 0;
  for (const auto& r : grid.reports) {
    if (r.stop_reason != StopReason::criterion_met && r.stop_reason != StopReason::exact_zero) {
      ++failed;
    }
  }
  if (!grid.errors.empty()) {
    for (const auto& e : grid.errors) std::cerr << "error: " << e << "\n";
    return kExitRunFailed;
  }
  if (failed > 0) {
    std::cerr << failed << " run(s) stopped without meeting the criterion\n";
    return kExitRunFailed;
  }
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& models_path) {
  if (suite != "propositions") {
    throw std::invalid_argument("verify: unknown suite '" + suite + "'");
  }
  std::vector<SyntheticModel> models;
  if (models_path.empty()) {
    models = default_proposition_models();
  } else {
    std::ifstream in(models_path);
    if (!in) throw std::invalid_argument("verify: cannot read " + models_path);
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
    for (const auto& item : j) models.push_back(SyntheticModel::from_json(item));
  }
  PropositionReport report = verify_propositions(models);
  long valid = 0, skipped = 0, failed = 0;
  for (const auto& v : report.models) {
    std::string label = "C=" + v.model.C + " rho=" + BigScalar(v.model.rho, 20).str(10) +
                        " e0=" + v.model.e0;
    if (!v.valid) {
      ++skipped;
      std::cout << "skip  " << label << "  (" << v.invalid_reason << ")\n";
      continue;
    }
    ++valid;
    if (v.all_pass) {
      std::cout << "pass  " << label << "\n";
    } else {
      ++failed;
      std::cout << "FAIL  " << label << "\n";
      for (const auto& check : v.checks) {
        if (!check.pass) std::cout << "      " << check.name << ": " << check.detail << "\n";
      }
    }
  }
  std::cout << valid - failed << "/" << valid << " valid models pass, " << skipped
            << " skipped as invalid\n";
  return report.all_pass ? 0 : kExitRunFailed;
}

int cmd_root(const std::string& problem, long digits) {
  ReferenceRoot root = reference_root(get_problem(problem), digits);
  std::cout << root.value << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative root finding with adaptive-precision order-of-convergence estimation"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Drive one method on one problem");
  std::string run_method, run_problem;
  std::string run_mode = "cloc";
  std::string run_format = "text";
  long run_eta = 2200;
  bool run_trace = false;
  run_cmd->add_option("--method", run_method, "method id, phi1..phi6")->required();
  run_cmd->add_option("--problem", run_problem, "problem id, f1..f7")->required();
  run_cmd->add_option("--mode", run_mode, "driving estimator: cloc, acloc, ecloc, pcloc")
      ->capture_default_str();
  run_cmd->add_option("--eta", run_eta, "target correct decimal digits")->capture_default_str();
  run_cmd->add_flag("--trace", run_trace, "print every iterate at full precision");
  run_cmd->add_option("--format", run_format, "text, csv, markdown, or json")
      ->capture_default_str();

  auto* grid_cmd = app.add_subcommand("grid", "Run a method-by-problem benchmark sweep");
  std::string grid_config_path, grid_out;
  std::string grid_format;
  std::vector<std::string> grid_methods, grid_problems, grid_modes;
  long grid_eta = -1, grid_jobs = -1;
  grid_cmd->add_option("--config", grid_config_path, "grid configuration JSON file");
  grid_cmd->add_option("--eta", grid_eta, "target correct decimal digits");
  grid_cmd->add_option("--out", grid_out, "directory for the emitted tables");
  grid_cmd->add_option("--jobs", grid_jobs, "worker threads, 0 for hardware concurrency");
  grid_cmd->add_option("--format", grid_format, "csv, markdown, or json");
  grid_cmd->add_option("--methods", grid_methods, "method ids to include")->delimiter(',');
  grid_cmd->add_option("--problems", grid_problems, "problem ids to include")->delimiter(',');
  grid_cmd->add_option("--modes", grid_modes, "driving estimators to include")->delimiter(',');

  auto* verify_cmd = app.add_subcommand("verify", "Check the model-sequence propositions");
  std::string verify_suite = "propositions";
  std::string verify_models;
  verify_cmd->add_option("--suite", verify_suite, "suite name")->capture_default_str();
  verify_cmd->add_option("--models", verify_models, "JSON file with model parameters");

  auto* root_cmd = app.add_subcommand("root", "Print a reference root");
  std::string root_problem;
  long root_digits = 50;
  root_cmd->add_option("--problem", root_problem, "problem id, f1..f7")->required();
  root_cmd->add_option("--digits", root_digits, "certified correct decimal digits")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) {
      return cmd_run(run_method, run_problem, run_mode, run_eta, run_trace, run_format);
    }
    if (*grid_cmd) {
      GridConfig config;
      if (!grid_config_path.empty()) {
        std::ifstream in(grid_config_path);
        if (!in) throw std::invalid_argument("grid: cannot read " + grid_config_path);
        config = GridConfig::from_json(nlohmann::ordered_json::parse(in));
      }
      if (!grid_methods.empty()) config.methods = grid_methods;
      if (!grid_problems.empty()) config.problems = grid_problems;
      if (!grid_modes.empty()) {
        config.modes.clear();
        for (const auto& m : grid_modes) config.modes.push_back(parse_mode(m));
      }
      if (grid_eta >= 0) config.eta = grid_eta;
      if (grid_jobs >= 0) config.parallelism = grid_jobs;
      if (!grid_out.empty()) config.output_dir = grid_out;
      if (!grid_format.empty()) config.format = grid_format;
      return cmd_grid(config);
    }
    if (*verify_cmd) return cmd_verify(verify_suite, verify_models);
    if (*root_cmd) return cmd_root(root_problem, root_digits);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRunFailed;
  }
  return 0;
}
