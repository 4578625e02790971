#pragma once

#include <string>
#include <utility>
#include <vector>

#include "locorder/bigscalar.hpp"

namespace locorder {

// One benchmark root-finding problem: f with hand-coded derivatives up to
// third order, the 25-digit reference root, and the two starting-point forms.
struct TestProblem {
  using EvalFn = BigScalar (*)(const BigScalar& x, long digits);

  std::string id;
  EvalFn rules[4];  // f, f', f'', f'''
  std::string root_25;
  std::string x0;                                // methods without memory
  std::pair<std::string, std::string> x_minus1_x0;  // (x_{-1}, x_0) for methods with memory
};

// High-precision refinement of a problem root.
struct ReferenceRoot {
  std::string problem_id;
  long digits = 0;
  std::string value;
  std::string residual_bound;
};

const std::vector<std::string>& problem_ids();

// Throws std::out_of_range for an unknown id.
const TestProblem& get_problem(const std::string& id);

// Value of the order-th derivative (order 0 is f itself) with all
// intermediate operations at >= digits decimal digits. Domain violations
// (f7 needs x > 0) throw std::domain_error.
BigScalar eval(const TestProblem& problem, const BigScalar& x, int order, long digits);

// Newton refinement from x0 with precision doubling until the residual drops
// below 10^-digits. Roots that are exact short decimals are returned exactly.
ReferenceRoot reference_root(const TestProblem& problem, long digits);

}  // namespace locorder
