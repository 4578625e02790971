#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "locorder/bigscalar.hpp"
#include "locorder/problems.hpp"

namespace locorder {

// Secant denominator collapse or a zero derivative.
struct degenerate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MethodSpec {
  std::string id;
  int memory = 0;  // 1 when the method also uses x_{n-1}
  int derivative_order_needed = 0;
};

// Iterates the method consumes for one step, plus optional residuals carried
// over from a previous evaluation at the same precision.
struct MethodState {
  BigScalar current;
  std::optional<BigScalar> previous;
  std::optional<BigScalar> f_current;
  std::optional<BigScalar> f_previous;
  long residual_digits = 0;
};

const std::vector<std::string>& method_ids();

// Throws std::out_of_range for an unknown id.
const MethodSpec& method_spec(const std::string& id);

// Theoretical convergence order as a value correct to the requested digits;
// the irrational orders are recomputed from square roots at every call, never
// frozen at some earlier precision.
BigScalar order_of(const MethodSpec& method, long digits);
BigScalar order_of(const std::string& method_id, long digits);

// (y - x)/(f(y) - f(x)); throws degenerate_error when f(y) == f(x).
BigScalar divided_difference_inverse(const BigScalar& x, const BigScalar& y,
                                     const BigScalar& fx, const BigScalar& fy);

// Next iterate with all arithmetic at >= digits decimal digits.
BigScalar step(const MethodSpec& method, const MethodState& state,
               const TestProblem& problem, long digits);

}  // namespace locorder
