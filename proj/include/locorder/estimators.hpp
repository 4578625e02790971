#pragma once

#include <vector>

#include "locorder/bigscalar.hpp"
#include "locorder/methods.hpp"

namespace locorder {

// Window of consecutive iterates (oldest first) with optional matching
// residuals and, when the root is known, true errors.
struct IterateWindow {
  std::vector<BigScalar> xs;
  std::vector<BigScalar> fs;
  std::vector<BigScalar> es;
  long digits = 0;
};

// Aitken extrapolation result: the limit estimate and the extrapolated error
// of the newest iterate.
struct ExtrapolatedError {
  BigScalar alpha_tilde;
  BigScalar e_tilde;
};

enum class EstimateStatus {
  ok,
  converged_exactly,  // a zero error, difference, or residual
  not_asymptotic,     // an error-like magnitude is still >= 1
  degenerate,         // zero Aitken second difference
  undefined,          // three-point quotient estimator has a unit quotient
};

struct Estimate {
  EstimateStatus status = EstimateStatus::ok;
  BigScalar value;
};

// log|e_n| / log|e_{n-1}|, both errors in (0,1).
Estimate cloc(const BigScalar& e_n, const BigScalar& e_prev);

// log|x_n - x_{n-1}| / log|x_{n-1} - x_{n-2}|.
Estimate acloc(const BigScalar& x_n, const BigScalar& x_nm1, const BigScalar& x_nm2);

// alpha~ = x_n - (x_n - x_{n-1})^2 / (x_n - 2 x_{n-1} + x_{n-2});
// throws degenerate_error on a zero second difference.
ExtrapolatedError aitken_alpha(const BigScalar& x_n, const BigScalar& x_nm1,
                               const BigScalar& x_nm2);

// log|e~_n| / log|e~_{n-1}| from a window of four iterates.
Estimate ecloc(const BigScalar& x_n, const BigScalar& x_nm1, const BigScalar& x_nm2,
               const BigScalar& x_nm3);
Estimate ecloc(const IterateWindow& window);

// log|f(x_n)| / log|f(x_{n-1})|, both residual magnitudes in (0,1).
Estimate pcloc(const BigScalar& f_n, const BigScalar& f_prev);

// log|f_{n+1}/f_n| / log|f_n/f_{n-1}|; reference estimator only, not used in
// any stopping logic.
Estimate pcoc(const BigScalar& f_np1, const BigScalar& f_n, const BigScalar& f_nm1);

}  // namespace locorder
