#include "locorder/estimators.hpp"

#include <stdexcept>

namespace locorder {

namespace {

const BigScalar& one() {
  static const BigScalar v(1, 20);
  return v;
}

// Shared gate for the log-ratio estimators: both magnitudes must lie in
// (0,1) for the ratio of logs to be meaningful.
Estimate log_ratio(const BigScalar& num, const BigScalar& den) {
  if (num.is_zero() || den.is_zero()) return {EstimateStatus::converged_exactly, BigScalar()};
  BigScalar an = abs(num);
  BigScalar ad = abs(den);
  if (an >= one() || ad >= one()) return {EstimateStatus::not_asymptotic, BigScalar()};
  return {EstimateStatus::ok, log(an) / log(ad)};
}

}  // namespace

Estimate cloc(const BigScalar& e_n, const BigScalar& e_prev) {
  return log_ratio(e_n, e_prev);
}

Estimate acloc(const BigScalar& x_n, const BigScalar& x_nm1, const BigScalar& x_nm2) {
  return log_ratio(x_n - x_nm1, x_nm1 - x_nm2);
}

ExtrapolatedError aitken_alpha(const BigScalar& x_n, const BigScalar& x_nm1,
                               const BigScalar& x_nm2) {
  BigScalar dd = x_n - BigScalar(2, 20) * x_nm1 + x_nm2;
  if (dd.is_zero()) throw degenerate_error("aitken: zero second difference");
  BigScalar d = x_n - x_nm1;
  BigScalar alpha = x_n - d * d / dd;
  return {alpha, x_n - alpha};
}

Estimate ecloc(const BigScalar& x_n, const BigScalar& x_nm1, const BigScalar& x_nm2,
               const BigScalar& x_nm3) {
  try {
    ExtrapolatedError cur = aitken_alpha(x_n, x_nm1, x_nm2);
    ExtrapolatedError prev = aitken_alpha(x_nm1, x_nm2, x_nm3);
    return log_ratio(cur.e_tilde, prev.e_tilde);
  } catch (const degenerate_error&) {
    return {EstimateStatus::degenerate, BigScalar()};
  }
}

Estimate ecloc(const IterateWindow& window) {
  if (window.xs.size() < 4) throw std::invalid_argument("ecloc: need four iterates");
  size_t n = window.xs.size() - 1;
  return ecloc(window.xs[n], window.xs[n - 1], window.xs[n - 2], window.xs[n - 3]);
}

Estimate pcloc(const BigScalar& f_n, const BigScalar& f_prev) {
  return log_ratio(f_n, f_prev);
}

Estimate pcoc(const BigScalar& f_np1, const BigScalar& f_n, const BigScalar& f_nm1) {
  if (f_np1.is_zero() || f_n.is_zero() || f_nm1.is_zero()) {
    return {EstimateStatus::undefined, BigScalar()};
  }
  BigScalar qn = abs(f_np1 / f_n);
  BigScalar qd = abs(f_n / f_nm1);
  if (qn == one() || qd == one()) return {EstimateStatus::undefined, BigScalar()};
  return {EstimateStatus::ok, log(qn) / log(qd)};
}

}  // namespace locorder
