#include "locorder/methods.hpp"

namespace locorder {

namespace {

const std::vector<MethodSpec>& registry() {
  static const std::vector<MethodSpec> methods = {
      {"phi1", 0, 1}, {"phi2", 0, 2}, {"phi3", 0, 3},
      {"phi4", 1, 0}, {"phi5", 1, 0}, {"phi6", 1, 0},
  };
  return methods;
}

}  // namespace

const std::vector<std::string>& method_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& m : registry()) v.push_back(m.id);
    return v;
  }();
  return ids;
}

const MethodSpec& method_spec(const std::string& id) {
  for (const auto& m : registry()) {
    if (m.id == id) return m;
  }
  throw std::out_of_range("unknown method id: '" + id + "'");
}

BigScalar order_of(const MethodSpec& method, long digits) {
  if (digits < 10) throw std::invalid_argument("order_of: need at least 10 digits");
  const BigScalar one(1, digits);
  if (method.id == "phi1") return BigScalar(2, digits);
  if (method.id == "phi2") return BigScalar(3, digits);
  if (method.id == "phi3") return BigScalar(4, digits);
  if (method.id == "phi4") return (one + sqrt(BigScalar(5, digits))) / BigScalar(2, digits);
  if (method.id == "phi5") return one + sqrt(BigScalar(2, digits));
  if (method.id == "phi6") return one + sqrt(BigScalar(3, digits));
  throw std::out_of_range("unknown method id: '" + method.id + "'");
}

BigScalar order_of(const std::string& method_id, long digits) {
  return order_of(method_spec(method_id), digits);
}

BigScalar divided_difference_inverse(const BigScalar& x, const BigScalar& y,
                                     const BigScalar& fx, const BigScalar& fy) {
  if (fx == fy) throw degenerate_error("divided difference: f(y) == f(x)");
  return (y - x) / (fy - fx);
}

BigScalar step(const MethodSpec& method, const MethodState& state,
               const TestProblem& problem, long digits) {
  BigScalar x = state.current.digits() >= digits ? state.current : state.current.with_digits(digits);

  if (method.memory == 0) {
    BigScalar fx = eval(problem, x, 0, digits);
    BigScalar fpx = eval(problem, x, 1, digits);
    if (fpx.is_zero()) throw degenerate_error("step: zero derivative");
    BigScalar u = fx / fpx;
    if (method.id == "phi1") return x - u;
    BigScalar L = eval(problem, x, 2, digits) / fpx * u;
    BigScalar half = BigScalar(1, digits) / BigScalar(2, digits);
    if (method.id == "phi2") return x - u - half * L * u;
    BigScalar M = eval(problem, x, 3, digits) / (BigScalar(6, digits) * fpx) * u * u;
    return x - u - half * L * u - (half * L * L - M) * u;
  }

  if (!state.previous) throw std::invalid_argument("step: " + method.id + " needs x_{n-1}");
  BigScalar xm1 = state.previous->digits() >= digits ? *state.previous : state.previous->with_digits(digits);
  bool cached = state.residual_digits == digits;
  BigScalar fx = cached && state.f_current ? *state.f_current : eval(problem, x, 0, digits);
  BigScalar fxm1 = cached && state.f_previous ? *state.f_previous : eval(problem, xm1, 0, digits);
  BigScalar y = x - divided_difference_inverse(x, xm1, fx, fxm1) * fx;
  if (method.id == "phi4") return y;
  BigScalar fy = eval(problem, y, 0, digits);
  if (method.id == "phi5") return y - divided_difference_inverse(x, y, fx, fy) * fy;
  BigScalar z = BigScalar(2, digits) * y - x;
  BigScalar fz = eval(problem, z, 0, digits);
  return y - divided_difference_inverse(x, z, fx, fz) * fy;
}

}  // namespace locorder
