#include "locorder/problems.hpp"

#include <algorithm>
#include <stdexcept>

namespace locorder {

namespace {

BigScalar widened(const BigScalar& x, long digits) {
  return x.digits() >= digits ? x : x.with_digits(digits);
}

// f1 = x^3 - 3x^2 + x - 2
BigScalar f1_0(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return X * X * X - BigScalar(3, d) * X * X + X - BigScalar(2, d);
}
BigScalar f1_1(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return BigScalar(3, d) * X * X - BigScalar(6, d) * X + BigScalar(1, d);
}
BigScalar f1_2(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return BigScalar(6, d) * X - BigScalar(6, d);
}
BigScalar f1_3(const BigScalar&, long d) { return BigScalar(6, d); }

// f2 = x^3 + cos x - 2
BigScalar f2_0(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return X * X * X + cos(X) - BigScalar(2, d);
}
BigScalar f2_1(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return BigScalar(3, d) * X * X - sin(X);
}
BigScalar f2_2(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return BigScalar(6, d) * X - cos(X);
}
BigScalar f2_3(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return BigScalar(6, d) + sin(X);
}

// f3 = 2 sin x + 1 - x
BigScalar f3_0(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return BigScalar(2, d) * sin(X) + BigScalar(1, d) - X;
}
BigScalar f3_1(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return BigScalar(2, d) * cos(X) - BigScalar(1, d);
}
BigScalar f3_2(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return -(BigScalar(2, d) * sin(X));
}
BigScalar f3_3(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return -(BigScalar(2, d) * cos(X));
}

// f4 = (x + 1) e^{x-1} - 1
BigScalar f4_0(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return (X + BigScalar(1, d)) * exp(X - BigScalar(1, d)) - BigScalar(1, d);
}
BigScalar f4_1(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return (X + BigScalar(2, d)) * exp(X - BigScalar(1, d));
}
BigScalar f4_2(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return (X + BigScalar(3, d)) * exp(X - BigScalar(1, d));
}
BigScalar f4_3(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return (X + BigScalar(4, d)) * exp(X - BigScalar(1, d));
}

// f5 = e^{x^2 + 7x - 30} - 1
BigScalar f5_arg(const BigScalar& X, long d) {
  return X * X + BigScalar(7, d) * X - BigScalar(30, d);
}
BigScalar f5_0(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return exp(f5_arg(X, d)) - BigScalar(1, d);
}
BigScalar f5_1(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  BigScalar w = BigScalar(2, d) * X + BigScalar(7, d);
  return w * exp(f5_arg(X, d));
}
BigScalar f5_2(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  BigScalar w = BigScalar(2, d) * X + BigScalar(7, d);
  return (w * w + BigScalar(2, d)) * exp(f5_arg(X, d));
}
BigScalar f5_3(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  BigScalar w = BigScalar(2, d) * X + BigScalar(7, d);
  return (w * w * w + BigScalar(6, d) * w) * exp(f5_arg(X, d));
}

// f6 = e^{-x} + cos x
BigScalar f6_0(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return exp(-X) + cos(X);
}
BigScalar f6_1(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return -(exp(-X) + sin(X));
}
BigScalar f6_2(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return exp(-X) - cos(X);
}
BigScalar f6_3(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  return sin(X) - exp(-X);
}

// f7 = x - 3 ln x, defined for x > 0
BigScalar f7_arg(const BigScalar& x, long d) {
  BigScalar X = widened(x, d);
  if (X.sign() <= 0) throw std::domain_error("f7: ln x needs x > 0");
  return X;
}
BigScalar f7_0(const BigScalar& x, long d) {
  BigScalar X = f7_arg(x, d);
  return X - BigScalar(3, d) * log(X);
}
BigScalar f7_1(const BigScalar& x, long d) {
  BigScalar X = f7_arg(x, d);
  return BigScalar(1, d) - BigScalar(3, d) / X;
}
BigScalar f7_2(const BigScalar& x, long d) {
  BigScalar X = f7_arg(x, d);
  return BigScalar(3, d) / (X * X);
}
BigScalar f7_3(const BigScalar& x, long d) {
  BigScalar X = f7_arg(x, d);
  return -(BigScalar(6, d) / (X * X * X));
}

const std::vector<TestProblem>& registry() {
  static const std::vector<TestProblem> problems = {
      {"f1", {f1_0, f1_1, f1_2, f1_3}, "2.893289196304497788906356", "2.5", {"2.25", "2.60"}},
      {"f2", {f2_0, f2_1, f2_2, f2_3}, "1.172577964753970012673333", "1.5", {"1.50", "2.50"}},
      {"f3", {f3_0, f3_1, f3_2, f3_3}, "2.380061273139339017212548", "2.5", {"1.00", "2.00"}},
      {"f4", {f4_0, f4_1, f4_2, f4_3}, "0.557145598997611416858672", "1.0", {"0.00", "0.75"}},
      {"f5", {f5_0, f5_1, f5_2, f5_3}, "3.0", "2.94", {"2.90", "3.10"}},
      {"f6", {f6_0, f6_1, f6_2, f6_3}, "1.746139530408012417650703", "1.5", {"1.60", "1.90"}},
      {"f7", {f7_0, f7_1, f7_2, f7_3}, "1.857183860207835336456981", "2.0", {"1.00", "2.00"}},
  };
  return problems;
}

}  // namespace

const std::vector<std::string>& problem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& p : registry()) v.push_back(p.id);
    return v;
  }();
  return ids;
}

const TestProblem& get_problem(const std::string& id) {
  for (const auto& p : registry()) {
    if (p.id == id) return p;
  }
  throw std::out_of_range("unknown problem id: '" + id + "'");
}

BigScalar eval(const TestProblem& problem, const BigScalar& x, int order, long digits) {
  if (order < 0 || order > 3) throw std::invalid_argument("eval: derivative order must be 0..3");
  if (digits < 10) throw std::invalid_argument("eval: need at least 10 digits");
  return problem.rules[order](x, digits);
}

ReferenceRoot reference_root(const TestProblem& problem, long digits) {
  if (digits < 25) throw std::invalid_argument("reference_root: need at least 25 digits");
  long w = 30;
  // the stored 25-digit value pins which root is refined; f6 has infinitely
  // many and a far seed could drift to a neighbor
  BigScalar x(problem.root_25, w);
  while (true) {
    long d = w + 10;
    x = x.with_digits(d);
    BigScalar tol = pow(BigScalar(10, d), -(w - 2));
    for (int it = 0; it < 100; ++it) {
      BigScalar fx = eval(problem, x, 0, d);
      BigScalar fpx = eval(problem, x, 1, d);
      if (fpx.is_zero()) throw std::runtime_error("reference_root: zero derivative at " + problem.id);
      BigScalar dx = fx / fpx;
      x = x - dx;
      if (abs(dx) < tol) break;
    }
    if (w >= digits + 10) break;
    w = std::min(w * 2, digits + 10);
  }

  ReferenceRoot out;
  out.problem_id = problem.id;
  out.digits = digits;

  // A root that rounds to an exact 25-digit decimal (f5's root is exactly 3)
  // is reported as that decimal, so the value is exact at any precision.
  BigScalar snap(x.str(25), digits + 10);
  if (eval(problem, snap, 0, digits + 10).is_zero()) {
    out.value = snap.str();
    out.residual_bound = "0";
    return out;
  }

  BigScalar res = abs(eval(problem, x, 0, digits + 10));
  if (!(res < pow(BigScalar(10, digits + 10), -digits))) {
    throw std::runtime_error("reference_root: refinement failed for " + problem.id);
  }
  out.value = x.str();
  // padded by 1% so the 3-digit rendering stays a true upper bound
  out.residual_bound = (res * BigScalar("1.01", 20)).str(3);
  return out;
}

}  // namespace locorder
