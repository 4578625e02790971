#include <doctest.h>

#include "locorder/problems.hpp"

using namespace locorder;

namespace {

BigScalar rel_err(const BigScalar& got, const BigScalar& want) {
  return abs((got - want) / want);
}

// Central differences against the hand-coded derivatives. The step sizes
// stay far above the 30-digit noise floor and far below the truncation
// scale.
void check_derivatives_at(const TestProblem& p, const std::string& x_str) {
  const long d = 30;
  const BigScalar x(x_str, d);
  const BigScalar h1("1e-10", d), h2("1e-7", d), h3("1e-6", d);
  const BigScalar two(2, d);

  BigScalar fd1 = (eval(p, x + h1, 0, d) - eval(p, x - h1, 0, d)) / (two * h1);
  CHECK(rel_err(eval(p, x, 1, d), fd1) < BigScalar("1e-8", d));

  BigScalar fd2 =
      (eval(p, x + h2, 0, d) - two * eval(p, x, 0, d) + eval(p, x - h2, 0, d)) / (h2 * h2);
  CHECK(rel_err(eval(p, x, 2, d), fd2) < BigScalar("1e-8", d));

  BigScalar fd3 = (eval(p, x + two * h3, 0, d) - two * eval(p, x + h3, 0, d) +
                   two * eval(p, x - h3, 0, d) - eval(p, x - two * h3, 0, d)) /
                  (two * h3 * h3 * h3);
  CHECK(rel_err(eval(p, x, 3, d), fd3) < BigScalar("1e-6", d));
}

}  // namespace

TEST_CASE("problem registry") {
  CHECK(problem_ids() == std::vector<std::string>{"f1", "f2", "f3", "f4", "f5", "f6", "f7"});
  CHECK(get_problem("f4").x0 == "1.0");
  CHECK(get_problem("f4").x_minus1_x0 == std::pair<std::string, std::string>{"0.00", "0.75"});
  CHECK_THROWS_AS(get_problem("f9"), std::out_of_range);
  CHECK_THROWS_AS(get_problem(""), std::out_of_range);
}

TEST_CASE("hand-checked point values") {
  const long d = 40;
  CHECK(eval(get_problem("f1"), BigScalar("2.5", d), 0, d) == BigScalar("-2.625", d));
  CHECK(eval(get_problem("f1"), BigScalar("2.5", d), 1, d) == BigScalar("4.75", d));
  CHECK(eval(get_problem("f1"), BigScalar("2.5", d), 2, d) == BigScalar(9, d));
  CHECK(eval(get_problem("f1"), BigScalar("2.5", d), 3, d) == BigScalar(6, d));
  CHECK(eval(get_problem("f5"), BigScalar(3, d), 0, d).is_zero());
  CHECK(eval(get_problem("f3"), BigScalar(0, d), 1, d) == BigScalar(1, d));
  CHECK(eval(get_problem("f7"), BigScalar(1, d), 0, d) == BigScalar(1, d));
}

TEST_CASE("derivative order and domain validation") {
  const TestProblem& f7 = get_problem("f7");
  const long d = 30;
  CHECK_THROWS_AS(eval(f7, BigScalar(0, d), 0, d), std::domain_error);
  CHECK_THROWS_AS(eval(f7, BigScalar(-1, d), 0, d), std::domain_error);
  CHECK_THROWS_AS(eval(f7, BigScalar(-1, d), 2, d), std::domain_error);
  CHECK_THROWS_AS(eval(get_problem("f1"), BigScalar(1, d), 4, d), std::invalid_argument);
  CHECK_THROWS_AS(eval(get_problem("f1"), BigScalar(1, d), -1, d), std::invalid_argument);
}

TEST_CASE("derivatives agree with central differences at every seed") {
  for (const auto& id : problem_ids()) {
    const TestProblem& p = get_problem(id);
    CAPTURE(id);
    check_derivatives_at(p, p.x0);
    check_derivatives_at(p, p.x_minus1_x0.first);
    check_derivatives_at(p, p.x_minus1_x0.second);
  }
}

TEST_CASE("25-digit roots are roots") {
  const long d = 30;
  for (const auto& id : problem_ids()) {
    const TestProblem& p = get_problem(id);
    CAPTURE(id);
    CHECK(abs(eval(p, BigScalar(p.root_25, d), 0, d)) < BigScalar("1e-20", d));
  }
}

TEST_CASE("reference_root refines past the stored 25 digits") {
  const TestProblem& f2 = get_problem("f2");
  ReferenceRoot r25 = reference_root(f2, 25);
  CHECK(r25.problem_id == "f2");
  CHECK(r25.digits == 25);
  CHECK(abs(BigScalar(r25.value, 40) - BigScalar(f2.root_25, 40)) < BigScalar("1e-24", 40));

  ReferenceRoot r500 = reference_root(f2, 500);
  CHECK(abs(eval(f2, BigScalar(r500.value, 520), 0, 520)) < BigScalar("1e-500", 520));
  // the deeper refinement extends the shallow one digit for digit
  CHECK(r500.value.substr(0, 20) == r25.value.substr(0, 20));
  CHECK_THROWS_AS(reference_root(f2, 10), std::invalid_argument);
}

TEST_CASE("an exactly representable root snaps to its short decimal") {
  ReferenceRoot r = reference_root(get_problem("f5"), 2300);
  CHECK(r.value == "3");
  CHECK(r.residual_bound == "0");
}

TEST_CASE("residual bound is honest") {
  for (const auto& id : {"f1", "f7"}) {
    ReferenceRoot r = reference_root(get_problem(id), 60);
    CAPTURE(id);
    BigScalar res = abs(eval(get_problem(id), BigScalar(r.value, 80), 0, 80));
    CHECK(res < BigScalar("1e-60", 80));
    CHECK(res <= BigScalar(r.residual_bound, 80));
  }
}
