#include <doctest.h>

#include "locorder/bigscalar.hpp"

using locorder::BigScalar;
using locorder::format_sci;

TEST_CASE("decimal strings round-trip at the same precision") {
  for (const char* s : {"2.5", "-0.0001234", "3.14159265358979", "1e-40", "123456789",
                        "2.893289196304497788906356"}) {
    for (long d : {20L, 64L, 300L}) {
      BigScalar x(s, d);
      CHECK(BigScalar(x.str(), d) == x);
    }
  }
}

TEST_CASE("binary-exact decimals compare equal across precisions") {
  CHECK(BigScalar("0.5", 20) == BigScalar("0.5", 2000));
  CHECK(BigScalar("2.25", 30) == BigScalar("2.25", 64));
  CHECK(BigScalar(7, 20) == BigScalar("7", 500));
  CHECK(BigScalar("0.1", 20) != BigScalar("0.1", 2000));
}

TEST_CASE("operations take the wider operand's precision") {
  BigScalar a("1.5", 30);
  BigScalar b("0.25", 200);
  CHECK((a + b).digits() == 200);
  CHECK((b - a).digits() == 200);
  CHECK((a * b).digits() == 200);
  CHECK((a / b).digits() == 200);
  CHECK((-b).digits() == 200);
  CHECK(abs(a).digits() == 30);
  CHECK(sqrt(b).digits() == 200);
  CHECK(a.with_digits(500).digits() == 500);
}

TEST_CASE("widening is exact, narrowing rounds") {
  BigScalar third = BigScalar(1, 100) / BigScalar(3, 100);
  CHECK(third.with_digits(400) == third);
  CHECK(third.with_digits(40) != third);
}

TEST_CASE("malformed decimals are rejected") {
  CHECK_THROWS_AS(BigScalar("", 20), std::invalid_argument);
  CHECK_THROWS_AS(BigScalar("abc", 20), std::invalid_argument);
  CHECK_THROWS_AS(BigScalar("1.2.3", 20), std::invalid_argument);
  CHECK_THROWS_AS(BigScalar("1e", 20), std::invalid_argument);
}

TEST_CASE("str uses positional notation for moderate exponents only") {
  CHECK(BigScalar("2.50", 20).str() == "2.5");
  CHECK(BigScalar("-3", 20).str() == "-3");
  // 2^-19 and 2^-24 are exact, so the rendering is the full short decimal
  CHECK(BigScalar("0.0000019073486328125", 30).str() == "0.0000019073486328125");
  CHECK(BigScalar("5.9604644775390625e-8", 30).str() == "5.9604644775390625e-8");
  CHECK(BigScalar("1e20", 30).str() == "100000000000000000000");
  CHECK(BigScalar("1e21", 30).str() == "1e21");
  CHECK(BigScalar("-1.86264514923095703125e-9", 30).str() == "-1.86264514923095703125e-9");
  CHECK(BigScalar(0, 20).str() == "0");
}

TEST_CASE("str with a digit count keeps trailing zeros") {
  CHECK(BigScalar(1, 30).str(4) == "1.000");
  CHECK(BigScalar("2.5", 30).str(3) == "2.50");
  CHECK(BigScalar("0.0001", 30).str(2) == "0.00010");
  CHECK_THROWS_AS(BigScalar(1, 30).str(0), std::invalid_argument);
}

TEST_CASE("format_sci is always scientific") {
  CHECK(format_sci(BigScalar("1.80312e-4", 40), 4) == "1.803e-4");
  CHECK(format_sci(BigScalar("1.80312e-4", 40), 2) == "1.8e-4");
  CHECK(format_sci(BigScalar("2.79e-5", 40), 2) == "2.8e-5");
  CHECK(format_sci(BigScalar("-5.510e-3", 40), 4) == "-5.510e-3");
  CHECK(format_sci(BigScalar("9.99e-5", 40), 1) == "1e-4");
  CHECK(format_sci(BigScalar("1234", 40), 4) == "1.234e3");
  CHECK(format_sci(BigScalar("2", 40), 3) == "2.00e0");
  CHECK(format_sci(BigScalar(0, 40), 4) == "0");
}

TEST_CASE("floor_exponent10 matches floor(log10|x|)") {
  CHECK(BigScalar(1, 30).floor_exponent10() == 0);
  CHECK(BigScalar("9.99", 30).floor_exponent10() == 0);
  CHECK(BigScalar(10, 30).floor_exponent10() == 1);
  CHECK(BigScalar("0.1", 30).floor_exponent10() == -1);
  CHECK(BigScalar("9.99e-5", 30).floor_exponent10() == -5);
  CHECK(BigScalar("1e-4", 30).floor_exponent10() == -4);
  CHECK(BigScalar("-345.6", 30).floor_exponent10() == 2);
  CHECK_THROWS_AS(BigScalar(0, 30).floor_exponent10(), std::domain_error);
}

TEST_CASE("to_long truncates toward zero") {
  CHECK(BigScalar("2.9", 30).to_long() == 2);
  CHECK(BigScalar("-2.9", 30).to_long() == -2);
  CHECK(BigScalar(41, 30).to_long() == 41);
  CHECK_THROWS_AS(BigScalar("1e30", 40).to_long(), std::overflow_error);
}

TEST_CASE("elementary functions hit MPFR directly") {
  const long d = 60;
  BigScalar two(2, d);
  BigScalar r = sqrt(two);
  CHECK(abs(r * r - two) < BigScalar("1e-58", d));
  CHECK(abs(log(exp(two)) - two) < BigScalar("1e-58", d));
  BigScalar x("0.7", d);
  CHECK(abs(sin(x) * sin(x) + cos(x) * cos(x) - BigScalar(1, d)) < BigScalar("1e-58", d));
  CHECK(abs(log10(BigScalar("1e-40", d)) + BigScalar(40, d)) < BigScalar("1e-57", d));
  CHECK(pow(BigScalar(10, d), -4L) == BigScalar("1e-4", d));
  CHECK(pow(two, BigScalar(10, d)) == BigScalar(1024, d));
  CHECK(floor(BigScalar("3.99", d)) == BigScalar(3, d));
  CHECK(floor(BigScalar("-0.5", d)) == BigScalar(-1, d));
}

TEST_CASE("sign and finiteness predicates") {
  CHECK(BigScalar("-2", 20).sign() == -1);
  CHECK(BigScalar(0, 20).sign() == 0);
  CHECK(BigScalar(3, 20).sign() == 1);
  CHECK(BigScalar(0, 20).is_zero());
  BigScalar inf = BigScalar(1, 20) / BigScalar(0, 20);
  CHECK(!inf.is_finite());
  CHECK(BigScalar("1e-9999", 20).is_finite());
}
