#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

namespace locorder {

// Arbitrary-precision real number backed by MPFR. Every value carries its own
// mantissa length, expressed in decimal digits; precision is never an ambient
// process-global, so concurrent computations cannot clobber each other.
//
// Binary operations round to the wider of the two operand precisions, unary
// functions keep the operand precision. All rounding is to nearest.
class BigScalar {
 public:
  // Bits needed so that `digits` decimal digits survive a round trip, plus a
  // fixed guard margin.
  static long bits_for(long digits);

  BigScalar();
  BigScalar(long value, long digits);
  // Accepts plain and scientific decimal notation ("2.25", "1.803e-4").
  BigScalar(const std::string& decimal, long digits);
  BigScalar(const BigScalar& other);
  BigScalar(BigScalar&& other) noexcept;
  BigScalar& operator=(const BigScalar& other);
  BigScalar& operator=(BigScalar&& other) noexcept;
  ~BigScalar();

  long digits() const { return digits_; }
  // Re-round to a new precision. Widening is exact.
  BigScalar with_digits(long digits) const;

  int sign() const;
  bool is_zero() const;
  bool is_finite() const;
  double to_double() const;
  // Rounds toward zero; value must fit in long.
  long to_long() const;
  // floor(log10 |x|); rejects zero and non-finite values.
  long floor_exponent10() const;

  // Decimal string that round-trips at this precision.
  std::string str() const;
  // Same notation rules, fixed number of significant digits.
  std::string str(long sig_digits) const;

  mpfr_srcptr raw() const { return v_; }

  friend BigScalar operator+(const BigScalar& a, const BigScalar& b);
  friend BigScalar operator-(const BigScalar& a, const BigScalar& b);
  friend BigScalar operator*(const BigScalar& a, const BigScalar& b);
  friend BigScalar operator/(const BigScalar& a, const BigScalar& b);
  friend BigScalar operator-(const BigScalar& a);

  friend bool operator==(const BigScalar& a, const BigScalar& b);
  friend bool operator!=(const BigScalar& a, const BigScalar& b);
  friend bool operator<(const BigScalar& a, const BigScalar& b);
  friend bool operator<=(const BigScalar& a, const BigScalar& b);
  friend bool operator>(const BigScalar& a, const BigScalar& b);
  friend bool operator>=(const BigScalar& a, const BigScalar& b);

  friend BigScalar abs(const BigScalar& x);
  friend BigScalar sqrt(const BigScalar& x);
  friend BigScalar exp(const BigScalar& x);
  friend BigScalar log(const BigScalar& x);
  friend BigScalar log10(const BigScalar& x);
  friend BigScalar sin(const BigScalar& x);
  friend BigScalar cos(const BigScalar& x);
  friend BigScalar floor(const BigScalar& x);
  friend BigScalar pow(const BigScalar& base, const BigScalar& exponent);
  friend BigScalar pow(const BigScalar& base, long exponent);

 private:
  static BigScalar make(long digits);

  mpfr_t v_;
  long digits_;
};

// Scientific notation with `sig` significant digits, appendix style:
// "1.803e-4". Zero renders as "0".
std::string format_sci(const BigScalar& x, int sig);

}  // namespace locorder
