#include "locorder/bigscalar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace locorder {

namespace {

constexpr double kLog2Of10 = 3.321928094887362;
constexpr long kGuardBits = 32;
constexpr long kDefaultDigits = 20;

}  // namespace

long BigScalar::bits_for(long digits) {
  if (digits < 1) digits = 1;
  return static_cast<long>(std::ceil(static_cast<double>(digits) * kLog2Of10)) + kGuardBits;
}

BigScalar BigScalar::make(long digits) {
  BigScalar r;
  mpfr_set_prec(r.v_, bits_for(digits));
  r.digits_ = digits;
  return r;
}

BigScalar::BigScalar() : digits_(kDefaultDigits) {
  mpfr_init2(v_, bits_for(digits_));
  mpfr_set_zero(v_, 1);
}

BigScalar::BigScalar(long value, long digits) : digits_(digits) {
  mpfr_init2(v_, bits_for(digits_));
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigScalar::BigScalar(const std::string& decimal, long digits) : digits_(digits) {
  mpfr_init2(v_, bits_for(digits_));
  if (decimal.empty() || mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("BigScalar: not a decimal number: '" + decimal + "'");
  }
}

BigScalar::BigScalar(const BigScalar& other) : digits_(other.digits_) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigScalar::BigScalar(BigScalar&& other) noexcept : digits_(other.digits_) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

BigScalar& BigScalar::operator=(const BigScalar& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
    digits_ = other.digits_;
  }
  return *this;
}

BigScalar& BigScalar::operator=(BigScalar&& other) noexcept {
  if (this != &other) {
    mpfr_swap(v_, other.v_);
    digits_ = other.digits_;
  }
  return *this;
}

BigScalar::~BigScalar() { mpfr_clear(v_); }

BigScalar BigScalar::with_digits(long digits) const {
  BigScalar r = make(digits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

int BigScalar::sign() const { return mpfr_sgn(v_); }

bool BigScalar::is_zero() const { return mpfr_zero_p(v_) != 0; }

bool BigScalar::is_finite() const { return mpfr_number_p(v_) != 0; }

double BigScalar::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

long BigScalar::to_long() const {
  if (!is_finite() || !mpfr_fits_slong_p(v_, MPFR_RNDZ)) {
    throw std::overflow_error("BigScalar: value does not fit in long");
  }
  return mpfr_get_si(v_, MPFR_RNDZ);
}

long BigScalar::floor_exponent10() const {
  if (!is_finite() || is_zero()) {
    throw std::domain_error("BigScalar: no decimal exponent for zero or non-finite value");
  }
  // Truncation never carries into a new decade, so the returned exponent is
  // exact: |x| = 0.d... * 10^e with d != 0.
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, 1, v_, MPFR_RNDZ);
  mpfr_free_str(s);
  return static_cast<long>(e) - 1;
}

namespace {

// Renders a digit string plus decimal exponent (value = 0.D * 10^exp) in
// positional notation for moderate exponents, scientific otherwise.
std::string render_decimal(const std::string& digits_in, long exp10, bool strip_trailing) {
  std::string digits = digits_in;
  bool negative = !digits.empty() && digits[0] == '-';
  if (negative) digits.erase(0, 1);
  if (strip_trailing) {
    size_t last = digits.find_last_not_of('0');
    digits.erase(last == std::string::npos ? 1 : last + 1);
  }
  long lead = exp10 - 1;  // floor(log10 |x|)
  std::string out;
  if (lead >= -6 && lead < 21) {
    if (exp10 <= 0) {
      out = "0." + std::string(static_cast<size_t>(-exp10), '0') + digits;
    } else if (static_cast<size_t>(exp10) >= digits.size()) {
      out = digits + std::string(static_cast<size_t>(exp10) - digits.size(), '0');
    } else {
      out = digits.substr(0, static_cast<size_t>(exp10)) + "." + digits.substr(static_cast<size_t>(exp10));
    }
  } else {
    out = digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(lead);
  }
  return negative ? "-" + out : out;
}

}  // namespace

std::string BigScalar::str() const {
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  if (is_zero()) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, 0, v_, MPFR_RNDN);
  std::string digits(s);
  mpfr_free_str(s);
  return render_decimal(digits, static_cast<long>(e), true);
}

std::string BigScalar::str(long sig_digits) const {
  if (sig_digits < 1) throw std::invalid_argument("BigScalar::str: need at least one digit");
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  if (is_zero()) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(sig_digits), v_, MPFR_RNDN);
  std::string digits(s);
  mpfr_free_str(s);
  return render_decimal(digits, static_cast<long>(e), false);
}

#define LOCORDER_BINOP(op, fn)                                        \
  BigScalar operator op(const BigScalar& a, const BigScalar& b) {    \
    BigScalar r = BigScalar::make(std::max(a.digits_, b.digits_));   \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                 \
    return r;                                                        \
  }

LOCORDER_BINOP(+, mpfr_add)
LOCORDER_BINOP(-, mpfr_sub)
LOCORDER_BINOP(*, mpfr_mul)
LOCORDER_BINOP(/, mpfr_div)
#undef LOCORDER_BINOP

BigScalar operator-(const BigScalar& a) {
  BigScalar r = BigScalar::make(a.digits_);
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

bool operator==(const BigScalar& a, const BigScalar& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
bool operator!=(const BigScalar& a, const BigScalar& b) { return mpfr_equal_p(a.v_, b.v_) == 0; }
bool operator<(const BigScalar& a, const BigScalar& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
bool operator<=(const BigScalar& a, const BigScalar& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
bool operator>(const BigScalar& a, const BigScalar& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
bool operator>=(const BigScalar& a, const BigScalar& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

#define LOCORDER_UNFN(name, fn)                  \
  BigScalar name(const BigScalar& x) {           \
    BigScalar r = BigScalar::make(x.digits_);    \
    fn(r.v_, x.v_, MPFR_RNDN);                   \
    return r;                                    \
  }

LOCORDER_UNFN(abs, mpfr_abs)
LOCORDER_UNFN(sqrt, mpfr_sqrt)
LOCORDER_UNFN(exp, mpfr_exp)
LOCORDER_UNFN(log, mpfr_log)
LOCORDER_UNFN(log10, mpfr_log10)
LOCORDER_UNFN(sin, mpfr_sin)
LOCORDER_UNFN(cos, mpfr_cos)
#undef LOCORDER_UNFN

BigScalar floor(const BigScalar& x) {
  BigScalar r = BigScalar::make(x.digits_);
  mpfr_floor(r.v_, x.v_);
  return r;
}

BigScalar pow(const BigScalar& base, const BigScalar& exponent) {
  BigScalar r = BigScalar::make(std::max(base.digits_, exponent.digits_));
  mpfr_pow(r.v_, base.v_, exponent.v_, MPFR_RNDN);
  return r;
}

BigScalar pow(const BigScalar& base, long exponent) {
  BigScalar r = BigScalar::make(base.digits_);
  mpfr_pow_si(r.v_, base.v_, exponent, MPFR_RNDN);
  return r;
}

std::string format_sci(const BigScalar& x, int sig) {
  if (sig < 1) throw std::invalid_argument("format_sci: need at least one digit");
  if (!x.is_finite()) return x.str();
  if (x.is_zero()) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(sig), x.raw(), MPFR_RNDN);
  std::string digits(s);
  mpfr_free_str(s);
  bool negative = !digits.empty() && digits[0] == '-';
  if (negative) digits.erase(0, 1);
  std::string out = digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return (negative ? "-" : "") + out;
}

}  // namespace locorder
