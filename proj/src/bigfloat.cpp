#include "strongstab/bigfloat.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace strongstab {

namespace {

thread_local long tls_precision = 256;

long result_precision(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

long working_precision() { return tls_precision; }

PrecisionScope::PrecisionScope(long bits) : previous_(tls_precision) {
  if (bits < MPFR_PREC_MIN || bits > 1'000'000) {
    throw std::invalid_argument("PrecisionScope: unsupported precision " + std::to_string(bits));
  }
  tls_precision = bits;
}

PrecisionScope::~PrecisionScope() { tls_precision = previous_; }

BigFloat::BigFloat(long bits, int /*tag*/) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat() : BigFloat(working_precision(), 0) {}

BigFloat::BigFloat(double value) : BigFloat() { mpfr_set_d(value_, value, MPFR_RNDN); }

Rational BigFloat::to_rational() const {
  if (!is_finite()) throw std::domain_error("BigFloat::to_rational: non-finite value");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return Rational(q);
}

BigFloat::BigFloat(const Rational& value) : BigFloat() {
  mpfr_set_q(value_, value.gmp().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) : BigFloat(other.precision(), 0) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::parse(std::string_view text, long bits) {
  BigFloat out(bits, 0);
  const std::string s(text);
  if (mpfr_set_str(out.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("BigFloat: cannot parse '" + s + "'");
  }
  return out;
}

BigFloat BigFloat::pi(long bits) {
  BigFloat out(bits, 0);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

std::string BigFloat::str() const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(value_)) return "0";
  mpfr_exp_t exponent = 0;
  // n = 0 lets MPFR pick enough digits for an exact read-back.
  char* raw = mpfr_get_str(nullptr, &exponent, 10, 0, value_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (digits.front() == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  // digits represent 0.d1d2... * 10^exponent
  std::string out = sign + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(exponent) - 1);
  return out;
}

BigFloat BigFloat::ulp() const {
  BigFloat out(precision(), 0);
  if (!is_finite()) throw std::domain_error("BigFloat::ulp of non-finite value");
  if (is_zero()) {
    mpfr_set_ui_2exp(out.value_, 1, mpfr_get_emin(), MPFR_RNDN);
    return out;
  }
  mpfr_set_ui_2exp(out.value_, 1, mpfr_get_exp(value_) - static_cast<mpfr_exp_t>(precision()), MPFR_RNDN);
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) { return *this = *this + rhs; }
BigFloat& BigFloat::operator-=(const BigFloat& rhs) { return *this = *this - rhs; }
BigFloat& BigFloat::operator*=(const BigFloat& rhs) { return *this = *this * rhs; }
BigFloat& BigFloat::operator/=(const BigFloat& rhs) { return *this = *this / rhs; }

BigFloat operator+(const BigFloat& lhs, const BigFloat& rhs) {
  BigFloat out(result_precision(lhs, rhs), 0);
  mpfr_add(out.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat& lhs, const BigFloat& rhs) {
  BigFloat out(result_precision(lhs, rhs), 0);
  mpfr_sub(out.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return out;
}

BigFloat operator*(const BigFloat& lhs, const BigFloat& rhs) {
  BigFloat out(result_precision(lhs, rhs), 0);
  mpfr_mul(out.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return out;
}

BigFloat operator/(const BigFloat& lhs, const BigFloat& rhs) {
  BigFloat out(result_precision(lhs, rhs), 0);
  mpfr_div(out.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat& x) {
  BigFloat out(x.precision(), 0);
  mpfr_neg(out.value_, x.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigFloat& lhs, const BigFloat& rhs) {
  if (mpfr_unordered_p(lhs.value_, rhs.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(lhs.value_, rhs.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat out(x.precision(), 0);
  mpfr_sqrt(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigFloat abs(const BigFloat& x) {
  BigFloat out(x.precision(), 0);
  mpfr_abs(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigFloat sin(const BigFloat& x) {
  BigFloat out(x.precision(), 0);
  mpfr_sin(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigFloat cos(const BigFloat& x) {
  BigFloat out(x.precision(), 0);
  mpfr_cos(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigFloat log(const BigFloat& x) {
  BigFloat out(x.precision(), 0);
  mpfr_log(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigFloat exp(const BigFloat& x) {
  BigFloat out(x.precision(), 0);
  mpfr_exp(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat out(x.precision(), 0);
  mpfr_mul_2si(out.value_, x.value_, e, MPFR_RNDN);
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.str(); }

}  // namespace strongstab
