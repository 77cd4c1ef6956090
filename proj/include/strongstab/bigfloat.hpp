#pragma once

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

#include "strongstab/rational.hpp"

namespace strongstab {

/// Binary precision (significand bits) used for newly created BigFloat values
/// on the calling thread. Defaults to 256.
long working_precision();

/// Sets the thread's working precision for its lifetime and restores the
/// previous value on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long previous_;
};

/// Arbitrary-precision binary floating point number, round-to-nearest.
///
/// Values created from doubles, integers or rationals take the thread's
/// working precision. Arithmetic results take the larger precision of the
/// operands, so a computation seeded at one precision stays there.
class BigFloat {
 public:
  BigFloat();
  template <std::integral I>
  BigFloat(I value) : BigFloat() {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>) {
      mpfr_set_si(value_, static_cast<long>(value), MPFR_RNDN);
    } else {
      mpfr_set_ui(value_, static_cast<unsigned long>(value), MPFR_RNDN);
    }
  }
  BigFloat(double value);  // NOLINT(google-explicit-constructor)
  explicit BigFloat(const Rational& value);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// Parses a decimal string at the given precision; the inverse of str()
  /// when the precision matches.
  static BigFloat parse(std::string_view text, long bits);
  static BigFloat pi(long bits);

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
  /// Shortest decimal representation that reads back to the same value at
  /// this precision.
  std::string str() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// The exact binary value; throws std::domain_error if not finite.
  Rational to_rational() const;
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  /// Distance to the next representable value away from zero (2^(exp-prec)).
  BigFloat ulp() const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  friend BigFloat operator+(const BigFloat& lhs, const BigFloat& rhs);
  friend BigFloat operator-(const BigFloat& lhs, const BigFloat& rhs);
  friend BigFloat operator*(const BigFloat& lhs, const BigFloat& rhs);
  friend BigFloat operator/(const BigFloat& lhs, const BigFloat& rhs);
  friend BigFloat operator-(const BigFloat& x);

  friend bool operator==(const BigFloat& lhs, const BigFloat& rhs) {
    return mpfr_equal_p(lhs.value_, rhs.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigFloat& lhs, const BigFloat& rhs);

  friend BigFloat sqrt(const BigFloat& x);
  friend BigFloat abs(const BigFloat& x);
  friend BigFloat sin(const BigFloat& x);
  friend BigFloat cos(const BigFloat& x);
  friend BigFloat log(const BigFloat& x);
  friend BigFloat exp(const BigFloat& x);
  /// x * 2^e, exact.
  friend BigFloat ldexp(const BigFloat& x, long e);

  mpfr_srcptr get() const { return value_; }

 private:
  explicit BigFloat(long bits, int /*tag*/);
  mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

}  // namespace strongstab
