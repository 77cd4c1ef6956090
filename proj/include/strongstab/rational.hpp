#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace strongstab {

/// Exact rational number of arbitrary size.
///
/// The value is kept canonical after every operation: the denominator is
/// positive and coprime to the numerator, so structural equality is value
/// equality.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>) {
      value_ = static_cast<long>(value);
    } else {
      value_ = static_cast<unsigned long>(value);
    }
  }

  Rational(long numerator, long denominator);
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(mpq_class value);

  /// Parses "p/q" or "p" (optional leading sign). Decimal points and
  /// exponents are rejected: every coefficient in this library is exact.
  static Rational parse(std::string_view text);
  /// The exact binary value of a finite double.
  static Rational from_double(double value);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& gmp() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational abs() const;
  Rational inverse() const;
  Rational pow(unsigned exponent) const;

  double to_double() const { return value_.get_d(); }
  /// "p/q", or "p" when the denominator is one.
  std::string str() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

inline Rational abs(const Rational& q) { return q.abs(); }

/// n! as a rational.
Rational factorial(unsigned n);

}  // namespace strongstab
