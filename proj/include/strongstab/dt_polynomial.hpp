#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strongstab/rational.hpp"

namespace strongstab {

/// Thrown when a coefficient beyond the truncation order is requested.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Univariate polynomial in one variable (usually Δt) with exact rational
/// coefficients, truncated after `truncation_order`.
///
/// Coefficients 0..truncation_order are exact; anything of higher degree has
/// been discarded and is reported as unavailable rather than as zero. Binary
/// operations truncate at the smaller of the two orders.
class DtPolynomial {
 public:
  explicit DtPolynomial(int truncation_order = 0);
  DtPolynomial(std::vector<Rational> coefficients, int truncation_order);

  static DtPolynomial constant(const Rational& value, int truncation_order);
  /// value * x^power
  static DtPolynomial monomial(const Rational& value, int power, int truncation_order);
  /// Exact polynomial: truncation order equals its degree (0 for the zero polynomial).
  static DtPolynomial exact(std::vector<Rational> coefficients);

  int truncation_order() const { return order_; }

  /// Exact coefficient of x^k. Throws TruncationError for k > truncation_order.
  const Rational& operator[](int k) const;
  std::optional<Rational> coefficient(int k) const;

  /// Lowest power with a nonzero coefficient, or nullopt when every available
  /// coefficient vanishes.
  std::optional<int> leading_power() const;
  bool is_zero() const { return !leading_power().has_value(); }
  /// Highest power with a nonzero coefficient (-1 for zero).
  int degree() const;

  /// Multiply by x^k; terms past the truncation order are dropped.
  DtPolynomial shifted(int k) const;
  /// Divide by x^k. Requires the k lowest coefficients to vanish; the
  /// truncation order drops by k.
  DtPolynomial divided_by_power(int k) const;
  DtPolynomial truncated(int order) const;
  Rational evaluate(const Rational& x) const;

  DtPolynomial& operator+=(const DtPolynomial& rhs);
  DtPolynomial& operator-=(const DtPolynomial& rhs);
  DtPolynomial& operator*=(const DtPolynomial& rhs);
  DtPolynomial& operator*=(const Rational& rhs);

  friend DtPolynomial operator+(DtPolynomial lhs, const DtPolynomial& rhs) { return lhs += rhs; }
  friend DtPolynomial operator-(DtPolynomial lhs, const DtPolynomial& rhs) { return lhs -= rhs; }
  friend DtPolynomial operator*(const DtPolynomial& lhs, const DtPolynomial& rhs);
  friend DtPolynomial operator*(DtPolynomial lhs, const Rational& rhs) { return lhs *= rhs; }
  friend DtPolynomial operator*(const Rational& lhs, DtPolynomial rhs) { return rhs *= lhs; }
  friend DtPolynomial operator-(DtPolynomial x);

  /// Equal truncation order and equal coefficients.
  friend bool operator==(const DtPolynomial& a, const DtPolynomial& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

  std::string str(const std::string& variable = "dt") const;

 private:
  int order_;
  std::vector<Rational> coeffs_;  // size order_ + 1
};

std::ostream& operator<<(std::ostream& os, const DtPolynomial& p);

}  // namespace strongstab
