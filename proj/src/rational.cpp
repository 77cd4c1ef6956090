#include "strongstab/rational.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace strongstab {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(numerator, 1);
  value_ /= denominator;
  value_.canonicalize();
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("Rational::from_double: non-finite value");
  return Rational(mpq_class(value));
}

Rational Rational::parse(std::string_view text) {
  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
  };

  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);

  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den)) {
    throw std::invalid_argument("not an exact rational literal: '" + std::string(text) + "'");
  }

  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::domain_error("Rational: zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return Rational(n, d);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(mpq_class(1 / value_));
}

Rational Rational::pow(unsigned exponent) const {
  mpz_class n;
  mpz_class d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  return Rational(n, d);
}

std::string Rational::str() const { return value_.get_str(10); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::size_t Rational::hash() const {
  return std::hash<std::string>{}(str());
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f, mpz_class(1));
}

}  // namespace strongstab
