#include "strongstab/dt_polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace strongstab {

DtPolynomial::DtPolynomial(int truncation_order) : order_(truncation_order) {
  if (order_ < 0) throw std::invalid_argument("DtPolynomial: negative truncation order");
  coeffs_.assign(static_cast<std::size_t>(order_) + 1, Rational(0));
}

DtPolynomial::DtPolynomial(std::vector<Rational> coefficients, int truncation_order)
    : DtPolynomial(truncation_order) {
  const std::size_t n = std::min(coefficients.size(), coeffs_.size());
  for (std::size_t k = 0; k < n; ++k) coeffs_[k] = std::move(coefficients[k]);
}

DtPolynomial DtPolynomial::constant(const Rational& value, int truncation_order) {
  DtPolynomial p(truncation_order);
  p.coeffs_[0] = value;
  return p;
}

DtPolynomial DtPolynomial::monomial(const Rational& value, int power, int truncation_order) {
  DtPolynomial p(truncation_order);
  if (power <= truncation_order) p.coeffs_[static_cast<std::size_t>(power)] = value;
  return p;
}

DtPolynomial DtPolynomial::exact(std::vector<Rational> coefficients) {
  while (coefficients.size() > 1 && coefficients.back().is_zero()) coefficients.pop_back();
  if (coefficients.empty()) coefficients.emplace_back(0);
  const int order = static_cast<int>(coefficients.size()) - 1;
  return DtPolynomial(std::move(coefficients), order);
}

const Rational& DtPolynomial::operator[](int k) const {
  if (k < 0 || k > order_) {
    throw TruncationError("coefficient of power " + std::to_string(k) +
                          " is beyond truncation order " + std::to_string(order_));
  }
  return coeffs_[static_cast<std::size_t>(k)];
}

std::optional<Rational> DtPolynomial::coefficient(int k) const {
  if (k < 0 || k > order_) return std::nullopt;
  return coeffs_[static_cast<std::size_t>(k)];
}

std::optional<int> DtPolynomial::leading_power() const {
  for (int k = 0; k <= order_; ++k) {
    if (!coeffs_[static_cast<std::size_t>(k)].is_zero()) return k;
  }
  return std::nullopt;
}

int DtPolynomial::degree() const {
  for (int k = order_; k >= 0; --k) {
    if (!coeffs_[static_cast<std::size_t>(k)].is_zero()) return k;
  }
  return -1;
}

DtPolynomial DtPolynomial::shifted(int k) const {
  DtPolynomial out(order_);
  for (int i = 0; i + k <= order_; ++i) out.coeffs_[static_cast<std::size_t>(i + k)] = coeffs_[static_cast<std::size_t>(i)];
  return out;
}

DtPolynomial DtPolynomial::divided_by_power(int k) const {
  if (k > order_) throw TruncationError("divided_by_power: power exceeds truncation order");
  for (int i = 0; i < k; ++i) {
    if (!coeffs_[static_cast<std::size_t>(i)].is_zero()) {
      throw std::domain_error("divided_by_power: coefficient of power " + std::to_string(i) + " is nonzero");
    }
  }
  DtPolynomial out(order_ - k);
  for (int i = k; i <= order_; ++i) out.coeffs_[static_cast<std::size_t>(i - k)] = coeffs_[static_cast<std::size_t>(i)];
  return out;
}

DtPolynomial DtPolynomial::truncated(int order) const {
  const int n = std::min(order, order_);
  return DtPolynomial(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + n + 1), n);
}

Rational DtPolynomial::evaluate(const Rational& x) const {
  Rational acc(0);
  for (int k = order_; k >= 0; --k) acc = acc * x + coeffs_[static_cast<std::size_t>(k)];
  return acc;
}

DtPolynomial& DtPolynomial::operator+=(const DtPolynomial& rhs) {
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (int k = 0; k <= order_; ++k) coeffs_[static_cast<std::size_t>(k)] += rhs.coeffs_[static_cast<std::size_t>(k)];
  return *this;
}

DtPolynomial& DtPolynomial::operator-=(const DtPolynomial& rhs) {
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (int k = 0; k <= order_; ++k) coeffs_[static_cast<std::size_t>(k)] -= rhs.coeffs_[static_cast<std::size_t>(k)];
  return *this;
}

DtPolynomial operator*(const DtPolynomial& lhs, const DtPolynomial& rhs) {
  const int order = std::min(lhs.order_, rhs.order_);
  DtPolynomial out(order);
  for (int i = 0; i <= order; ++i) {
    const Rational& a = lhs.coeffs_[static_cast<std::size_t>(i)];
    if (a.is_zero()) continue;
    for (int j = 0; i + j <= order; ++j) {
      const Rational& b = rhs.coeffs_[static_cast<std::size_t>(j)];
      if (b.is_zero()) continue;
      out.coeffs_[static_cast<std::size_t>(i + j)] += a * b;
    }
  }
  return out;
}

DtPolynomial& DtPolynomial::operator*=(const DtPolynomial& rhs) { return *this = *this * rhs; }

DtPolynomial& DtPolynomial::operator*=(const Rational& rhs) {
  for (auto& c : coeffs_) c *= rhs;
  return *this;
}

DtPolynomial operator-(DtPolynomial x) {
  for (auto& c : x.coeffs_) c = -c;
  return x;
}

std::string DtPolynomial::str(const std::string& variable) const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= order_; ++k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    first = false;
    os << c.abs();
    if (k == 1) os << "*" << variable;
    if (k > 1) os << "*" << variable << "^" << k;
  }
  if (first) os << "0";
  os << " + O(" << variable << "^" << order_ + 1 << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const DtPolynomial& p) { return os << p.str(); }

}  // namespace strongstab
