#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "strongstab/rational.hpp"

namespace strongstab {

/// Sparse multivariate polynomial with rational coefficients.
class MultiPolynomial {
 public:
  using Exponents = std::vector<int>;

  explicit MultiPolynomial(std::size_t variables = 0) : variables_(variables) {}
  static MultiPolynomial constant(std::size_t variables, const Rational& c);
  /// The i-th coordinate u_{i+1}.
  static MultiPolynomial variable(std::size_t variables, std::size_t i);

  std::size_t variables() const { return variables_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  Rational evaluate(const std::vector<Rational>& x) const;

  /// Evaluation over any commutative ring T; `lift` maps a coefficient into T.
  template <class T, class Lift>
  T evaluate_in(const std::vector<T>& x, Lift&& lift) const {
    T acc = lift(Rational(0));
    for (const auto& [exps, coeff] : terms_) {
      T term = lift(coeff);
      for (std::size_t i = 0; i < exps.size(); ++i)
        for (int e = 0; e < exps[i]; ++e) term = term * x[i];
      acc = acc + term;
    }
    return acc;
  }

  MultiPolynomial& operator+=(const MultiPolynomial& rhs);
  MultiPolynomial& operator-=(const MultiPolynomial& rhs);
  friend MultiPolynomial operator+(MultiPolynomial a, const MultiPolynomial& b) { return a += b; }
  friend MultiPolynomial operator-(MultiPolynomial a, const MultiPolynomial& b) { return a -= b; }
  friend MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b);
  friend MultiPolynomial operator*(const Rational& c, MultiPolynomial p);
  friend MultiPolynomial operator-(MultiPolynomial p) { return Rational(-1) * std::move(p); }
  friend bool operator==(const MultiPolynomial&, const MultiPolynomial&) = default;

  std::string str() const;

 private:
  void add_term(const Exponents& e, const Rational& c);

  std::size_t variables_;
  std::map<Exponents, Rational> terms_;
};

/// g: R^d -> R^d with polynomial components.
struct PolynomialVectorField {
  std::string name;
  std::vector<std::pair<std::string, Rational>> parameters;
  std::vector<MultiPolynomial> components;

  std::size_t dimension() const { return components.size(); }
  std::vector<Rational> operator()(const std::vector<Rational>& u) const;
  /// <u, g(u)> as a polynomial.
  MultiPolynomial inner_with_state() const;
  std::string label() const;
};

/// g(u) = alpha (u1 - r u2) (-u2, u1)
PolynomialVectorField field_u1_r_u2(const Rational& r, const Rational& alpha);
/// g(u) = alpha (r u1 - u2) (-u2, u1)
PolynomialVectorField field_r_u1_u2(const Rational& r, const Rational& alpha);
/// g(u) = (u1 - u2) (-u2, u1)
PolynomialVectorField field_u1_u2();
/// g(u) = omega (-u2, u1)
PolynomialVectorField field_rotation(const Rational& omega);
/// g(u) = -u
PolynomialVectorField field_contracting(std::size_t dimension = 2);
PolynomialVectorField field_zero(std::size_t dimension = 2);

}  // namespace strongstab
