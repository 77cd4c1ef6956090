#include "strongstab/vector_field.hpp"

#include <sstream>
#include <stdexcept>

namespace strongstab {

MultiPolynomial MultiPolynomial::constant(std::size_t variables, const Rational& c) {
  MultiPolynomial p(variables);
  p.add_term(Exponents(variables, 0), c);
  return p;
}

MultiPolynomial MultiPolynomial::variable(std::size_t variables, std::size_t i) {
  if (i >= variables) throw std::out_of_range("MultiPolynomial::variable: index out of range");
  MultiPolynomial p(variables);
  Exponents e(variables, 0);
  e[i] = 1;
  p.add_term(e, Rational(1));
  return p;
}

void MultiPolynomial::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int MultiPolynomial::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int x : e) d += x;
    best = std::max(best, d);
  }
  return best;
}

Rational MultiPolynomial::evaluate(const std::vector<Rational>& x) const {
  if (x.size() != variables_) throw std::invalid_argument("MultiPolynomial::evaluate: dimension mismatch");
  return evaluate_in(x, [](const Rational& c) { return c; });
}

MultiPolynomial& MultiPolynomial::operator+=(const MultiPolynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPolynomial& MultiPolynomial::operator-=(const MultiPolynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b) {
  if (a.variables_ != b.variables_) throw std::invalid_argument("MultiPolynomial product: variable count mismatch");
  MultiPolynomial out(a.variables_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      MultiPolynomial::Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPolynomial operator*(const Rational& c, MultiPolynomial p) {
  if (c.is_zero()) return MultiPolynomial(p.variables_);
  for (auto& [e, coeff] : p.terms_) coeff *= c;
  return p;
}

std::string MultiPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    os << (first ? "" : " + ") << c;
    first = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*u" << i + 1;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

std::vector<Rational> PolynomialVectorField::operator()(const std::vector<Rational>& u) const {
  std::vector<Rational> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.evaluate(u));
  return out;
}

MultiPolynomial PolynomialVectorField::inner_with_state() const {
  const std::size_t d = dimension();
  MultiPolynomial acc(d);
  for (std::size_t i = 0; i < d; ++i) acc += MultiPolynomial::variable(d, i) * components[i];
  return acc;
}

std::string PolynomialVectorField::label() const {
  if (parameters.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < parameters.size(); ++i)
    out += (i ? "," : "") + parameters[i].first + "=" + parameters[i].second.str();
  return out + ")";
}

namespace {

PolynomialVectorField skew_times(std::string name, std::vector<std::pair<std::string, Rational>> params,
                                 const MultiPolynomial& factor) {
  const auto u1 = MultiPolynomial::variable(2, 0);
  const auto u2 = MultiPolynomial::variable(2, 1);
  return {std::move(name), std::move(params), {-(factor * u2), factor * u1}};
}

}  // namespace

PolynomialVectorField field_u1_r_u2(const Rational& r, const Rational& alpha) {
  const auto u1 = MultiPolynomial::variable(2, 0);
  const auto u2 = MultiPolynomial::variable(2, 1);
  return skew_times("u1_r_u2", {{"r", r}, {"alpha", alpha}}, alpha * (u1 - r * u2));
}

PolynomialVectorField field_r_u1_u2(const Rational& r, const Rational& alpha) {
  const auto u1 = MultiPolynomial::variable(2, 0);
  const auto u2 = MultiPolynomial::variable(2, 1);
  return skew_times("r_u1_u2", {{"r", r}, {"alpha", alpha}}, alpha * (r * u1 - u2));
}

PolynomialVectorField field_u1_u2() {
  const auto u1 = MultiPolynomial::variable(2, 0);
  const auto u2 = MultiPolynomial::variable(2, 1);
  return skew_times("u1_u2", {}, u1 - u2);
}

PolynomialVectorField field_rotation(const Rational& omega) {
  return skew_times("rotation", {{"omega", omega}}, MultiPolynomial::constant(2, omega));
}

PolynomialVectorField field_contracting(std::size_t dimension) {
  PolynomialVectorField f{"contracting", {}, {}};
  for (std::size_t i = 0; i < dimension; ++i) f.components.push_back(-MultiPolynomial::variable(dimension, i));
  return f;
}

PolynomialVectorField field_zero(std::size_t dimension) {
  return {"zero", {}, std::vector<MultiPolynomial>(dimension, MultiPolynomial(dimension))};
}

}  // namespace strongstab
