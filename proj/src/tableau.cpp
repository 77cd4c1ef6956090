#include "strongstab/tableau.hpp"

#include <functional>
#include <stdexcept>

namespace strongstab {

namespace {

using Vec = std::vector<Rational>;

Rational dot(const Vec& x, const Vec& y) {
  Rational acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

Vec hadamard(const Vec& x, const Vec& y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
  return out;
}

}  // namespace

ButcherTableau::ButcherTableau(std::string name, Matrix<Rational> a, std::vector<Rational> b,
                               std::optional<std::vector<Rational>> c)
    : name_(std::move(name)), a_(std::move(a)), b_(std::move(b)) {
  const std::size_t s = b_.size();
  if (s == 0) throw std::invalid_argument("ButcherTableau: no stages");
  if (a_.rows() != s || a_.cols() != s) {
    throw std::invalid_argument("ButcherTableau '" + name_ + "': A must be " + std::to_string(s) + "x" +
                                std::to_string(s));
  }
  if (c) {
    if (c->size() != s) throw std::invalid_argument("ButcherTableau '" + name_ + "': c has wrong length");
    c_ = std::move(*c);
  } else {
    c_ = row_sums();
  }
}

bool ButcherTableau::is_explicit() const {
  for (std::size_t i = 0; i < stages(); ++i)
    for (std::size_t j = i; j < stages(); ++j)
      if (!a_(i, j).is_zero()) return false;
  return true;
}

std::vector<Rational> ButcherTableau::row_sums() const {
  std::vector<Rational> sums(stages(), Rational(0));
  for (std::size_t i = 0; i < stages(); ++i)
    for (std::size_t j = 0; j < stages(); ++j) sums[i] += a_(i, j);
  return sums;
}

std::vector<std::size_t> ButcherTableau::c_mismatch() const {
  std::vector<std::size_t> out;
  const auto sums = row_sums();
  for (std::size_t i = 0; i < stages(); ++i)
    if (sums[i] != c_[i]) out.push_back(i);
  return out;
}

ButcherTableau ButcherTableau::renamed(std::string name) const {
  ButcherTableau copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

std::vector<OrderCondition> order_conditions(const ButcherTableau& t, int p_max) {
  if (p_max < 1 || p_max > 4) throw std::invalid_argument("order conditions are implemented for orders 1..4");
  const Vec& b = t.b();
  const Vec c = t.row_sums();
  const Vec ones(t.stages(), Rational(1));
  const auto Ax = [&](const Vec& x) { return t.a().apply(x); };

  std::vector<OrderCondition> out;
  auto add = [&](int order, std::string expr, Rational required, Rational value) {
    if (order <= p_max) out.push_back({order, std::move(expr), std::move(required), std::move(value)});
  };

  add(1, "b.1", Rational(1), dot(b, ones));
  add(2, "b.c", Rational(1, 2), dot(b, c));
  if (p_max >= 3) {
    const Vec c2 = hadamard(c, c);
    const Vec ac = Ax(c);
    add(3, "b.c^2", Rational(1, 3), dot(b, c2));
    add(3, "b.Ac", Rational(1, 6), dot(b, ac));
    if (p_max >= 4) {
      add(4, "b.c^3", Rational(1, 4), dot(b, hadamard(c2, c)));
      add(4, "b.(c*Ac)", Rational(1, 8), dot(b, hadamard(c, ac)));
      add(4, "b.Ac^2", Rational(1, 12), dot(b, Ax(c2)));
      add(4, "b.AAc", Rational(1, 24), dot(b, Ax(ac)));
    }
  }
  return out;
}

int check_order(const ButcherTableau& t, int p_max) {
  const auto conditions = order_conditions(t, p_max);
  int attained = p_max;
  for (const auto& cond : conditions) {
    if (!cond.satisfied() && cond.order - 1 < attained) attained = cond.order - 1;
  }
  return attained;
}

NonnegativityReport check_ssp_nonnegativity(const ButcherTableau& t) {
  NonnegativityReport report;
  for (std::size_t i = 0; i < t.stages(); ++i) {
    for (std::size_t j = 0; j < t.stages(); ++j) {
      if (t.a(i, j).sign() < 0) {
        report.violations.push_back({"a" + std::to_string(i + 1) + std::to_string(j + 1), t.a(i, j)});
      }
    }
  }
  for (std::size_t i = 0; i < t.stages(); ++i) {
    if (t.b()[i].sign() < 0) report.violations.push_back({"b" + std::to_string(i + 1), t.b()[i]});
  }
  report.pass = report.violations.empty();
  return report;
}

int StabilityFunction::degree() const {
  for (int k = static_cast<int>(coefficients.size()) - 1; k >= 0; --k)
    if (!coefficients[static_cast<std::size_t>(k)].is_zero()) return k;
  return -1;
}

Rational StabilityFunction::evaluate(const Rational& z) const {
  Rational acc(0);
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
  return acc;
}

StabilityFunction stability_function(const ButcherTableau& t) {
  if (!t.is_explicit()) throw std::invalid_argument("stability_function: '" + t.name() + "' is not explicit");
  StabilityFunction r;
  r.coefficients.push_back(Rational(1));
  Vec power(t.stages(), Rational(1));  // A^{k-1} 1
  for (std::size_t k = 1; k <= t.stages(); ++k) {
    r.coefficients.push_back(dot(t.b(), power));
    power = t.a().apply(power);
  }
  while (r.coefficients.size() > 1 && r.coefficients.back().is_zero()) r.coefficients.pop_back();
  return r;
}

DtPolynomial modulus_squared_on_imaginary_axis(const StabilityFunction& r) {
  // R(iy) = sum_k r_k i^k y^k; i^k cycles 1, i, -1, -i.
  const std::size_t n = r.coefficients.size();
  std::vector<Rational> re(n, Rational(0));
  std::vector<Rational> im(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    const Rational& c = r.coefficients[k];
    switch (k % 4) {
      case 0: re[k] = c; break;
      case 1: im[k] = c; break;
      case 2: re[k] = -c; break;
      default: im[k] = -c; break;
    }
  }
  std::vector<Rational> out(n == 0 ? 1 : 2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i + j] += re[i] * re[j] + im[i] * im[j];
  return DtPolynomial::exact(std::move(out));
}

std::string to_string(SemidefiniteVerdict v) {
  switch (v) {
    case SemidefiniteVerdict::zero: return "zero";
    case SemidefiniteVerdict::negative_semidefinite: return "negative-semidefinite";
    case SemidefiniteVerdict::not_negative_semidefinite: return "indefinite/positive";
  }
  return "unknown";
}

bool is_positive_semidefinite(Matrix<Rational> m) {
  const std::size_t n = m.rows();
  std::vector<bool> eliminated(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (eliminated[i]) continue;
      if (!pivot || m(i, i) > m(*pivot, *pivot)) pivot = i;
    }
    const std::size_t p = *pivot;
    const Rational d = m(p, p);
    if (d.sign() < 0) return false;
    if (d.is_zero()) {
      // Remaining diagonal is all zero: PSD only if the remaining block vanishes.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!eliminated[i] && !eliminated[j] && !m(i, j).is_zero()) return false;
      return true;
    }
    eliminated[p] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (eliminated[i]) continue;
      const Rational l = m(i, p) / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (eliminated[j]) continue;
        m(i, j) -= l * m(p, j);
      }
    }
  }
  return true;
}

AlgebraicStability algebraic_stability_matrix(const ButcherTableau& t) {
  const std::size_t s = t.stages();
  const Vec& b = t.b();
  Matrix<Rational> m(s, s, Rational(0));
  bool all_zero = true;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      m(i, j) = b[i] * b[j] - b[i] * t.a(i, j) - b[j] * t.a(j, i);
      all_zero = all_zero && m(i, j).is_zero();
    }
  }
  SemidefiniteVerdict verdict = SemidefiniteVerdict::not_negative_semidefinite;
  if (all_zero) {
    verdict = SemidefiniteVerdict::zero;
  } else {
    Matrix<Rational> negated(s, s, Rational(0));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) negated(i, j) = -m(i, j);
    if (is_positive_semidefinite(std::move(negated))) verdict = SemidefiniteVerdict::negative_semidefinite;
  }
  return {std::move(m), verdict};
}

}  // namespace strongstab
