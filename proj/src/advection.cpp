#include "strongstab/advection.hpp"

#include <cmath>
#include <numbers>

namespace strongstab {

std::string to_string(NodeFamily f) { return f == NodeFamily::lobatto ? "lobatto" : "equidistant"; }

NodeFamily parse_node_family(const std::string& name) {
  if (name == "lobatto") return NodeFamily::lobatto;
  if (name == "equidistant") return NodeFamily::equidistant;
  throw std::invalid_argument("unknown node family '" + name + "' (expected lobatto or equidistant)");
}

SbpOperator<Rational> make_sbp_operator_exact(int p, NodeFamily family) {
  if (p < 1) throw std::invalid_argument("make_sbp_operator: degree must be at least 1");
  if (family == NodeFamily::lobatto && p > 2) {
    throw std::invalid_argument("make_sbp_operator: Lobatto nodes for p = " + std::to_string(p) +
                                " are irrational; use a floating point scalar");
  }
  std::vector<Rational> x;
  for (int i = 0; i <= p; ++i) x.push_back(Rational(-1) + Rational(2 * i, p));
  return detail::build_operator<Rational>(p, family, std::move(x));
}

namespace detail {

namespace {

template <class T>
std::vector<T> lobatto_newton(int p, std::vector<T> x, const T& tolerance) {
  const T one = from_rational<T>(Rational(1));
  for (int iteration = 0; iteration < 200; ++iteration) {
    T worst = from_rational<T>(Rational(0));
    for (auto& xi : x) {
      T prev = one;
      T cur = xi;
      for (int k = 2; k <= p; ++k) {
        T next = (from_rational<T>(Rational(2 * k - 1)) * xi * cur - from_rational<T>(Rational(k - 1)) * prev) /
                 from_rational<T>(Rational(k));
        prev = std::move(cur);
        cur = std::move(next);
      }
      const T dx = (xi * cur - prev) / (from_rational<T>(Rational(p + 1)) * cur);
      xi -= dx;
      if (abs_value(dx) > worst) worst = abs_value(dx);
    }
    if (!(worst > tolerance)) {
      for (int i = 0; i <= p / 2; ++i) {
        x[static_cast<std::size_t>(p - i)] = abs_value(x[static_cast<std::size_t>(p - i)] - x[static_cast<std::size_t>(i)]) /
                                             from_rational<T>(Rational(2));
        x[static_cast<std::size_t>(i)] = -x[static_cast<std::size_t>(p - i)];
      }
      x.front() = -one;
      x.back() = one;
      if (p % 2 == 0) x[static_cast<std::size_t>(p / 2)] = from_rational<T>(Rational(0));
      return x;
    }
  }
  throw std::runtime_error("Lobatto node iteration did not converge for p = " + std::to_string(p));
}

}  // namespace

std::vector<double> lobatto_nodes_double(int p) {
  std::vector<double> x;
  for (int i = 0; i <= p; ++i) x.push_back(-std::cos(std::numbers::pi * i / p));
  return lobatto_newton<double>(p, std::move(x), 1e-15);
}

std::vector<BigFloat> lobatto_nodes_bigfloat(int p) {
  const long bits = working_precision();
  const BigFloat pi = BigFloat::pi(bits);
  std::vector<BigFloat> x;
  for (int i = 0; i <= p; ++i) x.push_back(-cos(pi * BigFloat(i) / BigFloat(p)));
  return lobatto_newton<BigFloat>(p, std::move(x), ldexp(BigFloat(1), -(bits - 4)));
}

}  // namespace detail

}  // namespace strongstab
