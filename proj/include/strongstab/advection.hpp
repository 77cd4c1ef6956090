#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "strongstab/bigfloat.hpp"
#include "strongstab/matrix.hpp"
#include "strongstab/problems.hpp"
#include "strongstab/rational.hpp"
#include "strongstab/scalar.hpp"

namespace strongstab {

enum class NodeFamily { lobatto, equidistant };
std::string to_string(NodeFamily f);
/// "lobatto" or "equidistant".
NodeFamily parse_node_family(const std::string& name);

/// Nodal operator on the reference element [-1, 1] with p + 1 nodes
/// including both end points. M = diag(weights), B = diag(-1, 1).
template <class T>
struct SbpOperator {
  int degree = 0;
  NodeFamily family = NodeFamily::lobatto;
  std::vector<T> nodes;
  std::vector<T> weights;
  Matrix<T> d;  // d(i, j) = l_j'(x_i)
  Matrix<T> r;  // r(0, j) = l_j(-1), r(1, j) = l_j(1)

  std::size_t size() const { return nodes.size(); }
};

namespace detail {

/// Nodes of the Lobatto rule with p + 1 points at the working precision of T.
std::vector<double> lobatto_nodes_double(int p);
std::vector<BigFloat> lobatto_nodes_bigfloat(int p);

template <class T>
T zero_of() {
  return from_rational<T>(Rational(0));
}

/// Solves V w = m for the interpolatory weights, V(k, i) = x_i^k.
template <class T>
std::vector<T> interpolatory_weights(const std::vector<T>& x) {
  const std::size_t n = x.size();
  Matrix<T> a(n, n + 1, zero_of<T>());
  for (std::size_t i = 0; i < n; ++i) {
    T power = from_rational<T>(Rational(1));
    for (std::size_t k = 0; k < n; ++k) {
      a(k, i) = power;
      power = power * x[i];
    }
  }
  for (std::size_t k = 0; k < n; ++k) a(k, n) = from_rational<T>(k % 2 == 0 ? Rational(2, static_cast<long>(k + 1)) : Rational(0));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t row = c + 1; row < n; ++row)
      if (abs_value(a(row, c)) > abs_value(a(pivot, c))) pivot = row;
    if (pivot != c)
      for (std::size_t j = 0; j <= n; ++j) std::swap(a(c, j), a(pivot, j));
    for (std::size_t row = 0; row < n; ++row) {
      if (row == c) continue;
      const T f = a(row, c) / a(c, c);
      for (std::size_t j = c; j <= n; ++j) a(row, j) -= f * a(c, j);
    }
  }
  std::vector<T> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = a(i, n) / a(i, i);
  return w;
}

template <class T>
T lagrange(const std::vector<T>& x, std::size_t j, const T& at) {
  T v = from_rational<T>(Rational(1));
  for (std::size_t k = 0; k < x.size(); ++k)
    if (k != j) v = v * (at - x[k]) / (x[j] - x[k]);
  return v;
}

template <class T>
SbpOperator<T> build_operator(int p, NodeFamily family, std::vector<T> x) {
  const std::size_t n = x.size();
  SbpOperator<T> op;
  op.degree = p;
  op.family = family;
  op.weights = interpolatory_weights(x);
  std::vector<T> bary(n, from_rational<T>(Rational(1)));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) bary[j] = bary[j] * (x[j] - x[k]);
  op.d = Matrix<T>(n, n, zero_of<T>());
  for (std::size_t i = 0; i < n; ++i) {
    T diag = zero_of<T>();
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      op.d(i, j) = bary[i] / (bary[j] * (x[i] - x[j]));
      diag -= op.d(i, j);
    }
    op.d(i, i) = diag;
  }
  op.r = Matrix<T>(2, n, zero_of<T>());
  for (std::size_t j = 0; j < n; ++j) {
    op.r(0, j) = lagrange(x, j, from_rational<T>(Rational(-1)));
    op.r(1, j) = lagrange(x, j, from_rational<T>(Rational(1)));
  }
  op.nodes = std::move(x);
  return op;
}

}  // namespace detail

/// Exact operator; Lobatto nodes are rational only for p <= 2.
SbpOperator<Rational> make_sbp_operator_exact(int p, NodeFamily family);

/// Operator over T. Rational node sets are built exactly and rounded once;
/// Lobatto nodes for p >= 3 come from Newton iteration at the working precision.
template <class T>
SbpOperator<T> make_sbp_operator(int p, NodeFamily family) {
  if (p < 1) throw std::invalid_argument("make_sbp_operator: degree must be at least 1");
  if constexpr (std::is_same_v<T, Rational>) {
    return make_sbp_operator_exact(p, family);
  } else {
    if (family == NodeFamily::equidistant || p <= 2) {
      const auto exact = make_sbp_operator_exact(p, family);
      auto lift = [](const std::vector<Rational>& v) {
        std::vector<T> out;
        for (const auto& q : v) out.push_back(from_rational<T>(q));
        return out;
      };
      auto lift_matrix = [](const Matrix<Rational>& m) {
        Matrix<T> out(m.rows(), m.cols(), from_rational<T>(Rational(0)));
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = from_rational<T>(m(i, j));
        return out;
      };
      SbpOperator<T> op;
      op.degree = p;
      op.family = family;
      op.nodes = lift(exact.nodes);
      op.weights = lift(exact.weights);
      op.d = lift_matrix(exact.d);
      op.r = lift_matrix(exact.r);
      return op;
    }
    if constexpr (std::is_same_v<T, BigFloat>) {
      return detail::build_operator<T>(p, family, detail::lobatto_nodes_bigfloat(p));
    } else {
      static_assert(std::is_same_v<T, double>, "unsupported scalar type");
      return detail::build_operator<T>(p, family, detail::lobatto_nodes_double(p));
    }
  }
}

template <class T>
struct SbpResidual {
  Matrix<T> matrix;  // M D + D^T M - R^T B R
  T max_abs;
};

template <class T>
SbpResidual<T> sbp_residual(const SbpOperator<T>& op) {
  const std::size_t n = op.size();
  SbpResidual<T> res{Matrix<T>(n, n, from_rational<T>(Rational(0))), from_rational<T>(Rational(0))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T v = op.weights[i] * op.d(i, j) + op.d(j, i) * op.weights[j];
      v += op.r(0, i) * op.r(0, j);
      v -= op.r(1, i) * op.r(1, j);
      res.matrix(i, j) = v;
      if (abs_value(v) > res.max_abs) res.max_abs = abs_value(v);
    }
  }
  return res;
}

/// Central flux f = (a + b) / 2 and entropy flux F = (a + b) / 2 * f - (psi(a) + psi(b)) / 2
/// with psi(u) = u^2 / 2, at an interface with traces a (left) and b (right).
template <class T>
struct InterfaceFlux {
  T f;
  T entropy;
};

template <class T>
InterfaceFlux<T> central_flux(const T& left, const T& right) {
  const T half = from_rational<T>(Rational(1, 2));
  const T mean = half * (left + right);
  const T f = mean;
  return {f, mean * f - half * (half * left * left + half * right * right)};
}

template <class T>
struct Correction {
  std::vector<T> r;
  T epsilon;
  T alpha;
  bool degenerate = false;
};

/// Abgrall's correction for one element in reference coordinates, w = u:
///   eps = 1^T R^T B F - u^T M D u - u^T R^T B (f - R u)
///   r = alpha (u - (1^T M u / 1^T M 1) 1),  alpha = eps / (u^T M u - (1^T M u)^2 / 1^T M 1).
/// A vanishing denominator (exactly zero, or below 2^-(bits/2) in floating
/// point) gives r = 0.
template <class T>
Correction<T> correction_term(const SbpOperator<T>& op, const std::vector<T>& u, const InterfaceFlux<T>& left,
                              const InterfaceFlux<T>& right) {
  const std::size_t n = op.size();
  const T zero = from_rational<T>(Rational(0));
  T mass = zero;
  T total_weight = zero;
  T energy = zero;
  T mdu = zero;
  for (std::size_t i = 0; i < n; ++i) {
    mass += op.weights[i] * u[i];
    total_weight += op.weights[i];
    energy += op.weights[i] * u[i] * u[i];
    T du = zero;
    for (std::size_t j = 0; j < n; ++j) du += op.d(i, j) * u[j];
    mdu += u[i] * op.weights[i] * du;
  }
  T ru_left = zero;
  T ru_right = zero;
  for (std::size_t j = 0; j < n; ++j) {
    ru_left += op.r(0, j) * u[j];
    ru_right += op.r(1, j) * u[j];
  }
  const T boundary = ru_right * (right.f - ru_right) - ru_left * (left.f - ru_left);
  Correction<T> c{std::vector<T>(n, zero), right.entropy - left.entropy - mdu - boundary, zero, false};
  const T denominator = energy - mass * mass / total_weight;
  bool degenerate = false;
  if constexpr (is_exact_v<T>) {
    degenerate = denominator.is_zero();
  } else {
    const long bits = scalar_bits(denominator);
    degenerate = denominator < from_rational<T>(Rational(1) / Rational(2).pow(static_cast<unsigned>(bits / 2)));
  }
  if (degenerate) {
    c.degenerate = true;
    return c;
  }
  c.alpha = c.epsilon / denominator;
  const T mean = mass / total_weight;
  for (std::size_t i = 0; i < n; ++i) c.r[i] = c.alpha * (u[i] - mean);
  return c;
}

/// Per-element balance of one rhs evaluation, physical units.
template <class T>
struct ElementBalance {
  T mass_of_correction;  // 1^T M r
  T entropy_residual;    // u^T M du/dt + 1^T R^T B F
};

/// Periodic linear advection u_t + u_x = 0 on (x_left, x_right) with N equal
/// elements, central flux and optional entropy correction. The global state
/// stores element e's nodes at [e (p+1), (e+1)(p+1)).
template <class T>
class DgSemidiscretization {
 public:
  DgSemidiscretization(std::size_t elements, SbpOperator<T> op, bool correction,
                       const Rational& x_left = Rational(-1), const Rational& x_right = Rational(1))
      : elements_(elements), op_(std::move(op)), correction_(correction), x_left_(x_left), x_right_(x_right) {
    if (elements_ == 0) throw std::invalid_argument("DgSemidiscretization: need at least one element");
    if (!(x_right_ > x_left_)) throw std::invalid_argument("DgSemidiscretization: empty domain");
  }

  std::size_t elements() const { return elements_; }
  std::size_t dofs() const { return elements_ * op_.size(); }
  const SbpOperator<T>& op() const { return op_; }
  bool correction() const { return correction_; }
  Rational element_width() const { return (x_right_ - x_left_) / Rational(static_cast<long>(elements_)); }
  /// 2 / dx, the derivative factor of the affine map to [-1, 1].
  Rational jacobian() const { return Rational(2) / element_width(); }

  std::vector<T> coordinates() const {
    std::vector<T> x;
    x.reserve(dofs());
    const T half_width = from_rational<T>(element_width() / Rational(2));
    for (std::size_t e = 0; e < elements_; ++e) {
      const T centre = from_rational<T>(x_left_ + element_width() * Rational(2 * static_cast<long>(e) + 1, 2));
      for (const auto& xi : op_.nodes) x.push_back(centre + half_width * xi);
    }
    return x;
  }

  std::vector<T> interpolate(const std::function<T(const T&)>& f) const {
    std::vector<T> u;
    for (const auto& x : coordinates()) u.push_back(f(x));
    return u;
  }

  std::vector<T> rhs(const std::vector<T>& u, std::vector<ElementBalance<T>>* balance = nullptr) const {
    check_state(u);
    const std::size_t n = op_.size();
    const T zero = from_rational<T>(Rational(0));
    const T jac = from_rational<T>(jacobian());
    const T inv_jac = from_rational<T>(element_width() / Rational(2));
    std::vector<InterfaceFlux<T>> flux;  // flux[e] at the left interface of element e
    flux.reserve(elements_);
    for (std::size_t e = 0; e < elements_; ++e) {
      const std::size_t prev = (e + elements_ - 1) % elements_;
      flux.push_back(central_flux(trace(u, prev, 1), trace(u, e, 0)));
    }
    if (balance) balance->assign(elements_, ElementBalance<T>{zero, zero});
    std::vector<T> out(dofs(), zero);
    for (std::size_t e = 0; e < elements_; ++e) {
      const std::vector<T> ue(u.begin() + static_cast<std::ptrdiff_t>(e * n),
                              u.begin() + static_cast<std::ptrdiff_t>((e + 1) * n));
      const auto& left = flux[e];
      const auto& right = flux[(e + 1) % elements_];
      const T jump_left = left.f - trace(u, e, 0);
      const T jump_right = right.f - trace(u, e, 1);
      std::vector<T> de(n, zero);
      for (std::size_t i = 0; i < n; ++i) {
        T v = zero;
        for (std::size_t j = 0; j < n; ++j) v += op_.d(i, j) * ue[j];
        // M^-1 R^T B (f - R u)
        v += (op_.r(1, i) * jump_right - op_.r(0, i) * jump_left) / op_.weights[i];
        de[i] = v;
      }
      Correction<T> c;
      if (correction_) {
        c = correction_term(op_, ue, left, right);
        for (std::size_t i = 0; i < n; ++i) de[i] += c.r[i];
      }
      for (std::size_t i = 0; i < n; ++i) out[e * n + i] = -(jac * de[i]);
      if (balance) {
        T mass_r = zero;
        T rate = zero;
        for (std::size_t i = 0; i < n; ++i) {
          if (correction_) mass_r += op_.weights[i] * c.r[i];
          rate += ue[i] * op_.weights[i] * out[e * n + i];
        }
        (*balance)[e] = {inv_jac * mass_r, inv_jac * rate + (right.entropy - left.entropy)};
      }
    }
    return out;
  }

  /// sum over elements of u^T M u dx / 2
  T total_energy(const std::vector<T>& u) const { return weighted_sum(u, true); }
  /// sum over elements of 1^T M u dx / 2
  T total_mass(const std::vector<T>& u) const { return weighted_sum(u, false); }

  /// The semidiscretization as an ODE with the mass-weighted inner product.
  OdeProblem<T> as_problem(std::vector<T> u0, std::string name = "advection") const {
    OdeProblem<T> p;
    p.name = std::move(name);
    p.dimension = dofs();
    p.rhs = [self = *this](const std::vector<T>& u) { return self.rhs(u); };
    p.u0 = std::move(u0);
    const T half_width = from_rational<T>(element_width() / Rational(2));
    for (std::size_t e = 0; e < elements_; ++e)
      for (const auto& w : op_.weights) p.weights.push_back(half_width * w);
    return p;
  }

 private:
  void check_state(const std::vector<T>& u) const {
    if (u.size() != dofs()) throw std::invalid_argument("DgSemidiscretization: state has wrong length");
    for (const auto& x : u)
      if (!is_finite(x)) throw std::domain_error("DgSemidiscretization: non-finite state entry");
  }

  /// side 0: value at the left end of element e, side 1: at the right end.
  T trace(const std::vector<T>& u, std::size_t e, int side) const {
    const std::size_t n = op_.size();
    T v = from_rational<T>(Rational(0));
    for (std::size_t j = 0; j < n; ++j) v += op_.r(side, j) * u[e * n + j];
    return v;
  }

  T weighted_sum(const std::vector<T>& u, bool squared) const {
    check_state(u);
    const std::size_t n = op_.size();
    T acc = from_rational<T>(Rational(0));
    for (std::size_t k = 0; k < u.size(); ++k) acc += op_.weights[k % n] * (squared ? u[k] * u[k] : u[k]);
    return from_rational<T>(element_width() / Rational(2)) * acc;
  }

  std::size_t elements_;
  SbpOperator<T> op_;
  bool correction_;
  Rational x_left_;
  Rational x_right_;
};

}  // namespace strongstab
