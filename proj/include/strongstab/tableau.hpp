#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strongstab/dt_polynomial.hpp"
#include "strongstab/matrix.hpp"
#include "strongstab/rational.hpp"

namespace strongstab {

/// Runge-Kutta method in Butcher form with exact coefficients.
///
/// Immutable after construction. The abscissae c default to the row sums of
/// A; a stored c that disagrees with the row sums is kept and reported by
/// c_mismatch() (only autonomous problems are treated, so c is informational).
class ButcherTableau {
 public:
  ButcherTableau(std::string name, Matrix<Rational> a, std::vector<Rational> b,
                 std::optional<std::vector<Rational>> c = std::nullopt);

  const std::string& name() const { return name_; }
  std::size_t stages() const { return b_.size(); }
  const Matrix<Rational>& a() const { return a_; }
  const Rational& a(std::size_t i, std::size_t j) const { return a_(i, j); }
  const std::vector<Rational>& b() const { return b_; }
  const std::vector<Rational>& c() const { return c_; }

  /// a_ij = 0 for all j >= i.
  bool is_explicit() const;
  std::vector<Rational> row_sums() const;
  /// Zero-based indices i with c_i != sum_j a_ij.
  std::vector<std::size_t> c_mismatch() const;

  ButcherTableau renamed(std::string name) const;

  /// Same coefficients (names are ignored).
  friend bool operator==(const ButcherTableau& x, const ButcherTableau& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
  }

 private:
  std::string name_;
  Matrix<Rational> a_;
  std::vector<Rational> b_;
  std::vector<Rational> c_;
};

/// One rooted-tree order condition  sum(...) = 1/gamma(tree).
struct OrderCondition {
  int order;
  std::string expression;  // e.g. "b.c^2"
  Rational required;
  Rational value;
  bool satisfied() const { return value == required; }
};

/// The eight order conditions through order 4, evaluated with c = row sums of A.
std::vector<OrderCondition> order_conditions(const ButcherTableau& t, int p_max = 4);

/// Largest p <= p_max such that every condition of order <= p holds exactly;
/// 0 for an inconsistent method.
int check_order(const ButcherTableau& t, int p_max = 4);

struct CoefficientViolation {
  std::string entry;  // one-based, e.g. "a32" or "b1"
  Rational value;
};

struct NonnegativityReport {
  bool pass = true;
  std::vector<CoefficientViolation> violations;
};

/// Necessary condition for a positive SSP coefficient: a_ij >= 0 and b_i >= 0.
NonnegativityReport check_ssp_nonnegativity(const ButcherTableau& t);

/// R(z) = sum_k r_k z^k, the amplification factor on u' = z u.
struct StabilityFunction {
  std::vector<Rational> coefficients;

  int degree() const;
  Rational evaluate(const Rational& z) const;
  friend bool operator==(const StabilityFunction&, const StabilityFunction&) = default;
};

/// Explicit tableaus only: R(z) = 1 + sum_{k>=1} (b^T A^{k-1} 1) z^k.
StabilityFunction stability_function(const ButcherTableau& t);

/// |R(iy)|^2 = Re(R(iy))^2 + Im(R(iy))^2 as an exact even polynomial in y.
DtPolynomial modulus_squared_on_imaginary_axis(const StabilityFunction& r);

enum class SemidefiniteVerdict { zero, negative_semidefinite, not_negative_semidefinite };

std::string to_string(SemidefiniteVerdict v);

struct AlgebraicStability {
  Matrix<Rational> matrix;  // m_ij = b_i b_j - b_i a_ij - b_j a_ji
  SemidefiniteVerdict verdict;
};

AlgebraicStability algebraic_stability_matrix(const ButcherTableau& t);

/// Exact test by symmetric LDL^T with diagonal pivoting: at each step the
/// largest remaining diagonal entry is the pivot, ties to the lowest index.
bool is_positive_semidefinite(Matrix<Rational> m);

}  // namespace strongstab
