#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "strongstab/rational.hpp"
#include "strongstab/scalar.hpp"
#include "strongstab/vector_field.hpp"

namespace strongstab {

class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// g(u) = alpha / |u|^2 (-u2, u1). Evaluation closer than 2^-20 to the
/// origin throws SingularityError.
struct NormalizedRotationField {
  Rational alpha{1};

  template <class T>
  std::vector<T> operator()(const std::vector<T>& u) const {
    if (u.size() != 2) throw std::invalid_argument("normalized rotation field: dimension must be 2");
    const T n2 = u[0] * u[0] + u[1] * u[1];
    if (!(n2 >= from_rational<T>(Rational(1, 1L << 40)))) {
      throw SingularityError("normalized rotation field evaluated at |u| < 2^-20");
    }
    const T s = from_rational<T>(alpha) / n2;
    return {-(s * u[1]), s * u[0]};
  }
};

/// Numeric problem over scalar type T. `weights` empty means the Euclidean
/// inner product, otherwise <a, b> = sum w_i a_i b_i.
template <class T>
struct OdeProblem {
  std::string name;
  std::size_t dimension = 0;
  std::function<std::vector<T>(const std::vector<T>&)> rhs;
  std::vector<T> u0;
  std::vector<T> weights;

  T inner(const std::vector<T>& a, const std::vector<T>& b) const {
    T acc = from_rational<T>(Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (weights.empty()) {
        acc += a[i] * b[i];
      } else {
        acc += weights[i] * (a[i] * b[i]);
      }
    }
    return acc;
  }
  T energy(const std::vector<T>& u) const { return inner(u, u); }
};

/// A registered problem: field, parameters and exact initial state.
struct ProblemSpec {
  std::string name;
  std::vector<std::pair<std::string, Rational>> parameters;
  std::variant<PolynomialVectorField, NormalizedRotationField> field;
  std::vector<Rational> u0;

  std::size_t dimension() const { return u0.size(); }
  const PolynomialVectorField* polynomial() const { return std::get_if<PolynomialVectorField>(&field); }
  const NormalizedRotationField* normalized() const { return std::get_if<NormalizedRotationField>(&field); }
  /// name(p1,p2) as accepted by make_problem.
  std::string label() const;

  template <class T>
  std::vector<T> evaluate(const std::vector<T>& u) const {
    if (const auto* f = normalized()) return (*f)(u);
    const auto& p = std::get<PolynomialVectorField>(field);
    std::vector<T> out;
    out.reserve(p.components.size());
    for (const auto& c : p.components) out.push_back(c.evaluate_in(u, [](const Rational& q) { return from_rational<T>(q); }));
    return out;
  }

  template <class T>
  OdeProblem<T> instantiate() const {
    OdeProblem<T> p;
    p.name = label();
    p.dimension = dimension();
    p.rhs = [spec = *this](const std::vector<T>& u) { return spec.evaluate(u); };
    for (const auto& x : u0) p.u0.push_back(from_rational<T>(x));
    return p;
  }
};

/// Problems by name, u0 = (1, 0):
///   u1_r_u2(r,alpha)  r_u1_u2(r,alpha)  u1_u2  rotation(omega)
///   normalized_rotation(alpha)  contracting  zero
ProblemSpec make_problem(const std::string& spec);
std::vector<std::string> problem_names();

inline constexpr std::uint64_t default_seed = 20240521;

/// Reproducible rational samples: numerator and denominator uniform with
/// denominator in [1, max_denominator] and |value| <= bound.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed = default_seed, Rational bound = 8, long max_denominator = 64);
  Rational next();
  Rational next_in(const Rational& lo, const Rational& hi);
  std::vector<Rational> point(std::size_t dimension);

 private:
  std::mt19937_64 rng_;
  Rational bound_;
  long max_denominator_;
};

enum class SymbolicVerdict { identically_zero, nonpositive, undetermined };
std::string to_string(SymbolicVerdict v);

/// Exact verdict on <u, g(u)> for a polynomial field: identically zero, a
/// negative semidefinite quadratic form, or undetermined.
SymbolicVerdict symbolic_semibounded_verdict(const PolynomialVectorField& f);

struct SemiboundedWitness {
  Rational max_value;  // max of <u, g(u)> over the samples
  std::vector<Rational> argmax;
  std::size_t samples = 0;
  std::optional<SymbolicVerdict> symbolic;
};

/// Random points in [-8, 8]^d plus the corners {-8, 8}^d. For the normalized
/// field, random points with |u| < 1/2 are redrawn.
SemiboundedWitness semibounded_witness(const ProblemSpec& problem, std::size_t samples,
                                       std::uint64_t seed = default_seed);
/// Same on explicit points; throws SingularityError for a point with
/// |u| < 1/2 on the normalized field.
SemiboundedWitness semibounded_witness(const ProblemSpec& problem, const std::vector<std::vector<Rational>>& points);

struct LipschitzEstimate {
  Rational max_ratio_squared;
  std::vector<Rational> ratio_squared;  // per pair, in sample order; u = v pairs omitted
  std::size_t skipped = 0;

  double max_ratio() const;
};

/// |g(u) - g(v)|^2 / |u - v|^2, exact, over pairs with |u|, |v| >= 1.
LipschitzEstimate lipschitz_estimate(const NormalizedRotationField& field,
                                     const std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>>& pairs);
/// Pairs drawn outside the unit ball: points rho (cos, sin) from the rational
/// circle parametrisation with rho in [1, 4], half of them paired with a
/// nearby point.
LipschitzEstimate lipschitz_estimate(const NormalizedRotationField& field, std::size_t samples,
                                     std::uint64_t seed = default_seed);
std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> exterior_sample_pairs(std::size_t samples,
                                                                                             std::uint64_t seed);

struct CoercivityEstimate {
  Rational sup_ratio;  // sup <u, g(u)> / |g(u)|^2, the smallest admissible M
  std::size_t samples = 0;
};

/// Throws std::domain_error if g vanishes at every sample.
CoercivityEstimate coercivity_gap(const ProblemSpec& problem, std::size_t samples, std::uint64_t seed = default_seed);
CoercivityEstimate coercivity_gap(const ProblemSpec& problem, const std::vector<std::vector<Rational>>& points);

}  // namespace strongstab
