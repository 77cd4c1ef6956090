#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strongstab/bigfloat.hpp"
#include "strongstab/low_storage.hpp"
#include "strongstab/methods.hpp"
#include "strongstab/problems.hpp"
#include "strongstab/rational.hpp"
#include "strongstab/scalar.hpp"

namespace strongstab {

/// Significand bits for every state, stage and energy value; rounding is
/// always to nearest.
struct PrecisionConfig {
  long significand_bits = 256;
};

template <class T>
struct EnergyTrace {
  struct Row {
    std::size_t step;
    T time;
    T energy;
  };
  std::vector<Row> rows;
};

template <class T>
struct IntegrationResult {
  std::vector<T> state;
  EnergyTrace<T> trace;
};

enum class ExecutionPath { automatic, tableau, program };

/// x + dt * sum c * k
template <class T>
std::vector<T> dt_combination(const std::vector<T>& x, const T& dt,
                              const std::vector<std::pair<Rational, const std::vector<T>*>>& terms) {
  std::vector<T> y = x;
  if (terms.empty()) return y;
  std::vector<T> coeffs;
  coeffs.reserve(terms.size());
  for (const auto& term : terms) coeffs.push_back(from_rational<T>(term.first));
  for (std::size_t i = 0; i < y.size(); ++i) {
    T acc = coeffs[0] * (*terms[0].second)[i];
    for (std::size_t j = 1; j < terms.size(); ++j) acc += coeffs[j] * (*terms[j].second)[i];
    y[i] += dt * acc;
  }
  return y;
}

/// sum w * x
template <class T>
std::vector<T> linear_combination(const std::vector<std::pair<Rational, const std::vector<T>*>>& terms) {
  std::vector<T> y(terms.at(0).second->size(), from_rational<T>(Rational(0)));
  for (const auto& [w, x] : terms) {
    const T c = from_rational<T>(w);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * (*x)[i];
  }
  return y;
}

/// One step of the method. The automatic path runs the low-storage program
/// when the method has one and the tableau otherwise.
template <class T>
std::vector<T> step(const Method& m, const OdeProblem<T>& p, const std::vector<T>& u, const T& dt,
                    ExecutionPath path = ExecutionPath::automatic) {
  using V = std::vector<T>;
  using Terms = std::vector<std::pair<Rational, const V*>>;
  auto g = [&](const V& x) { return p.rhs(x); };
  auto dtc = [&](const V& x, const Terms& terms) { return dt_combination(x, dt, terms); };
  const bool use_program =
      path == ExecutionPath::program || (path == ExecutionPath::automatic && m.program.has_value());
  if (use_program) {
    if (!m.program) throw std::invalid_argument("method '" + m.name() + "' has no low-storage program");
    return run_program(*m.program, u, g, dtc, [](const Terms& terms) { return linear_combination(terms); });
  }
  return run_tableau(m.tableau, u, g, dtc);
}

/// n_steps steps of size dt from p.u0, recording |u|^2 before the first and
/// after every step. Throws std::overflow_error on a non-finite state.
template <class T>
IntegrationResult<T> integrate(const Method& m, const OdeProblem<T>& p, const T& dt, std::size_t n_steps,
                               ExecutionPath path = ExecutionPath::automatic) {
  if (!(dt > from_rational<T>(Rational(0)))) throw std::invalid_argument("integrate: dt must be positive");
  IntegrationResult<T> out{p.u0, {}};
  out.trace.rows.reserve(n_steps + 1);
  out.trace.rows.push_back({0, from_rational<T>(Rational(0)), p.energy(out.state)});
  for (std::size_t n = 1; n <= n_steps; ++n) {
    out.state = step(m, p, out.state, dt, path);
    for (const auto& x : out.state) {
      if (!is_finite(x)) {
        throw std::overflow_error("integrate: non-finite state at step " + std::to_string(n) + " of " + m.name());
      }
    }
    out.trace.rows.push_back({n, from_rational<T>(Rational(n)) * dt, p.energy(out.state)});
  }
  return out;
}

/// integrate at the configured precision on a registered problem.
IntegrationResult<BigFloat> integrate(const Method& m, const ProblemSpec& problem, const Rational& dt,
                                      std::size_t n_steps, PrecisionConfig precision,
                                      ExecutionPath path = ExecutionPath::automatic);

/// Energy increase of one SSPRK(3,3) step on the normalized rotation field
/// with alpha = 1 from a state with |u|^2 = x:
///   dt^4 (dt^4 + 196 dt^2 x^2 + 240 x^4) / (36 x (dt^2 + x^2)(dt^4 + 12 dt^2 x^2 + 16 x^4)).
template <class T>
T ssprk33_energy_map(const T& dt, const T& x) {
  const T zero = from_rational<T>(Rational(0));
  if (!(dt > zero) || !(x > zero)) throw std::invalid_argument("ssprk33_energy_map: dt and x must be positive");
  const T d2 = dt * dt;
  const T d4 = d2 * d2;
  const T x2 = x * x;
  const T x4 = x2 * x2;
  const T num = d4 * (d4 + from_rational<T>(196) * d2 * x2 + from_rational<T>(240) * x4);
  const T den = from_rational<T>(36) * x * (d2 + x2) * (d4 + from_rational<T>(12) * d2 * x2 + from_rational<T>(16) * x4);
  return num / den;
}

/// rational + coefficient * sqrt(radicand), coefficient >= 0, radicand >= 0.
struct QuadraticSurd {
  Rational rational;
  Rational coefficient;
  Rational radicand;

  BigFloat evaluate(long bits) const;
  double to_double() const;
  /// Exact sign of (*this - x).
  std::strong_ordering compare(const Rational& x) const;
  std::string str() const;

  friend QuadraticSurd operator*(const QuadraticSurd& s, const Rational& k) {
    if (k.sign() < 0) throw std::invalid_argument("QuadraticSurd: negative scale");
    return {s.rational * k, s.coefficient * k, s.radicand};
  }
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};

/// Largest dt for which the two-stage first order scheme (b2, a21) is
/// strongly stable for semibounded g with Lipschitz constant L:
///   (sqrt((1 - a21)^2 - (1 - 2 b2 a21)) - |1 - a21|) / (|b2 a21| L),
/// defined only when 1 - 2 b2 a21 < 0.
std::optional<QuadraticSurd> first_order_dt_max(const Rational& b2, const Rational& a21, const Rational& lipschitz);

enum class Monotonicity { decreasing, increasing, mixed };
/// "monotone-decreasing" (non-increasing, includes flat), "monotone-increasing"
/// (strict), "mixed".
std::string to_string(Monotonicity m);

template <class T>
struct TraceVerdict {
  Monotonicity verdict = Monotonicity::decreasing;
  std::optional<T> margin;  // min |E_n - E_{n-1}|
  std::optional<std::size_t> first_increase;
  std::optional<std::size_t> first_nonincrease;
};

/// Exact sign comparison of consecutive energies, no tolerance.
template <class T>
TraceVerdict<T> classify(const EnergyTrace<T>& trace) {
  TraceVerdict<T> v;
  for (std::size_t n = 1; n < trace.rows.size(); ++n) {
    const T diff = trace.rows[n].energy - trace.rows[n - 1].energy;
    const T magnitude = abs_value(diff);
    if (!v.margin || magnitude < *v.margin) v.margin = magnitude;
    if (diff > from_rational<T>(Rational(0))) {
      if (!v.first_increase) v.first_increase = trace.rows[n].step;
    } else if (!v.first_nonincrease) {
      v.first_nonincrease = trace.rows[n].step;
    }
  }
  if (v.first_increase && v.first_nonincrease) {
    v.verdict = Monotonicity::mixed;
  } else if (v.first_increase) {
    v.verdict = Monotonicity::increasing;
  }
  return v;
}

struct ProbeResult {
  Rational dt;
  TraceVerdict<BigFloat> verdict;
  std::vector<BigFloat> final_state;
  EnergyTrace<BigFloat> trace;  // empty unless requested
};

/// Classifies the energy trace for every dt in the grid; runs in parallel,
/// results in grid order.
std::vector<ProbeResult> strong_stability_probe(const Method& m, const ProblemSpec& problem,
                                                const std::vector<Rational>& dt_grid, std::size_t n_steps,
                                                PrecisionConfig precision, bool keep_traces = false,
                                                unsigned threads = 0);

/// count values log-uniform in [lo, hi], each rounded to the nearest double
/// and stored exactly.
std::vector<Rational> log_uniform_grid(double lo, double hi, std::size_t count);

}  // namespace strongstab
