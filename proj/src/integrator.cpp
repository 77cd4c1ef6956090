#include "strongstab/integrator.hpp"

#include <cmath>

#include "strongstab/parallel.hpp"

namespace strongstab {

IntegrationResult<BigFloat> integrate(const Method& m, const ProblemSpec& problem, const Rational& dt,
                                      std::size_t n_steps, PrecisionConfig precision, ExecutionPath path) {
  PrecisionScope scope(precision.significand_bits);
  const auto p = problem.instantiate<BigFloat>();
  return integrate(m, p, BigFloat(dt), n_steps, path);
}

BigFloat QuadraticSurd::evaluate(long bits) const {
  PrecisionScope scope(bits);
  return BigFloat(rational) + BigFloat(coefficient) * sqrt(BigFloat(radicand));
}

double QuadraticSurd::to_double() const { return evaluate(64).to_double(); }

std::strong_ordering QuadraticSurd::compare(const Rational& x) const {
  const Rational y = rational - x;
  if (coefficient.is_zero() || radicand.is_zero()) return y <=> Rational(0);
  if (y.sign() >= 0) return std::strong_ordering::greater;
  return coefficient * coefficient * radicand <=> y * y;
}

std::string QuadraticSurd::str() const {
  return rational.str() + " + " + coefficient.str() + "*sqrt(" + radicand.str() + ")";
}

std::optional<QuadraticSurd> first_order_dt_max(const Rational& b2, const Rational& a21, const Rational& lipschitz) {
  if (b2.sign() < 0 || b2 > Rational(1)) throw std::invalid_argument("first_order_dt_max: b2 must lie in [0, 1]");
  if (lipschitz.sign() <= 0) throw std::invalid_argument("first_order_dt_max: L must be positive");
  const Rational gap = Rational(1) - Rational(2) * b2 * a21;
  if (gap.sign() >= 0) return std::nullopt;
  const Rational one_minus = Rational(1) - a21;
  const Rational scale = (b2 * a21).abs() * lipschitz;
  return QuadraticSurd{-one_minus.abs() / scale, Rational(1) / scale, one_minus * one_minus - gap};
}

std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::decreasing: return "monotone-decreasing";
    case Monotonicity::increasing: return "monotone-increasing";
    case Monotonicity::mixed: return "mixed";
  }
  return "?";
}

std::vector<ProbeResult> strong_stability_probe(const Method& m, const ProblemSpec& problem,
                                                const std::vector<Rational>& dt_grid, std::size_t n_steps,
                                                PrecisionConfig precision, bool keep_traces, unsigned threads) {
  std::vector<ProbeResult> out(dt_grid.size());
  parallel_for(
      dt_grid.size(),
      [&](std::size_t i) {
        auto run = integrate(m, problem, dt_grid[i], n_steps, precision);
        out[i].dt = dt_grid[i];
        out[i].verdict = classify(run.trace);
        out[i].final_state = std::move(run.state);
        if (keep_traces) out[i].trace = std::move(run.trace);
      },
      threads);
  return out;
}

std::vector<Rational> log_uniform_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0) || !(hi >= lo)) throw std::invalid_argument("log_uniform_grid: need 0 < lo <= hi");
  if (count == 0) return {};
  if (count == 1) return {Rational::from_double(lo)};
  std::vector<Rational> grid;
  grid.reserve(count);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t k = 0; k < count; ++k) {
    const double e = k + 1 == count ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
    grid.push_back(Rational::from_double(k == 0 ? lo : k + 1 == count ? hi : std::pow(10.0, e)));
  }
  return grid;
}

}  // namespace strongstab
