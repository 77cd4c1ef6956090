#include "strongstab/problems.hpp"

#include <cmath>

#include "strongstab/call_syntax.hpp"
#include "strongstab/matrix.hpp"
#include "strongstab/tableau.hpp"

namespace strongstab {

std::string ProblemSpec::label() const {
  if (parameters.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < parameters.size(); ++i) out += (i ? "," : "") + parameters[i].second.str();
  return out + ")";
}

ProblemSpec make_problem(const std::string& spec) {
  const NamedCall call = parse_call(spec);
  const std::vector<Rational> u0{1, 0};
  const auto& a = call.args;
  if (call.name == "u1_r_u2") {
    call.expect(2);
    return {call.name, {{"r", a[0]}, {"alpha", a[1]}}, field_u1_r_u2(a[0], a[1]), u0};
  }
  if (call.name == "r_u1_u2") {
    call.expect(2);
    return {call.name, {{"r", a[0]}, {"alpha", a[1]}}, field_r_u1_u2(a[0], a[1]), u0};
  }
  if (call.name == "u1_u2") {
    call.expect(0);
    return {call.name, {}, field_u1_u2(), u0};
  }
  if (call.name == "rotation") {
    call.expect(1);
    return {call.name, {{"omega", a[0]}}, field_rotation(a[0]), u0};
  }
  if (call.name == "normalized_rotation") {
    call.expect(1);
    if (a[0].sign() <= 0) throw std::invalid_argument("normalized_rotation: alpha must be positive");
    return {call.name, {{"alpha", a[0]}}, NormalizedRotationField{a[0]}, u0};
  }
  if (call.name == "contracting") {
    call.expect(0);
    return {call.name, {}, field_contracting(), u0};
  }
  if (call.name == "zero") {
    call.expect(0);
    return {call.name, {}, field_zero(), u0};
  }
  throw std::invalid_argument("unknown problem '" + spec + "'");
}

std::vector<std::string> problem_names() {
  return {"u1_r_u2(r,alpha)", "r_u1_u2(r,alpha)", "u1_u2", "rotation(omega)", "normalized_rotation(alpha)",
          "contracting", "zero"};
}

RationalSampler::RationalSampler(std::uint64_t seed, Rational bound, long max_denominator)
    : rng_(seed), bound_(std::move(bound)), max_denominator_(max_denominator) {
  if (bound_.sign() <= 0 || max_denominator_ < 1) throw std::invalid_argument("RationalSampler: bad range");
}

Rational RationalSampler::next() {
  const long q = std::uniform_int_distribution<long>(1, max_denominator_)(rng_);
  const Rational scaled = bound_ * Rational(q);
  const long limit = mpz_class(scaled.numerator() / scaled.denominator()).get_si();
  return Rational(std::uniform_int_distribution<long>(-limit, limit)(rng_), q);
}

Rational RationalSampler::next_in(const Rational& lo, const Rational& hi) {
  const long q = std::uniform_int_distribution<long>(1, max_denominator_)(rng_);
  const long k = std::uniform_int_distribution<long>(0, q)(rng_);
  return lo + (hi - lo) * Rational(k, q);
}

std::vector<Rational> RationalSampler::point(std::size_t dimension) {
  std::vector<Rational> x;
  x.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) x.push_back(next());
  return x;
}

std::string to_string(SymbolicVerdict v) {
  switch (v) {
    case SymbolicVerdict::identically_zero: return "identically 0";
    case SymbolicVerdict::nonpositive: return "nonpositive";
    case SymbolicVerdict::undetermined: return "undetermined";
  }
  return "?";
}

SymbolicVerdict symbolic_semibounded_verdict(const PolynomialVectorField& f) {
  const MultiPolynomial p = f.inner_with_state();
  if (p.is_zero()) return SymbolicVerdict::identically_zero;
  const std::size_t d = f.dimension();
  Matrix<Rational> q(d, d, Rational(0));
  for (const auto& [exps, c] : p.terms()) {
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < exps.size(); ++i)
      for (int e = 0; e < exps[i]; ++e) vars.push_back(i);
    if (vars.size() != 2) return SymbolicVerdict::undetermined;
    if (vars[0] == vars[1]) {
      q(vars[0], vars[0]) += c;
    } else {
      q(vars[0], vars[1]) += c / Rational(2);
      q(vars[1], vars[0]) += c / Rational(2);
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) q(i, j) = -q(i, j);
  return is_positive_semidefinite(q) ? SymbolicVerdict::nonpositive : SymbolicVerdict::undetermined;
}

namespace {

Rational dot(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

std::vector<Rational> difference(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  std::vector<Rational> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

const Rational& singular_radius_squared() {
  static const Rational r(1, 4);
  return r;
}

std::vector<std::vector<Rational>> witness_points(const ProblemSpec& problem, std::size_t samples,
                                                  std::uint64_t seed) {
  const std::size_t d = problem.dimension();
  std::vector<std::vector<Rational>> points;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<Rational> corner(d);
    for (std::size_t i = 0; i < d; ++i) corner[i] = (mask >> i) & 1 ? Rational(8) : Rational(-8);
    points.push_back(std::move(corner));
  }
  RationalSampler sampler(seed);
  while (points.size() < samples + (std::size_t{1} << d)) {
    auto x = sampler.point(d);
    if (problem.normalized() && dot(x, x) < singular_radius_squared()) continue;
    points.push_back(std::move(x));
  }
  return points;
}

void check_regular(const ProblemSpec& problem, const std::vector<Rational>& x) {
  if (x.size() != problem.dimension()) throw std::invalid_argument("sample point has wrong dimension");
  if (problem.normalized() && dot(x, x) < singular_radius_squared()) {
    throw SingularityError("sample point within distance 1/2 of the singularity of the normalized field");
  }
}

std::vector<Rational> unit_circle_point(const Rational& t, const Rational& rho) {
  const Rational t2 = t * t;
  const Rational den = Rational(1) + t2;
  return {rho * (Rational(1) - t2) / den, rho * Rational(2) * t / den};
}

}  // namespace

SemiboundedWitness semibounded_witness(const ProblemSpec& problem, const std::vector<std::vector<Rational>>& points) {
  SemiboundedWitness w;
  for (const auto& x : points) {
    check_regular(problem, x);
    const Rational value = dot(x, problem.evaluate(x));
    if (w.samples == 0 || value > w.max_value) {
      w.max_value = value;
      w.argmax = x;
    }
    ++w.samples;
  }
  if (const auto* p = problem.polynomial()) w.symbolic = symbolic_semibounded_verdict(*p);
  return w;
}

SemiboundedWitness semibounded_witness(const ProblemSpec& problem, std::size_t samples, std::uint64_t seed) {
  return semibounded_witness(problem, witness_points(problem, samples, seed));
}

double LipschitzEstimate::max_ratio() const { return std::sqrt(max_ratio_squared.to_double()); }

LipschitzEstimate lipschitz_estimate(const NormalizedRotationField& field,
                                     const std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>>& pairs) {
  LipschitzEstimate est;
  for (const auto& [u, v] : pairs) {
    if (dot(u, u) < Rational(1) || dot(v, v) < Rational(1)) {
      throw std::invalid_argument("lipschitz_estimate: sample inside the unit ball");
    }
    const auto du = difference(u, v);
    const Rational den = dot(du, du);
    if (den.is_zero()) {
      ++est.skipped;
      continue;
    }
    const auto dg = difference(field(u), field(v));
    const Rational ratio = dot(dg, dg) / den;
    if (est.ratio_squared.empty() || ratio > est.max_ratio_squared) est.max_ratio_squared = ratio;
    est.ratio_squared.push_back(ratio);
  }
  return est;
}

std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> exterior_sample_pairs(std::size_t samples,
                                                                                             std::uint64_t seed) {
  RationalSampler sampler(seed);
  auto draw = [&] {
    auto x = unit_circle_point(sampler.next(), sampler.next_in(1, 4));
    if (sampler.next().sign() < 0) x[0] = -x[0];
    return x;
  };
  std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> pairs;
  pairs.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    auto u = draw();
    if (i % 2 == 0) {
      pairs.emplace_back(std::move(u), draw());
    } else {
      std::vector<Rational> v{u[0] + sampler.next_in(Rational(-1, 16), Rational(1, 16)),
                              u[1] + sampler.next_in(Rational(-1, 16), Rational(1, 16))};
      if (dot(v, v) < Rational(1)) v = {u[0] * Rational(2), u[1] * Rational(2)};
      pairs.emplace_back(std::move(u), std::move(v));
    }
  }
  return pairs;
}

LipschitzEstimate lipschitz_estimate(const NormalizedRotationField& field, std::size_t samples, std::uint64_t seed) {
  return lipschitz_estimate(field, exterior_sample_pairs(samples, seed));
}

CoercivityEstimate coercivity_gap(const ProblemSpec& problem, const std::vector<std::vector<Rational>>& points) {
  CoercivityEstimate est;
  for (const auto& x : points) {
    check_regular(problem, x);
    const auto g = problem.evaluate(x);
    const Rational gg = dot(g, g);
    if (gg.is_zero()) continue;
    const Rational ratio = dot(x, g) / gg;
    if (est.samples == 0 || ratio > est.sup_ratio) est.sup_ratio = ratio;
    ++est.samples;
  }
  if (est.samples == 0) throw std::domain_error("coercivity_gap: g vanishes at every sample point");
  return est;
}

CoercivityEstimate coercivity_gap(const ProblemSpec& problem, std::size_t samples, std::uint64_t seed) {
  return coercivity_gap(problem, witness_points(problem, samples, seed));
}

}  // namespace strongstab
