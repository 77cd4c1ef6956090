#include "strongstab/exact_series.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace strongstab {

namespace {

SeriesState lift_state(const std::vector<Rational>& u0, int order) {
  SeriesState out;
  for (const auto& x : u0) out.push_back(DtPolynomial::constant(x, order));
  return out;
}

struct SeriesOps {
  const PolynomialVectorField& g;
  int order;

  SeriesState slope(const SeriesState& x) const {
    SeriesState out;
    out.reserve(g.dimension());
    const auto lift = [this](const Rational& c) { return DtPolynomial::constant(c, order); };
    for (const auto& comp : g.components) out.push_back(comp.evaluate_in(x, lift));
    return out;
  }

  SeriesState dt_combination(const SeriesState& x, const std::vector<std::pair<Rational, const SeriesState*>>& terms) const {
    SeriesState out = x;
    for (std::size_t i = 0; i < out.size(); ++i) {
      DtPolynomial acc(order);
      for (const auto& [c, k] : terms) acc += c * (*k)[i];
      out[i] += acc.shifted(1);
    }
    return out;
  }

  SeriesState linear_combination(const std::vector<std::pair<Rational, const SeriesState*>>& terms) const {
    SeriesState out(terms.front().second->size(), DtPolynomial(order));
    for (const auto& [w, x] : terms)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * (*x)[i];
    return out;
  }
};

void check_inputs(const PolynomialVectorField& g, const std::vector<Rational>& u0, int order) {
  if (order < 1) throw std::invalid_argument("expand_step: truncation order must be >= 1");
  if (u0.size() != g.dimension()) throw std::invalid_argument("expand_step: u0 dimension does not match the field");
}

void finish(SeriesStep& step, const std::vector<Rational>& u0) {
  DtPolynomial energy(step.order);
  for (const auto& c : step.update) energy += c * c;
  Rational initial(0);
  for (const auto& x : u0) initial += x * x;
  step.energy_diff = energy - DtPolynomial::constant(initial, step.order);
  step.exposed = step.energy_diff.leading_power().has_value();
}

}  // namespace

std::pair<int, Rational> SeriesStep::leading_term() const {
  const auto p = energy_diff.leading_power();
  if (!p) {
    throw TruncationError("energy difference vanishes through dt^" + std::to_string(order) +
                          "; leading term not exposed");
  }
  return {*p, energy_diff[*p]};
}

SeriesStep expand_step(const ButcherTableau& t, const PolynomialVectorField& g, const std::vector<Rational>& u0,
                       int order) {
  check_inputs(g, u0, order);
  const SeriesOps ops{g, order};
  SeriesStep step;
  step.order = order;
  const SeriesState start = lift_state(u0, order);
  step.update = run_tableau(
      t, start,
      [&](const SeriesState& x) {
        step.stages.push_back(x);
        return ops.slope(x);
      },
      [&](const SeriesState& x, const auto& terms) { return ops.dt_combination(x, terms); });
  finish(step, u0);
  return step;
}

SeriesStep expand_step(const LowStorageProgram& p, const PolynomialVectorField& g, const std::vector<Rational>& u0,
                       int order) {
  check_inputs(g, u0, order);
  const SeriesOps ops{g, order};
  SeriesStep step;
  step.order = order;
  const SeriesState start = lift_state(u0, order);
  step.update = run_program(
      p, start, [&](const SeriesState& x) { return ops.slope(x); },
      [&](const SeriesState& x, const auto& terms) { return ops.dt_combination(x, terms); },
      [&](const auto& terms) { return ops.linear_combination(terms); },
      [&](const std::string& label, const SeriesState& value) { step.writes.emplace_back(label, value); });
  finish(step, u0);
  return step;
}

SeriesStep expand_step_auto(const ButcherTableau& t, const PolynomialVectorField& g, const std::vector<Rational>& u0,
                            int order, int cap) {
  SeriesStep step = expand_step(t, g, u0, order);
  while (!step.exposed && order < cap) {
    order = std::min(cap, order + 2);
    step = expand_step(t, g, u0, order);
  }
  return step;
}

namespace {

std::string power_label(int k) { return "dt^" + std::to_string(k); }

std::vector<CoefficientCheck> energy_checks(const Method& m, const std::map<int, Rational>& expected, int order) {
  const SeriesStep step = expand_step(m.tableau, field_u1_u2(), {1, 0}, order);
  std::vector<CoefficientCheck> out;
  for (const auto& [k, value] : expected) out.push_back({"energy", m.name(), power_label(k), value, step.energy_diff.coefficient(k)});
  return out;
}

}  // namespace

std::vector<CoefficientCheck> check_ssprk_s2_energy(int s) {
  std::map<int, Rational> expected;
  for (int k = 0; k < 4; ++k) expected[k] = 0;
  expected[4] = Rational(s + 1) / Rational(6 * (s - 1) * (s - 1));
  return energy_checks(make_ssprk_s2(s), expected, 4);
}

std::vector<CoefficientCheck> check_ssprk_n2_3_energy(int n) {
  const Rational q = Rational(n * n * (n - 1) * (n - 1));
  std::map<int, Rational> expected;
  for (int k = 0; k < 4; ++k) expected[k] = 0;
  expected[4] = Rational(n * n - n - 2) / (Rational(12) * q);
  expected[5] = Rational(n * n - n + 3) / (Rational(6) * q);
  return energy_checks(make_ssprk_n2_3(n), expected, 5);
}

std::vector<CoefficientCheck> check_ssprk104_energy() {
  std::map<int, Rational> expected;
  for (int k = 0; k < 6; ++k) expected[k] = 0;
  expected[6] = Rational(23, 3240);
  expected[7] = Rational(-1, 240);
  expected[8] = Rational(-161, 29160);
  return energy_checks(make_ssprk104(), expected, 8);
}

namespace {

using Coeffs = std::vector<Rational>;  // by power of dt

Coeffs s2_stage(int component, const Rational& k) {
  const Rational one(1);
  if (component == 0) {
    return {1, 0, -k * (k - one) / Rational(2), k * (k - one) * (k - one) / Rational(2),
            -(k + one) * k * (k - one) * (k - Rational(2)) / Rational(12)};
  }
  return {0, k, -k * (k - one) / Rational(2), -k * (k - one) * (k - Rational(2)) / Rational(6),
          (Rational(5) * k - Rational(7)) * k * (k - one) * (k - Rational(2)) / Rational(12)};
}

Coeffs n23_u_stage(int component, const Rational& k) {
  const Rational one(1);
  const Rational two(2);
  if (component == 0) {
    return {1,
            0,
            -k * (k - one) / two,
            k * (k - one) * (k - one) / two,
            -(k + one) * k * (k - one) * (k - two) / Rational(12),
            -(Rational(3) * k - Rational(7)) * k * (k - one) * (k - one) * (k - two) / Rational(12)};
  }
  return {0,
          k,
          -k * (k - one) / two,
          -k * (k - one) * (k - two) / Rational(6),
          (Rational(5) * k - Rational(7)) * k * (k - one) * (k - two) / Rational(12),
          -(Rational(13) * k * k - Rational(41) * k + Rational(26)) * k * (k - one) * (k - two) / Rational(60)};
}

// Polynomial in n with integer coefficients, highest power first.
Rational poly(const Rational& n, std::initializer_list<long> coeffs) {
  Rational acc(0);
  for (long c : coeffs) acc = acc * n + Rational(c);
  return acc;
}

Coeffs n23_v_stage(int component, const Rational& k, const Rational& n) {
  const Rational m = n - Rational(1);
  const Rational k2 = k * k;
  const Rational k3 = k2 * k;
  const Rational k4 = k3 * k;
  const Rational k5 = k4 * k;
  const Rational c2 = (Rational(-4) * k2 + k * poly(n, {-4, 4, 4}) - n * poly(n, {1, -2, 3, -2})) /
                      (Rational(8) * m.pow(2) * n.pow(2));
  if (component == 0) {
    const Rational c3 = (Rational(8) * k3 + Rational(4) * k2 * poly(n, {3, -3, -4}) +
                         Rational(2) * k * poly(n, {3, -6, -1, 4, 4}) + n * poly(n, {1, -3, 11, -17, 4, 4})) /
                        (Rational(16) * m.pow(3) * n.pow(3));
    const Rational c4 =
        -(Rational(16) * k4 + Rational(32) * k3 * poly(n, {1, -1, -1}) + Rational(8) * k2 * poly(n, {3, -6, -3, 6, -2}) +
         Rational(8) * k * poly(n, {1, -3, 0, 5, 3, -6, 4}) + n * poly(n, {1, -4, 26, -64, 57, -12, -20, 16})) /
        (Rational(192) * m.pow(4) * n.pow(4));
    const Rational c5 =
        -(Rational(96) * k5 + Rational(16) * k4 * poly(n, {15, -15, -38}) +
         Rational(16) * k3 * poly(n, {15, -30, -41, 56, 86}) +
         Rational(8) * k2 * poly(n, {15, -45, 27, 21, 96, -114, -164}) +
         Rational(2) * k * poly(n, {15, -60, 178, -324, 11, 448, -284, 16, 224}) +
         n * poly(n, {3, -15, 112, -358, 247, 449, -354, -428, 120, 224})) /
        (Rational(384) * m.pow(5) * n.pow(5));
    return {1, 0, c2, c3, c4, c5};
  }
  const Rational c1 = (Rational(2) * k + n * n - n) / (Rational(2) * m * n);
  const Rational c3 = -(Rational(8) * k3 + Rational(12) * k2 * poly(n, {1, -1, -2}) +
                        Rational(2) * k * poly(n, {3, -6, 3, 0, 8}) + n * poly(n, {1, -3, 9, -13, -2, 8})) /
                      (Rational(48) * m.pow(3) * n.pow(3));
  const Rational c4 =
      (Rational(80) * k4 + Rational(32) * k3 * poly(n, {5, -5, -11}) + Rational(8) * k2 * poly(n, {15, -30, -27, 42, 62}) +
       Rational(8) * k * poly(n, {5, -15, 30, -35, 21, -6, -28}) +
       n * poly(n, {5, -20, 106, -248, 69, 252, -52, -112})) /
      (Rational(192) * m.pow(4) * n.pow(4));
  const Rational c5 =
      -(Rational(416) * k5 + Rational(80) * k4 * poly(n, {13, -13, -32}) +
        Rational(80) * k3 * poly(n, {13, -26, -39, 52, 70}) +
        Rational(40) * k2 * poly(n, {13, -39, 15, 35, 98, -122, -128}) +
        Rational(2) * k * poly(n, {65, -260, 950, -1940, 725, 1480, -1500, 480, 832}) +
        n * poly(n, {13, -65, 490, -1570, 1165, 1727, -1508, -1564, 480, 832})) /
      (Rational(1920) * m.pow(5) * n.pow(5));
  return {0, c1, c2, c3, c4, c5};
}

void compare_stage(std::vector<CoefficientCheck>& out, const std::string& check, const std::string& method,
                   const std::string& name, const SeriesState& computed, const std::array<Coeffs, 2>& expected,
                   const Rational& scale) {
  for (int comp = 0; comp < 2; ++comp) {
    const Coeffs& e = expected[static_cast<std::size_t>(comp)];
    Rational factor(1);
    for (std::size_t j = 0; j < e.size(); ++j) {
      out.push_back({check, method, name + "[" + std::to_string(comp + 1) + "] dt^" + std::to_string(j), e[j] * factor,
                     computed[static_cast<std::size_t>(comp)].coefficient(static_cast<int>(j))});
      factor *= scale;
    }
  }
}

}  // namespace

std::vector<CoefficientCheck> check_lemma_stage_formulas(StageFamily family, int parameter, int k_min, int k_max) {
  std::vector<CoefficientCheck> out;
  const std::vector<Rational> u0{1, 0};
  const SeriesState initial = lift_state(u0, 5);
  if (family == StageFamily::ssprk_s2) {
    const int s = parameter;
    const Method m = make_ssprk_s2(s);
    const SeriesStep step = expand_step(*m.program, field_u1_u2(), u0, 4);
    std::map<std::string, SeriesState> by_label(step.writes.begin(), step.writes.end());
    by_label["u0"] = lift_state(u0, 4);
    const Rational h = Rational(1, s - 1);
    for (int k = std::max(0, k_min); k <= std::min(s, k_max); ++k) {
      const std::string name = "u" + std::to_string(k);
      compare_stage(out, "s2-stage", m.name(), name, by_label.at(name), {s2_stage(0, k), s2_stage(1, k)}, h);
    }
    return out;
  }

  const int n = parameter;
  const Method m = make_ssprk_n2_3(n);
  const SeriesStep step = expand_step(*m.program, field_u1_u2(), u0, 5);
  std::map<std::string, SeriesState> by_label(step.writes.begin(), step.writes.end());
  by_label["u0"] = initial;
  const Rational h = Rational(1, n * (n - 1));
  for (int k = std::max(0, k_min); k <= std::min(n * (n + 1) / 2, k_max); ++k) {
    const std::string name = "u" + std::to_string(k);
    compare_stage(out, "n23-u-stage", m.name(), name, by_label.at(name), {n23_u_stage(0, k), n23_u_stage(1, k)}, h);
  }
  for (int k = std::max(0, k_min); k <= std::min(n * (n - 1) / 2, k_max); ++k) {
    const std::string name = "v" + std::to_string(k);
    compare_stage(out, "n23-v-stage", m.name(), name, by_label.at(name),
                  {n23_v_stage(0, k, n), n23_v_stage(1, k, n)}, Rational(1));
  }
  return out;
}

std::vector<CoefficientCheck> check_three_stage_lemmas(const ButcherTableau& t, const Rational& r,
                                                       const Rational& alpha) {
  if (t.stages() != 3 || !t.is_explicit()) {
    throw std::invalid_argument("check_three_stage_lemmas: needs an explicit three-stage tableau");
  }
  const int p = check_order(t, 3);
  if (p < 2) throw std::invalid_argument("check_three_stage_lemmas: '" + t.name() + "' is not of order >= 2");

  const Rational& a21 = t.a(1, 0);
  const Rational& a31 = t.a(2, 0);
  const Rational& a32 = t.a(2, 1);
  const Rational& b3 = t.b()[2];
  const Rational r2 = r * r;
  const Rational one(1);
  const Rational two(2);

  std::vector<CoefficientCheck> out;
  const std::string tag = "(r=" + r.str() + ",alpha=" + alpha.str() + ")";
  const SeriesStep first = expand_step(t, field_u1_r_u2(r, alpha), {1, 0}, 4);
  const SeriesStep second = expand_step(t, field_r_u1_u2(r, alpha), {1, 0}, 4);

  const Rational bracket = -one + a21 - two * a21 * a31 * b3 + two * a31 * a31 * b3 + Rational(4) * a31 * a32 * b3 +
                           two * a32 * a32 * b3;
  for (int k = 0; k < 3; ++k) {
    out.push_back({"erk32-u1-r-u2", t.name(), tag + " dt^" + std::to_string(k), 0, first.energy_diff.coefficient(k)});
    out.push_back({"erk32-r-u1-u2", t.name(), tag + " dt^" + std::to_string(k), 0, second.energy_diff.coefficient(k)});
  }
  out.push_back({"erk32-u1-r-u2", t.name(), tag + " dt^3", bracket * r * alpha.pow(3), first.energy_diff.coefficient(3)});
  out.push_back({"erk32-u1-r-u2", t.name(), tag + " dt^4",
                 Rational(1, 4) *
                     (one + r2 - Rational(8) * a21 * a32 * b3 * (two - r2 + a31 * (two * r2 - one) + a32 * (two * r2 - one))) *
                     alpha.pow(4),
                 first.energy_diff.coefficient(4)});
  out.push_back({"erk32-r-u1-u2", t.name(), tag + " dt^3", bracket * r2 * alpha.pow(3), second.energy_diff.coefficient(3)});
  out.push_back({"erk32-r-u1-u2", t.name(), tag + " dt^4",
                 Rational(1, 4) * r2 *
                     (one + r2 + Rational(8) * a21 * a32 * b3 * (one - two * r2 + (a31 + a32) * (r2 - two))) *
                     alpha.pow(4),
                 second.energy_diff.coefficient(4)});
  if (p >= 3) {
    for (int k = 0; k < 4; ++k)
      out.push_back({"erk33-1", t.name(), tag + " dt^" + std::to_string(k), 0, first.energy_diff.coefficient(k)});
    out.push_back({"erk33-1", t.name(), tag + " dt^4",
                   alpha.pow(4) / Rational(12) * (Rational(-5) + Rational(7) * r2 + (a31 + a32) * (Rational(4) - Rational(8) * r2)),
                   first.energy_diff.coefficient(4)});
  }
  return out;
}

BandReport necessary_band_check(const ButcherTableau& t) {
  if (t.stages() != 3 || check_order(t, 3) < 3) {
    throw std::invalid_argument("necessary_band_check: '" + t.name() + "' is not a three-stage third order tableau");
  }
  BandReport report;
  report.sum = t.a(2, 0) + t.a(2, 1);
  const Rational& s = report.sum;
  report.pass = Rational(7, 8) <= s && s <= Rational(5, 4);
  if (report.pass) return report;

  Rational r;
  if (s > Rational(5, 4)) {
    report.regime = "r->0";
    r = 0;
  } else {
    // -5 + 4s + r^2 (7 - 8s) > 0 once r^2 > (5 - 4s)/(7 - 8s)
    report.regime = "r->inf";
    const Rational threshold = (Rational(5) - Rational(4) * s) / (Rational(7) - Rational(8) * s);
    r = 1;
    while (r * r <= threshold) r *= 2;
  }
  report.witness_r = r;
  const SeriesStep step = expand_step(t, field_u1_r_u2(r, 1), {1, 0}, 4);
  report.witness_coefficient = step.energy_diff[4];
  return report;
}

}  // namespace strongstab
