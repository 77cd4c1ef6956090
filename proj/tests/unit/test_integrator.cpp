#include <doctest.h>

#include <cmath>

#include "strongstab/exact_series.hpp"
#include "strongstab/integrator.hpp"

using namespace strongstab;

namespace {

/// |a - b| in units of the last place of max(|a|, |b|).
double ulps(const BigFloat& a, const BigFloat& b) {
  const BigFloat scale = abs(a) > abs(b) ? abs(a) : abs(b);
  if (scale.is_zero()) return 0;
  return (abs(a - b) / scale.ulp()).to_double();
}

Method midpoint() {
  Matrix<Rational> a(2, 2, Rational(0));
  a(1, 0) = Rational(1, 2);
  return Method{ButcherTableau("midpoint", a, {0, 1}), std::nullopt, false};
}

/// max_i |a_i - b_i| in units of the last place of the largest entry of a or b.
double state_ulps(const std::vector<BigFloat>& a, const std::vector<BigFloat>& b) {
  BigFloat scale(0);
  for (const auto& v : {a, b})
    for (const auto& x : v)
      if (abs(x) > scale) scale = abs(x);
  if (scale.is_zero()) return 0;
  BigFloat worst(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (abs(a[i] - b[i]) > worst) worst = abs(a[i] - b[i]);
  return (worst / scale.ulp()).to_double();
}

}  // namespace

TEST_CASE("euler on the zero field") {
  for (const Rational& dt : {Rational(1, 10), Rational(3), Rational(1000)}) {
    const auto run = integrate(make_euler(), make_problem("zero"), dt, 5, PrecisionConfig{});
    CHECK(run.state == std::vector<BigFloat>{BigFloat(1), BigFloat(0)});
    REQUIRE(run.trace.rows.size() == 6);
    for (const auto& row : run.trace.rows) CHECK(row.energy == BigFloat(1));
    CHECK(run.trace.rows[5].time == BigFloat(dt * Rational(5)));
    const auto v = classify(run.trace);
    CHECK(v.verdict == Monotonicity::decreasing);
    CHECK(v.margin->is_zero());
  }
  const auto none = integrate(make_ssprk33(), make_problem("zero"), Rational(1), 0, PrecisionConfig{});
  CHECK(none.trace.rows.size() == 1);
  CHECK(classify(none.trace).verdict == Monotonicity::decreasing);
  CHECK_FALSE(classify(none.trace).margin);
}

TEST_CASE("integrate preconditions and errors") {
  CHECK_THROWS_AS(integrate(make_euler(), make_problem("u1_u2"), Rational(0), 1, PrecisionConfig{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(make_euler(), make_problem("u1_u2"), Rational(-1), 1, PrecisionConfig{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(make_rk44(), make_problem("u1_u2"), Rational(1, 10), 1, PrecisionConfig{},
                            ExecutionPath::program),
                  std::invalid_argument);

  auto p = make_problem("normalized_rotation(1)").instantiate<double>();
  p.u0 = {1e-8, 0};
  CHECK_THROWS_AS(integrate(make_euler(), p, 0.1, 1), SingularityError);

  auto blowup = make_problem("contracting").instantiate<double>();
  CHECK_THROWS_AS(integrate(make_euler(), blowup, 1e200, 3), std::overflow_error);
}

TEST_CASE("precision configuration") {
  for (long bits : {64L, 256L, 512L}) {
    const auto run = integrate(make_ssprk33(), make_problem("u1_u2"), Rational(1, 10), 3, PrecisionConfig{bits});
    for (const auto& x : run.state) CHECK(x.precision() == bits);
    for (const auto& row : run.trace.rows) CHECK(row.energy.precision() == bits);
  }
  CHECK(working_precision() == 256);
}

TEST_CASE("tableau and program paths agree to 4 ulp per step") {
  const std::vector<Method> methods{make_euler(),       make_ssprk33(),      make_ssprk104(),
                                    make_ssprk_s2(4),   make_ssprk_n2_3(2),  make_ssprk_n2_3(3),
                                    make_first_order_2stage()};
  for (long bits : {256L, 512L}) {
    PrecisionScope scope(bits);
    for (const std::string name : {"u1_u2", "normalized_rotation(1)", "u1_r_u2(1/3,2)"}) {
      const auto problem = make_problem(name).instantiate<BigFloat>();
      for (const auto& m : methods) {
        const BigFloat dt(Rational(1, 10));
        std::vector<BigFloat> u = problem.u0;
        double worst = 0;
        for (int n = 0; n < 20; ++n) {
          const auto a = step(m, problem, u, dt, ExecutionPath::tableau);
          const auto b = step(m, problem, u, dt, ExecutionPath::program);
          worst = std::max(worst, state_ulps(a, b));
          u = b;
        }
        INFO(m.name() << " on " << name << " at " << bits << " bits: " << worst << " ulp");
        CHECK(worst <= 4);
      }
    }
  }
}

TEST_CASE("exact paths agree exactly") {
  const auto problem = make_problem("u1_r_u2(2,1/3)").instantiate<Rational>();
  for (const auto& m : {make_ssprk33(), make_ssprk_n2_3(2), make_ssprk104(), make_first_order_2stage()}) {
    const Rational dt(1, 7);
    CHECK(step(m, problem, problem.u0, dt, ExecutionPath::tableau) ==
          step(m, problem, problem.u0, dt, ExecutionPath::program));
  }
}

TEST_CASE("ssprk33 energy map: exact one-step identity") {
  RationalSampler sampler(11);
  for (const Rational& alpha : {Rational(1), Rational(3, 2)}) {
    auto problem = make_problem("normalized_rotation(" + alpha.str() + ")").instantiate<Rational>();
    int tested = 0;
    while (tested < 100) {
      const Rational dt = sampler.next_in(0, 4);
      auto u0 = sampler.point(2);
      const Rational x = u0[0] * u0[0] + u0[1] * u0[1];
      if (dt.is_zero() || x < Rational(1, 4)) continue;
      for (const auto path : {ExecutionPath::tableau, ExecutionPath::program}) {
        const auto u = step(make_ssprk33(), problem, u0, dt, path);
        const Rational gain = u[0] * u[0] + u[1] * u[1] - x;
        CHECK(gain == ssprk33_energy_map(alpha * dt, x));
      }
      ++tested;
    }
  }
}

TEST_CASE("ssprk33 energy map: closed form") {
  for (int k = 1; k <= 6; ++k) {
    const Rational dt = Rational(1, 10).pow(static_cast<unsigned>(k));
    const Rational ratio = ssprk33_energy_map(dt, Rational(1)) / dt.pow(4);
    CHECK((ratio - Rational(5, 12)).abs() <= Rational(20) * dt * dt);
  }
  RationalSampler sampler(3);
  for (int i = 0; i < 500; ++i) {
    const Rational dt = sampler.next_in(Rational(1, 1000), 100);
    const Rational x = sampler.next_in(Rational(1, 1000), 100);
    CHECK(ssprk33_energy_map(dt, x).sign() > 0);
  }
  CHECK(ssprk33_energy_map(0.5, 1.0) == doctest::Approx(ssprk33_energy_map(Rational(1, 2), Rational(1)).to_double()));
  CHECK_THROWS_AS(ssprk33_energy_map(Rational(0), Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(ssprk33_energy_map(Rational(1), Rational(-1)), std::invalid_argument);
}

TEST_CASE("ssprk33 energy recursion over 10^4 steps at 256 bits") {
  PrecisionScope scope(256);
  const Rational dt(1, 100);
  const auto run = integrate(make_ssprk33(), make_problem("normalized_rotation(1)"), dt, 10000, PrecisionConfig{256});
  const BigFloat d(dt);
  double worst = 0;
  for (std::size_t n = 1; n < run.trace.rows.size(); ++n) {
    const BigFloat& prev = run.trace.rows[n - 1].energy;
    worst = std::max(worst, ulps(run.trace.rows[n].energy, prev + ssprk33_energy_map(d, prev)));
  }
  INFO("worst deviation " << worst << " ulp");
  CHECK(worst <= 8);
  CHECK(classify(run.trace).verdict == Monotonicity::increasing);
}

TEST_CASE("first order dt bound") {
  const auto bound = first_order_dt_max(Rational(1, 2), Rational(3, 2), 1);
  REQUIRE(bound);
  CHECK(*bound == QuadraticSurd{Rational(-2, 3), Rational(4, 3), Rational(3, 4)});
  CHECK(bound->to_double() == doctest::Approx((std::sqrt(3.0) / 2 - 0.5) / 0.75).epsilon(1e-15));
  CHECK(bound->to_double() == doctest::Approx(0.48803).epsilon(1e-5));
  CHECK(bound->compare(Rational(48, 100)) == std::strong_ordering::greater);
  CHECK(bound->compare(Rational(49, 100)) == std::strong_ordering::less);
  CHECK(QuadraticSurd{2, 0, 5}.compare(2) == std::strong_ordering::equal);
  CHECK(QuadraticSurd{-3, 1, 9}.compare(0) == std::strong_ordering::equal);

  for (const Rational& l : {Rational(1, 2), Rational(2), Rational(4)}) {
    const auto scaled = first_order_dt_max(Rational(1, 2), Rational(3, 2), l);
    REQUIRE(scaled);
    CHECK(*scaled * l == *bound);
  }
  CHECK(*first_order_dt_max(Rational(1, 2), Rational(3, 2), 2) == *bound * Rational(1, 2));

  CHECK_FALSE(first_order_dt_max(Rational(1, 2), 1, 1));
  CHECK_FALSE(first_order_dt_max(0, 5, 1));
  CHECK(first_order_dt_max(1, 1, 1));
  CHECK_THROWS_AS(first_order_dt_max(Rational(3, 2), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(first_order_dt_max(Rational(-1, 2), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(first_order_dt_max(Rational(1, 2), 3, 0), std::invalid_argument);
}

TEST_CASE("strong stability probe") {
  const Method fo = make_first_order_2stage();
  for (const Rational& omega : {Rational(1, 2), Rational(1), Rational(2), Rational(4)}) {
    const auto bound = *first_order_dt_max(Rational(1, 2), Rational(3, 2), omega);
    std::vector<Rational> grid;
    for (int k = 1; k <= 12; ++k) {
      const Rational dt = Rational(k, 24) / omega;
      if (bound.compare(dt) != std::strong_ordering::less) grid.push_back(dt);
    }
    CHECK(grid.size() == 11);
    const auto results = strong_stability_probe(fo, make_problem("rotation(" + omega.str() + ")"), grid, 40,
                                                PrecisionConfig{});
    for (const auto& r : results) {
      INFO("omega " << omega << " dt " << r.dt);
      CHECK(r.verdict.verdict == Monotonicity::decreasing);
      CHECK_FALSE(r.verdict.first_increase);
    }
  }
  const auto unstable = strong_stability_probe(fo, make_problem("rotation(1)"), {1}, 5, PrecisionConfig{});
  CHECK(unstable[0].verdict.verdict == Monotonicity::increasing);
  CHECK(*unstable[0].verdict.first_increase == 1);

  const auto ssp = strong_stability_probe(make_ssprk33(), make_problem("normalized_rotation(1)"),
                                          {Rational(1, 2), Rational(1, 10), 3}, 200, PrecisionConfig{}, true);
  for (const auto& r : ssp) {
    CHECK(r.verdict.verdict == Monotonicity::increasing);
    CHECK(r.verdict.margin->sign() > 0);
    CHECK(r.trace.rows.size() == 201);
  }
  CHECK(ssp[0].dt == Rational(1, 2));
  CHECK(ssp[2].dt == Rational(3));

  for (const auto& m : {make_ssprk33(), make_rk44(), make_euler()}) {
    const auto flat = strong_stability_probe(m, make_problem("zero"), {Rational(1, 3), 7}, 10, PrecisionConfig{});
    for (const auto& r : flat) CHECK(r.verdict.verdict == Monotonicity::decreasing);
  }

  const auto contracting = strong_stability_probe(make_euler(), make_problem("contracting"), {2}, 3, PrecisionConfig{});
  CHECK(contracting[0].verdict.verdict == Monotonicity::decreasing);  // dt = -2M with M = -1
  CHECK(contracting[0].final_state[0] == BigFloat(-1));
}

TEST_CASE("classification of synthetic traces") {
  EnergyTrace<Rational> t;
  for (int n : {0, 1, 2, 3}) t.rows.push_back({static_cast<std::size_t>(n), Rational(n), Rational(n * n)});
  CHECK(classify(t).verdict == Monotonicity::increasing);
  CHECK(*classify(t).margin == Rational(1));
  t.rows.push_back({4, 4, 9});
  auto v = classify(t);
  CHECK(v.verdict == Monotonicity::mixed);
  CHECK(*v.first_nonincrease == 4);
  CHECK(*v.first_increase == 1);
  CHECK(v.margin->is_zero());
  CHECK(to_string(Monotonicity::mixed) == "mixed");
  CHECK(to_string(Monotonicity::decreasing) == "monotone-decreasing");
  CHECK(to_string(Monotonicity::increasing) == "monotone-increasing");
}

TEST_CASE("halving dt scales the one-step energy error by 2^(p+1)") {
  const std::vector<Rational> u0{1, Rational(1, 2)};
  struct Case {
    Method method;
    int order;
  };
  for (const auto& [m, p] : {Case{midpoint(), 2}, Case{make_ssprk33(), 3}, Case{make_rk44(), 4}}) {
    REQUIRE(check_order(m.tableau) == p);
    const auto series = expand_step_auto(m.tableau, field_u1_u2(), u0);
    REQUIRE(series.leading_power() == p + 1);

    PrecisionScope scope(256);
    auto problem = make_problem("u1_u2").instantiate<BigFloat>();
    problem.u0 = {BigFloat(u0[0]), BigFloat(u0[1])};
    auto error = [&](const Rational& dt) {
      const auto u = step(m, problem, problem.u0, BigFloat(dt));
      return problem.energy(u) - problem.energy(problem.u0);
    };
    for (const Rational& dt : {Rational(1, 256), Rational(1, 512)}) {
      const double ratio = (error(dt) / error(dt / Rational(2))).to_double();
      INFO(m.name() << " dt " << dt << " ratio " << ratio);
      CHECK(std::abs(ratio / std::pow(2.0, p + 1) - 1) < 0.05);
    }
  }
}

TEST_CASE("high precision reference flow conserves the norm of skew fields") {
  for (const std::string name : {"u1_u2", "u1_r_u2(1/3,2)", "rotation(3)", "normalized_rotation(1)"}) {
    const auto run = integrate(make_rk44(), make_problem(name), Rational(1, 2000), 2000, PrecisionConfig{256});
    const double drift = abs(run.trace.rows.back().energy - run.trace.rows.front().energy).to_double();
    INFO(name << " drift " << drift);
    CHECK(drift < 1e-12);
  }
}

TEST_CASE("log uniform grid") {
  const auto grid = log_uniform_grid(1e-6, 1e-1, 50);
  REQUIRE(grid.size() == 50);
  CHECK(grid.front() == Rational::from_double(1e-6));
  CHECK(grid.back() == Rational::from_double(1e-1));
  for (std::size_t k = 1; k < grid.size(); ++k) {
    CHECK(grid[k] > grid[k - 1]);
    CHECK(std::log10(grid[k].to_double()) - std::log10(grid[k - 1].to_double()) == doctest::Approx(5.0 / 49));
  }
  CHECK(log_uniform_grid(1, 2, 0).empty());
  CHECK(log_uniform_grid(3, 3, 1) == std::vector<Rational>{3});
  CHECK_THROWS_AS(log_uniform_grid(0, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(log_uniform_grid(2, 1, 3), std::invalid_argument);
}
