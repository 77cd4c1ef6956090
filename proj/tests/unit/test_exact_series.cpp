#include <doctest.h>

#include "strongstab/exact_series.hpp"

using namespace strongstab;

namespace {

void require_all_pass(const std::vector<CoefficientCheck>& checks) {
  REQUIRE_FALSE(checks.empty());
  for (const auto& c : checks) {
    INFO(c.check << " " << c.method << " " << c.item << " expected " << c.expected << " computed "
                 << (c.computed ? c.computed->str() : "n/a"));
    CHECK(c.pass());
  }
}

}  // namespace

TEST_CASE("skew fields are energy conservative as polynomials") {
  for (const auto& f : {field_u1_r_u2(Rational(3, 7), 2), field_r_u1_u2(-1, Rational(1, 3)), field_u1_u2(),
                        field_rotation(5), field_zero()}) {
    CHECK(f.inner_with_state().is_zero());
  }
  CHECK_FALSE(field_contracting().inner_with_state().is_zero());
  const auto g = field_u1_u2();
  CHECK(g({2, 1}) == std::vector<Rational>{-1, 2});
  CHECK(field_u1_r_u2(2, 3)({1, 1}) == std::vector<Rational>{3, -3});
}

TEST_CASE("energy series of the SSP families") {
  for (int s = 2; s <= 10; ++s) require_all_pass(check_ssprk_s2_energy(s));
  for (int n = 2; n <= 3; ++n) require_all_pass(check_ssprk_n2_3_energy(n));
  require_all_pass(check_ssprk104_energy());
}

TEST_CASE("ssprk(10,4) energy series values") {
  const auto step = expand_step(make_ssprk104().tableau, field_u1_u2(), {1, 0}, 8);
  CHECK(step.leading_term() == std::pair<int, Rational>{6, Rational(23, 3240)});
  CHECK(step.energy_diff[7] == Rational(-1, 240));
  CHECK(step.energy_diff[8] == Rational(-161, 29160));
}

TEST_CASE("zero field leaves the state unchanged") {
  for (const auto& m : registry()) {
    const auto step = expand_step(m.tableau, field_zero(), {Rational(2, 3), -5}, 6);
    CHECK(step.energy_diff.is_zero());
    CHECK_FALSE(step.exposed);
    CHECK_THROWS_AS(step.leading_term(), TruncationError);
  }
}

TEST_CASE("automatic truncation raising") {
  const auto step = expand_step_auto(make_ssprk104().tableau, field_u1_u2(), {1, 0}, 4);
  CHECK(step.exposed);
  CHECK(step.order >= 6);
  const auto zero = expand_step_auto(make_euler().tableau, field_zero(), {1, 0});
  CHECK_FALSE(zero.exposed);
  CHECK(zero.order == max_series_order);
  CHECK_THROWS_AS(expand_step(make_euler().tableau, field_zero(), {1, 0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(expand_step(make_euler().tableau, field_zero(), {1}, 2), std::invalid_argument);
}

TEST_CASE("low-order energy coefficients vanish and the leading power exceeds the order") {
  const std::vector<PolynomialVectorField> fields{field_u1_r_u2(Rational(1, 2), 1), field_u1_r_u2(2, Rational(3, 2)),
                                                  field_r_u1_u2(Rational(-1, 3), 1), field_u1_u2()};
  for (const auto& m : registry()) {
    const int p = check_order(m.tableau);
    const auto bracket = algebraic_stability_matrix(m.tableau).matrix;
    for (const auto& f : fields) {
      INFO(m.name() << " on " << f.label());
      const auto step = expand_step_auto(m.tableau, f, {1, 0}, 8);
      CHECK(step.energy_diff[0].is_zero());
      CHECK(step.energy_diff[1].is_zero());
      // dt^2 coefficient: sum_ij m_ij <g(u0), g(u0)> since every stage equals u0 at dt = 0
      const auto g0 = f({1, 0});
      Rational gg(0);
      for (const auto& x : g0) gg += x * x;
      Rational msum(0);
      for (std::size_t i = 0; i < m.tableau.stages(); ++i)
        for (std::size_t j = 0; j < m.tableau.stages(); ++j) msum += bracket(i, j);
      CHECK(step.energy_diff[2] == msum * gg);
      REQUIRE(step.exposed);
      CHECK(*step.leading_power() >= p + 1);
    }
  }
}

TEST_CASE("tableau and program expansions agree") {
  for (const auto& m : registry()) {
    if (!m.program) continue;
    for (const auto& f : {field_u1_u2(), field_r_u1_u2(Rational(2, 5), 3)}) {
      const auto a = expand_step(m.tableau, f, {1, Rational(1, 2)}, 6);
      const auto b = expand_step(*m.program, f, {1, Rational(1, 2)}, 6);
      CHECK(a.update == b.update);
      CHECK(a.energy_diff == b.energy_diff);
    }
  }
}

TEST_CASE("stage formulas") {
  for (int s = 2; s <= 6; ++s) require_all_pass(check_lemma_stage_formulas(StageFamily::ssprk_s2, s));
  for (int n = 2; n <= 4; ++n) require_all_pass(check_lemma_stage_formulas(StageFamily::ssprk_n2_3, n));

  const auto s3 = check_lemma_stage_formulas(StageFamily::ssprk_s2, 3, 2, 2);
  bool found = false;
  for (const auto& c : s3) {
    if (c.item == "u2[2] dt^1") {
      found = true;
      CHECK(c.expected == Rational(2) * Rational(1, 2));  // k (dt/(s-1)) with k = 2
    }
  }
  CHECK(found);
  for (const auto& c : check_lemma_stage_formulas(StageFamily::ssprk_s2, 4, 0, 0)) {
    CHECK(c.expected == (c.item == "u0[1] dt^0" ? Rational(1) : Rational(0)));
  }
}

TEST_CASE("n^2,3 v stages against direct expansion") {
  // first component of v_k, coefficients dt^0..dt^5
  const std::vector<std::vector<Rational>> n2{{1, 0, Rational(-1, 4), Rational(1, 4), Rational(-1, 24), Rational(-1, 48)},
                                              {1, 0, Rational(-1, 2), Rational(1, 2), Rational(-1, 12), Rational(-7, 48)}};
  const std::vector<std::vector<Rational>> n3{
      {1, 0, Rational(-1, 6), Rational(5, 36), Rational(-7, 324), Rational(-55, 1944)},
      {1, 0, Rational(-1, 4), Rational(5, 24), Rational(-19, 648), Rational(-25, 432)},
      {1, 0, Rational(-13, 36), Rational(35, 108), Rational(-5, 108), Rational(-115, 972)},
      {1, 0, Rational(-1, 2), Rational(1, 2), Rational(-17, 216), Rational(-101, 432)}};
  for (const auto& [n, table] : {std::pair{2, n2}, std::pair{3, n3}}) {
    for (const auto& c : check_lemma_stage_formulas(StageFamily::ssprk_n2_3, n)) {
      if (c.check != "n23-v-stage" || c.item.find("[1]") == std::string::npos) continue;
      const std::size_t k = std::stoul(c.item.substr(1));
      const std::size_t power = std::stoul(c.item.substr(c.item.find("dt^") + 3));
      INFO(c.method << " " << c.item);
      CHECK(c.expected == table.at(k).at(power));
    }
  }
}

TEST_CASE("three-stage coefficient formulas") {
  const std::vector<Rational> rs{0, Rational(1, 2), 1, Rational(-3, 2), 3};
  std::vector<ButcherTableau> tableaus{make_ssprk33().tableau, make_erk32_result().tableau,
                                       make_rk33_two_param(Rational(1, 2), 1).tableau,
                                       make_rk33_two_param(Rational(1, 3), Rational(3, 4)).tableau,
                                       make_rk33_two_param(2, Rational(-1, 5)).tableau,
                                       make_rk33_one_param_1(Rational(1, 3)).tableau,
                                       make_rk33_one_param_2(Rational(2, 5)).tableau};
  // second order three-stage samples (b3 and a32 free, the rest from the order conditions)
  for (const auto& [a21, a31, a32] : std::vector<std::array<Rational, 3>>{{1, 0, Rational(1, 2)}, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}}) {
    const Rational c2 = a21;
    const Rational c3 = a31 + a32;
    const Rational b3(1, 3);
    const Rational b2 = (Rational(1, 2) - b3 * c3) / c2;
    Matrix<Rational> a(3, 3, Rational(0));
    a(1, 0) = a21;
    a(2, 0) = a31;
    a(2, 1) = a32;
    tableaus.emplace_back("second_order_sample", a, std::vector<Rational>{Rational(1) - b2 - b3, b2, b3});
  }
  for (const auto& t : tableaus) {
    for (const auto& r : rs) {
      for (const auto& alpha : {Rational(1), Rational(2, 3)}) require_all_pass(check_three_stage_lemmas(t, r, alpha));
    }
  }

  const auto ssp = check_three_stage_lemmas(make_ssprk33().tableau, 0, 1);
  bool seen = false;
  for (const auto& c : ssp) {
    if (c.check == "erk33-1" && c.item == "(r=0,alpha=1) dt^4") {
      seen = true;
      CHECK(c.expected == Rational(-1, 4));
    }
  }
  CHECK(seen);
  for (const auto& r : rs) {
    for (const auto& c : check_three_stage_lemmas(make_erk32_result().tableau, r, 1))
      if (c.item.ends_with("dt^3")) CHECK(c.expected.is_zero());
  }
  CHECK_THROWS_AS(check_three_stage_lemmas(make_euler().tableau, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(check_three_stage_lemmas(ButcherTableau("low", [] {
                    Matrix<Rational> a(3, 3, Rational(0));
                    a(1, 0) = 1;
                    return a;
                  }(), {1, 0, 0}), 1, 1),
                  std::invalid_argument);
}

TEST_CASE("necessary band") {
  for (const Rational& w : {Rational(1, 4), Rational(1, 2), Rational(3), Rational(-1, 7)}) {
    const auto one = necessary_band_check(make_rk33_one_param_1(w).tableau);
    CHECK_FALSE(one.pass);
    CHECK(one.sum == Rational(2, 3));
    CHECK(one.regime == "r->inf");
    REQUIRE(one.witness_coefficient.has_value());
    CHECK(one.witness_coefficient->sign() > 0);
    const auto two = necessary_band_check(make_rk33_one_param_2(w).tableau);
    CHECK_FALSE(two.pass);
    CHECK(two.sum == 0);
    CHECK(two.witness_coefficient->sign() > 0);
  }
  const auto ssp = necessary_band_check(make_ssprk33().tableau);
  CHECK_FALSE(ssp.pass);
  CHECK(ssp.sum == Rational(1, 2));

  const auto kutta = necessary_band_check(make_rk33_two_param(Rational(1, 2), 1).tableau);
  CHECK(kutta.pass);
  CHECK(kutta.sum == 1);

  const auto high = necessary_band_check(make_rk33_two_param(1, Rational(3, 2)).tableau);
  CHECK_FALSE(high.pass);
  CHECK(high.regime == "r->0");
  CHECK(*high.witness_r == 0);
  CHECK(high.witness_coefficient->sign() > 0);
  CHECK_THROWS_AS(necessary_band_check(make_erk32_result().tableau), std::invalid_argument);
}
