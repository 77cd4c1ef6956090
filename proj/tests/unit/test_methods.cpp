#include <doctest.h>

#include "strongstab/methods.hpp"

using namespace strongstab;

namespace {

using Scalar = std::vector<Rational>;

// One step on the scalar problem u' = z u at a fixed rational z and dt = 1.
Rational program_on_linear(const LowStorageProgram& p, const Rational& z) {
  auto g = [&](const Rational& u) { return z * u; };
  auto dt_comb = [](const Rational& x, const std::vector<std::pair<Rational, const Rational*>>& terms) {
    Rational acc = x;
    for (const auto& [c, k] : terms) acc += c * *k;
    return acc;
  };
  auto lin = [](const std::vector<std::pair<Rational, const Rational*>>& terms) {
    Rational acc(0);
    for (const auto& [w, x] : terms) acc += w * *x;
    return acc;
  };
  return run_program(p, Rational(1), g, dt_comb, lin);
}

}  // namespace

TEST_CASE("ssprk_s2 family") {
  const auto m2 = make_ssprk_s2(2);
  CHECK(m2.tableau.a(1, 0) == 1);
  CHECK(m2.tableau.b() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  const auto m3 = make_ssprk_s2(3);
  CHECK(m3.tableau.a(2, 0) == Rational(1, 2));
  CHECK(m3.tableau.a(2, 1) == Rational(1, 2));
  CHECK(m3.tableau.b()[2] == Rational(1, 3));
  CHECK_THROWS_AS(make_ssprk_s2(1), std::invalid_argument);
  for (int s = 2; s <= 12; ++s) {
    const auto m = make_ssprk_s2(s);
    CHECK(check_order(m.tableau) == 2);
    Rational sum(0);
    for (const auto& b : m.tableau.b()) sum += b;
    CHECK(sum == 1);
  }
}

TEST_CASE("ssprk_n2_3 family") {
  const auto m = make_ssprk_n2_3(2);
  CHECK(m.tableau.stages() == 4);
  CHECK(check_order(m.tableau) == 3);
  const auto& ins = m.program->instructions();
  REQUIRE(std::holds_alternative<EulerStep>(ins[0]));
  CHECK(std::get<EulerStep>(ins[0]).coefficient == Rational(1, 2));
  const auto* v0 = std::get_if<ConvexCombine>(&ins[3]);
  REQUIRE(v0 != nullptr);
  CHECK(v0->terms[0] == std::pair<std::size_t, Rational>{0, Rational(2, 3)});
  CHECK(v0->terms[1].second == Rational(1, 3));
  CHECK(v0->label == "v0");

  const auto m3 = make_ssprk_n2_3(3);
  CHECK(m3.tableau.stages() == 9);
  CHECK(std::get<EulerStep>(m3.program->instructions()[0]).coefficient == Rational(1, 6));
  CHECK_THROWS_AS(make_ssprk_n2_3(1), std::invalid_argument);
  for (int n = 2; n <= 4; ++n) {
    const auto t = make_ssprk_n2_3(n).tableau;
    CHECK(t.stages() == static_cast<std::size_t>(n * n));
    CHECK(check_order(t) == 3);
    Rational sum(0);
    for (const auto& b : t.b()) sum += b;
    CHECK(sum == 1);
  }
}

TEST_CASE("ssprk(4,3) tableau from the program") {
  // Known Butcher form of the four-stage member: a_ij = 1/2 except a4j = 1/6, b = (1/6,1/6,1/6,1/2).
  const auto t = make_ssprk_n2_3(2).tableau;
  CHECK(t.a(1, 0) == Rational(1, 2));
  CHECK(t.a(2, 1) == Rational(1, 2));
  CHECK(t.a(3, 0) == Rational(1, 6));
  CHECK(t.a(3, 2) == Rational(1, 6));
  CHECK(t.b() == std::vector<Rational>{Rational(1, 6), Rational(1, 6), Rational(1, 6), Rational(1, 2)});
}

TEST_CASE("named tableaus") {
  const auto t = make_ssprk33().tableau;
  CHECK(t.a(1, 0) == 1);
  CHECK(t.a(2, 0) == Rational(1, 4));
  CHECK(t.a(2, 1) == Rational(1, 4));
  CHECK(t.b() == std::vector<Rational>{Rational(1, 6), Rational(1, 6), Rational(2, 3)});

  const auto kutta = make_rk33_two_param(Rational(1, 2), 1).tableau;
  CHECK(kutta.a(2, 0) == -1);
  CHECK(kutta.a(2, 1) == 2);
  CHECK(kutta.b() == std::vector<Rational>{Rational(1, 6), Rational(2, 3), Rational(1, 6)});

  for (const Rational& w : {Rational(1, 4), Rational(1, 3), Rational(-2), Rational(5, 7)}) {
    CHECK(check_order(make_rk33_one_param_1(w).tableau) == 3);
    CHECK(check_order(make_rk33_one_param_2(w).tableau) == 3);
  }
  CHECK(check_order(make_rk33_two_param(Rational(1, 3), Rational(3, 4)).tableau) == 3);

  CHECK_THROWS_WITH_AS(make_rk33_two_param(0, 1), "rk33_two_param: requires alpha2 != 0", std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_rk33_two_param(Rational(2, 3), 1), "rk33_two_param: requires alpha2 != 2/3",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_rk33_two_param(1, 1), "rk33_two_param: requires alpha2 != alpha3", std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_rk33_two_param(1, 0), "rk33_two_param: requires alpha3 != 0", std::invalid_argument);
  CHECK_THROWS_AS(make_rk33_one_param_1(0), std::invalid_argument);
  CHECK_THROWS_AS(make_rk33_one_param_2(0), std::invalid_argument);
}

TEST_CASE("make_named parsing") {
  CHECK(make_named("ssprk_s2(4)").tableau.stages() == 4);
  CHECK(make_named(" rk33_two_param( 1/2 , 1 ) ").name() == "rk33_two_param(1/2,1)");
  CHECK(make_named("ssprk104").program.has_value());
  CHECK_FALSE(make_named("rk44").program.has_value());
  CHECK_THROWS_AS(make_named("nope"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("ssprk_s2(1/2)"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("ssprk_s2"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("rk33_two_param(0.5,1)"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("ssprk33(1)"), std::invalid_argument);
}

TEST_CASE("program and tableau equivalence") {
  CHECK(check_program_tableau_equivalence(*make_ssprk33().program, make_ssprk33().tableau).pass);
  for (int s = 2; s <= 6; ++s) {
    const auto m = make_ssprk_s2(s);
    CHECK(check_program_tableau_equivalence(*m.program, m.tableau).pass);
  }
  const auto mismatch = check_program_tableau_equivalence(*make_ssprk33().program, make_euler().tableau);
  CHECK_FALSE(mismatch.pass);
  CHECK(mismatch.reason.find("stage count") != std::string::npos);
  const auto wrong = check_program_tableau_equivalence(*make_ssprk33().program, make_erk32_result().tableau);
  CHECK_FALSE(wrong.pass);

  for (const auto& m : registry()) {
    if (!m.program) continue;
    INFO(m.name());
    CHECK(check_program_tableau_equivalence(*m.program, m.tableau).pass);
    CHECK(m.program->is_convex());
    CHECK(check_ssp_nonnegativity(m.tableau).pass);
  }
}

TEST_CASE("programs reproduce the stability function") {
  for (const auto& m : registry()) {
    if (!m.program) continue;
    const auto r = stability_function(m.tableau);
    for (const Rational& z : {Rational(-1, 3), Rational(2), Rational(5, 7)}) CHECK(program_on_linear(*m.program, z) == r.evaluate(z));
  }
  // u' = 0
  CHECK(program_on_linear(*make_ssprk_s2(2).program, 0) == 1);
}

TEST_CASE("first order decomposition") {
  const auto m = make_first_order_2stage();
  CHECK(m.tableau.a(1, 0) == Rational(3, 2));
  CHECK(m.program->is_convex());
  const auto trace = trace_program(*m.program);
  CHECK(trace.stages.size() == 2);  // g(u0) evaluated once
  CHECK(check_program_tableau_equivalence(*m.program, m.tableau).pass);
}

TEST_CASE("program construction errors") {
  LowStorageProgram p("bad", 2, 1);
  CHECK_THROWS_AS(p.euler(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.euler(2, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.combine(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(LowStorageProgram("x", 1, 0), std::invalid_argument);

  LowStorageProgram unread("unread", 3, 1);
  unread.euler(1, 2, 1);
  CHECK_THROWS_AS(trace_program(unread), std::logic_error);

  LowStorageProgram scaled("scaled", 2, 1);
  scaled.euler(1, 0, 1).combine(1, {{1, Rational(1, 2)}});
  CHECK_THROWS_AS(derive_tableau(scaled), std::domain_error);
  CHECK_FALSE(scaled.is_convex());
}
