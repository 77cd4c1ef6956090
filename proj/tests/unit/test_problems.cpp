#include <doctest.h>

#include "strongstab/problems.hpp"

using namespace strongstab;

namespace {

Rational dot(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace

TEST_CASE("problem registry") {
  for (const char* name : {"u1_r_u2(3/7,2)", "r_u1_u2(-1,1/3)", "u1_u2", "rotation(5)", "normalized_rotation(1)",
                           "contracting", "zero"}) {
    const ProblemSpec p = make_problem(name);
    CHECK(p.label() == name);
    CHECK(p.dimension() == 2);
    CHECK(p.u0 == std::vector<Rational>{1, 0});
  }
  CHECK(make_problem(" u1_r_u2( 1/2 , 3 )").label() == "u1_r_u2(1/2,3)");
  CHECK(make_problem("rotation(2)").evaluate(std::vector<Rational>{1, 3}) == std::vector<Rational>{-6, 2});
  CHECK_THROWS_AS(make_problem("heat"), std::invalid_argument);
  CHECK_THROWS_AS(make_problem("rotation"), std::invalid_argument);
  CHECK_THROWS_AS(make_problem("u1_u2(1)"), std::invalid_argument);
  CHECK_THROWS_AS(make_problem("normalized_rotation(0)"), std::invalid_argument);
  CHECK_THROWS_AS(make_problem("normalized_rotation(0.5)"), std::invalid_argument);
}

TEST_CASE("normalized rotation field") {
  const NormalizedRotationField f{1};
  const std::vector<Rational> u{3, 4};
  const auto g = f(u);
  CHECK(g == std::vector<Rational>{Rational(-4, 25), Rational(3, 25)});
  CHECK(dot(u, g).is_zero());

  RationalSampler sampler(7);
  for (const Rational& alpha : {Rational(1), Rational(2), Rational(5, 3)}) {
    const NormalizedRotationField h{alpha};
    for (int i = 0; i < 200; ++i) {
      const auto x = sampler.point(2);
      if (dot(x, x).is_zero()) continue;
      const auto y = h(x);
      CHECK(dot(x, y).is_zero());
      CHECK(dot(y, y) * dot(x, x) == alpha * alpha);  // |g(u)| |u| = alpha
    }
  }

  CHECK_THROWS_AS(f(std::vector<Rational>{0, 0}), SingularityError);
  CHECK_THROWS_AS(f(std::vector<Rational>{Rational(1, 1L << 21), 0}), SingularityError);
  CHECK_NOTHROW(f(std::vector<Rational>{Rational(1, 1L << 19), 0}));
  CHECK_THROWS_AS(f(std::vector<double>{1e-7, 0}), SingularityError);

  const auto gb = f(std::vector<BigFloat>{BigFloat(3), BigFloat(4)});
  CHECK(gb[0] == BigFloat(Rational(-4, 25)));
}

TEST_CASE("instantiated problems") {
  const auto p = make_problem("normalized_rotation(2)").instantiate<BigFloat>();
  CHECK(p.dimension == 2);
  CHECK(p.energy(p.u0) == BigFloat(1));
  const auto g = p.rhs(p.u0);
  CHECK(g[0].is_zero());
  CHECK(g[1] == BigFloat(2));

  auto q = make_problem("u1_u2").instantiate<Rational>();
  CHECK(q.rhs({2, 1}) == std::vector<Rational>{-1, 2});
  q.weights = {Rational(1, 2), 3};
  CHECK(q.inner({2, 1}, {4, 5}) == Rational(19));
}

TEST_CASE("rational sampler") {
  RationalSampler a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const Rational x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
    CHECK(x.abs() <= Rational(8));
    CHECK(x.denominator() <= 64);
  }
  CHECK(differs);
  for (int i = 0; i < 200; ++i) {
    const Rational y = a.next_in(1, 4);
    CHECK(y >= Rational(1));
    CHECK(y <= Rational(4));
  }
}

TEST_CASE("semibounded witness") {
  for (const char* name : {"u1_r_u2(3/7,2)", "u1_r_u2(-5,1/9)", "r_u1_u2(2,3)", "u1_u2", "rotation(7)", "zero"}) {
    const auto w = semibounded_witness(make_problem(name), 500);
    CHECK(w.samples == 504);
    CHECK(w.max_value.is_zero());
    REQUIRE(w.symbolic);
    CHECK(*w.symbolic == SymbolicVerdict::identically_zero);
    CHECK(to_string(*w.symbolic) == "identically 0");
  }

  const auto n = semibounded_witness(make_problem("normalized_rotation(1)"), 500);
  CHECK(n.max_value.is_zero());
  CHECK_FALSE(n.symbolic);
  CHECK(semibounded_witness(make_problem("normalized_rotation(1)"), {{3, 4}}).max_value.is_zero());
  CHECK_THROWS_AS(semibounded_witness(make_problem("normalized_rotation(1)"), {{3, 4}, {Rational(1, 4), 0}}),
                  SingularityError);

  const auto c = semibounded_witness(make_problem("contracting"), 500);
  CHECK(c.max_value.sign() < 0);
  CHECK(*c.symbolic == SymbolicVerdict::nonpositive);

  ProblemSpec expanding{"expanding", {}, PolynomialVectorField{"expanding", {}, {MultiPolynomial::variable(2, 0),
                                                                                  MultiPolynomial::variable(2, 1)}},
                        {1, 0}};
  const auto e = semibounded_witness(expanding, 50);
  CHECK(e.max_value == Rational(128));
  CHECK(*e.symbolic == SymbolicVerdict::undetermined);

  const auto again = semibounded_witness(make_problem("contracting"), 500);
  CHECK(again.argmax == c.argmax);
}

TEST_CASE("lipschitz estimate of the normalized field") {
  const auto pairs = exterior_sample_pairs(10000, default_seed);
  for (const auto& [u, v] : pairs) {
    REQUIRE(dot(u, u) >= Rational(1));
    REQUIRE(dot(v, v) >= Rational(1));
  }
  const auto one = lipschitz_estimate(NormalizedRotationField{1}, pairs);
  const auto two = lipschitz_estimate(NormalizedRotationField{2}, pairs);
  CHECK(one.ratio_squared.size() + one.skipped == 10000);
  CHECK(one.max_ratio_squared <= Rational(9));
  CHECK(two.max_ratio_squared <= Rational(36));
  CHECK(one.max_ratio() > 0.5);
  REQUIRE(one.ratio_squared.size() == two.ratio_squared.size());
  for (std::size_t i = 0; i < one.ratio_squared.size(); ++i) CHECK(two.ratio_squared[i] == Rational(4) * one.ratio_squared[i]);

  const auto same = lipschitz_estimate(NormalizedRotationField{1}, {{{3, 4}, {3, 4}}, {{1, 0}, {0, 1}}});
  CHECK(same.skipped == 1);
  REQUIRE(same.ratio_squared.size() == 1);
  CHECK(same.ratio_squared[0] == Rational(1));  // |(0,1) - (-1,0)|^2 / |(1,-1)|^2
  CHECK_THROWS_AS(lipschitz_estimate(NormalizedRotationField{1}, {{{Rational(1, 2), 0}, {1, 0}}}),
                  std::invalid_argument);

  CHECK(lipschitz_estimate(NormalizedRotationField{1}, 100, 5).ratio_squared ==
        lipschitz_estimate(NormalizedRotationField{1}, 100, 5).ratio_squared);
}

TEST_CASE("coercivity gap") {
  CHECK(coercivity_gap(make_problem("u1_u2"), 300).sup_ratio.is_zero());
  CHECK(coercivity_gap(make_problem("u1_r_u2(2,3)"), 300).sup_ratio.is_zero());
  CHECK(coercivity_gap(make_problem("normalized_rotation(1)"), 300).sup_ratio.is_zero());
  const auto c = coercivity_gap(make_problem("contracting"), 300);
  CHECK(c.sup_ratio == Rational(-1));
  CHECK(c.samples > 0);
  CHECK_THROWS_AS(coercivity_gap(make_problem("zero"), 50), std::domain_error);
}
