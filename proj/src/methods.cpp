#include "strongstab/methods.hpp"

#include <stdexcept>

#include "strongstab/call_syntax.hpp"

namespace strongstab {

namespace {

Matrix<Rational> lower(std::size_t s, const std::vector<std::vector<Rational>>& rows) {
  Matrix<Rational> a(s, s, Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i + 1, j) = rows[i][j];
  return a;
}

std::string rational_args(const std::vector<Rational>& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + args[i].str();
  return out + ")";
}

Method three_stage(std::string name, const Rational& a21, const Rational& a31, const Rational& a32,
                   const Rational& b1, const Rational& b2, const Rational& b3) {
  return Method{ButcherTableau(std::move(name), lower(3, {{a21}, {a31, a32}}), {b1, b2, b3}), std::nullopt, false};
}

}  // namespace

Method make_ssprk_s2(int s) {
  if (s < 2) throw std::invalid_argument("ssprk_s2: s must be >= 2, got " + std::to_string(s));
  const auto n = static_cast<std::size_t>(s);
  const std::string name = "ssprk_s2(" + std::to_string(s) + ")";
  Matrix<Rational> a(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = Rational(1, s - 1);
  ButcherTableau t(name, std::move(a), std::vector<Rational>(n, Rational(1, s)));

  LowStorageProgram p(name, 2, 1);
  const Rational h(1, s - 1);
  p.euler(1, 0, h, "u1");
  for (int k = 2; k <= s; ++k) p.euler(1, 1, h, "u" + std::to_string(k));
  p.combine(1, {{1, Rational(s - 1, s)}, {0, Rational(1, s)}}, "u+");
  return Method{std::move(t), std::move(p), true};
}

Method make_ssprk_n2_3(int n) {
  if (n < 2) throw std::invalid_argument("ssprk_n2_3: n must be >= 2, got " + std::to_string(n));
  const std::string name = "ssprk_n2_3(" + std::to_string(n) + ")";
  const Rational h(1, n * (n - 1));
  const int saved_index = (n - 1) * (n - 2) / 2;
  const int u_last = n * (n + 1) / 2;
  const int v_last = n * (n - 1) / 2;

  // r1: running stage, r2: saved copy of u_{(n-1)(n-2)/2}
  LowStorageProgram p(name, 3, 1);
  const std::size_t saved = saved_index == 0 ? 0 : 2;
  for (int k = 1; k <= u_last; ++k) {
    p.euler(1, k == 1 ? 0 : 1, h, "u" + std::to_string(k));
    if (k == saved_index) p.copy(2, 1, "save u" + std::to_string(k));
  }
  p.combine(1, {{saved, Rational(n, 2 * n - 1)}, {1, Rational(n - 1, 2 * n - 1)}}, "v0");
  for (int k = 1; k <= v_last; ++k) p.euler(1, 1, h, "v" + std::to_string(k));

  ButcherTableau t = derive_tableau(p);
  return Method{std::move(t), std::move(p), true};
}

Method make_ssprk33() {
  ButcherTableau t("ssprk33", lower(3, {{1}, {Rational(1, 4), Rational(1, 4)}}),
                   {Rational(1, 6), Rational(1, 6), Rational(2, 3)});
  LowStorageProgram p("ssprk33", 3, 1);
  p.euler(1, 0, 1, "u2");
  p.euler(2, 1, 1, "u2 + dt g(u2)");
  p.combine(1, {{0, Rational(3, 4)}, {2, Rational(1, 4)}}, "u3");
  p.euler(2, 1, 1, "u3 + dt g(u3)");
  p.combine(1, {{0, Rational(1, 3)}, {2, Rational(2, 3)}}, "u+");
  return Method{std::move(t), std::move(p), true};
}

Method make_ssprk104() {
  const Rational s6(1, 6);
  const Rational f15(1, 15);
  std::vector<std::vector<Rational>> rows;
  for (int i = 1; i < 10; ++i) {
    std::vector<Rational> row;
    for (int j = 0; j < i; ++j) {
      if (i < 5) row.push_back(s6);
      else row.push_back(j < 5 ? f15 : s6);
    }
    rows.push_back(std::move(row));
  }
  ButcherTableau t("ssprk104", lower(10, rows), std::vector<Rational>(10, Rational(1, 10)));

  // r1: running stage, r2: u5 + dt/6 g(u5), r3: output
  LowStorageProgram p("ssprk104", 4, 3);
  p.copy(1, 0, "u1");
  for (int i = 2; i <= 5; ++i) p.euler(1, 1, s6, "u" + std::to_string(i));
  p.euler(2, 1, s6, "u5 + dt/6 g(u5)");
  p.combine(1, {{0, Rational(3, 5)}, {2, Rational(2, 5)}}, "u6");
  for (int i = 7; i <= 10; ++i) p.euler(1, 1, s6, "u" + std::to_string(i));
  p.euler(1, 1, s6, "u10 + dt/6 g(u10)");
  p.combine(3, {{0, Rational(1, 25)}, {2, Rational(9, 25)}, {1, Rational(3, 5)}}, "u+");
  return Method{std::move(t), std::move(p), true};
}

Method make_euler() {
  ButcherTableau t("euler", Matrix<Rational>(1, 1, Rational(0)), {Rational(1)});
  LowStorageProgram p("euler", 2, 1);
  p.euler(1, 0, 1, "u+");
  return Method{std::move(t), std::move(p), true};
}

Method make_rk44() {
  const Rational h(1, 2);
  ButcherTableau t("rk44", lower(4, {{h}, {0, h}, {0, 0, 1}}),
                   {Rational(1, 6), Rational(1, 3), Rational(1, 3), Rational(1, 6)});
  return Method{std::move(t), std::nullopt, false};
}

Method make_erk32_result() {
  return three_stage("erk32_result", Rational(1, 2), 0, 1, Rational(1, 4), Rational(1, 2), Rational(1, 4));
}

Method make_first_order_2stage() {
  ButcherTableau t("first_order_2stage", lower(2, {{Rational(3, 2)}}), {Rational(1, 2), Rational(1, 2)});
  // u+ = 3/4 (u0 + dt/6 g(u0)) + 1/4 (u2 + 2 dt g(u2)),  u2 = u0 + 3/2 dt g(u0)
  LowStorageProgram p("first_order_2stage", 3, 1);
  p.euler(1, 0, Rational(3, 2), "u2");
  p.euler(2, 0, Rational(1, 6), "u0 + dt/6 g(u0)");
  p.euler(1, 1, 2, "u2 + 2 dt g(u2)");
  p.combine(1, {{2, Rational(3, 4)}, {1, Rational(1, 4)}}, "u+");
  return Method{std::move(t), std::move(p), true};
}

Method make_rk33_two_param(const Rational& alpha2, const Rational& alpha3) {
  if (alpha2.is_zero()) throw std::invalid_argument("rk33_two_param: requires alpha2 != 0");
  if (alpha3.is_zero()) throw std::invalid_argument("rk33_two_param: requires alpha3 != 0");
  if (alpha2 == alpha3) throw std::invalid_argument("rk33_two_param: requires alpha2 != alpha3");
  if (alpha2 == Rational(2, 3)) throw std::invalid_argument("rk33_two_param: requires alpha2 != 2/3");
  const Rational& a2 = alpha2;
  const Rational& a3 = alpha3;
  const Rational d = a2 * (Rational(2) - Rational(3) * a2);
  const Rational a31 = (Rational(3) * a2 * a3 * (Rational(1) - a2) - a3 * a3) / d;
  const Rational a32 = a3 * (a3 - a2) / d;
  const Rational b1 = Rational(1) + (Rational(2) - Rational(3) * (a2 + a3)) / (Rational(6) * a2 * a3);
  const Rational b2 = (Rational(3) * a3 - Rational(2)) / (Rational(6) * a2 * (a3 - a2));
  const Rational b3 = (Rational(2) - Rational(3) * a2) / (Rational(6) * a3 * (a3 - a2));
  return three_stage("rk33_two_param" + rational_args({a2, a3}), a2, a31, a32, b1, b2, b3);
}

Method make_rk33_one_param_1(const Rational& omega3) {
  if (omega3.is_zero()) throw std::invalid_argument("rk33_one_param_1: requires omega3 != 0");
  const Rational q = Rational(1) / (Rational(4) * omega3);
  return three_stage("rk33_one_param_1" + rational_args({omega3}), Rational(2, 3), Rational(2, 3) - q, q,
                     Rational(1, 4), Rational(3, 4) - omega3, omega3);
}

Method make_rk33_one_param_2(const Rational& omega3) {
  if (omega3.is_zero()) throw std::invalid_argument("rk33_one_param_2: requires omega3 != 0");
  const Rational q = Rational(1) / (Rational(4) * omega3);
  return three_stage("rk33_one_param_2" + rational_args({omega3}), Rational(2, 3), -q, q,
                     Rational(1, 4) - omega3, Rational(3, 4), omega3);
}

Method make_named(const std::string& spec) {
  const NamedCall call = parse_call(spec);
  const std::string& name = call.name;
  if (name == "euler") { call.expect(0); return make_euler(); }
  if (name == "ssprk33") { call.expect(0); return make_ssprk33(); }
  if (name == "ssprk104") { call.expect(0); return make_ssprk104(); }
  if (name == "rk44") { call.expect(0); return make_rk44(); }
  if (name == "erk32_result") { call.expect(0); return make_erk32_result(); }
  if (name == "first_order_2stage") { call.expect(0); return make_first_order_2stage(); }
  if (name == "ssprk_s2") { call.expect(1); return make_ssprk_s2(call.integer(0)); }
  if (name == "ssprk_n2_3") { call.expect(1); return make_ssprk_n2_3(call.integer(0)); }
  if (name == "rk33_two_param") { call.expect(2); return make_rk33_two_param(call.args[0], call.args[1]); }
  if (name == "rk33_one_param_1") { call.expect(1); return make_rk33_one_param_1(call.args[0]); }
  if (name == "rk33_one_param_2") { call.expect(1); return make_rk33_one_param_2(call.args[0]); }
  throw std::invalid_argument("unknown method '" + spec + "'");
}

std::vector<std::string> registry_names() {
  return {"euler",          "ssprk33",          "ssprk104",           "rk44",
          "erk32_result",   "first_order_2stage", "ssprk_s2(2)",      "ssprk_s2(3)",
          "ssprk_s2(4)",    "ssprk_s2(5)",      "ssprk_s2(6)",        "ssprk_n2_3(2)",
          "ssprk_n2_3(3)",  "ssprk_n2_3(4)",    "rk33_two_param(1/2,1)", "rk33_one_param_1(1/4)",
          "rk33_one_param_2(1/4)"};
}

std::vector<Method> registry() {
  std::vector<Method> out;
  for (const auto& name : registry_names()) out.push_back(make_named(name));
  return out;
}

}  // namespace strongstab
