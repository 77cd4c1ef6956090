#include "strongstab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "strongstab/exact_series.hpp"
#include "strongstab/integrator.hpp"
#include "strongstab/methods.hpp"
#include "strongstab/parallel.hpp"
#include "strongstab/problems.hpp"
#include "strongstab/tableau.hpp"

namespace strongstab {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::pair<ExperimentId, std::string>> kExperimentNames{
    {ExperimentId::figure1, "figure1"},
    {ExperimentId::figure2, "figure2"},
    {ExperimentId::lemma_suite, "lemma-suite"},
    {ExperimentId::first_order_cfl, "first-order-cfl"},
    {ExperimentId::tableau_report, "tableau-report"},
};

std::string decimal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string decimal(const Rational& q, long bits) {
  PrecisionScope scope(bits);
  return BigFloat(q).str();
}

std::size_t ceil_div(const Rational& q) {
  if (q.sign() < 0) throw std::invalid_argument("negative step count");
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.numerator().get_mpz_t(), q.denominator().get_mpz_t());
  if (!out.fits_ulong_p()) throw std::invalid_argument("step count too large");
  return out.get_ui();
}

std::vector<std::string> selected_methods(const ExperimentSpec& spec, std::vector<std::string> defaults) {
  return spec.methods ? *spec.methods : defaults;
}

/// Exactly one method; the default when none was given.
Method single_method(const ExperimentSpec& spec, const std::string& fallback) {
  const auto names = selected_methods(spec, {fallback});
  if (names.size() != 1) {
    throw std::invalid_argument(to_string(spec.id) + " runs exactly one method, got " + std::to_string(names.size()));
  }
  return make_named(names.front());
}

/// Explicit values, else a log-uniform range; sorted and deduplicated.
std::vector<Rational> dt_grid(const ExperimentSpec& spec, std::vector<Rational> defaults, double lo, double hi,
                              std::size_t count) {
  std::vector<Rational> grid;
  if (spec.dt_values) {
    grid = *spec.dt_values;
  } else if (spec.dt_min || spec.dt_max || spec.dt_count || defaults.empty()) {
    grid = log_uniform_grid(spec.dt_min.value_or(lo), spec.dt_max.value_or(hi), spec.dt_count.value_or(count));
  } else {
    grid = std::move(defaults);
  }
  for (const auto& dt : grid)
    if (dt.sign() <= 0) throw std::invalid_argument("dt grid must be strictly positive, got " + dt.str());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

void check_bits(long bits) {
  if (bits < 53) throw std::invalid_argument("precision must be at least 53 bits, got " + std::to_string(bits));
}

void fail(ExperimentResult& r, std::string message) { r.failures.push_back(std::move(message)); }

void finish(ExperimentResult& r) {
  r.pass = r.failures.empty();
  r.meta["pass"] = r.pass;
  r.meta["failures"] = r.failures;
}

json start_meta(const ExperimentSpec& spec) {
  json meta;
  meta["experiment"] = to_string(spec.id);
  return meta;
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) throw std::invalid_argument("slope fit: need two or more points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0) throw std::invalid_argument("slope fit: x values coincide");
  return sxy / sxx;
}

BigFloat neg_sin_pi(const BigFloat& x) { return -sin(BigFloat::pi(x.precision()) * x); }

}  // namespace

std::string to_string(ExperimentId id) {
  for (const auto& [e, name] : kExperimentNames)
    if (e == id) return name;
  return "?";
}

ExperimentId parse_experiment_id(const std::string& name) {
  for (const auto& [e, n] : kExperimentNames)
    if (n == name) return e;
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (const auto& entry : kExperimentNames) out.push_back(entry.second);
  return out;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("log_log_slope: length mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("log_log_slope: values must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return ols_slope(lx, ly);
}

ExperimentResult run_figure1(const ExperimentSpec& spec) {
  ExperimentResult r{ExperimentId::figure1, false, {}, {}, {}, start_meta(spec)};
  const Method m = single_method(spec, "ssprk33");
  const ProblemSpec problem = make_problem(spec.problem.value_or("normalized_rotation(1)"));
  const long bits = spec.bits.value_or(256);
  check_bits(bits);
  if (spec.t_end.sign() < 0) throw std::invalid_argument("figure1: final time must be nonnegative");
  const auto grid = dt_grid(spec, {Rational(1, 100), Rational(1, 20), Rational(1, 10), Rational(1, 2)}, 1e-2, 0.5, 4);

  std::vector<IntegrationResult<BigFloat>> runs(grid.size());
  std::vector<std::size_t> steps(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) steps[i] = spec.steps.value_or(ceil_div(spec.t_end / grid[i]));
  parallel_for(
      grid.size(), [&](std::size_t i) { runs[i] = integrate(m, problem, grid[i], steps[i], PrecisionConfig{bits}); },
      spec.threads);

  PrecisionScope scope(bits);
  r.table.header = {"dt", "dt_exact", "step", "time", "energy"};
  json per_dt = json::array();
  std::optional<BigFloat> overall;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto v = classify(runs[i].trace);
    const std::string dt_text = BigFloat(grid[i]).str();
    for (const auto& row : trace_table(runs[i].trace).rows)
      r.table.rows.push_back({dt_text, grid[i].str(), row[0], row[1], row[2]});
    const bool stepped = runs[i].trace.rows.size() > 1;
    json entry;
    entry["dt"] = grid[i].str();
    entry["steps"] = steps[i];
    entry["final_time"] = runs[i].trace.rows.back().time.str();
    entry["final_energy"] = runs[i].trace.rows.back().energy.str();
    entry["verdict"] = to_string(v.verdict);
    entry["min_increment"] = v.margin ? json(v.margin->str()) : json(nullptr);
    if (v.first_nonincrease) entry["first_nonincrease_step"] = *v.first_nonincrease;
    per_dt.push_back(entry);
    if (stepped && v.verdict != Monotonicity::increasing) {
      fail(r, "dt = " + grid[i].str() + ": energy not strictly increasing, first non-increase at step " +
                  std::to_string(v.first_nonincrease.value_or(0)));
    }
    if (v.verdict == Monotonicity::increasing && (!overall || *v.margin < *overall)) overall = *v.margin;

    // first increment against the closed-form energy map
    if (grid[i] == Rational(1, 10) && stepped && problem.normalized()) {
      const BigFloat x = runs[i].trace.rows[0].energy;
      const BigFloat expected = ssprk33_energy_map(BigFloat(problem.normalized()->alpha * grid[i]), x);
      const BigFloat got = runs[i].trace.rows[1].energy - x;
      const BigFloat deviation = abs(got - expected) / runs[i].trace.rows[1].energy.ulp();
      r.meta["first_step_check"] = {{"dt", grid[i].str()}, {"expected", expected.str()}, {"observed", got.str()},
                                    {"deviation_ulp", deviation.to_double()}};
      if (m.name() == "ssprk33" && deviation > BigFloat(8)) fail(r, "first increment at dt = 1/10 disagrees with f_dt");
    }
  }
  r.meta["method"] = m.name();
  r.meta["problem"] = problem.label();
  r.meta["u0"] = {problem.u0[0].str(), problem.u0[1].str()};
  r.meta["bits"] = bits;
  r.meta["t_end"] = spec.t_end.str();
  r.meta["seeds"] = json::object();
  r.meta["runs"] = per_dt;
  r.meta["min_increment"] = overall ? json(overall->str()) : json(nullptr);
  finish(r);
  return r;
}

ExperimentResult run_figure2(const ExperimentSpec& spec) {
  ExperimentResult r{ExperimentId::figure2, false, {}, {}, {}, start_meta(spec)};
  const Method m = single_method(spec, "ssprk104");
  if (spec.problem && *spec.problem != "advection") throw std::invalid_argument("figure2 runs the advection problem only");
  const long bits = spec.bits.value_or(512);
  check_bits(bits);
  if (spec.elements == 0) throw std::invalid_argument("figure2: need at least one element");
  if (spec.degree < 1) throw std::invalid_argument("figure2: degree must be at least 1");
  if (!(spec.fit_min > 0) || !(spec.fit_max > spec.fit_min)) throw std::invalid_argument("figure2: bad fit range");
  const auto grid = dt_grid(spec, {}, 1e-6, 1e-1, 50);
  const std::size_t steps = spec.steps.value_or(1);

  PrecisionScope scope(bits);
  const DgSemidiscretization<BigFloat> semi(spec.elements, make_sbp_operator<BigFloat>(spec.degree, spec.nodes),
                                            spec.correction);
  const auto u0 = semi.interpolate(neg_sin_pi);
  const auto problem = semi.as_problem(u0, "advection");
  const BigFloat e0 = problem.energy(u0);

  std::vector<BigFloat> error(grid.size());
  std::vector<std::vector<BigFloat>> final_state(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        PrecisionScope inner(bits);
        auto run = integrate(m, problem, BigFloat(grid[i]), steps);
        error[i] = run.trace.rows.back().energy - e0;
        final_state[i] = std::move(run.state);
      },
      spec.threads);

  // errors within a few hundred ulps of the energy itself carry no signal
  const BigFloat floor_level = ldexp(abs(e0), 16 - bits);
  const int order = check_order(m.tableau);
  const double expected_slope = order + 1;
  r.table.header = {"dt", "dt_exact", "energy_error", "resolved", "in_fit"};
  std::vector<double> fit_dt, fit_log_err;  // natural logs
  json nonpositive = json::array();
  std::size_t unresolved = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool resolved = abs(error[i]) > floor_level;
    const double dt = grid[i].to_double();
    const bool in_fit = resolved && dt >= spec.fit_min * (1 - 1e-12) &&
                        dt <= spec.fit_max * (1 + 1e-12);
    if (!resolved) ++unresolved;
    if (resolved && error[i].sign() <= 0) {
      nonpositive.push_back(grid[i].str());
      fail(r, "non-positive energy error " + decimal(error[i].to_double()) + " at dt = " + decimal(dt));
    }
    if (in_fit) {
      fit_dt.push_back(std::log(dt));
      fit_log_err.push_back(log(abs(error[i])).to_double());
    }
    r.table.rows.push_back({BigFloat(grid[i]).str(), grid[i].str(), error[i].str(), resolved ? "1" : "0", in_fit ? "1" : "0"});
  }
  std::optional<double> slope;
  if (fit_dt.size() >= 2) slope = ols_slope(fit_dt, fit_log_err);
  if (!slope) {
    fail(r, "fewer than two resolved points in the fit range");
  } else if (std::abs(*slope - expected_slope) > 0.2) {
    fail(r, "fitted slope " + decimal(*slope) + " outside " + decimal(expected_slope) + " +- 0.2");
  }

  const std::size_t largest = grid.empty() ? 0 : grid.size() - 1;
  if (!grid.empty()) {
    r.extra_tables.emplace_back("snapshot", snapshot_table(semi.coordinates(), final_state[largest]));
    // one step backwards in time: equal errors mean the odd powers of dt cancel
    std::vector<BigFloat> back = u0;
    for (std::size_t n = 0; n < steps; ++n) back = step(m, problem, back, -BigFloat(grid[largest]));
    const BigFloat back_error = problem.energy(back) - e0;
    r.meta["reverse_step_check"] = {{"dt", grid[largest].str()},
                                    {"error_forward", error[largest].str()},
                                    {"error_backward", back_error.str()},
                                    {"odd_part", ((error[largest] - back_error) / BigFloat(2)).str()}};
  }

  r.meta["method"] = m.name();
  r.meta["problem"] = "advection";
  r.meta["initial_condition"] = "-sin(pi x)";
  r.meta["elements"] = spec.elements;
  r.meta["degree"] = spec.degree;
  r.meta["nodes"] = to_string(spec.nodes);
  r.meta["correction"] = spec.correction;
  r.meta["bits"] = bits;
  r.meta["steps"] = steps;
  r.meta["seeds"] = json::object();
  r.meta["initial_energy"] = e0.str();
  r.meta["dt_count"] = grid.size();
  if (!grid.empty()) {
    r.meta["dt_min"] = grid.front().str();
    r.meta["dt_max"] = grid.back().str();
    r.meta["snapshot_dt"] = grid[largest].str();
  }
  r.meta["unresolved"] = unresolved;
  r.meta["nonpositive"] = nonpositive;
  r.meta["fit"] = {{"dt_min", spec.fit_min},
                   {"dt_max", spec.fit_max},
                   {"points", fit_dt.size()},
                   {"slope", slope ? json(*slope) : json(nullptr)},
                   {"fitted_quantity", "log|energy_error|"},
                   {"expected_slope", expected_slope},
                   {"tolerance", 0.2}};
  finish(r);
  return r;
}

ExperimentResult run_first_order_cfl(const ExperimentSpec& spec) {
  ExperimentResult r{ExperimentId::first_order_cfl, false, {}, {}, {}, start_meta(spec)};
  const Method m = single_method(spec, "first_order_2stage");
  if (m.tableau.stages() != 2) throw std::invalid_argument("first-order-cfl needs a two-stage method");
  const Rational b2 = m.tableau.b()[1];
  const Rational a21 = m.tableau.a(1, 0);
  const long bits = spec.bits.value_or(256);
  check_bits(bits);

  std::vector<ProblemSpec> problems;
  if (spec.problem) {
    problems.push_back(make_problem(*spec.problem));
  } else {
    for (const char* w : {"1/2", "1", "2", "4"}) problems.push_back(make_problem(std::string("rotation(") + w + ")"));
  }
  for (const auto& p : problems)
    if (p.name != "rotation") throw std::invalid_argument("first-order-cfl runs rotation(omega) problems only");

  auto defaults = log_uniform_grid(1e-3, 1.0, 40);
  defaults.push_back(Rational(12, 25));
  const auto grid = dt_grid(spec, defaults, 1e-3, 1.0, 40);
  const std::size_t steps = spec.steps.value_or(3);

  struct Cell {
    Rational dt;
    Rational change;
    Monotonicity verdict;
  };
  std::vector<std::vector<Cell>> cells(problems.size(), std::vector<Cell>(grid.size()));
  parallel_for(
      problems.size() * grid.size(),
      [&](std::size_t k) {
        const std::size_t pi = k / grid.size();
        const std::size_t di = k % grid.size();
        const auto run = integrate(m, problems[pi].instantiate<Rational>(), grid[di], steps);
        cells[pi][di] = {grid[di], run.trace.rows.back().energy - run.trace.rows.front().energy,
                         classify(run.trace).verdict};
      },
      spec.threads);

  r.table.header = {"omega", "dt", "dt_exact", "dt_max", "admissible", "energy_change", "verdict"};
  json bounds = json::array();
  std::optional<QuadraticSurd> product;
  bool product_constant = true;
  bool unit_step_seen = false;
  for (std::size_t pi = 0; pi < problems.size(); ++pi) {
    const Rational omega = problems[pi].parameters.at(0).second;
    const auto bound = first_order_dt_max(b2, a21, omega);
    if (bound) {
      const QuadraticSurd scaled = *bound * omega;
      if (!product) product = scaled;
      product_constant = product_constant && scaled == *product;
    }
    bounds.push_back({{"omega", omega.str()},
                      {"dt_max", bound ? json(bound->str()) : json(nullptr)},
                      {"dt_max_decimal", bound ? json(bound->evaluate(bits).str()) : json(nullptr)}});
    for (const auto& c : cells[pi]) {
      const bool admissible = bound && bound->compare(c.dt) != std::strong_ordering::less;
      if (admissible && c.verdict != Monotonicity::decreasing) {
        fail(r, "omega = " + omega.str() + ", dt = " + c.dt.str() + " <= dt_max but the energy increases");
      }
      if (omega == Rational(1) && c.dt == Rational(1)) {
        unit_step_seen = true;
        r.meta["unit_step_check"] = {{"omega", "1"}, {"dt", "1"}, {"energy_change", c.change.str()}};
        if (c.change.sign() <= 0 && m.name() == "first_order_2stage") fail(r, "energy does not increase at dt = 1, omega = 1");
      }
      PrecisionScope scope(bits);
      r.table.rows.push_back({omega.str(), BigFloat(c.dt).str(), c.dt.str(),
                              bound ? bound->evaluate(bits).str() : "inf", admissible ? "1" : "0", c.change.str(),
                              to_string(c.verdict)});
    }
  }
  if (!product_constant) fail(r, "dt_max * L differs between values of L");
  r.meta["method"] = m.name();
  r.meta["b2"] = b2.str();
  r.meta["a21"] = a21.str();
  r.meta["bits"] = bits;
  r.meta["steps"] = steps;
  r.meta["seeds"] = json::object();
  r.meta["bounds"] = bounds;
  r.meta["dt_max_times_L"] = product ? json(product->str()) : json(nullptr);
  r.meta["dt_max_times_L_constant"] = product_constant;
  r.meta["unit_step_in_grid"] = unit_step_seen;
  finish(r);
  return r;
}

namespace {

struct LemmaRecord {
  std::string check;
  std::string method;
  std::string item;
  std::string expected;
  std::string computed;
  bool pass;
};

void add_checks(std::vector<LemmaRecord>& out, const std::vector<CoefficientCheck>& checks) {
  for (const auto& c : checks) {
    out.push_back({c.check, c.method, c.item, c.expected.str(), c.computed ? c.computed->str() : "<missing>", c.pass()});
  }
}

std::vector<LemmaRecord> lemma_records(std::uint64_t seed) {
  std::vector<LemmaRecord> out;
  for (int s = 2; s <= 10; ++s) add_checks(out, check_ssprk_s2_energy(s));
  for (int n = 2; n <= 4; ++n) add_checks(out, check_ssprk_n2_3_energy(n));
  add_checks(out, check_ssprk104_energy());
  for (int s = 2; s <= 6; ++s) add_checks(out, check_lemma_stage_formulas(StageFamily::ssprk_s2, s));
  for (int n = 2; n <= 4; ++n) add_checks(out, check_lemma_stage_formulas(StageFamily::ssprk_n2_3, n));

  const std::vector<Method> three_stage{make_ssprk33(), make_erk32_result(), make_rk33_two_param(Rational(1, 2), 1),
                                        make_rk33_one_param_1(Rational(1, 4)), make_rk33_one_param_2(Rational(1, 4))};
  for (const auto& m : three_stage)
    for (const Rational& rr : {Rational(0), Rational(1, 2), Rational(3)}) add_checks(out, check_three_stage_lemmas(m.tableau, rr, 1));

  // stability functions
  const auto erk32 = modulus_squared_on_imaginary_axis(stability_function(make_erk32_result().tableau));
  const std::vector<Rational> erk32_expected{1, 0, 0, 0, 0, 0, Rational(1, 64)};
  for (int k = 0; k <= std::max(erk32.truncation_order(), 6); ++k) {
    const Rational want = k < 7 ? erk32_expected[static_cast<std::size_t>(k)] : Rational(0);
    const auto got = erk32.coefficient(k).value_or(Rational(0));
    out.push_back({"modulus", "erk32_result", "y^" + std::to_string(k), want.str(), got.str(), got == want});
  }
  for (const auto& m : registry()) {
    const auto rz = stability_function(m.tableau);
    const int p = check_order(m.tableau);
    Rational kfact(1);
    for (int k = 0; k <= p; ++k) {
      if (k > 0) kfact *= Rational(k);
      const Rational got = static_cast<std::size_t>(k) < rz.coefficients.size() ? rz.coefficients[static_cast<std::size_t>(k)] : Rational(0);
      out.push_back({"stability", m.name(), "z^" + std::to_string(k), kfact.inverse().str(), got.str(), got == kfact.inverse()});
    }
  }

  // necessary band and nonnegativity gates
  for (const Rational& w : {Rational(1, 4), Rational(1, 2), Rational(2), Rational(-1, 3)}) {
    for (const auto& m : {make_rk33_one_param_1(w), make_rk33_one_param_2(w)}) {
      const auto band = necessary_band_check(m.tableau);
      out.push_back({"band", m.name(), "7/8 <= a31+a32 <= 5/4", "fail", band.pass ? "pass" : "fail (sum " + band.sum.str() + ")",
                     !band.pass});
    }
    if (w.sign() > 0) {
      const auto m = make_rk33_one_param_2(w);
      const auto nn = check_ssp_nonnegativity(m.tableau);
      out.push_back({"nonnegativity", m.name(), "a_ij, b_i >= 0", "fail", nn.pass ? "pass" : "fail", !nn.pass});
    }
  }
  for (const auto& m : registry()) {
    if (!m.ssp) continue;
    const auto nn = check_ssp_nonnegativity(m.tableau);
    out.push_back({"nonnegativity", m.name(), "a_ij, b_i >= 0", "pass", nn.pass ? "pass" : "fail", nn.pass});
  }

  // ssprk33 one exact step on the normalized rotation field against f_dt
  RationalSampler sampler(seed);
  const auto problem = make_problem("normalized_rotation(1)").instantiate<Rational>();
  const Method ssp33 = make_ssprk33();
  for (int tested = 0; tested < 100;) {
    const Rational dt = sampler.next_in(0, 4);
    const auto u0 = sampler.point(2);
    const Rational x = u0[0] * u0[0] + u0[1] * u0[1];
    if (dt.is_zero() || x < Rational(1, 4)) continue;
    const auto u = step(ssp33, problem, u0, dt);
    const Rational gain = u[0] * u[0] + u[1] * u[1] - x;
    const Rational want = ssprk33_energy_map(dt, x);
    out.push_back({"f_dt", ssp33.name(), "dt=" + dt.str() + " x=" + x.str(), want.str(), gain.str(), gain == want});
    ++tested;
  }
  return out;
}

}  // namespace

ExperimentResult run_lemma_suite(const ExperimentSpec& spec) {
  ExperimentResult r{ExperimentId::lemma_suite, false, {}, {}, {}, start_meta(spec)};
  std::optional<std::set<std::string>> keep;
  if (spec.methods) {
    keep.emplace();
    for (const auto& name : *spec.methods) keep->insert(make_named(name).name());
  }
  std::vector<LemmaRecord> records;
  if (!keep || !keep->empty()) {
    for (auto& rec : lemma_records(spec.seed))
      if (!keep || keep->contains(rec.method)) records.push_back(std::move(rec));
  }
  r.table.header = {"check", "method", "item", "expected", "computed", "pass"};
  json list = json::array();
  std::size_t passed = 0;
  for (const auto& rec : records) {
    r.table.rows.push_back({rec.check, rec.method, rec.item, rec.expected, rec.computed, rec.pass ? "1" : "0"});
    list.push_back({{"check", rec.check},
                    {"method", rec.method},
                    {"item", rec.item},
                    {"expected", rec.expected},
                    {"computed", rec.computed},
                    {"pass", rec.pass}});
    if (rec.pass) {
      ++passed;
    } else {
      fail(r, rec.check + " " + rec.method + " " + rec.item + ": expected " + rec.expected + ", computed " + rec.computed);
    }
  }
  r.meta["seeds"] = {{"f_dt_sampler", spec.seed}};
  r.meta["method_filter"] = spec.methods ? json(*spec.methods) : json(nullptr);
  r.meta["records"] = records.size();
  r.meta["passed"] = passed;
  r.meta["checks"] = list;
  finish(r);
  return r;
}

ExperimentResult run_tableau_report(const ExperimentSpec& spec) {
  ExperimentResult r{ExperimentId::tableau_report, false, {}, {}, {}, start_meta(spec)};
  const ProblemSpec problem = make_problem(spec.problem.value_or("u1_u2"));
  if (!problem.polynomial()) throw std::invalid_argument("tableau-report needs a polynomial problem");
  const long bits = spec.bits.value_or(64);
  check_bits(bits);
  const auto names = selected_methods(spec, registry_names());
  std::vector<Method> methods;
  for (const auto& name : names) methods.push_back(make_named(name));

  std::vector<SeriesStep> series(methods.size());
  parallel_for(
      methods.size(),
      [&](std::size_t i) { series[i] = expand_step_auto(methods[i].tableau, *problem.polynomial(), problem.u0); },
      spec.threads);

  r.table.header = {"method", "power", "coefficient", "decimal"};
  json list = json::array();
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const auto& m = methods[i];
    const int order = check_order(m.tableau);
    const auto nn = check_ssp_nonnegativity(m.tableau);
    json violations = json::array();
    for (const auto& v : nn.violations) violations.push_back({{"entry", v.entry}, {"value", v.value.str()}});
    json rz = json::array();
    for (const auto& c : stability_function(m.tableau).coefficients) rz.push_back(c.str());
    const auto& e = series[i].energy_diff;
    for (int k = 0; k <= e.truncation_order(); ++k) {
      if (e[k].is_zero()) continue;
      r.table.rows.push_back({m.name(), std::to_string(k), e[k].str(), decimal(e[k], bits)});
    }
    const auto lead = series[i].leading_power();
    json entry{{"method", m.name()},
               {"stages", m.tableau.stages()},
               {"order", order},
               {"ssp_nonnegative", nn.pass},
               {"violations", violations},
               {"low_storage", m.program.has_value()},
               {"stability_function", rz},
               {"algebraic_stability", to_string(algebraic_stability_matrix(m.tableau).verdict)},
               {"energy_truncation", e.truncation_order()},
               {"energy_leading_power", lead ? json(*lead) : json(nullptr)}};
    list.push_back(entry);
    if (lead && *lead <= order) fail(r, m.name() + ": energy error leads at dt^" + std::to_string(*lead) + ", order " + std::to_string(order));
  }
  r.meta["problem"] = problem.label();
  r.meta["u0"] = [&] {
    json u = json::array();
    for (const auto& x : problem.u0) u.push_back(x.str());
    return u;
  }();
  r.meta["bits"] = bits;
  r.meta["seeds"] = json::object();
  r.meta["methods"] = list;
  finish(r);
  return r;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.steps && spec.id == ExperimentId::lemma_suite) throw std::invalid_argument("lemma-suite takes no --steps");
  switch (spec.id) {
    case ExperimentId::figure1: return run_figure1(spec);
    case ExperimentId::figure2: return run_figure2(spec);
    case ExperimentId::lemma_suite: return run_lemma_suite(spec);
    case ExperimentId::first_order_cfl: return run_first_order_cfl(spec);
    case ExperimentId::tableau_report: return run_tableau_report(spec);
  }
  throw std::invalid_argument("unknown experiment");
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string stem = to_string(result.id);
  write_csv_file(dir / (stem + ".csv"), result.table);
  for (const auto& [suffix, table] : result.extra_tables) write_csv_file(dir / (stem + "." + suffix + ".csv"), table);
  std::ofstream meta(dir / (stem + ".meta.json"));
  if (!meta) throw std::runtime_error("cannot write " + (dir / (stem + ".meta.json")).string());
  meta << result.meta.dump(2) << '\n';
}

}  // namespace strongstab
