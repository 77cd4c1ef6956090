#include <algorithm>
#include <iostream>

#include <CLI11.hpp>

#include "strongstab/experiments.hpp"
#include "strongstab/methods.hpp"
#include "strongstab/problems.hpp"
#include "strongstab/tableau.hpp"

using namespace strongstab;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  // commas inside parentheses belong to the method arguments
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void list_registry(std::ostream& out) {
  CsvTable table{{"method", "stages", "order", "ssp_nonnegative"}, {}};
  for (const auto& m : registry()) {
    table.rows.push_back({m.name(), std::to_string(m.tableau.stages()), std::to_string(check_order(m.tableau)),
                          check_ssp_nonnegativity(m.tableau).pass ? "yes" : "no"});
  }
  write_csv(out, table);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy stability experiments for explicit Runge-Kutta methods"};
  std::string experiment, method, problem, nodes = "equidistant", correction = "on", out_dir = "out", dt_list, t_end;
  double dt_min = 0, dt_max = 0, fit_min = 1e-3, fit_max = 1e-1;
  std::size_t dt_count = 0, steps = 0, elements = 16;
  long bits = 0;
  int degree = 3;
  unsigned threads = 0;
  std::uint64_t seed = default_seed;
  bool list = false, list_problems = false;

  app.add_option("--experiment", experiment, "figure1 | figure2 | lemma-suite | first-order-cfl | tableau-report")
      ->check(CLI::IsMember(experiment_names()));
  auto* method_opt = app.add_option("--method", method, "method name, or a comma separated list for reports");
  auto* problem_opt = app.add_option("--problem", problem, "problem name with rational parameters, e.g. rotation(2)");
  auto* dt_min_opt = app.add_option("--dt-min", dt_min, "smallest dt of a log-uniform grid")->check(CLI::PositiveNumber);
  auto* dt_max_opt = app.add_option("--dt-max", dt_max, "largest dt of a log-uniform grid")->check(CLI::PositiveNumber);
  auto* dt_count_opt = app.add_option("--dt-count", dt_count, "number of grid points")->check(CLI::PositiveNumber);
  auto* dt_list_opt = app.add_option("--dt", dt_list, "explicit comma separated exact dt values, e.g. 1/2,1/10");
  auto* steps_opt = app.add_option("--steps", steps, "time steps per dt");
  auto* t_end_opt = app.add_option("--t-end", t_end, "figure1 final time when --steps is not given (default 100)");
  auto* bits_opt = app.add_option("--bits", bits, "significand bits")->check(CLI::Range(53L, 1L << 20));
  app.add_option("--elements", elements, "DG elements")->check(CLI::PositiveNumber);
  app.add_option("--degree", degree, "DG polynomial degree")->check(CLI::Range(1, 32));
  app.add_option("--nodes", nodes, "DG nodes")->check(CLI::IsMember({"lobatto", "equidistant"}));
  app.add_option("--correction", correction, "entropy correction")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--fit-min", fit_min, "figure2 fit range start")->check(CLI::PositiveNumber);
  app.add_option("--fit-max", fit_max, "figure2 fit range end")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "sampling seed");
  app.add_option("--threads", threads, "worker threads (0: hardware)");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--list", list, "print the method registry and exit");
  app.add_flag("--list-problems", list_problems, "print the problem names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list) {
      list_registry(std::cout);
      return 0;
    }
    if (list_problems) {
      for (const auto& name : problem_names()) std::cout << name << '\n';
      return 0;
    }
    if (experiment.empty()) {
      std::cerr << "--experiment is required\n" << app.help();
      return 2;
    }

    ExperimentSpec spec;
    spec.id = parse_experiment_id(experiment);
    if (*method_opt) spec.methods = split_list(method);
    if (*problem_opt) spec.problem = problem;
    if (*dt_list_opt) {
      spec.dt_values.emplace();
      for (const auto& item : split_list(dt_list)) spec.dt_values->push_back(Rational::parse(item));
    }
    if (*dt_min_opt) spec.dt_min = dt_min;
    if (*dt_max_opt) spec.dt_max = dt_max;
    if (*dt_count_opt) spec.dt_count = dt_count;
    if (*steps_opt) spec.steps = steps;
    if (*t_end_opt) spec.t_end = Rational::parse(t_end);
    if (*bits_opt) spec.bits = bits;
    spec.elements = elements;
    spec.degree = degree;
    spec.nodes = parse_node_family(nodes);
    spec.correction = correction == "on";
    spec.fit_min = fit_min;
    spec.fit_max = fit_max;
    spec.seed = seed;
    spec.threads = threads;

    const ExperimentResult result = run_experiment(spec);
    write_outputs(result, out_dir);
    std::cout << experiment << ": " << (result.pass ? "PASS" : "FAIL") << " (" << result.table.rows.size()
              << " rows, " << out_dir << "/" << experiment << ".csv)\n";
    const std::size_t shown = std::min<std::size_t>(result.failures.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) std::cout << "  " << result.failures[i] << '\n';
    if (shown < result.failures.size()) {
      std::cout << "  ... " << result.failures.size() - shown << " more in " << out_dir << "/" << experiment << ".meta.json\n";
    }
    return result.pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
