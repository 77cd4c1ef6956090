#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "strongstab/advection.hpp"
#include "strongstab/csv.hpp"
#include "strongstab/rational.hpp"

namespace strongstab {

enum class ExperimentId { figure1, figure2, lemma_suite, first_order_cfl, tableau_report };

std::string to_string(ExperimentId id);
/// Throws std::invalid_argument for an unknown id.
ExperimentId parse_experiment_id(const std::string& name);
std::vector<std::string> experiment_names();

/// Unset fields take the experiment's defaults.
struct ExperimentSpec {
  ExperimentId id = ExperimentId::figure1;
  /// Unset: the experiment's default methods. Set but empty: nothing selected.
  std::optional<std::vector<std::string>> methods;
  std::optional<std::string> problem;
  /// Explicit dt values; takes precedence over the log range.
  std::optional<std::vector<Rational>> dt_values;
  std::optional<double> dt_min;
  std::optional<double> dt_max;
  std::optional<std::size_t> dt_count;
  std::optional<std::size_t> steps;
  std::optional<long> bits;
  /// figure1: final time when steps is unset.
  Rational t_end{100};
  std::size_t elements = 16;
  int degree = 3;
  NodeFamily nodes = NodeFamily::equidistant;
  bool correction = true;
  /// figure2: least-squares fit range.
  double fit_min = 1e-3;
  double fit_max = 1e-1;
  std::uint64_t seed = 20240521;
  unsigned threads = 0;
};

struct ExperimentResult {
  ExperimentId id = ExperimentId::figure1;
  bool pass = false;
  std::vector<std::string> failures;
  CsvTable table;
  /// Extra tables written next to the main one, keyed by file suffix.
  std::vector<std::pair<std::string, CsvTable>> extra_tables;
  nlohmann::ordered_json meta;
};

/// Validates the spec (std::invalid_argument on a usage error) and runs it.
ExperimentResult run_experiment(const ExperimentSpec& spec);

ExperimentResult run_figure1(const ExperimentSpec& spec);
ExperimentResult run_figure2(const ExperimentSpec& spec);
ExperimentResult run_first_order_cfl(const ExperimentSpec& spec);
ExperimentResult run_lemma_suite(const ExperimentSpec& spec);
ExperimentResult run_tableau_report(const ExperimentSpec& spec);

/// <dir>/<experiment>.csv, <dir>/<experiment>.meta.json and any extra tables
/// as <dir>/<experiment>.<suffix>.csv. Creates dir.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

/// Ordinary least squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace strongstab
