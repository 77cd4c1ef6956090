#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "strongstab/bigfloat.hpp"
#include "strongstab/integrator.hpp"

namespace strongstab {

struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Comma separated text; fields holding commas or quotes are quoted with
/// doubled inner quotes. Line breaks inside fields are rejected.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws CsvError if absent.
  std::size_t column(const std::string& name) const;
};

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);
void write_csv_file(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv_file(const std::filesystem::path& path);

/// step,time,energy with every value printed at full working precision.
CsvTable trace_table(const EnergyTrace<BigFloat>& trace);
/// Inverse of trace_table at the given precision.
EnergyTrace<BigFloat> parse_trace(const CsvTable& table, long bits);

/// x,u
CsvTable snapshot_table(const std::vector<BigFloat>& x, const std::vector<BigFloat>& u);

}  // namespace strongstab
