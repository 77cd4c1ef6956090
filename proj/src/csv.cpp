#include "strongstab/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace strongstab {

namespace {

std::string quoted(const std::string& field) {
  if (field.find_first_of("\r\n") != std::string::npos) throw CsvError("csv field contains a line break");
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split(const std::string& line, std::size_t number) {
  std::vector<std::string> fields(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c != '"') {
        fields.back() += c;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else {
        in_quotes = false;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (in_quotes) throw CsvError("csv line " + std::to_string(number) + ": unterminated quote");
  return fields;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw CsvError("csv: no column '" + name + "'");
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto line = [&](const std::vector<std::string>& fields) {
    if (fields.size() != table.header.size()) throw CsvError("csv: row width differs from header");
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << quoted(fields[i]);
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw CsvError("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split(line, 1);
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto row = split(line, number);
    if (row.size() != table.header.size()) {
      throw CsvError("csv line " + std::to_string(number) + ": expected " + std::to_string(table.header.size()) +
                     " fields, got " + std::to_string(row.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv_file(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw CsvError("cannot write " + path.string());
  write_csv(out, table);
  if (!out) throw CsvError("write failed: " + path.string());
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot read " + path.string());
  return read_csv(in);
}

CsvTable trace_table(const EnergyTrace<BigFloat>& trace) {
  CsvTable t{{"step", "time", "energy"}, {}};
  t.rows.reserve(trace.rows.size());
  for (const auto& r : trace.rows) t.rows.push_back({std::to_string(r.step), r.time.str(), r.energy.str()});
  return t;
}

EnergyTrace<BigFloat> parse_trace(const CsvTable& table, long bits) {
  const std::size_t s = table.column("step");
  const std::size_t t = table.column("time");
  const std::size_t e = table.column("energy");
  EnergyTrace<BigFloat> trace;
  for (const auto& row : table.rows) {
    std::size_t used = 0;
    const unsigned long long step = std::stoull(row[s], &used);
    if (used != row[s].size()) throw CsvError("csv: bad step '" + row[s] + "'");
    trace.rows.push_back({static_cast<std::size_t>(step), BigFloat::parse(row[t], bits), BigFloat::parse(row[e], bits)});
  }
  return trace;
}

CsvTable snapshot_table(const std::vector<BigFloat>& x, const std::vector<BigFloat>& u) {
  if (x.size() != u.size()) throw std::invalid_argument("snapshot_table: x and u differ in length");
  CsvTable t{{"x", "u"}, {}};
  for (std::size_t i = 0; i < x.size(); ++i) t.rows.push_back({x[i].str(), u[i].str()});
  return t;
}

}  // namespace strongstab
