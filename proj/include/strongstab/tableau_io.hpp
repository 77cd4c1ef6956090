#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "strongstab/tableau.hpp"

namespace strongstab {

class TableauParseError : public std::runtime_error {
 public:
  TableauParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Plain-text tableau records:
///
///   name: ssprk33
///   stages: 3
///   A:
///   0 0 0
///   1 0 0
///   1/4 1/4 0
///   b: 1/6 1/6 2/3
///   c: 0 1 1/2
///
/// Entries are "p/q" or integers; decimals are rejected. `c:` is optional.
/// Lines starting with '#' and blank lines are ignored. A file may hold
/// several records, each opened by a `name:` line.
std::vector<ButcherTableau> parse_tableaus(std::istream& in);
ButcherTableau parse_tableau(const std::string& text);
std::vector<ButcherTableau> read_tableau_file(const std::string& path);

void write_tableau(std::ostream& out, const ButcherTableau& t);
std::string format_tableau(const ButcherTableau& t);

}  // namespace strongstab
