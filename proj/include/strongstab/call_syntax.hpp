#pragma once

#include <string>
#include <vector>

#include "strongstab/rational.hpp"

namespace strongstab {

/// "name" or "name(p1,...,pk)" with exact rational parameters; whitespace is ignored.
struct NamedCall {
  std::string name;
  std::vector<Rational> args;

  /// Throws std::invalid_argument unless there are exactly `count` arguments.
  void expect(std::size_t count) const;
  /// Argument i as an int; throws std::invalid_argument if it is not integral.
  int integer(std::size_t i) const;
};

NamedCall parse_call(const std::string& text);

}  // namespace strongstab
