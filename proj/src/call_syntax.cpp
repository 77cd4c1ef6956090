#include "strongstab/call_syntax.hpp"

#include <cctype>
#include <stdexcept>

namespace strongstab {

void NamedCall::expect(std::size_t count) const {
  if (args.size() != count) {
    throw std::invalid_argument(name + ": expected " + std::to_string(count) + " parameter(s), got " +
                                std::to_string(args.size()));
  }
}

int NamedCall::integer(std::size_t i) const {
  const Rational& q = args.at(i);
  if (!q.is_integer() || !q.numerator().fits_sint_p()) {
    throw std::invalid_argument(name + ": expected an integer parameter, got " + q.str());
  }
  return static_cast<int>(q.numerator().get_si());
}

NamedCall parse_call(const std::string& spec) {
  std::string text;
  for (char ch : spec)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  NamedCall call{text, {}};
  const auto open = text.find('(');
  if (open == std::string::npos) return call;
  if (text.back() != ')') throw std::invalid_argument("malformed name '" + spec + "'");
  call.name = text.substr(0, open);
  const std::string inner = text.substr(open + 1, text.size() - open - 2);
  std::size_t start = 0;
  while (start <= inner.size()) {
    const auto comma = inner.find(',', start);
    const std::string token = inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (token.empty()) throw std::invalid_argument("empty parameter in '" + spec + "'");
    call.args.push_back(Rational::parse(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return call;
}

}  // namespace strongstab
