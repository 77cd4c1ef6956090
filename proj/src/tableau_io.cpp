#include "strongstab/tableau_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace strongstab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<Rational> parse_row(const std::string& text, std::size_t line) {
  std::istringstream is(text);
  std::vector<Rational> row;
  std::string token;
  while (is >> token) {
    try {
      row.push_back(Rational::parse(token));
    } catch (const std::exception& e) {
      throw TableauParseError(line, "bad entry '" + token + "': " + e.what());
    }
  }
  return row;
}

struct Draft {
  std::string name;
  std::optional<std::size_t> stages;
  std::vector<std::vector<Rational>> a_rows;
  bool reading_a = false;
  std::optional<std::vector<Rational>> b;
  std::optional<std::vector<Rational>> c;
  std::size_t start_line = 0;

  ButcherTableau finish() const {
    if (!stages) throw TableauParseError(start_line, "record '" + name + "' has no stages");
    if (!b) throw TableauParseError(start_line, "record '" + name + "' has no b");
    const std::size_t s = *stages;
    if (a_rows.size() != s) {
      throw TableauParseError(start_line, "record '" + name + "': expected " + std::to_string(s) +
                                              " rows of A, found " + std::to_string(a_rows.size()));
    }
    Matrix<Rational> a(s, s, Rational(0));
    for (std::size_t i = 0; i < s; ++i) {
      if (a_rows[i].size() != s) {
        throw TableauParseError(start_line, "record '" + name + "': row " + std::to_string(i + 1) +
                                                " of A has " + std::to_string(a_rows[i].size()) + " entries");
      }
      for (std::size_t j = 0; j < s; ++j) a(i, j) = a_rows[i][j];
    }
    if (b->size() != s) throw TableauParseError(start_line, "record '" + name + "': b has wrong length");
    if (c && c->size() != s) throw TableauParseError(start_line, "record '" + name + "': c has wrong length");
    return ButcherTableau(name, std::move(a), *b, c);
  }
};

}  // namespace

std::vector<ButcherTableau> parse_tableaus(std::istream& in) {
  std::vector<ButcherTableau> out;
  std::optional<Draft> draft;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto colon = text.find(':');
    const std::string key = colon == std::string::npos ? std::string{} : trim(text.substr(0, colon));
    const std::string value = colon == std::string::npos ? text : trim(text.substr(colon + 1));

    if (key == "name") {
      if (draft) out.push_back(draft->finish());
      draft = Draft{};
      draft->name = value;
      draft->start_line = line;
      continue;
    }
    if (!draft) throw TableauParseError(line, "expected 'name:' to open a record");
    if (key == "stages") {
      draft->reading_a = false;
      try {
        const Rational s = Rational::parse(value);
        if (!s.is_integer() || s.sign() <= 0) throw std::invalid_argument("not a positive integer");
        draft->stages = static_cast<std::size_t>(s.numerator().get_ui());
      } catch (const std::exception& e) {
        throw TableauParseError(line, "bad stage count '" + value + "': " + e.what());
      }
    } else if (key == "A") {
      draft->reading_a = true;
      if (!value.empty()) draft->a_rows.push_back(parse_row(value, line));
    } else if (key == "b") {
      draft->reading_a = false;
      draft->b = parse_row(value, line);
    } else if (key == "c") {
      draft->reading_a = false;
      draft->c = parse_row(value, line);
    } else if (key.empty() && draft->reading_a) {
      draft->a_rows.push_back(parse_row(text, line));
    } else {
      throw TableauParseError(line, "unexpected line '" + text + "'");
    }
  }
  if (draft) out.push_back(draft->finish());
  return out;
}

ButcherTableau parse_tableau(const std::string& text) {
  std::istringstream is(text);
  auto all = parse_tableaus(is);
  if (all.size() != 1) throw TableauParseError(0, "expected exactly one record, found " + std::to_string(all.size()));
  return all.front();
}

std::vector<ButcherTableau> read_tableau_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tableau file '" + path + "'");
  return parse_tableaus(in);
}

void write_tableau(std::ostream& out, const ButcherTableau& t) {
  const std::size_t s = t.stages();
  out << "name: " << t.name() << '\n' << "stages: " << s << '\n' << "A:\n";
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) out << (j ? " " : "") << t.a(i, j);
    out << '\n';
  }
  out << "b:";
  for (const auto& x : t.b()) out << ' ' << x;
  out << "\nc:";
  for (const auto& x : t.c()) out << ' ' << x;
  out << '\n';
}

std::string format_tableau(const ButcherTableau& t) {
  std::ostringstream os;
  write_tableau(os, t);
  return os.str();
}

}  // namespace strongstab
