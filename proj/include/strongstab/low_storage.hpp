#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "strongstab/rational.hpp"
#include "strongstab/tableau.hpp"

namespace strongstab {

/// target := source + coefficient * dt * g(source)
struct EulerStep {
  std::size_t target;
  std::size_t source;
  Rational coefficient;
  std::string label;
};

/// target := sum_k weight_k * register_k
struct ConvexCombine {
  std::size_t target;
  std::vector<std::pair<std::size_t, Rational>> terms;
  std::string label;
};

using Instruction = std::variant<EulerStep, ConvexCombine>;

/// A Runge-Kutta step written as Euler substeps and linear combinations over
/// a fixed set of registers. Register 0 holds the input state and is never
/// written; the step result is read from output().
class LowStorageProgram {
 public:
  LowStorageProgram(std::string name, std::size_t registers, std::size_t output);

  LowStorageProgram& euler(std::size_t target, std::size_t source, Rational coefficient, std::string label = {});
  LowStorageProgram& combine(std::size_t target, std::vector<std::pair<std::size_t, Rational>> terms,
                             std::string label = {});
  LowStorageProgram& copy(std::size_t target, std::size_t source, std::string label = {});

  const std::string& name() const { return name_; }
  std::size_t registers() const { return registers_; }
  std::size_t output() const { return output_; }
  const std::vector<Instruction>& instructions() const { return instructions_; }

  /// Every combination has nonnegative weights summing to one and every
  /// Euler coefficient is nonnegative.
  bool is_convex() const;

 private:
  void check_register(std::size_t r, bool write) const;

  std::string name_;
  std::size_t registers_;
  std::size_t output_;
  std::vector<Instruction> instructions_;
};

/// State of a register as u0-coefficient * u0 + dt * sum_j k[j] * g_j, where
/// g_j is the j-th distinct stage slope.
struct LinearForm {
  Rational u0;
  std::vector<Rational> k;

  friend bool operator==(const LinearForm& x, const LinearForm& y);
};

struct SymbolicTrace {
  std::vector<LinearForm> stages;  // argument of each distinct slope evaluation
  LinearForm output;
  std::vector<std::pair<std::string, LinearForm>> writes;  // labeled writes in program order
};

/// Symbolic execution with the stage slopes as formal symbols. A slope is a
/// new stage unless a previous evaluation had an identical argument.
SymbolicTrace trace_program(const LowStorageProgram& p);

/// Butcher form of the program. Throws std::domain_error if a stage or the
/// output does not carry u0 with coefficient one.
ButcherTableau derive_tableau(const LowStorageProgram& p);

struct EquivalenceReport {
  bool pass = false;
  std::string reason;
};

EquivalenceReport check_program_tableau_equivalence(const LowStorageProgram& p, const ButcherTableau& t);

/// Runs one step of a tableau on an abstract state type V.
///   g(x)                     slope at x
///   dt_combination(x, terms) x + dt * sum c * slope
template <class V, class G, class DtCombination>
V run_tableau(const ButcherTableau& t, const V& u0, G&& g, DtCombination&& dt_combination) {
  const std::size_t s = t.stages();
  std::vector<V> slopes;
  slopes.reserve(s);
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<std::pair<Rational, const V*>> terms;
    for (std::size_t j = 0; j < i; ++j)
      if (!t.a(i, j).is_zero()) terms.emplace_back(t.a(i, j), &slopes[j]);
    if (terms.empty()) {
      slopes.push_back(g(u0));
    } else {
      slopes.push_back(g(dt_combination(u0, terms)));
    }
  }
  std::vector<std::pair<Rational, const V*>> terms;
  for (std::size_t i = 0; i < s; ++i)
    if (!t.b()[i].is_zero()) terms.emplace_back(t.b()[i], &slopes[i]);
  return dt_combination(u0, terms);
}

/// Runs one step of a low-storage program on an abstract state type V.
///   linear_combination(terms)  sum w * x
///   on_write(label, value)     called after every instruction
/// Slopes are cached per register write, so re-reading an unchanged register
/// reuses its slope.
template <class V, class G, class DtCombination, class LinearCombination>
V run_program(const LowStorageProgram& p, const V& u0, G&& g, DtCombination&& dt_combination,
              LinearCombination&& linear_combination,
              const std::type_identity_t<std::function<void(const std::string&, const V&)>>& on_write = {}) {
  std::vector<std::optional<V>> reg(p.registers());
  std::vector<std::size_t> version(p.registers(), 0);
  reg[0] = u0;
  std::map<std::pair<std::size_t, std::size_t>, V> slope_cache;

  auto read = [&](std::size_t r) -> const V& {
    if (!reg[r]) throw std::logic_error("program '" + p.name() + "' reads register " + std::to_string(r) + " before writing it");
    return *reg[r];
  };

  for (const auto& ins : p.instructions()) {
    std::size_t target = 0;
    std::string label;
    if (const auto* e = std::get_if<EulerStep>(&ins)) {
      const auto key = std::make_pair(e->source, version[e->source]);
      auto it = slope_cache.find(key);
      if (it == slope_cache.end()) it = slope_cache.emplace(key, g(read(e->source))).first;
      std::vector<std::pair<Rational, const V*>> terms{{e->coefficient, &it->second}};
      V next = dt_combination(read(e->source), terms);
      target = e->target;
      label = e->label;
      reg[target] = std::move(next);
    } else {
      const auto& c = std::get<ConvexCombine>(ins);
      std::vector<std::pair<Rational, const V*>> terms;
      for (const auto& [r, w] : c.terms) terms.emplace_back(w, &read(r));
      V next = linear_combination(terms);
      target = c.target;
      label = c.label;
      reg[target] = std::move(next);
    }
    ++version[target];
    if (on_write) on_write(label, *reg[target]);
  }
  return read(p.output());
}

}  // namespace strongstab
