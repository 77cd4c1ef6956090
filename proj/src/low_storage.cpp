#include "strongstab/low_storage.hpp"

#include <algorithm>

namespace strongstab {

LowStorageProgram::LowStorageProgram(std::string name, std::size_t registers, std::size_t output)
    : name_(std::move(name)), registers_(registers), output_(output) {
  if (registers_ < 2) throw std::invalid_argument("LowStorageProgram: need at least two registers");
  if (output_ >= registers_) throw std::invalid_argument("LowStorageProgram: output register out of range");
}

void LowStorageProgram::check_register(std::size_t r, bool write) const {
  if (r >= registers_) {
    throw std::invalid_argument("program '" + name_ + "': register " + std::to_string(r) + " out of range");
  }
  if (write && r == 0) throw std::invalid_argument("program '" + name_ + "': register 0 is read-only");
}

LowStorageProgram& LowStorageProgram::euler(std::size_t target, std::size_t source, Rational coefficient,
                                            std::string label) {
  check_register(target, true);
  check_register(source, false);
  instructions_.emplace_back(EulerStep{target, source, std::move(coefficient), std::move(label)});
  return *this;
}

LowStorageProgram& LowStorageProgram::combine(std::size_t target, std::vector<std::pair<std::size_t, Rational>> terms,
                                              std::string label) {
  check_register(target, true);
  if (terms.empty()) throw std::invalid_argument("program '" + name_ + "': empty combination");
  for (const auto& term : terms) check_register(term.first, false);
  instructions_.emplace_back(ConvexCombine{target, std::move(terms), std::move(label)});
  return *this;
}

LowStorageProgram& LowStorageProgram::copy(std::size_t target, std::size_t source, std::string label) {
  return combine(target, {{source, Rational(1)}}, std::move(label));
}

bool LowStorageProgram::is_convex() const {
  for (const auto& ins : instructions_) {
    if (const auto* e = std::get_if<EulerStep>(&ins)) {
      if (e->coefficient.sign() < 0) return false;
    } else {
      Rational sum(0);
      for (const auto& [r, w] : std::get<ConvexCombine>(ins).terms) {
        if (w.sign() < 0) return false;
        sum += w;
      }
      if (sum != Rational(1)) return false;
    }
  }
  return true;
}

namespace {

void normalize(LinearForm& f) {
  while (!f.k.empty() && f.k.back().is_zero()) f.k.pop_back();
}

LinearForm scaled_sum(const std::vector<std::pair<Rational, const LinearForm*>>& terms) {
  LinearForm out{Rational(0), {}};
  for (const auto& [w, f] : terms) {
    out.u0 += w * f->u0;
    if (out.k.size() < f->k.size()) out.k.resize(f->k.size(), Rational(0));
    for (std::size_t j = 0; j < f->k.size(); ++j) out.k[j] += w * f->k[j];
  }
  normalize(out);
  return out;
}

}  // namespace

bool operator==(const LinearForm& x, const LinearForm& y) {
  if (x.u0 != y.u0) return false;
  const std::size_t n = std::max(x.k.size(), y.k.size());
  for (std::size_t j = 0; j < n; ++j) {
    const Rational a = j < x.k.size() ? x.k[j] : Rational(0);
    const Rational b = j < y.k.size() ? y.k[j] : Rational(0);
    if (a != b) return false;
  }
  return true;
}

SymbolicTrace trace_program(const LowStorageProgram& p) {
  SymbolicTrace trace;
  std::vector<std::optional<LinearForm>> reg(p.registers());
  reg[0] = LinearForm{Rational(1), {}};

  auto read = [&](std::size_t r) -> const LinearForm& {
    if (!reg[r]) throw std::logic_error("program '" + p.name() + "' reads register " + std::to_string(r) + " before writing it");
    return *reg[r];
  };

  for (const auto& ins : p.instructions()) {
    std::size_t target = 0;
    std::string label;
    LinearForm next;
    if (const auto* e = std::get_if<EulerStep>(&ins)) {
      const LinearForm& arg = read(e->source);
      auto it = std::find(trace.stages.begin(), trace.stages.end(), arg);
      const std::size_t stage = static_cast<std::size_t>(it - trace.stages.begin());
      if (it == trace.stages.end()) trace.stages.push_back(arg);
      next = arg;
      if (next.k.size() <= stage) next.k.resize(stage + 1, Rational(0));
      next.k[stage] += e->coefficient;
      normalize(next);
      target = e->target;
      label = e->label;
    } else {
      const auto& c = std::get<ConvexCombine>(ins);
      std::vector<std::pair<Rational, const LinearForm*>> terms;
      for (const auto& [r, w] : c.terms) terms.emplace_back(w, &read(r));
      next = scaled_sum(terms);
      target = c.target;
      label = c.label;
    }
    reg[target] = next;
    trace.writes.emplace_back(label, std::move(next));
  }
  trace.output = read(p.output());
  return trace;
}

ButcherTableau derive_tableau(const LowStorageProgram& p) {
  const SymbolicTrace trace = trace_program(p);
  const std::size_t s = trace.stages.size();
  if (s == 0) throw std::domain_error("program '" + p.name() + "' never evaluates the right-hand side");
  Matrix<Rational> a(s, s, Rational(0));
  for (std::size_t i = 0; i < s; ++i) {
    const LinearForm& f = trace.stages[i];
    if (f.u0 != Rational(1)) {
      throw std::domain_error("program '" + p.name() + "': stage " + std::to_string(i + 1) + " has u0 weight " + f.u0.str());
    }
    for (std::size_t j = 0; j < f.k.size(); ++j) a(i, j) = f.k[j];
  }
  if (trace.output.u0 != Rational(1)) {
    throw std::domain_error("program '" + p.name() + "': output has u0 weight " + trace.output.u0.str());
  }
  std::vector<Rational> b(s, Rational(0));
  for (std::size_t j = 0; j < trace.output.k.size(); ++j) b[j] = trace.output.k[j];
  return ButcherTableau(p.name(), std::move(a), std::move(b));
}

EquivalenceReport check_program_tableau_equivalence(const LowStorageProgram& p, const ButcherTableau& t) {
  std::optional<ButcherTableau> maybe;
  try {
    maybe = derive_tableau(p);
  } catch (const std::domain_error& e) {
    return {false, e.what()};
  }
  const ButcherTableau& derived = *maybe;
  if (derived.stages() != t.stages()) {
    return {false, "stage count mismatch: program has " + std::to_string(derived.stages()) + ", tableau has " +
                       std::to_string(t.stages())};
  }
  for (std::size_t i = 0; i < t.stages(); ++i) {
    for (std::size_t j = 0; j < t.stages(); ++j) {
      if (derived.a(i, j) != t.a(i, j)) {
        return {false, "a" + std::to_string(i + 1) + std::to_string(j + 1) + ": program " + derived.a(i, j).str() +
                           ", tableau " + t.a(i, j).str()};
      }
    }
    if (derived.b()[i] != t.b()[i]) {
      return {false, "b" + std::to_string(i + 1) + ": program " + derived.b()[i].str() + ", tableau " + t.b()[i].str()};
    }
  }
  return {true, {}};
}

}  // namespace strongstab
