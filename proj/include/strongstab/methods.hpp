#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strongstab/low_storage.hpp"
#include "strongstab/rational.hpp"
#include "strongstab/tableau.hpp"

namespace strongstab {

/// A registry method: its tableau and, where one is known, its low-storage form.
struct Method {
  ButcherTableau tableau;
  std::optional<LowStorageProgram> program;
  bool ssp = false;

  const std::string& name() const { return tableau.name(); }
};

/// SSPRK(s,2): a_ij = 1/(s-1), b_i = 1/s.
Method make_ssprk_s2(int s);
/// SSPRK(n^2,3); the tableau is derived from the program.
Method make_ssprk_n2_3(int n);
Method make_ssprk33();
Method make_ssprk104();
Method make_euler();
Method make_rk44();
/// The three-stage second order scheme a21=1/2, a31=0, a32=1, b=(1/4,1/2,1/4).
Method make_erk32_result();
/// Two-stage first order scheme b=(1/2,1/2), a21=3/2, with its convex Euler decomposition.
Method make_first_order_2stage();

/// General three-stage third order solution, parameters alpha2 = c2, alpha3 = c3.
Method make_rk33_two_param(const Rational& alpha2, const Rational& alpha3);
/// c2 = c3 = 2/3.
Method make_rk33_one_param_1(const Rational& omega3);
/// c2 = 2/3, c3 = 0: a31 = -1/(4 omega3), a32 = 1/(4 omega3).
Method make_rk33_one_param_2(const Rational& omega3);

/// Builds a method from "name" or "name(p1,p2)" with exact rational
/// arguments, e.g. "ssprk_s2(4)", "rk33_two_param(1/2,1)".
Method make_named(const std::string& spec);

/// Names accepted by make_named without parameters, plus representative
/// members of the parametrised families.
std::vector<std::string> registry_names();
std::vector<Method> registry();

}  // namespace strongstab
