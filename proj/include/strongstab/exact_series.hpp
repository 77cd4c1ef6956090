#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strongstab/dt_polynomial.hpp"
#include "strongstab/low_storage.hpp"
#include "strongstab/methods.hpp"
#include "strongstab/tableau.hpp"
#include "strongstab/vector_field.hpp"

namespace strongstab {

using SeriesState = std::vector<DtPolynomial>;

/// One step expanded in powers of dt, exact through `order`.
struct SeriesStep {
  int order = 0;
  std::vector<SeriesState> stages;                          // slope arguments (tableau path)
  std::vector<std::pair<std::string, SeriesState>> writes;  // labeled register writes (program path)
  SeriesState update;
  DtPolynomial energy_diff;  // ||u+||^2 - ||u0||^2
  bool exposed = false;      // a nonzero energy coefficient lies within the truncation

  std::optional<int> leading_power() const { return energy_diff.leading_power(); }
  /// Coefficient of the leading power; throws TruncationError when nothing is exposed.
  std::pair<int, Rational> leading_term() const;
};

SeriesStep expand_step(const ButcherTableau& t, const PolynomialVectorField& g, const std::vector<Rational>& u0,
                       int order);
SeriesStep expand_step(const LowStorageProgram& p, const PolynomialVectorField& g, const std::vector<Rational>& u0,
                       int order);

inline constexpr int default_series_order = 8;
inline constexpr int max_series_order = 16;

/// Starts at `order` and raises it until the leading energy coefficient is
/// exposed or the cap is hit; `exposed` reports which happened.
SeriesStep expand_step_auto(const ButcherTableau& t, const PolynomialVectorField& g, const std::vector<Rational>& u0,
                            int order = default_series_order, int cap = max_series_order);

/// Expected vs computed value of one exact coefficient.
struct CoefficientCheck {
  std::string check;   // e.g. "energy", "u-stage", "erk33-1"
  std::string method;
  std::string item;    // e.g. "dt^4" or "u2[1] h^3"
  Rational expected;
  std::optional<Rational> computed;

  bool pass() const { return computed && *computed == expected; }
};

/// Energy-series coefficients of SSPRK(s,2) on the (u1-u2) field: zero through dt^3, (s+1)/(6(s-1)^2) at dt^4.
std::vector<CoefficientCheck> check_ssprk_s2_energy(int s);
/// SSPRK(n^2,3): zero through dt^3, (n^2-n-2)/(12 n^2 (n-1)^2) at dt^4, (n^2-n+3)/(6 n^2 (n-1)^2) at dt^5.
std::vector<CoefficientCheck> check_ssprk_n2_3_energy(int n);
/// SSPRK(10,4): zero through dt^5, then 23/3240, -1/240, -161/29160.
std::vector<CoefficientCheck> check_ssprk104_energy();

enum class StageFamily { ssprk_s2, ssprk_n2_3 };

/// Stage components of the low-storage programs against the closed-form
/// stage formulas, per coefficient, for k in [k_min, k_max] (clamped to the
/// valid range). Through (dt/(s-1))^4 for the s2 family, dt^5 for n^2,3.
std::vector<CoefficientCheck> check_lemma_stage_formulas(StageFamily family, int parameter, int k_min = 0,
                                                         int k_max = 1 << 20);

/// Three-stage coefficient formulas on the (u1 - r u2) and (r u1 - u2) fields.
/// Order >= 3 adds the dt^4 check; order >= 2 is required.
std::vector<CoefficientCheck> check_three_stage_lemmas(const ButcherTableau& t, const Rational& r,
                                                       const Rational& alpha);

struct BandReport {
  bool pass = false;
  Rational sum;                    // a31 + a32
  std::string regime;              // "r->0" (upper bound) or "r->inf" (lower bound) when violated
  std::optional<Rational> witness_r;
  std::optional<Rational> witness_coefficient;  // dt^4 energy coefficient at witness_r, alpha = 1
};

/// 7/8 <= a31 + a32 <= 5/4 for a three-stage third order tableau. On failure
/// a value of r is produced for which the dt^4 energy coefficient is positive,
/// confirmed by expansion.
BandReport necessary_band_check(const ButcherTableau& t);

}  // namespace strongstab
