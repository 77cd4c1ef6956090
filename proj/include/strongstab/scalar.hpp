#pragma once

#include <cmath>
#include <limits>
#include <type_traits>

#include "strongstab/bigfloat.hpp"
#include "strongstab/rational.hpp"

namespace strongstab {

/// Lift an exact coefficient into the scalar type of a computation.
template <class T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else if constexpr (std::is_same_v<T, BigFloat>) {
    return BigFloat(q);
  } else {
    static_assert(std::is_floating_point_v<T>, "unsupported scalar type");
    return static_cast<T>(q.to_double());
  }
}

template <class T>
double to_double(const T& x) {
  if constexpr (std::is_floating_point_v<T>) {
    return static_cast<double>(x);
  } else {
    return x.to_double();
  }
}

template <class T>
bool is_finite(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return true;
  } else if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(x);
  } else {
    return x.is_finite();
  }
}

template <class T>
T abs_value(const T& x) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::abs(x);
  } else {
    return abs(x);
  }
}

/// Significand bits of the scalar type: 0 for exact arithmetic.
template <class T>
long scalar_bits(const T& sample) {
  if constexpr (std::is_same_v<T, Rational>) {
    return 0;
  } else if constexpr (std::is_same_v<T, BigFloat>) {
    return sample.precision();
  } else {
    return std::numeric_limits<T>::digits;
  }
}

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

}  // namespace strongstab
