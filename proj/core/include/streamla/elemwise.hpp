#pragma once

// Element-wise functions: B(i) = f(A(i)) for every element, shape preserved.
//
// Which element types a function accepts is part of its signature. Integer
// matrices support square, pow and sign only (plus abs in matfun.hpp);
// erf, erfc, lgamma, trunc_exp and trunc_log are real-only; sign is defined
// for real types only. Domain violations on float types follow IEEE rules and
// produce NaN (e.g. sqrt of a negative real, pow of a negative base with a
// fractional exponent).

#include <cmath>
#include <complex>
#include <limits>

#include "streamla/arith.hpp"
#include "streamla/mat.hpp"

namespace streamla {

namespace detail {

template <class T>
T round_away(const T& x) {
  if constexpr (is_complex_v<T>) return T(std::round(x.real()), std::round(x.imag()));
  else return std::round(x);
}

template <class T, class Fn>
T partwise(const T& x, Fn fn) {
  if constexpr (is_complex_v<T>) return T(fn(x.real()), fn(x.imag()));
  else return fn(x);
}

}  // namespace detail

#define STREAMLA_ELEMWISE(NAME, CONSTRAINT, EXPR)                               \
  template <CONSTRAINT T>                                                       \
  Mat<T> NAME(const Mat<T>& A) {                                                \
    return detail::map_unary(A, [](const T& x) -> T { return EXPR; });         \
  }

STREAMLA_ELEMWISE(exp, FloatElement, std::exp(x))
STREAMLA_ELEMWISE(exp2, FloatElement, is_complex_v<T> ? std::pow(T(2), x) : T(std::exp2(real_of(x))))
STREAMLA_ELEMWISE(exp10, FloatElement, std::pow(T(10), x))
STREAMLA_ELEMWISE(log, FloatElement, std::log(x))
STREAMLA_ELEMWISE(log2, FloatElement,
                  is_complex_v<T> ? T(std::log(x) / std::log(real_t<T>(2))) : T(std::log2(real_of(x))))
STREAMLA_ELEMWISE(log10, FloatElement, std::log10(x))
STREAMLA_ELEMWISE(sqrt, FloatElement, std::sqrt(x))
STREAMLA_ELEMWISE(square, Scalar, x* x)

STREAMLA_ELEMWISE(floor, FloatElement, detail::partwise(x, [](real_t<T> v) { return std::floor(v); }))
STREAMLA_ELEMWISE(ceil, FloatElement, detail::partwise(x, [](real_t<T> v) { return std::ceil(v); }))
/// Halfway cases go away from zero.
STREAMLA_ELEMWISE(round, FloatElement, detail::round_away(x))
STREAMLA_ELEMWISE(trunc, FloatElement, detail::partwise(x, [](real_t<T> v) { return std::trunc(v); }))

STREAMLA_ELEMWISE(erf, RealFloat, std::erf(x))
STREAMLA_ELEMWISE(erfc, RealFloat, std::erfc(x))
STREAMLA_ELEMWISE(lgamma, RealFloat, std::lgamma(x))

STREAMLA_ELEMWISE(cos, FloatElement, std::cos(x))
STREAMLA_ELEMWISE(acos, FloatElement, std::acos(x))
STREAMLA_ELEMWISE(cosh, FloatElement, std::cosh(x))
STREAMLA_ELEMWISE(acosh, FloatElement, std::acosh(x))
STREAMLA_ELEMWISE(sin, FloatElement, std::sin(x))
STREAMLA_ELEMWISE(asin, FloatElement, std::asin(x))
STREAMLA_ELEMWISE(sinh, FloatElement, std::sinh(x))
STREAMLA_ELEMWISE(asinh, FloatElement, std::asinh(x))
STREAMLA_ELEMWISE(tan, FloatElement, std::tan(x))
STREAMLA_ELEMWISE(atan, FloatElement, std::atan(x))
STREAMLA_ELEMWISE(tanh, FloatElement, std::tanh(x))
STREAMLA_ELEMWISE(atanh, FloatElement, std::atanh(x))

#undef STREAMLA_ELEMWISE

/// e^x, with results that would overflow replaced by the largest finite value.
template <RealFloat T>
Mat<T> trunc_exp(const Mat<T>& A) {
  const T cap = std::log(std::numeric_limits<T>::max());
  return detail::map_unary(A, [cap](const T& x) -> T {
    return x >= cap ? std::numeric_limits<T>::max() : std::exp(x);
  });
}

/// Natural log without infinities: +inf maps to log(largest finite value) and
/// any x <= 0 maps to log(smallest positive normal value). NaN stays NaN.
template <RealFloat T>
Mat<T> trunc_log(const Mat<T>& A) {
  return detail::map_unary(A, [](const T& x) -> T {
    if (x == std::numeric_limits<T>::infinity()) return std::log(std::numeric_limits<T>::max());
    if (x <= T(0)) return std::log(std::numeric_limits<T>::min());
    return std::log(x);
  });
}

/// x^p. Integer matrices use exact repeated multiplication and require p >= 0.
/// Complex matrices with a small integer exponent use repeated multiplication too.
template <Scalar T>
Mat<T> pow(const Mat<T>& A, std::type_identity_t<T> p) {
  if constexpr (std::is_integral_v<T>) {
    if (p < 0) detail::throw_domain("pow: negative exponent on an integer matrix");
    return detail::map_unary(A, [p](const T& x) {
      T r = 1, b = x;
      for (T e = p; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
      }
      return r;
    });
  } else if constexpr (is_complex_v<T>) {
    const real_t<T> pr = p.real();
    if (p.imag() == 0 && pr == std::trunc(pr) && std::abs(pr) <= 64) {
      const auto e0 = static_cast<int>(std::abs(pr));
      return detail::map_unary(A, [e0, neg = pr < 0](const T& x) -> T {
        T r(1), b = x;
        for (int e = e0; e > 0; e >>= 1) {
          if (e & 1) r *= b;
          if (e > 1) b *= b;
        }
        return neg ? T(1) / r : r;
      });
    }
    return detail::map_unary(A, [p](const T& x) -> T { return std::pow(x, p); });
  } else {
    if (p == T(2)) return detail::map_unary(A, [](const T& x) -> T { return x * x; });
    return detail::map_unary(A, [p](const T& x) -> T { return std::pow(x, p); });
  }
}

/// -1, 0 or +1 by the sign of each element; sign(-0) is 0 and NaN stays NaN.
template <RealElement T>
Mat<T> sign(const Mat<T>& A) {
  return detail::map_unary(A, [](const T& x) -> T {
    if (x > T(0)) return T(1);
    if (x < T(0)) return T(-1);
    return x == T(0) ? T(0) : x;
  });
}

}  // namespace streamla
