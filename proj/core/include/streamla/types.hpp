#pragma once

#include <complex>
#include <concepts>
#include <cstdint>
#include <string_view>
#include <type_traits>

namespace streamla {

using uword = std::uint64_t;
using sword = std::int64_t;

using cx_float = std::complex<float>;
using cx_double = std::complex<double>;

/// Element kinds that can be persisted and exchanged. Every Mat/Cube is
/// parameterised by exactly one element type; there is no implicit promotion.
enum class ElementKind : std::uint8_t {
  Int = 1,
  F32 = 2,
  F64 = 3,
  C64 = 4,
  C128 = 5,
};

template <class T>
struct is_complex : std::false_type {};
template <class R>
struct is_complex<std::complex<R>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// Anything a Mat can hold: integers, floating point, or std::complex of
/// floating point. Logical and index matrices use uint8_t / uword.
template <class T>
concept Scalar = (std::is_arithmetic_v<T> && !std::is_same_v<T, bool>) ||
                 (is_complex_v<T> && std::is_floating_point_v<typename T::value_type>);

template <class T>
concept ComplexElement = Scalar<T> && is_complex_v<T>;

template <class T>
concept RealFloat = std::is_floating_point_v<T>;

/// Floating point element types, real or complex.
template <class T>
concept FloatElement = RealFloat<T> || ComplexElement<T>;

/// Real (non-complex) element types, integer or floating point.
template <class T>
concept RealElement = Scalar<T> && !is_complex_v<T>;

template <class T>
struct real_type {
  using type = T;
};
template <class R>
struct real_type<std::complex<R>> {
  using type = R;
};
template <class T>
using real_t = typename real_type<T>::type;

/// Complex counterpart of a float type (identity for complex types).
template <class T>
using complex_t = std::complex<real_t<T>>;

/// The five persistable kinds.
template <class T>
concept KindElement = std::same_as<T, std::int64_t> || std::same_as<T, float> ||
                      std::same_as<T, double> || std::same_as<T, cx_float> ||
                      std::same_as<T, cx_double>;

template <KindElement T>
constexpr ElementKind kind_of() {
  if constexpr (std::is_same_v<T, std::int64_t>) return ElementKind::Int;
  else if constexpr (std::is_same_v<T, float>) return ElementKind::F32;
  else if constexpr (std::is_same_v<T, double>) return ElementKind::F64;
  else if constexpr (std::is_same_v<T, cx_float>) return ElementKind::C64;
  else return ElementKind::C128;
}

constexpr std::string_view kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::Int: return "int64";
    case ElementKind::F32: return "f32";
    case ElementKind::F64: return "f64";
    case ElementKind::C64: return "c64";
    case ElementKind::C128: return "c128";
  }
  return "unknown";
}

/// Magnitude usable for every scalar type (abs for real, modulus for complex).
template <Scalar T>
inline real_t<T> magnitude(const T& v) {
  if constexpr (is_complex_v<T>) return std::abs(v);
  else if constexpr (std::is_unsigned_v<T>) return v;
  else return v < T(0) ? T(-v) : v;
}

template <Scalar T>
inline T conj_of(const T& v) {
  if constexpr (is_complex_v<T>) return std::conj(v);
  else return v;
}

template <Scalar T>
inline real_t<T> real_of(const T& v) {
  if constexpr (is_complex_v<T>) return v.real();
  else return v;
}

}  // namespace streamla
