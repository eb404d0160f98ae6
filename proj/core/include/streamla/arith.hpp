#pragma once

// Overloaded operators. Everything evaluates eagerly into a new Mat.
//
//   A + B, A - B      element-wise, shapes must match exactly
//   A * B             matrix product (through the active backend)
//   A % B, A / B      element-wise product and quotient
//   A op k, k op A    scalar broadcast for + - * /
//   ==, !=, <, ...    element-wise comparison yielding a LogicalMat of 0/1
//
// Operands must share one element type; there is no implicit promotion.

#include <functional>
#include <type_traits>

#include "streamla/backend.hpp"
#include "streamla/mat.hpp"

namespace streamla {

namespace detail {

template <class T, class Op>
Mat<T> map_unary(const Mat<T>& a, Op op) {
  Mat<T> out(a.n_rows(), a.n_cols());
  for (uword i = 0; i < a.n_elem(); ++i) out.at(i) = op(a.at(i));
  return out;
}

inline void require_same_shape(uword ar, uword ac, uword br, uword bc, const char* what) {
  if (ar != br || ac != bc)
    throw_shape(std::string(what) + ": shape mismatch " + dims(ar, ac) + " vs " + dims(br, bc));
}

template <class R, class T, class Op>
Mat<R> zip(const Mat<T>& a, const Mat<T>& b, Op op, const char* what) {
  require_same_shape(a.n_rows(), a.n_cols(), b.n_rows(), b.n_cols(), what);
  Mat<R> out(a.n_rows(), a.n_cols());
  for (uword i = 0; i < a.n_elem(); ++i) out.at(i) = static_cast<R>(op(a.at(i), b.at(i)));
  return out;
}

template <class T>
T checked_div(const T& a, const T& b) {
  if constexpr (std::is_integral_v<T>) {
    if (b == T(0)) throw DomainError("integer division by zero");
  }
  return a / b;
}

template <class X, class Y>
concept SameElem = MatLike<X> && MatLike<Y> && std::same_as<elem_of<X>, elem_of<Y>>;

}  // namespace detail

// ---- scalar broadcast ----------------------------------------------------------

template <MatLike X>
Mat<elem_of<X>> operator+(const X& a, std::type_identity_t<elem_of<X>> k) {
  return detail::map_unary(as_mat(a), [k](const auto& v) { return v + k; });
}
template <MatLike X>
Mat<elem_of<X>> operator+(std::type_identity_t<elem_of<X>> k, const X& a) {
  return a + k;
}
template <MatLike X>
Mat<elem_of<X>> operator-(const X& a, std::type_identity_t<elem_of<X>> k) {
  return detail::map_unary(as_mat(a), [k](const auto& v) { return v - k; });
}
/// k - A: each element of A subtracted from k.
template <MatLike X>
Mat<elem_of<X>> operator-(std::type_identity_t<elem_of<X>> k, const X& a) {
  return detail::map_unary(as_mat(a), [k](const auto& v) { return k - v; });
}
template <MatLike X>
Mat<elem_of<X>> operator*(const X& a, std::type_identity_t<elem_of<X>> k) {
  return detail::map_unary(as_mat(a), [k](const auto& v) { return v * k; });
}
template <MatLike X>
Mat<elem_of<X>> operator*(std::type_identity_t<elem_of<X>> k, const X& a) {
  return a * k;
}
template <MatLike X>
Mat<elem_of<X>> operator/(const X& a, std::type_identity_t<elem_of<X>> k) {
  return detail::map_unary(as_mat(a), [k](const auto& v) { return detail::checked_div(v, k); });
}
template <MatLike X>
Mat<elem_of<X>> operator/(std::type_identity_t<elem_of<X>> k, const X& a) {
  return detail::map_unary(as_mat(a), [k](const auto& v) { return detail::checked_div(k, v); });
}

template <MatLike X>
Mat<elem_of<X>> operator-(const X& a) {
  return detail::map_unary(as_mat(a), [](const auto& v) { return -v; });
}

// ---- matrix / matrix -----------------------------------------------------------

template <MatLike X, MatLike Y>
  requires detail::SameElem<X, Y>
Mat<elem_of<X>> operator+(const X& a, const Y& b) {
  return detail::zip<elem_of<X>>(as_mat(a), as_mat(b), std::plus<>{}, "addition");
}

template <MatLike X, MatLike Y>
  requires detail::SameElem<X, Y>
Mat<elem_of<X>> operator-(const X& a, const Y& b) {
  return detail::zip<elem_of<X>>(as_mat(a), as_mat(b), std::minus<>{}, "subtraction");
}

/// Element-wise (Schur) product.
template <MatLike X, MatLike Y>
  requires detail::SameElem<X, Y>
Mat<elem_of<X>> operator%(const X& a, const Y& b) {
  return detail::zip<elem_of<X>>(as_mat(a), as_mat(b), std::multiplies<>{}, "element-wise multiplication");
}

/// Element-wise quotient. Float kinds follow IEEE rules on division by zero;
/// integer division by zero throws DomainError.
template <MatLike X, MatLike Y>
  requires detail::SameElem<X, Y>
Mat<elem_of<X>> operator/(const X& a, const Y& b) {
  using T = elem_of<X>;
  return detail::zip<T>(as_mat(a), as_mat(b), [](const T& x, const T& y) { return detail::checked_div(x, y); },
                        "element-wise division");
}

/// Matrix product.
template <MatLike X, MatLike Y>
  requires detail::SameElem<X, Y>
Mat<elem_of<X>> operator*(const X& a, const Y& b) {
  return matmul(as_mat(a), as_mat(b));
}

// ---- relational ----------------------------------------------------------------

#define STREAMLA_RELATIONAL(OP, NAME, CONSTRAINT)                                                 \
  template <MatLike X, MatLike Y>                                                                 \
    requires detail::SameElem<X, Y> && CONSTRAINT<elem_of<X>>                                     \
  LogicalMat operator OP(const X& a, const Y& b) {                                                \
    return detail::zip<std::uint8_t>(                                                             \
        as_mat(a), as_mat(b), [](const auto& x, const auto& y) { return x OP y ? 1 : 0; }, NAME); \
  }                                                                                               \
  template <MatLike X>                                                                            \
    requires CONSTRAINT<elem_of<X>>                                                               \
  LogicalMat operator OP(const X& a, std::type_identity_t<elem_of<X>> k) {                        \
    const auto& m = as_mat(a);                                                                    \
    LogicalMat out(m.n_rows(), m.n_cols());                                                       \
    for (uword i = 0; i < m.n_elem(); ++i) out.at(i) = m.at(i) OP k ? 1 : 0;                      \
    return out;                                                                                   \
  }                                                                                               \
  template <MatLike X>                                                                            \
    requires CONSTRAINT<elem_of<X>>                                                               \
  LogicalMat operator OP(std::type_identity_t<elem_of<X>> k, const X& a) {                        \
    const auto& m = as_mat(a);                                                                    \
    LogicalMat out(m.n_rows(), m.n_cols());                                                       \
    for (uword i = 0; i < m.n_elem(); ++i) out.at(i) = k OP m.at(i) ? 1 : 0;                      \
    return out;                                                                                   \
  }

STREAMLA_RELATIONAL(==, "==", Scalar)
STREAMLA_RELATIONAL(!=, "!=", Scalar)
STREAMLA_RELATIONAL(<, "<", RealElement)
STREAMLA_RELATIONAL(>, ">", RealElement)
STREAMLA_RELATIONAL(<=, "<=", RealElement)
STREAMLA_RELATIONAL(>=, ">=", RealElement)

#undef STREAMLA_RELATIONAL

// ---- compound assignment -------------------------------------------------------

template <Scalar T>
Mat<T>& operator+=(Mat<T>& a, std::type_identity_t<T> k) {
  for (T& v : a) v += k;
  return a;
}
template <Scalar T>
Mat<T>& operator-=(Mat<T>& a, std::type_identity_t<T> k) {
  for (T& v : a) v -= k;
  return a;
}
template <Scalar T>
Mat<T>& operator*=(Mat<T>& a, std::type_identity_t<T> k) {
  for (T& v : a) v *= k;
  return a;
}
template <Scalar T>
Mat<T>& operator/=(Mat<T>& a, std::type_identity_t<T> k) {
  for (T& v : a) v = detail::checked_div(v, k);
  return a;
}

template <Scalar T, MatLike Y>
  requires std::same_as<elem_of<Y>, T>
Mat<T>& operator+=(Mat<T>& a, const Y& b) {
  const auto& m = as_mat(b);
  detail::require_same_shape(a.n_rows(), a.n_cols(), m.n_rows(), m.n_cols(), "+=");
  for (uword i = 0; i < a.n_elem(); ++i) a.at(i) += m.at(i);
  return a;
}
template <Scalar T, MatLike Y>
  requires std::same_as<elem_of<Y>, T>
Mat<T>& operator-=(Mat<T>& a, const Y& b) {
  const auto& m = as_mat(b);
  detail::require_same_shape(a.n_rows(), a.n_cols(), m.n_rows(), m.n_cols(), "-=");
  for (uword i = 0; i < a.n_elem(); ++i) a.at(i) -= m.at(i);
  return a;
}
template <Scalar T, MatLike Y>
  requires std::same_as<elem_of<Y>, T>
Mat<T>& operator%=(Mat<T>& a, const Y& b) {
  const auto& m = as_mat(b);
  detail::require_same_shape(a.n_rows(), a.n_cols(), m.n_rows(), m.n_cols(), "%=");
  for (uword i = 0; i < a.n_elem(); ++i) a.at(i) *= m.at(i);
  return a;
}
template <Scalar T, MatLike Y>
  requires std::same_as<elem_of<Y>, T>
Mat<T>& operator/=(Mat<T>& a, const Y& b) {
  const auto& m = as_mat(b);
  detail::require_same_shape(a.n_rows(), a.n_cols(), m.n_rows(), m.n_cols(), "/=");
  for (uword i = 0; i < a.n_elem(); ++i) a.at(i) = detail::checked_div(a.at(i), m.at(i));
  return a;
}
/// A *= B is A = A * B (matrix product).
template <Scalar T, MatLike Y>
  requires std::same_as<elem_of<Y>, T>
Mat<T>& operator*=(Mat<T>& a, const Y& b) {
  a = matmul(a, as_mat(b));
  return a;
}

}  // namespace streamla
