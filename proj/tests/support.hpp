#pragma once

// Shared helpers for the test programs: reference arithmetic written
// independently of the library, and seeded random generators for property
// checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <random>

#include "streamla/mat.hpp"

namespace testutil {

#ifndef STREAMLA_FIXTURE_DIR
#define STREAMLA_FIXTURE_DIR "fixtures"
#endif

inline std::string fixture(const std::string& name) {
  const char* dir = std::getenv("STREAMLA_FIXTURES");
  return std::string(dir ? dir : STREAMLA_FIXTURE_DIR) + "/" + name;
}

using streamla::Mat;
using streamla::uword;

template <class T>
using real_t = streamla::real_t<T>;

template <class T>
double abs2(const T& v) {
  const double a = static_cast<double>(std::abs(v));
  return a * a;
}

template <class T>
double fro(const Mat<T>& A) {
  double s = 0;
  for (uword i = 0; i < A.n_elem(); ++i) s += abs2(A.at(i));
  return std::sqrt(s);
}

template <class T>
T cj(const T& v) {
  if constexpr (streamla::is_complex_v<T>) return std::conj(v);
  else return v;
}

template <class T>
Mat<T> ref_mul(const Mat<T>& A, const Mat<T>& B) {
  Mat<T> C(A.n_rows(), B.n_cols());
  for (uword i = 0; i < A.n_rows(); ++i)
    for (uword j = 0; j < B.n_cols(); ++j) {
      T s(0);
      for (uword k = 0; k < A.n_cols(); ++k) s += A.at(i, k) * B.at(k, j);
      C.at(i, j) = s;
    }
  return C;
}

template <class T>
Mat<T> ref_adj(const Mat<T>& A) {
  Mat<T> out(A.n_cols(), A.n_rows());
  for (uword i = 0; i < A.n_rows(); ++i)
    for (uword j = 0; j < A.n_cols(); ++j) out.at(j, i) = cj(A.at(i, j));
  return out;
}

template <class T>
Mat<T> ref_sub(const Mat<T>& A, const Mat<T>& B) {
  Mat<T> out(A.n_rows(), A.n_cols());
  for (uword i = 0; i < A.n_elem(); ++i) out.at(i) = A.at(i) - B.at(i);
  return out;
}

template <class T>
Mat<T> ref_eye(uword n) {
  Mat<T> out(n, n);
  for (uword i = 0; i < n; ++i) out.at(i, i) = T(1);
  return out;
}

template <class T>
double orth_defect(const Mat<T>& Q) {
  return fro(ref_sub(ref_mul(ref_adj(Q), Q), ref_eye<T>(Q.n_cols())));
}

/// Largest |A(i,j)| below the diagonal (offset 0) or below the first
/// subdiagonal (offset 1).
template <class T>
double below(const Mat<T>& A, uword offset = 0) {
  double worst = 0;
  for (uword j = 0; j < A.n_cols(); ++j)
    for (uword i = j + 1 + offset; i < A.n_rows(); ++i) worst = std::max(worst, std::abs(A.at(i, j)) * 1.0);
  return worst;
}

/// Tolerance scaled to the element precision: f64 values are used as given,
/// f32 values are relaxed to a single-precision equivalent.
template <class T>
double tol(double f64_tol) {
  if constexpr (std::is_same_v<real_t<T>, float>) return std::max(f64_tol, 2e-4);
  else return f64_tol;
}

/// Seeded generator used by the property checks.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  uword size(uword lo, uword hi) { return std::uniform_int_distribution<uword>(lo, hi)(eng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
  }
  bool coin() { return (eng_() & 1u) != 0; }

  template <class T>
  T scalar() {
    if constexpr (streamla::is_complex_v<T>) {
      using Rt = typename T::value_type;
      return T(static_cast<Rt>(normal()), static_cast<Rt>(normal()));
    } else if constexpr (std::is_floating_point_v<T>) {
      return static_cast<T>(normal());
    } else {
      return static_cast<T>(integer(-20, 20));
    }
  }

  template <class T>
  Mat<T> matrix(uword r, uword c) {
    Mat<T> out(r, c);
    for (uword i = 0; i < out.n_elem(); ++i) out.at(i) = scalar<T>();
    return out;
  }

  /// A^H A + n I, comfortably positive definite.
  template <class T>
  Mat<T> spd(uword n) {
    Mat<T> A = matrix<T>(n, n);
    Mat<T> S = ref_mul(ref_adj(A), A);
    for (uword i = 0; i < n; ++i) S.at(i, i) += T(static_cast<real_t<T>>(n));
    return S;
  }

  template <class T>
  Mat<T> hermitian(uword n) {
    Mat<T> A = matrix<T>(n, n);
    Mat<T> out(n, n);
    for (uword i = 0; i < n; ++i)
      for (uword j = 0; j < n; ++j) out.at(i, j) = (A.at(i, j) + cj(A.at(j, i))) / real_t<T>(2);
    for (uword i = 0; i < n; ++i) out.at(i, i) = T(std::real(std::complex<double>(out.at(i, i))));
    return out;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace testutil
