#pragma once

// Signal processing: convolution, discrete Fourier transforms and linear
// interpolation.
//
// fft/ifft take vectors only; the result keeps the input orientation. The
// forward transform is unnormalised and the inverse is scaled by 1/n.
// Power-of-two lengths use an iterative radix-2 transform, other lengths use
// Bluestein's chirp-z algorithm on top of it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "streamla/error.hpp"
#include "streamla/mat.hpp"

namespace streamla {

namespace detail {

/// In-place DFT of x. inverse selects the positive exponent and 1/n scaling.
void dft_inplace(std::vector<cx_double>& x, bool inverse);

template <class T>
void require_nonempty(const Mat<T>& A, const char* what) {
  if (A.is_empty()) throw_shape(std::string(what) + ": empty input");
}

template <class T>
void require_vector(const Mat<T>& A, const char* what) {
  if (!A.is_vec() && !A.is_empty()) throw_shape(std::string(what) + ": expected a vector, got " + dims(A.n_rows(), A.n_cols()));
}

template <class T>
Mat<complex_t<T>> transform_vector(const Mat<T>& A, uword n, bool inverse) {
  using C = complex_t<T>;
  std::vector<cx_double> buf(n, cx_double(0, 0));
  const uword m = std::min(n, A.n_elem());
  for (uword i = 0; i < m; ++i) {
    if constexpr (is_complex_v<T>) buf[i] = cx_double(A.at(i).real(), A.at(i).imag());
    else buf[i] = cx_double(static_cast<double>(A.at(i)), 0.0);
  }
  if (n > 0) dft_inplace(buf, inverse);
  Mat<C> out = A.is_rowvec() ? Mat<C>(1, n) : Mat<C>(n, 1);
  for (uword i = 0; i < n; ++i)
    out.at(i) = C(static_cast<real_t<T>>(buf[i].real()), static_cast<real_t<T>>(buf[i].imag()));
  return out;
}

template <class T>
Mat<complex_t<T>> transform_columns(const Mat<T>& A, uword rows, bool inverse) {
  using C = complex_t<T>;
  Mat<C> out(rows, A.n_cols());
  std::vector<cx_double> buf(rows);
  for (uword c = 0; c < A.n_cols(); ++c) {
    std::fill(buf.begin(), buf.end(), cx_double(0, 0));
    for (uword r = 0; r < std::min(rows, A.n_rows()); ++r) {
      if constexpr (is_complex_v<T>) buf[r] = cx_double(A.at(r, c).real(), A.at(r, c).imag());
      else buf[r] = cx_double(static_cast<double>(A.at(r, c)), 0.0);
    }
    if (rows > 0) dft_inplace(buf, inverse);
    for (uword r = 0; r < rows; ++r)
      out.at(r, c) = C(static_cast<real_t<T>>(buf[r].real()), static_cast<real_t<T>>(buf[r].imag()));
  }
  return out;
}

template <class T>
void require_ascending_axis(const Mat<T>& X, const char* what) {
  require_vector(X, what);
  if (X.n_elem() < 2) throw_domain(std::string(what) + ": need at least two sample points");
  for (uword i = 1; i < X.n_elem(); ++i)
    if (!(X.at(i - 1) < X.at(i))) throw_domain(std::string(what) + ": sample points must be strictly ascending");
}

/// Locates x in the ascending grid: returns the left node index and the
/// fractional offset, or false when x is outside [X.front(), X.back()] or NaN.
template <class T>
bool locate(const Mat<T>& X, T x, uword& i, T& t) {
  const uword n = X.n_elem();
  if (!(x >= X.at(0) && x <= X.at(n - 1))) return false;
  const T* p = X.memptr();
  uword k = static_cast<uword>(std::upper_bound(p, p + n, x) - p);
  if (k == n) {
    i = n - 2;
    t = T(1);
    return true;
  }
  i = k - 1;
  t = (x - p[i]) / (p[i + 1] - p[i]);
  return true;
}

template <class T>
T lerp(T a, T b, T t) {
  return t == T(1) ? b : a + (b - a) * t;
}

}  // namespace detail

// ---- convolution ---------------------------------------------------------------------

/// Full 1-D convolution of two vectors, length na + nb - 1. The result is a
/// row vector when A is a row vector, otherwise a column. Integer inputs are
/// convolved exactly.
template <Scalar T>
Mat<T> conv(const Mat<T>& A, const Mat<T>& B) {
  detail::require_nonempty(A, "conv");
  detail::require_nonempty(B, "conv");
  detail::require_vector(A, "conv");
  detail::require_vector(B, "conv");
  const uword na = A.n_elem(), nb = B.n_elem(), n = na + nb - 1;
  Mat<T> out = A.is_rowvec() && na > 1 ? Mat<T>(1, n) : Mat<T>(n, 1);
  if (A.n_elem() == 1 && B.is_rowvec()) out.set_size(1, n);
  for (uword i = 0; i < na; ++i)
    for (uword j = 0; j < nb; ++j) out.at(i + j) += A.at(i) * B.at(j);
  return out;
}

/// Full 2-D convolution, (ra + rb - 1) x (ca + cb - 1).
template <Scalar T>
Mat<T> conv2(const Mat<T>& A, const Mat<T>& B) {
  detail::require_nonempty(A, "conv2");
  detail::require_nonempty(B, "conv2");
  Mat<T> out(A.n_rows() + B.n_rows() - 1, A.n_cols() + B.n_cols() - 1);
  for (uword ca = 0; ca < A.n_cols(); ++ca)
    for (uword cb = 0; cb < B.n_cols(); ++cb)
      for (uword ra = 0; ra < A.n_rows(); ++ra) {
        const T a = A.at(ra, ca);
        for (uword rb = 0; rb < B.n_rows(); ++rb) out.at(ra + rb, ca + cb) += a * B.at(rb, cb);
      }
  return out;
}

// ---- Fourier transforms --------------------------------------------------------------

/// DFT of a vector, zero-padded or truncated to n points.
template <FloatElement T>
Mat<complex_t<T>> fft(const Mat<T>& A, uword n) {
  detail::require_vector(A, "fft");
  return detail::transform_vector(A, n, false);
}

template <FloatElement T>
Mat<complex_t<T>> fft(const Mat<T>& A) {
  return fft(A, A.n_elem());
}

/// Inverse DFT, scaled by 1/n.
template <FloatElement T>
Mat<complex_t<T>> ifft(const Mat<T>& A, uword n) {
  detail::require_vector(A, "ifft");
  return detail::transform_vector(A, n, true);
}

template <FloatElement T>
Mat<complex_t<T>> ifft(const Mat<T>& A) {
  return ifft(A, A.n_elem());
}

/// 2-D DFT, padded or truncated to rows x cols.
template <FloatElement T>
Mat<complex_t<T>> fft2(const Mat<T>& A, uword rows, uword cols) {
  const Mat<complex_t<T>> C = detail::transform_columns(A, rows, false);
  return detail::transform_columns(C.st(), cols, false).st();
}

template <FloatElement T>
Mat<complex_t<T>> fft2(const Mat<T>& A) {
  return fft2(A, A.n_rows(), A.n_cols());
}

template <FloatElement T>
Mat<complex_t<T>> ifft2(const Mat<T>& A, uword rows, uword cols) {
  const Mat<complex_t<T>> C = detail::transform_columns(A, rows, true);
  return detail::transform_columns(C.st(), cols, true).st();
}

template <FloatElement T>
Mat<complex_t<T>> ifft2(const Mat<T>& A) {
  return ifft2(A, A.n_rows(), A.n_cols());
}

// ---- interpolation -------------------------------------------------------------------

/// Piecewise-linear interpolation of (X, Y) at XI. X must be strictly
/// ascending; queries outside [X.front(), X.back()] give NaN. The result has
/// the shape of XI.
template <RealFloat T>
Mat<T> interp1(const Mat<T>& X, const Mat<T>& Y, const Mat<T>& XI) {
  detail::require_ascending_axis(X, "interp1");
  detail::require_vector(Y, "interp1");
  if (Y.n_elem() != X.n_elem())
    detail::throw_shape("interp1: X has " + std::to_string(X.n_elem()) + " points, Y has " + std::to_string(Y.n_elem()));
  Mat<T> out(XI.n_rows(), XI.n_cols());
  for (uword q = 0; q < XI.n_elem(); ++q) {
    uword i;
    T t;
    out.at(q) = detail::locate(X, XI.at(q), i, t) ? detail::lerp(Y.at(i), Y.at(i + 1), t)
                                                  : std::numeric_limits<T>::quiet_NaN();
  }
  return out;
}

/// Bilinear interpolation of the grid Z, where Z(r, c) is the value at
/// (X(c), Y(r)), at the points (XI(q), YI(q)). XI and YI must have the same
/// number of elements; the result has the shape of XI. Points outside the
/// grid give NaN.
template <RealFloat T>
Mat<T> interp2(const Mat<T>& X, const Mat<T>& Y, const Mat<T>& Z, const Mat<T>& XI, const Mat<T>& YI) {
  detail::require_ascending_axis(X, "interp2");
  detail::require_ascending_axis(Y, "interp2");
  if (X.n_elem() != Z.n_cols() || Y.n_elem() != Z.n_rows())
    detail::throw_shape("interp2: grid " + detail::dims(Y.n_elem(), X.n_elem()) + " does not match Z " +
                        detail::dims(Z.n_rows(), Z.n_cols()));
  if (XI.n_elem() != YI.n_elem())
    detail::throw_shape("interp2: XI and YI differ in length (" + std::to_string(XI.n_elem()) + " vs " +
                        std::to_string(YI.n_elem()) + ")");
  Mat<T> out(XI.n_rows(), XI.n_cols());
  for (uword q = 0; q < XI.n_elem(); ++q) {
    uword c, r;
    T tx, ty;
    if (!detail::locate(X, XI.at(q), c, tx) || !detail::locate(Y, YI.at(q), r, ty)) {
      out.at(q) = std::numeric_limits<T>::quiet_NaN();
      continue;
    }
    const T top = detail::lerp(Z.at(r, c), Z.at(r, c + 1), tx);
    const T bottom = detail::lerp(Z.at(r + 1, c), Z.at(r + 1, c + 1), tx);
    out.at(q) = detail::lerp(top, bottom, ty);
  }
  return out;
}

/// Grid form: ZI(i, j) is the interpolated value at (XI(j), YI(i)).
template <RealFloat T>
Mat<T> interp2_grid(const Mat<T>& X, const Mat<T>& Y, const Mat<T>& Z, const Mat<T>& XI, const Mat<T>& YI) {
  const uword nx = XI.n_elem(), ny = YI.n_elem();
  Mat<T> qx(ny, nx), qy(ny, nx);
  for (uword j = 0; j < nx; ++j)
    for (uword i = 0; i < ny; ++i) {
      qx.at(i, j) = XI.at(j);
      qy.at(i, j) = YI.at(i);
    }
  return interp2(X, Y, Z, qx, qy);
}

}  // namespace streamla
