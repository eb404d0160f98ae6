#pragma once

// General functions of matrices.
//
// Functions taking dim follow one convention: dim = 0 operates on each
// column (result has one entry per column), dim = 1 operates on each row.
// The default is 0. Vectors are not special-cased.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string_view>
#include <vector>

#include "streamla/arith.hpp"
#include "streamla/mat.hpp"

namespace streamla {

namespace detail {

inline void check_dim(uword dim, const char* what) {
  if (dim > 1) throw_domain(std::string(what) + ": dim must be 0 or 1");
}

/// Applies fn(slice_ptr, stride, length, out_index) to every column (dim 0)
/// or row (dim 1).
template <class T, class Fn>
void for_each_lane(const Mat<T>& A, uword dim, Fn&& fn) {
  if (dim == 0) {
    for (uword c = 0; c < A.n_cols(); ++c) fn(A.memptr() + c * A.n_rows(), uword{1}, A.n_rows(), c);
  } else {
    for (uword r = 0; r < A.n_rows(); ++r) fn(A.memptr() + r, A.n_rows(), A.n_cols(), r);
  }
}

template <class R>
Mat<R> lane_result(uword dim, uword n_rows, uword n_cols) {
  return dim == 0 ? Mat<R>(1, n_cols) : Mat<R>(n_rows, 1);
}

/// Ordering key: the value itself for real types, the magnitude for complex.
template <class T>
auto order_key(const T& v) {
  if constexpr (is_complex_v<T>) return std::abs(v);
  else return v;
}

inline bool parse_direction(std::string_view direction, const char* what) {
  if (direction == "ascend") return true;
  if (direction == "descend") return false;
  throw_domain(std::string(what) + ": direction must be \"ascend\" or \"descend\"");
}

}  // namespace detail

// ---- element access helpers ------------------------------------------------------

/// Magnitude of each element.
template <Scalar T>
Mat<real_t<T>> abs(const Mat<T>& A) {
  Mat<real_t<T>> out(A.n_rows(), A.n_cols());
  for (uword i = 0; i < A.n_elem(); ++i) out.at(i) = magnitude(A.at(i));
  return out;
}

template <Scalar T>
Mat<T> conj(const Mat<T>& A) {
  return detail::map_unary(A, [](const T& v) { return conj_of(v); });
}

template <Scalar T>
Mat<real_t<T>> real(const Mat<T>& A) {
  Mat<real_t<T>> out(A.n_rows(), A.n_cols());
  for (uword i = 0; i < A.n_elem(); ++i) out.at(i) = real_of(A.at(i));
  return out;
}

template <Scalar T>
Mat<real_t<T>> imag(const Mat<T>& A) {
  Mat<real_t<T>> out(A.n_rows(), A.n_cols());
  if constexpr (is_complex_v<T>)
    for (uword i = 0; i < A.n_elem(); ++i) out.at(i) = A.at(i).imag();
  return out;
}

/// Complex matrix from real and imaginary parts of equal shape.
template <RealFloat T>
Mat<std::complex<T>> complex_mat(const Mat<T>& re, const Mat<T>& im) {
  detail::require_same_shape(re.n_rows(), re.n_cols(), im.n_rows(), im.n_cols(), "complex_mat");
  Mat<std::complex<T>> out(re.n_rows(), re.n_cols());
  for (uword i = 0; i < re.n_elem(); ++i) out.at(i) = std::complex<T>(re.at(i), im.at(i));
  return out;
}

// ---- reductions --------------------------------------------------------------------

template <Scalar T>
T accu(const Mat<T>& A) {
  T s(0);
  for (const T& v : A) s += v;
  return s;
}

template <Scalar T>
Mat<T> sum(const Mat<T>& A, uword dim = 0) {
  detail::check_dim(dim, "sum");
  Mat<T> out = detail::lane_result<T>(dim, A.n_rows(), A.n_cols());
  detail::for_each_lane(A, dim, [&](const T* p, uword st, uword n, uword k) {
    T s(0);
    for (uword i = 0; i < n; ++i) s += p[i * st];
    out.at(k) = s;
  });
  return out;
}

template <Scalar T>
Mat<T> prod(const Mat<T>& A, uword dim = 0) {
  detail::check_dim(dim, "prod");
  Mat<T> out = detail::lane_result<T>(dim, A.n_rows(), A.n_cols());
  detail::for_each_lane(A, dim, [&](const T* p, uword st, uword n, uword k) {
    T s(1);
    for (uword i = 0; i < n; ++i) s *= p[i * st];
    out.at(k) = s;
  });
  return out;
}

namespace detail {

template <class T>
Mat<T> extremum_dim(const Mat<T>& A, uword dim, bool want_max, const char* what) {
  check_dim(dim, what);
  if (A.is_empty()) throw_domain(std::string(what) + ": empty matrix");
  Mat<T> out = lane_result<T>(dim, A.n_rows(), A.n_cols());
  for_each_lane(A, dim, [&](const T* p, uword st, uword n, uword k) {
    uword best = n;
    for (uword i = 0; i < n; ++i) {
      if (is_nan(p[i * st])) continue;
      if (best == n) {
        best = i;
        continue;
      }
      const auto a = order_key(p[i * st]), b = order_key(p[best * st]);
      if (want_max ? a > b : a < b) best = i;
    }
    out.at(k) = p[(best == n ? 0 : best) * st];
  });
  return out;
}

}  // namespace detail

/// Per-column (dim 0) or per-row (dim 1) minimum. NaN is skipped unless the
/// whole lane is NaN; complex elements compare by magnitude.
template <Scalar T>
Mat<T> min(const Mat<T>& A, uword dim = 0) {
  return detail::extremum_dim(A, dim, false, "min");
}

template <Scalar T>
Mat<T> max(const Mat<T>& A, uword dim = 0) {
  return detail::extremum_dim(A, dim, true, "max");
}

template <Scalar T>
Mat<T> cumsum(const Mat<T>& A, uword dim = 0) {
  detail::check_dim(dim, "cumsum");
  Mat<T> out(A.n_rows(), A.n_cols());
  detail::for_each_lane(A, dim, [&](const T* p, uword st, uword n, uword) {
    T s(0);
    T* q = out.memptr() + (p - A.memptr());
    for (uword i = 0; i < n; ++i) {
      s += p[i * st];
      q[i * st] = s;
    }
  });
  return out;
}

template <Scalar T>
Mat<T> cumprod(const Mat<T>& A, uword dim = 0) {
  detail::check_dim(dim, "cumprod");
  Mat<T> out(A.n_rows(), A.n_cols());
  detail::for_each_lane(A, dim, [&](const T* p, uword st, uword n, uword) {
    T s(1);
    T* q = out.memptr() + (p - A.memptr());
    for (uword i = 0; i < n; ++i) {
      s *= p[i * st];
      q[i * st] = s;
    }
  });
  return out;
}

/// 1 where every element of the column (dim 0) or row (dim 1) is non-zero.
template <Scalar T>
LogicalMat all(const Mat<T>& A, uword dim = 0) {
  detail::check_dim(dim, "all");
  LogicalMat out = detail::lane_result<std::uint8_t>(dim, A.n_rows(), A.n_cols());
  detail::for_each_lane(A, dim, [&](const T* p, uword st, uword n, uword k) {
    bool ok = true;
    for (uword i = 0; i < n && ok; ++i) ok = p[i * st] != T(0);
    out.at(k) = ok ? 1 : 0;
  });
  return out;
}

template <Scalar T>
LogicalMat any(const Mat<T>& A, uword dim = 0) {
  detail::check_dim(dim, "any");
  LogicalMat out = detail::lane_result<std::uint8_t>(dim, A.n_rows(), A.n_cols());
  detail::for_each_lane(A, dim, [&](const T* p, uword st, uword n, uword k) {
    bool hit = false;
    for (uword i = 0; i < n && !hit; ++i) hit = p[i * st] != T(0);
    out.at(k) = hit ? 1 : 0;
  });
  return out;
}

/// k-th order differences along each column (dim 0) or row (dim 1). The
/// traversed dimension shrinks by k; k >= its length gives an empty result.
template <Scalar T>
Mat<T> diff(const Mat<T>& A, uword k = 1, uword dim = 0) {
  detail::check_dim(dim, "diff");
  Mat<T> cur = A;
  for (uword pass = 0; pass < k; ++pass) {
    const uword len = dim == 0 ? cur.n_rows() : cur.n_cols();
    if (len <= 1) return dim == 0 ? Mat<T>(0, cur.n_cols()) : Mat<T>(cur.n_rows(), 0);
    Mat<T> next = dim == 0 ? Mat<T>(len - 1, cur.n_cols()) : Mat<T>(cur.n_rows(), len - 1);
    for (uword c = 0; c < next.n_cols(); ++c)
      for (uword r = 0; r < next.n_rows(); ++r)
        next.at(r, c) = dim == 0 ? cur.at(r + 1, c) - cur.at(r, c) : cur.at(r, c + 1) - cur.at(r, c);
    cur = std::move(next);
  }
  return cur;
}

template <Scalar T>
T trace(const Mat<T>& A) {
  T s(0);
  for (uword i = 0; i < std::min(A.n_rows(), A.n_cols()); ++i) s += A.at(i, i);
  return s;
}

/// Sum of a[i] * b[i] (no conjugation) over vectors of equal length.
template <Scalar T>
T dot(const Mat<T>& a, const Mat<T>& b) {
  if (a.n_elem() != b.n_elem())
    detail::throw_shape("dot: vectors have " + std::to_string(a.n_elem()) + " and " +
                        std::to_string(b.n_elem()) + " elements");
  T s(0);
  for (uword i = 0; i < a.n_elem(); ++i) s += a.at(i) * b.at(i);
  return s;
}

/// Conjugating dot product: sum of conj(a[i]) * b[i].
template <Scalar T>
T cdot(const Mat<T>& a, const Mat<T>& b) {
  if (a.n_elem() != b.n_elem()) detail::throw_shape("cdot: vectors differ in length");
  T s(0);
  for (uword i = 0; i < a.n_elem(); ++i) s += conj_of(a.at(i)) * b.at(i);
  return s;
}

template <Scalar T>
T as_scalar(const Mat<T>& A) {
  if (A.n_elem() != 1)
    detail::throw_shape("as_scalar: expected 1x1, got " + detail::dims(A.n_rows(), A.n_cols()));
  return A.at(0);
}

// ---- norms ---------------------------------------------------------------------------

namespace detail {

template <class T>
real_t<T> vector_pnorm(const T* p, uword st, uword n, uword pw) {
  using R = real_t<T>;
  R scale = 0;
  for (uword i = 0; i < n; ++i) scale = std::max(scale, std::abs(p[i * st]));
  if (scale == R(0) || !std::isfinite(scale)) return scale;
  R s = 0;
  for (uword i = 0; i < n; ++i) {
    const R a = std::abs(p[i * st]) / scale;
    s += pw == 1 ? a : pw == 2 ? a * a : std::pow(a, static_cast<R>(pw));
  }
  return scale * (pw == 1 ? s : pw == 2 ? std::sqrt(s) : std::pow(s, R(1) / static_cast<R>(pw)));
}

template <FloatElement T>
real_t<T> matrix_norm2(const Mat<T>& A);

}  // namespace detail

/// Vector inputs: the vector p-norm. Matrix inputs: the induced norm for
/// p = 1 or 2 (largest singular value).
template <FloatElement T>
real_t<T> norm(const Mat<T>& A, uword p = 2) {
  using R = real_t<T>;
  if (p == 0) detail::throw_domain("norm: p must be at least 1");
  if (A.is_empty()) return R(0);
  if (A.is_vec()) return detail::vector_pnorm(A.memptr(), uword{1}, A.n_elem(), p);
  if (p == 1) {
    R best = 0;
    for (uword c = 0; c < A.n_cols(); ++c) best = std::max(best, detail::vector_pnorm(A.memptr() + c * A.n_rows(), uword{1}, A.n_rows(), 1));
    return best;
  }
  if (p == 2) return detail::matrix_norm2(A);
  detail::throw_domain("norm: matrix p-norm supports p = 1, 2, \"inf\", \"fro\"");
}

/// p is "inf", "-inf" (vectors only) or "fro".
template <FloatElement T>
real_t<T> norm(const Mat<T>& A, std::string_view p) {
  using R = real_t<T>;
  if (p == "fro") {
    if (A.is_empty()) return R(0);
    return detail::vector_pnorm(A.memptr(), uword{1}, A.n_elem(), 2);
  }
  if (p != "inf" && p != "-inf") detail::throw_domain("norm: unknown norm type '" + std::string(p) + "'");
  if (A.is_empty()) return R(0);
  if (A.is_vec()) {
    R best = std::abs(A.at(0));
    for (const T& v : A) best = p == "inf" ? std::max(best, R(std::abs(v))) : std::min(best, R(std::abs(v)));
    return best;
  }
  if (p == "-inf") detail::throw_domain("norm: \"-inf\" is defined for vectors only");
  R best = 0;
  for (uword r = 0; r < A.n_rows(); ++r) best = std::max(best, detail::vector_pnorm(A.memptr() + r, A.n_rows(), A.n_cols(), 1));
  return best;
}

/// Each column (dim 0) or row (dim 1) scaled to unit p-norm. All-zero lanes
/// are left as zeros.
template <FloatElement T>
Mat<T> normalise(const Mat<T>& A, uword p = 2, uword dim = 0) {
  detail::check_dim(dim, "normalise");
  if (p == 0) detail::throw_domain("normalise: p must be at least 1");
  Mat<T> out = A;
  detail::for_each_lane(A, dim, [&](const T* src, uword st, uword n, uword) {
    const real_t<T> nv = detail::vector_pnorm(src, st, n, p);
    if (nv == real_t<T>(0)) return;
    T* q = out.memptr() + (src - A.memptr());
    for (uword i = 0; i < n; ++i) q[i * st] /= nv;
  });
  return out;
}

// ---- determinants, conditioning, rank (compiled) ------------------------------------

template <FloatElement T>
T det(const Mat<T>& A);

/// det(A) == exp(value) * sign. For complex matrices sign has unit modulus.
template <FloatElement T>
struct LogDet {
  real_t<T> value;
  T sign;
};

template <FloatElement T>
LogDet<T> log_det(const Mat<T>& A);

template <FloatElement T>
void log_det(real_t<T>& value, T& sign, const Mat<T>& A) {
  const LogDet<T> r = log_det(A);
  value = r.value;
  sign = r.sign;
}

/// Ratio of the largest to the smallest singular value (inf when singular).
template <FloatElement T>
real_t<T> cond(const Mat<T>& A);

/// Reciprocal 1-norm condition number; 0 for singular matrices.
template <FloatElement T>
real_t<T> rcond(const Mat<T>& A);

/// Number of singular values above tol (default max(m,n) * eps * s_max).
template <FloatElement T>
uword rank(const Mat<T>& A, real_t<T> tol = -1);

// ---- matrix functions (compiled) ------------------------------------------------------

/// Scaling and squaring with a degree-13 Pade approximant.
template <FloatElement T>
Mat<T> expmat(const Mat<T>& A);

/// Principal logarithm via complex Schur form and inverse scaling and
/// squaring. Fails for singular A.
template <FloatElement T>
std::optional<Mat<complex_t<T>>> try_logmat(const Mat<T>& A);
template <FloatElement T>
Mat<complex_t<T>> logmat(const Mat<T>& A);

/// Principal square root via complex Schur form. Fails when A has no
/// square root (a repeated zero eigenvalue with a non-trivial Jordan block).
template <FloatElement T>
std::optional<Mat<complex_t<T>>> try_sqrtmat(const Mat<T>& A);
template <FloatElement T>
Mat<complex_t<T>> sqrtmat(const Mat<T>& A);

// ---- shape transforms -----------------------------------------------------------------

template <Scalar T>
Mat<T> reshape(const Mat<T>& A, uword n_rows, uword n_cols) {
  Mat<T> out = A;
  out.reshape(n_rows, n_cols);
  return out;
}

template <Scalar T>
Mat<T> resize(const Mat<T>& A, uword n_rows, uword n_cols) {
  Mat<T> out = A;
  out.resize(n_rows, n_cols);
  return out;
}

template <Scalar T>
Mat<T> repmat(const Mat<T>& A, uword p, uword q) {
  const uword r = A.n_rows(), c = A.n_cols();
  Mat<T> out(r * p, c * q);
  for (uword bj = 0; bj < q; ++bj)
    for (uword bi = 0; bi < p; ++bi)
      for (uword j = 0; j < c; ++j)
        for (uword i = 0; i < r; ++i) out.at(bi * r + i, bj * c + j) = A.at(i, j);
  return out;
}

template <Scalar T>
Mat<T> fliplr(const Mat<T>& A) {
  Mat<T> out(A.n_rows(), A.n_cols());
  for (uword c = 0; c < A.n_cols(); ++c)
    for (uword r = 0; r < A.n_rows(); ++r) out.at(r, A.n_cols() - 1 - c) = A.at(r, c);
  return out;
}

template <Scalar T>
Mat<T> flipud(const Mat<T>& A) {
  Mat<T> out(A.n_rows(), A.n_cols());
  for (uword c = 0; c < A.n_cols(); ++c)
    for (uword r = 0; r < A.n_rows(); ++r) out.at(A.n_rows() - 1 - r, c) = A.at(r, c);
  return out;
}

/// Circular shift by n positions down each column (dim 0) or right along
/// each row (dim 1). Negative n shifts the other way.
template <Scalar T>
Mat<T> shift(const Mat<T>& A, sword n, uword dim = 0) {
  detail::check_dim(dim, "shift");
  const uword len = dim == 0 ? A.n_rows() : A.n_cols();
  Mat<T> out(A.n_rows(), A.n_cols());
  if (len == 0) return out;
  const sword sl = static_cast<sword>(len);
  const uword s = static_cast<uword>(((n % sl) + sl) % sl);
  for (uword c = 0; c < A.n_cols(); ++c)
    for (uword r = 0; r < A.n_rows(); ++r) {
      if (dim == 0) out.at((r + s) % len, c) = A.at(r, c);
      else out.at(r, (c + s) % len) = A.at(r, c);
    }
  return out;
}

/// Elements of each column (dim 0) or row (dim 1) randomly permuted.
template <Scalar T>
Mat<T> shuffle(const Mat<T>& A, uword dim, RngState& rng) {
  detail::check_dim(dim, "shuffle");
  Mat<T> out = A;
  detail::for_each_lane(A, dim, [&](const T* src, uword st, uword n, uword) {
    T* q = out.memptr() + (src - A.memptr());
    for (uword i = n; i > 1; --i) {
      const uword j = rng.below(i);
      std::swap(q[(i - 1) * st], q[j * st]);
    }
  });
  return out;
}

template <Scalar T>
Mat<T> shuffle(const Mat<T>& A, uword dim = 0) {
  return rng::GlobalRng::instance().with([&](RngState& s) { return shuffle(A, dim, s); });
}

/// dim 0: columns stacked into a column vector; dim 1: rows concatenated into
/// a row vector.
template <Scalar T>
Mat<T> vectorise(const Mat<T>& A, uword dim = 0) {
  detail::check_dim(dim, "vectorise");
  if (dim == 0) return Mat<T>::from_column_major(A.n_elem(), 1, std::vector<T>(A.begin(), A.end()));
  Mat<T> out(1, A.n_elem());
  uword k = 0;
  for (uword r = 0; r < A.n_rows(); ++r)
    for (uword c = 0; c < A.n_cols(); ++c) out.at(k++) = A.at(r, c);
  return out;
}

/// [A B]: rows of B appended to the rows of A.
template <Scalar T>
Mat<T> join_rows(const Mat<T>& A, const Mat<T>& B) {
  if (A.is_empty() && A.n_rows() == 0) return B;
  if (B.is_empty() && B.n_rows() == 0) return A;
  if (A.n_rows() != B.n_rows())
    detail::throw_shape("join_rows: row counts differ (" + std::to_string(A.n_rows()) + " vs " +
                        std::to_string(B.n_rows()) + ")");
  std::vector<T> buf(A.begin(), A.end());
  buf.insert(buf.end(), B.begin(), B.end());
  return Mat<T>::from_column_major(A.n_rows(), A.n_cols() + B.n_cols(), std::move(buf));
}

/// [A; B]: columns of B appended to the columns of A.
template <Scalar T>
Mat<T> join_cols(const Mat<T>& A, const Mat<T>& B) {
  if (A.is_empty() && A.n_cols() == 0) return B;
  if (B.is_empty() && B.n_cols() == 0) return A;
  if (A.n_cols() != B.n_cols())
    detail::throw_shape("join_cols: column counts differ (" + std::to_string(A.n_cols()) + " vs " +
                        std::to_string(B.n_cols()) + ")");
  Mat<T> out(A.n_rows() + B.n_rows(), A.n_cols());
  for (uword c = 0; c < A.n_cols(); ++c) {
    for (uword r = 0; r < A.n_rows(); ++r) out.at(r, c) = A.at(r, c);
    for (uword r = 0; r < B.n_rows(); ++r) out.at(A.n_rows() + r, c) = B.at(r, c);
  }
  return out;
}

/// Conjugate transpose.
template <Scalar T>
Mat<T> trans(const Mat<T>& A) {
  return A.t();
}

/// Transpose without conjugation.
template <Scalar T>
Mat<T> strans(const Mat<T>& A) {
  return A.st();
}

/// Transposes A in place (conjugating complex elements).
template <Scalar T>
void inplace_trans(Mat<T>& A) {
  if (A.is_square()) {
    const uword n = A.n_rows();
    for (uword c = 0; c < n; ++c) {
      A.at(c, c) = conj_of(A.at(c, c));
      for (uword r = c + 1; r < n; ++r) {
        const T a = A.at(r, c);
        A.at(r, c) = conj_of(A.at(c, r));
        A.at(c, r) = conj_of(a);
      }
    }
    return;
  }
  A = A.t();
}

template <Scalar T>
void inplace_strans(Mat<T>& A) {
  if (A.is_square()) {
    for (uword c = 0; c < A.n_cols(); ++c)
      for (uword r = c + 1; r < A.n_rows(); ++r) std::swap(A.at(r, c), A.at(c, r));
    return;
  }
  A = A.st();
}

// ---- structure -----------------------------------------------------------------------

/// Vector input: square matrix with the vector on the k-th diagonal.
/// Matrix input: copy of A keeping only the k-th diagonal.
template <Scalar T>
Mat<T> diagmat(const Mat<T>& A, sword k = 0) {
  const uword ak = static_cast<uword>(k < 0 ? -k : k);
  if (A.is_vec()) {
    const uword n = A.n_elem() + ak;
    Mat<T> out(n, n);
    for (uword i = 0; i < A.n_elem(); ++i) {
      if (k >= 0) out.at(i, i + ak) = A.at(i);
      else out.at(i + ak, i) = A.at(i);
    }
    return out;
  }
  Mat<T> out(A.n_rows(), A.n_cols());
  if (A.is_empty()) return out;
  auto src = A.diag(k);
  auto dst = out.diag(k);
  for (uword i = 0; i < src.n_elem(); ++i) dst.at(i) = src.at(i);
  return out;
}

template <Scalar T>
Mat<T> diagvec(const Mat<T>& A, sword k = 0) {
  return A.diag(k).eval();
}

namespace detail {
template <class T>
void require_square(const Mat<T>& A, const char* what) {
  if (!A.is_square())
    throw_shape(std::string(what) + ": matrix must be square, got " + dims(A.n_rows(), A.n_cols()));
}
}  // namespace detail

/// Symmetric matrix from the upper triangle (the lower triangle is replaced
/// by the conjugated reflection).
template <Scalar T>
Mat<T> symmatu(const Mat<T>& A) {
  detail::require_square(A, "symmatu");
  Mat<T> out = A;
  for (uword c = 0; c < A.n_cols(); ++c)
    for (uword r = c + 1; r < A.n_rows(); ++r) out.at(r, c) = conj_of(A.at(c, r));
  return out;
}

template <Scalar T>
Mat<T> symmatl(const Mat<T>& A) {
  detail::require_square(A, "symmatl");
  Mat<T> out = A;
  for (uword c = 0; c < A.n_cols(); ++c)
    for (uword r = c + 1; r < A.n_rows(); ++r) out.at(c, r) = conj_of(A.at(r, c));
  return out;
}

template <Scalar T>
Mat<T> trimatu(const Mat<T>& A) {
  detail::require_square(A, "trimatu");
  Mat<T> out = A;
  for (uword c = 0; c < A.n_cols(); ++c)
    for (uword r = c + 1; r < A.n_rows(); ++r) out.at(r, c) = T(0);
  return out;
}

template <Scalar T>
Mat<T> trimatl(const Mat<T>& A) {
  detail::require_square(A, "trimatl");
  Mat<T> out = A;
  for (uword c = 1; c < A.n_cols(); ++c)
    for (uword r = 0; r < c; ++r) out.at(r, c) = T(0);
  return out;
}

template <Scalar T>
Mat<T> kron(const Mat<T>& A, const Mat<T>& B) {
  const uword p = B.n_rows(), q = B.n_cols();
  Mat<T> out(A.n_rows() * p, A.n_cols() * q);
  for (uword j = 0; j < A.n_cols(); ++j)
    for (uword i = 0; i < A.n_rows(); ++i) {
      const T a = A.at(i, j);
      for (uword l = 0; l < q; ++l)
        for (uword k = 0; k < p; ++k) out.at(i * p + k, j * q + l) = a * B.at(k, l);
    }
  return out;
}

/// Cross product of two 3-element vectors; the result has A's orientation.
template <Scalar T>
Mat<T> cross(const Mat<T>& A, const Mat<T>& B) {
  if (A.n_elem() != 3 || B.n_elem() != 3 || !A.is_vec() || !B.is_vec())
    detail::throw_shape("cross: both arguments must be 3-element vectors");
  Mat<T> out(A.n_rows(), A.n_cols());
  out.at(0) = A.at(1) * B.at(2) - A.at(2) * B.at(1);
  out.at(1) = A.at(2) * B.at(0) - A.at(0) * B.at(2);
  out.at(2) = A.at(0) * B.at(1) - A.at(1) * B.at(0);
  return out;
}

/// Each element limited to [lo, hi]; complex elements have the real and
/// imaginary parts clamped separately.
template <Scalar T>
Mat<T> clamp(const Mat<T>& A, std::type_identity_t<T> lo, std::type_identity_t<T> hi) {
  if constexpr (is_complex_v<T>) {
    if (lo.real() > hi.real() || lo.imag() > hi.imag()) detail::throw_domain("clamp: min exceeds max");
    return detail::map_unary(A, [&](const T& v) {
      return T(std::clamp(v.real(), lo.real(), hi.real()), std::clamp(v.imag(), lo.imag(), hi.imag()));
    });
  } else {
    if (lo > hi) detail::throw_domain("clamp: min exceeds max");
    return detail::map_unary(A, [&](const T& v) { return detail::is_nan(v) ? v : std::clamp(v, lo, hi); });
  }
}

/// Distance from |a| to the next larger representable magnitude.
template <FloatElement T>
Mat<real_t<T>> eps(const Mat<T>& A) {
  using R = real_t<T>;
  Mat<R> out(A.n_rows(), A.n_cols());
  for (uword i = 0; i < A.n_elem(); ++i) {
    const R a = std::abs(A.at(i));
    out.at(i) = std::isfinite(a) ? std::nextafter(a, std::numeric_limits<R>::infinity()) - a
                                 : std::numeric_limits<R>::quiet_NaN();
  }
  return out;
}

// ---- search and sort -----------------------------------------------------------------

/// Linear indices of non-zero elements, ascending. k > 0 keeps the first k.
template <Scalar T>
Mat<uword> find(const Mat<T>& A, uword k = 0) {
  std::vector<uword> idx;
  for (uword i = 0; i < A.n_elem() && (k == 0 || idx.size() < k); ++i)
    if (A.at(i) != T(0)) idx.push_back(i);
  const uword n = idx.size();
  return Mat<uword>::from_column_major(n, 1, std::move(idx));
}

template <Scalar T>
Mat<T> nonzeros(const Mat<T>& A) {
  std::vector<T> vals;
  for (const T& v : A)
    if (v != T(0)) vals.push_back(v);
  const uword n = vals.size();
  return Mat<T>::from_column_major(n, 1, std::move(vals));
}

/// Stable permutation of linear indices that sorts all elements.
template <Scalar T>
Mat<uword> sort_index(const Mat<T>& A, std::string_view direction = "ascend") {
  const bool asc = detail::parse_direction(direction, "sort_index");
  for (const T& v : A)
    if (detail::is_nan(v)) detail::throw_domain("sort_index: matrix contains NaN");
  std::vector<uword> idx(A.n_elem());
  std::iota(idx.begin(), idx.end(), uword{0});
  std::stable_sort(idx.begin(), idx.end(), [&](uword a, uword b) {
    const auto ka = detail::order_key(A.at(a)), kb = detail::order_key(A.at(b));
    return asc ? ka < kb : ka > kb;
  });
  const uword n = idx.size();
  return Mat<uword>::from_column_major(n, 1, std::move(idx));
}

template <Scalar T>
Mat<uword> stable_sort_index(const Mat<T>& A, std::string_view direction = "ascend") {
  return sort_index(A, direction);
}

/// Each column (dim 0) or row (dim 1) sorted; stable. Complex elements sort
/// by magnitude. NaN elements are rejected.
template <Scalar T>
Mat<T> sort(const Mat<T>& A, std::string_view direction = "ascend", uword dim = 0) {
  const bool asc = detail::parse_direction(direction, "sort");
  detail::check_dim(dim, "sort");
  for (const T& v : A)
    if (detail::is_nan(v)) detail::throw_domain("sort: matrix contains NaN");
  Mat<T> out(A.n_rows(), A.n_cols());
  std::vector<T> lane;
  detail::for_each_lane(A, dim, [&](const T* src, uword st, uword n, uword) {
    lane.assign(n, T(0));
    for (uword i = 0; i < n; ++i) lane[i] = src[i * st];
    std::stable_sort(lane.begin(), lane.end(), [asc](const T& a, const T& b) {
      return asc ? detail::order_key(a) < detail::order_key(b) : detail::order_key(a) > detail::order_key(b);
    });
    T* q = out.memptr() + (src - A.memptr());
    for (uword i = 0; i < n; ++i) q[i * st] = lane[i];
  });
  return out;
}

/// Distinct values in ascending order, as a column vector.
template <RealElement T>
Mat<T> unique(const Mat<T>& A) {
  for (const T& v : A)
    if (detail::is_nan(v)) detail::throw_domain("unique: matrix contains NaN");
  std::vector<T> vals(A.begin(), A.end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  const uword n = vals.size();
  return Mat<T>::from_column_major(n, 1, std::move(vals));
}

/// (row, col) of linear index i in a matrix of the given size, as a 2x1
/// vector.
inline Mat<uword> ind2sub(const SizeSpec& s, uword i) {
  if (i >= s.n_rows * s.n_cols)
    detail::throw_bounds("ind2sub: index " + std::to_string(i) + " out of range for " +
                         detail::dims(s.n_rows, s.n_cols));
  return Mat<uword>::from_column_major(2, 1, {i % s.n_rows, i / s.n_rows});
}

/// Subscripts for each index in a vector: a 2 x N matrix of (row; col).
inline Mat<uword> ind2sub(const SizeSpec& s, const Mat<uword>& indices) {
  Mat<uword> out(2, indices.n_elem());
  for (uword k = 0; k < indices.n_elem(); ++k) {
    const Mat<uword> rc = ind2sub(s, indices.at(k));
    out.at(0, k) = rc.at(0);
    out.at(1, k) = rc.at(1);
  }
  return out;
}

inline uword sub2ind(const SizeSpec& s, uword row, uword col) {
  if (row >= s.n_rows || col >= s.n_cols)
    detail::throw_bounds("sub2ind: (" + std::to_string(row) + ", " + std::to_string(col) +
                         ") out of range for " + detail::dims(s.n_rows, s.n_cols));
  return row + col * s.n_rows;
}

/// Linear indices for a 2 x N matrix of (row; col) subscripts.
inline Mat<uword> sub2ind(const SizeSpec& s, const Mat<uword>& subs) {
  if (subs.n_rows() != 2) detail::throw_shape("sub2ind: subscripts must be a 2 x N matrix");
  Mat<uword> out(subs.n_cols(), 1);
  for (uword k = 0; k < subs.n_cols(); ++k) out.at(k) = sub2ind(s, subs.at(0, k), subs.at(1, k));
  return out;
}

// ---- comparison and integration ---------------------------------------------------

/// method: "absdiff" (|a-b| <= tol), "reldiff" (|a-b| / max(|a|,|b|) <= tol)
/// or "both" (either test passes; tol is absolute, tol2 relative). Shape
/// mismatch gives false.
template <Scalar T>
bool approx_equal(const Mat<T>& A, const Mat<T>& B, std::string_view method, double tol, double tol2 = -1) {
  const bool abs_m = method == "absdiff", rel_m = method == "reldiff", both = method == "both";
  if (!abs_m && !rel_m && !both) detail::throw_domain("approx_equal: unknown method '" + std::string(method) + "'");
  if (both && tol2 < 0) tol2 = tol;
  if (!(tol > 0) || (both && !(tol2 > 0))) detail::throw_domain("approx_equal: tolerances must be positive");
  if (A.n_rows() != B.n_rows() || A.n_cols() != B.n_cols()) return false;
  for (uword i = 0; i < A.n_elem(); ++i) {
    const T a = A.at(i), b = B.at(i);
    if (a == b) continue;
    const double d = static_cast<double>(magnitude(T(a - b)));
    const double m = std::max(static_cast<double>(magnitude(a)), static_cast<double>(magnitude(b)));
    const bool pass_abs = d <= tol;
    const bool pass_rel = m > 0 && d / m <= (both ? tol2 : tol);
    if (abs_m ? !pass_abs : rel_m ? !pass_rel : !(pass_abs || pass_rel)) return false;
  }
  return true;
}

/// Trapezoidal integral of Y with spacing X along each column (dim 0) or row
/// (dim 1).
template <RealFloat T>
Mat<T> trapz(const Mat<T>& X, const Mat<T>& Y, uword dim = 0) {
  detail::check_dim(dim, "trapz");
  const uword len = dim == 0 ? Y.n_rows() : Y.n_cols();
  if (!X.is_vec() && !X.is_empty()) detail::throw_shape("trapz: spacing must be a vector");
  if (X.n_elem() != len)
    detail::throw_shape("trapz: spacing has " + std::to_string(X.n_elem()) + " points, expected " +
                        std::to_string(len));
  Mat<T> out = detail::lane_result<T>(dim, Y.n_rows(), Y.n_cols());
  detail::for_each_lane(Y, dim, [&](const T* p, uword st, uword n, uword k) {
    T s = 0;
    for (uword i = 0; i + 1 < n; ++i) s += (X.at(i + 1) - X.at(i)) * (p[i * st] + p[(i + 1) * st]) / T(2);
    out.at(k) = s;
  });
  return out;
}

/// Unit spacing.
template <RealFloat T>
Mat<T> trapz(const Mat<T>& Y, uword dim = 0) {
  const uword len = dim == 0 ? Y.n_rows() : Y.n_cols();
  Mat<T> X(len, 1);
  for (uword i = 0; i < len; ++i) X.at(i) = static_cast<T>(i);
  return trapz(X, Y, dim);
}

}  // namespace streamla
