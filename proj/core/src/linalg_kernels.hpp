#pragma once

// Native dense linear algebra kernels shared by the decomposition and matrix
// function sources. All routines work on column-major Mat<T> in place and
// report failure through their return value.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "streamla/mat.hpp"

namespace streamla::la {

template <class T>
using R = real_t<T>;

template <class T>
R<T> eps() {
  return std::numeric_limits<R<T>>::epsilon();
}

template <class T>
R<T> abs2(const T& v) {
  if constexpr (ComplexElement<T>) return std::norm(v);
  else return v * v;
}

template <class T>
T sign_of(const T& v) {
  // unit scalar with the phase of v; 1 for zero
  const R<T> a = std::abs(v);
  return a == R<T>(0) ? T(1) : v / a;
}

template <class T>
R<T> norm_fro(const Mat<T>& A) {
  R<T> scale = 0, ssq = 1;
  for (const T& v : A) {
    auto acc = [&](R<T> x) {
      if (x == 0) return;
      x = std::abs(x);
      if (scale < x) {
        ssq = 1 + ssq * (scale / x) * (scale / x);
        scale = x;
      } else {
        ssq += (x / scale) * (x / scale);
      }
    };
    acc(real_of(v));
    if constexpr (ComplexElement<T>) acc(v.imag());
  }
  return scale * std::sqrt(ssq);
}

template <class T>
R<T> norm_inf(const Mat<T>& A) {
  R<T> best = 0;
  for (uword i = 0; i < A.n_rows(); ++i) {
    R<T> s = 0;
    for (uword j = 0; j < A.n_cols(); ++j) s += std::abs(A.at(i, j));
    best = std::max(best, s);
  }
  return best;
}

template <class T>
R<T> norm_one(const Mat<T>& A) {
  R<T> best = 0;
  for (uword j = 0; j < A.n_cols(); ++j) {
    R<T> s = 0;
    for (uword i = 0; i < A.n_rows(); ++i) s += std::abs(A.at(i, j));
    best = std::max(best, s);
  }
  return best;
}

template <class T>
Mat<T> adjoint(const Mat<T>& A) {
  Mat<T> out(A.n_cols(), A.n_rows());
  for (uword j = 0; j < A.n_cols(); ++j)
    for (uword i = 0; i < A.n_rows(); ++i) out.at(j, i) = conj_of(A.at(i, j));
  return out;
}

/// Plain triple loop product, C = A * B.
template <class T>
Mat<T> mul(const Mat<T>& A, const Mat<T>& B) {
  Mat<T> C(A.n_rows(), B.n_cols());
  for (uword j = 0; j < B.n_cols(); ++j)
    for (uword p = 0; p < A.n_cols(); ++p) {
      const T b = B.at(p, j);
      for (uword i = 0; i < A.n_rows(); ++i) C.at(i, j) += A.at(i, p) * b;
    }
  return C;
}

/// C = A^H * B.
template <class T>
Mat<T> mul_ah(const Mat<T>& A, const Mat<T>& B) {
  Mat<T> C(A.n_cols(), B.n_cols());
  for (uword j = 0; j < B.n_cols(); ++j)
    for (uword i = 0; i < A.n_cols(); ++i) {
      T s(0);
      for (uword p = 0; p < A.n_rows(); ++p) s += conj_of(A.at(p, i)) * B.at(p, j);
      C.at(i, j) = s;
    }
  return C;
}

/// C = A * B^H.
template <class T>
Mat<T> mul_bh(const Mat<T>& A, const Mat<T>& B) {
  Mat<T> C(A.n_rows(), B.n_rows());
  for (uword j = 0; j < B.n_rows(); ++j)
    for (uword p = 0; p < A.n_cols(); ++p) {
      const T b = conj_of(B.at(j, p));
      for (uword i = 0; i < A.n_rows(); ++i) C.at(i, j) += A.at(i, p) * b;
    }
  return C;
}

template <class T>
Mat<T> hermitian_part(const Mat<T>& X) {
  Mat<T> out(X.n_rows(), X.n_cols());
  for (uword j = 0; j < X.n_cols(); ++j)
    for (uword i = 0; i < X.n_rows(); ++i) out.at(i, j) = (X.at(i, j) + conj_of(X.at(j, i))) / R<T>(2);
  return out;
}

/// ‖X − Xᴴ‖∞ ≤ 1e−8·‖X‖∞.
template <class T>
bool is_hermitian_within(const Mat<T>& X) {
  if (!X.is_square()) return false;
  const R<T> ref = norm_inf(X);
  R<T> worst = 0;
  for (uword i = 0; i < X.n_rows(); ++i) {
    R<T> s = 0;
    for (uword j = 0; j < X.n_cols(); ++j) s += std::abs(X.at(i, j) - conj_of(X.at(j, i)));
    worst = std::max(worst, s);
  }
  return worst <= R<T>(1e-8) * ref;
}

// ---- Householder reflectors ---------------------------------------------------
//
// H = I − tau·v·vᴴ with real tau, H Hermitian and unitary, H·x = alpha·e1.

template <class T>
struct Reflector {
  std::vector<T> v;
  R<T> tau = 0;
  T alpha = T(0);
  bool identity = true;
};

template <class T>
Reflector<T> make_reflector(const T* x, uword n) {
  Reflector<T> h;
  h.v.assign(x, x + n);
  if (n == 0) return h;
  R<T> tail = 0;
  for (uword i = 1; i < n; ++i) tail += abs2(x[i]);
  if (tail == 0) {
    h.alpha = x[0];
    return h;
  }
  const R<T> nrm = std::sqrt(abs2(x[0]) + tail);
  h.alpha = -sign_of(x[0]) * nrm;
  h.v[0] -= h.alpha;
  R<T> vv = 0;
  for (const T& e : h.v) vv += abs2(e);
  h.tau = R<T>(2) / vv;
  h.identity = false;
  return h;
}

/// A(r0 : r0+len, c0 : c1) ← H · A(...)
template <class T>
void apply_left(const Reflector<T>& h, Mat<T>& A, uword r0, uword c0, uword c1) {
  if (h.identity) return;
  const uword n = h.v.size();
  for (uword j = c0; j < c1; ++j) {
    T s(0);
    for (uword i = 0; i < n; ++i) s += conj_of(h.v[i]) * A.at(r0 + i, j);
    s *= h.tau;
    for (uword i = 0; i < n; ++i) A.at(r0 + i, j) -= h.v[i] * s;
  }
}

/// A(r0 : r1, c0 : c0+len) ← A(...) · H
template <class T>
void apply_right(const Reflector<T>& h, Mat<T>& A, uword r0, uword r1, uword c0) {
  if (h.identity) return;
  const uword n = h.v.size();
  for (uword i = r0; i < r1; ++i) {
    T s(0);
    for (uword k = 0; k < n; ++k) s += A.at(i, c0 + k) * h.v[k];
    s *= h.tau;
    for (uword k = 0; k < n; ++k) A.at(i, c0 + k) -= s * conj_of(h.v[k]);
  }
}

// ---- Givens rotations ---------------------------------------------------------
//
// G = [[c, s], [−s̄, c]] with real c, so G·[f; g] = [r; 0].

template <class T>
struct Givens {
  R<T> c = 1;
  T s = T(0);
};

template <class T>
Givens<T> make_givens(const T& f, const T& g) {
  Givens<T> G;
  if (g == T(0)) return G;
  if (f == T(0)) {
    G.c = 0;
    G.s = conj_of(g) / std::abs(g);
    return G;
  }
  const R<T> af = std::abs(f), ag = std::abs(g);
  const R<T> nrm = std::hypot(af, ag);
  G.c = af / nrm;
  G.s = (f / af) * conj_of(g) / nrm;
  return G;
}

/// Rows p, q of A over columns [c0, c1): [x; y] ← G·[x; y].
template <class T>
void rot_rows(const Givens<T>& G, Mat<T>& A, uword p, uword q, uword c0, uword c1) {
  for (uword j = c0; j < c1; ++j) {
    const T x = A.at(p, j), y = A.at(q, j);
    A.at(p, j) = G.c * x + G.s * y;
    A.at(q, j) = -conj_of(G.s) * x + G.c * y;
  }
}

/// Columns p, q of A over rows [r0, r1): [x, y] ← [x, y]·Gᴴ.
template <class T>
void rot_cols(const Givens<T>& G, Mat<T>& A, uword p, uword q, uword r0, uword r1) {
  for (uword i = r0; i < r1; ++i) {
    const T x = A.at(i, p), y = A.at(i, q);
    A.at(i, p) = G.c * x + conj_of(G.s) * y;
    A.at(i, q) = -G.s * x + G.c * y;
  }
}

// ---- LU -----------------------------------------------------------------------

/// In-place partial-pivot LU of an m×n matrix. perm[i] is the original row
/// now at position i. Returns false when a zero pivot was met (still a valid
/// factorisation, U is singular).
template <class T>
bool lu_inplace(Mat<T>& A, std::vector<uword>& perm, int& parity) {
  const uword m = A.n_rows(), n = A.n_cols(), k_end = std::min(m, n);
  perm.resize(m);
  std::iota(perm.begin(), perm.end(), uword(0));
  parity = 1;
  bool nonsingular = true;
  for (uword k = 0; k < k_end; ++k) {
    uword p = k;
    R<T> best = std::abs(A.at(k, k));
    for (uword i = k + 1; i < m; ++i)
      if (std::abs(A.at(i, k)) > best) {
        best = std::abs(A.at(i, k));
        p = i;
      }
    if (p != k) {
      for (uword j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(p, j));
      std::swap(perm[k], perm[p]);
      parity = -parity;
    }
    const T piv = A.at(k, k);
    if (piv == T(0)) {
      nonsingular = false;
      continue;
    }
    for (uword i = k + 1; i < m; ++i) A.at(i, k) /= piv;
    for (uword j = k + 1; j < n; ++j) {
      const T akj = A.at(k, j);
      if (akj == T(0)) continue;
      for (uword i = k + 1; i < m; ++i) A.at(i, j) -= A.at(i, k) * akj;
    }
  }
  return nonsingular;
}

/// Solves with a packed square LU: B ← U⁻¹ L⁻¹ P B.
template <class T>
Mat<T> lu_solve(const Mat<T>& LU, const std::vector<uword>& perm, const Mat<T>& B) {
  const uword n = LU.n_rows();
  Mat<T> X(n, B.n_cols());
  for (uword j = 0; j < B.n_cols(); ++j) {
    for (uword i = 0; i < n; ++i) X.at(i, j) = B.at(perm[i], j);
    for (uword i = 0; i < n; ++i) {
      T s = X.at(i, j);
      for (uword k = 0; k < i; ++k) s -= LU.at(i, k) * X.at(k, j);
      X.at(i, j) = s;
    }
    for (uword ii = n; ii-- > 0;) {
      T s = X.at(ii, j);
      for (uword k = ii + 1; k < n; ++k) s -= LU.at(ii, k) * X.at(k, j);
      X.at(ii, j) = s / LU.at(ii, ii);
    }
  }
  return X;
}

/// Upper-triangular solve U·X = B (U square).
template <class T>
Mat<T> solve_upper(const Mat<T>& U, const Mat<T>& B) {
  const uword n = U.n_rows();
  Mat<T> X = B;
  for (uword j = 0; j < B.n_cols(); ++j)
    for (uword ii = n; ii-- > 0;) {
      T s = X.at(ii, j);
      for (uword k = ii + 1; k < n; ++k) s -= U.at(ii, k) * X.at(k, j);
      X.at(ii, j) = s / U.at(ii, ii);
    }
  return X;
}

/// Solves Uᴴ·X = B for upper-triangular U.
template <class T>
Mat<T> solve_upper_h(const Mat<T>& U, const Mat<T>& B) {
  const uword n = U.n_rows();
  Mat<T> X = B;
  for (uword j = 0; j < B.n_cols(); ++j)
    for (uword i = 0; i < n; ++i) {
      T s = X.at(i, j);
      for (uword k = 0; k < i; ++k) s -= conj_of(U.at(k, i)) * X.at(k, j);
      X.at(i, j) = s / conj_of(U.at(i, i));
    }
  return X;
}

// ---- Cholesky -----------------------------------------------------------------

/// Upper R with Rᴴ·R = A, reading only the upper triangle. False when A is
/// not (numerically) positive definite.
template <class T>
bool chol_upper(const Mat<T>& A, Mat<T>& Rm) {
  const uword n = A.n_rows();
  Rm.set_size(n, n);
  Rm.zeros();
  for (uword j = 0; j < n; ++j) {
    R<T> d = real_of(A.at(j, j));
    for (uword k = 0; k < j; ++k) d -= abs2(Rm.at(k, j));
    if (!(d > 0) || !std::isfinite(d)) return false;
    const R<T> rjj = std::sqrt(d);
    Rm.at(j, j) = rjj;
    for (uword i = j + 1; i < n; ++i) {
      T s = A.at(j, i);
      for (uword k = 0; k < j; ++k) s -= conj_of(Rm.at(k, j)) * Rm.at(k, i);
      Rm.at(j, i) = s / rjj;
    }
  }
  return true;
}

// ---- QR -----------------------------------------------------------------------

/// Householder QR. Q is m×m, R m×n with exact zeros below the diagonal.
template <class T>
void qr_full(const Mat<T>& A, Mat<T>& Q, Mat<T>& Rm) {
  const uword m = A.n_rows(), n = A.n_cols();
  Rm = A;
  Q = Mat<T>::eye(m, m);
  const uword steps = std::min(m > 0 ? m - 1 : 0, n);
  for (uword k = 0; k < steps; ++k) {
    auto h = make_reflector(&Rm.at(k, k), m - k);
    apply_left(h, Rm, k, k, n);
    apply_right(h, Q, 0, m, k);
    if (!h.identity)
      for (uword i = k + 1; i < m; ++i) Rm.at(i, k) = T(0);
  }
  for (uword j = 0; j < n; ++j)
    for (uword i = j + 1; i < m; ++i) Rm.at(i, j) = T(0);
}

// ---- Hessenberg ---------------------------------------------------------------

/// A ← Qᴴ·A·Q upper Hessenberg, Q accumulated.
template <class T>
void hessenberg(Mat<T>& A, Mat<T>& Q) {
  const uword n = A.n_rows();
  Q = Mat<T>::eye(n, n);
  for (uword k = 0; k + 2 < n; ++k) {
    auto h = make_reflector(&A.at(k + 1, k), n - k - 1);
    if (h.identity) continue;
    apply_left(h, A, k + 1, k, n);
    apply_right(h, A, 0, n, k + 1);
    apply_right(h, Q, 0, n, k + 1);
    for (uword i = k + 2; i < n; ++i) A.at(i, k) = T(0);
  }
}

// ---- complex Schur --------------------------------------------------------------

/// Complex Schur form of an upper Hessenberg H by single-shift QR.
/// H ← Zᴴ·H·Z upper triangular, Z updated in place (pass I or the Hessenberg Q).
template <class C>
bool complex_schur_hess(Mat<C>& H, Mat<C>& Z) {
  using Rt = R<C>;
  const uword n = H.n_rows();
  if (n == 0) return true;
  const Rt ulp = eps<C>();
  const Rt tiny = std::numeric_limits<Rt>::min();
  const Rt hnorm = std::max(norm_fro(H), tiny);
  uword hi = n - 1;
  int iter = 0, total = 0;
  const int max_total = 100 * static_cast<int>(std::max<uword>(n, 10));
  while (hi > 0) {
    // find the start of the active unreduced block
    uword lo = hi;
    while (lo > 0) {
      const Rt s = std::abs(H.at(lo - 1, lo - 1)) + std::abs(H.at(lo, lo));
      const Rt sub = std::abs(H.at(lo, lo - 1));
      if (sub <= ulp * (s == 0 ? hnorm : s) || sub < tiny) {
        H.at(lo, lo - 1) = C(0);
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      iter = 0;
      continue;
    }
    if (++total > max_total) return false;
    ++iter;
    // Wilkinson shift from the trailing 2x2 block
    C mu;
    const C a = H.at(hi - 1, hi - 1), b = H.at(hi - 1, hi), c = H.at(hi, hi - 1), d = H.at(hi, hi);
    if (iter % 11 == 0) {
      mu = d + Rt(0.75) * std::abs(c) * C(1, 1);  // exceptional shift
    } else {
      const C p = (a - d) / Rt(2);
      const C disc = std::sqrt(p * p + b * c);
      const C den1 = p + disc, den2 = p - disc;
      const C den = std::abs(den1) >= std::abs(den2) ? den1 : den2;
      mu = den == C(0) ? d : d - b * c / den;
    }
    // implicit single-shift sweep over rows lo..hi
    C x = H.at(lo, lo) - mu, y = H.at(lo + 1, lo);
    for (uword k = lo; k < hi; ++k) {
      auto G = make_givens(x, y);
      const uword c0 = k > lo ? k - 1 : lo;
      rot_rows(G, H, k, k + 1, c0, n);
      rot_cols(G, H, k, k + 1, 0, std::min(k + 2, hi) + 1);
      rot_cols(G, Z, k, k + 1, 0, n);
      if (k > lo) H.at(k + 1, k - 1) = C(0);
      if (k + 1 < hi) {
        x = H.at(k + 1, k);
        y = H.at(k + 2, k);
      }
    }
  }
  for (uword j = 0; j < n; ++j)
    for (uword i = j + 1; i < n; ++i) H.at(i, j) = C(0);
  return true;
}

/// Full complex Schur: A = Z·T·Zᴴ.
template <class C>
bool complex_schur(const Mat<C>& A, Mat<C>& T, Mat<C>& Z) {
  T = A;
  hessenberg(T, Z);
  return complex_schur_hess(T, Z);
}

/// Eigenvectors of the pencil (T, S) with T, S upper triangular; S = I when
/// empty. Columns are returned in the Schur basis (not yet multiplied by Z).
template <class C>
Mat<C> triangular_eigvecs(const Mat<C>& T, const Mat<C>& S) {
  using Rt = R<C>;
  const uword n = T.n_rows();
  const bool pencil = !S.is_empty();
  const Rt small = std::max(eps<C>() * std::max(norm_fro(T), pencil ? norm_fro(S) : Rt(1)),
                            std::numeric_limits<Rt>::min());
  Mat<C> X(n, n);
  for (uword k = 0; k < n; ++k) {
    const C alpha = T.at(k, k);
    const C beta = pencil ? S.at(k, k) : C(1);
    X.at(k, k) = C(1);
    for (uword jj = k; jj-- > 0;) {
      C s(0);
      for (uword i = jj + 1; i <= k; ++i)
        s += (beta * T.at(jj, i) - alpha * (pencil ? S.at(jj, i) : C(0))) * X.at(i, k);
      C den = beta * T.at(jj, jj) - alpha * (pencil ? S.at(jj, jj) : C(1));
      if (std::abs(den) < small) den = C(small);
      X.at(jj, k) = -s / den;
    }
  }
  return X;
}

template <class T>
void normalise_columns(Mat<T>& V) {
  for (uword j = 0; j < V.n_cols(); ++j) {
    R<T> s = 0;
    for (uword i = 0; i < V.n_rows(); ++i) s += abs2(V.at(i, j));
    s = std::sqrt(s);
    if (s > 0)
      for (uword i = 0; i < V.n_rows(); ++i) V.at(i, j) /= s;
  }
}

// ---- real Schur ---------------------------------------------------------------

/// Real Schur form of an upper Hessenberg H (quasi-triangular with 2x2 blocks
/// for complex pairs), Z updated in place. Standard double-shift Francis QR.
template <class Rt>
bool real_schur_hess(Mat<Rt>& H, Mat<Rt>& V) {
  const int nn = static_cast<int>(H.n_rows());
  if (nn == 0) return true;
  auto h = [&](int i, int j) -> Rt& { return H.at(static_cast<uword>(i), static_cast<uword>(j)); };
  auto v = [&](int i, int j) -> Rt& { return V.at(static_cast<uword>(i), static_cast<uword>(j)); };
  const Rt ulp = std::numeric_limits<Rt>::epsilon();
  const int low = 0, high = nn - 1;
  int n = nn - 1;
  Rt exshift = 0, p = 0, q = 0, r = 0, s = 0, z = 0, w, x, y;

  Rt norm = 0;
  for (int i = 0; i < nn; i++)
    for (int j = std::max(i - 1, 0); j < nn; j++) norm += std::abs(h(i, j));

  int iter = 0, total = 0;
  const int max_total = 100 * std::max(nn, 10);
  while (n >= low) {
    int l = n;
    while (l > low) {
      s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0) s = norm;
      if (std::abs(h(l, l - 1)) < ulp * s) break;
      l--;
    }
    if (l > low) h(l, l - 1) = 0;
    if (l == n) {
      h(n, n) = h(n, n) + exshift;
      if (n > 0) h(n, n - 1) = 0;
      n--;
      iter = 0;
    } else if (l == n - 1) {
      w = h(n, n - 1) * h(n - 1, n);
      p = (h(n - 1, n - 1) - h(n, n)) / 2;
      q = p * p + w;
      z = std::sqrt(std::abs(q));
      h(n, n) = h(n, n) + exshift;
      h(n - 1, n - 1) = h(n - 1, n - 1) + exshift;
      x = h(n, n);
      if (q >= 0) {
        // real pair: rotate to upper triangular
        z = p >= 0 ? p + z : p - z;
        x = h(n, n - 1);
        s = std::abs(x) + std::abs(z);
        p = x / s;
        q = z / s;
        r = std::sqrt(p * p + q * q);
        p = p / r;
        q = q / r;
        for (int j = n - 1; j < nn; j++) {
          z = h(n - 1, j);
          h(n - 1, j) = q * z + p * h(n, j);
          h(n, j) = q * h(n, j) - p * z;
        }
        for (int i = 0; i <= n; i++) {
          z = h(i, n - 1);
          h(i, n - 1) = q * z + p * h(i, n);
          h(i, n) = q * h(i, n) - p * z;
        }
        for (int i = low; i <= high; i++) {
          z = v(i, n - 1);
          v(i, n - 1) = q * z + p * v(i, n);
          v(i, n) = q * v(i, n) - p * z;
        }
        h(n, n - 1) = 0;
      }
      n = n - 2;
      iter = 0;
    } else {
      if (++total > max_total) return false;
      x = h(n, n);
      y = 0;
      w = 0;
      if (l < n) {
        y = h(n - 1, n - 1);
        w = h(n, n - 1) * h(n - 1, n);
      }
      if (iter == 10) {
        exshift += x;
        for (int i = low; i <= n; i++) h(i, i) -= x;
        s = std::abs(h(n, n - 1)) + std::abs(h(n - 1, n - 2));
        x = y = Rt(0.75) * s;
        w = Rt(-0.4375) * s * s;
      }
      if (iter == 30) {
        s = (y - x) / 2;
        s = s * s + w;
        if (s > 0) {
          s = std::sqrt(s);
          if (y < x) s = -s;
          s = x - w / ((y - x) / 2 + s);
          for (int i = low; i <= n; i++) h(i, i) -= s;
          exshift += s;
          x = y = w = Rt(0.964);
        }
      }
      iter = iter + 1;

      int m = n - 2;
      while (m >= l) {
        z = h(m, m);
        r = x - z;
        s = y - z;
        p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - r - s;
        r = h(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p = p / s;
        q = q / s;
        r = r / s;
        if (m == l) break;
        if (std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) <
            ulp * (std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)))))
          break;
        m--;
      }
      for (int i = m + 2; i <= n; i++) {
        h(i, i - 2) = 0;
        if (i > m + 2) h(i, i - 3) = 0;
      }
      for (int k = m; k <= n - 1; k++) {
        const bool notlast = (k != n - 1);
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlast ? h(k + 2, k - 1) : Rt(0);
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0) continue;
          p = p / x;
          q = q / x;
          r = r / x;
        }
        s = std::sqrt(p * p + q * q + r * r);
        if (p < 0) s = -s;
        if (s != 0) {
          if (k != m) h(k, k - 1) = -s * x;
          else if (l != m) h(k, k - 1) = -h(k, k - 1);
          p = p + s;
          x = p / s;
          y = q / s;
          z = r / s;
          q = q / p;
          r = r / p;
          for (int j = k; j < nn; j++) {
            p = h(k, j) + q * h(k + 1, j);
            if (notlast) {
              p = p + r * h(k + 2, j);
              h(k + 2, j) = h(k + 2, j) - p * z;
            }
            h(k, j) = h(k, j) - p * x;
            h(k + 1, j) = h(k + 1, j) - p * y;
          }
          for (int i = 0; i <= std::min(n, k + 3); i++) {
            p = x * h(i, k) + y * h(i, k + 1);
            if (notlast) {
              p = p + z * h(i, k + 2);
              h(i, k + 2) = h(i, k + 2) - p * r;
            }
            h(i, k) = h(i, k) - p;
            h(i, k + 1) = h(i, k + 1) - p * q;
          }
          for (int i = low; i <= high; i++) {
            p = x * v(i, k) + y * v(i, k + 1);
            if (notlast) {
              p = p + z * v(i, k + 2);
              v(i, k + 2) = v(i, k + 2) - p * r;
            }
            v(i, k) = v(i, k) - p;
            v(i, k + 1) = v(i, k + 1) - p * q;
          }
        }
      }
    }
  }
  // clear everything below the first subdiagonal left over from the bulge chase
  for (int j = 0; j < nn; ++j)
    for (int i = j + 2; i < nn; ++i) h(i, j) = 0;
  return true;
}

template <class Rt>
bool real_schur(const Mat<Rt>& A, Mat<Rt>& T, Mat<Rt>& Z) {
  T = A;
  hessenberg(T, Z);
  return real_schur_hess(T, Z);
}

// ---- symmetric eigen ----------------------------------------------------------

/// Implicit QL on a real symmetric tridiagonal (d diagonal, e[i] couples i and
/// i+1, e sized n). Z accumulates the rotations; eigenvalues end ascending.
template <class Rt>
bool tql2(std::vector<Rt>& d, std::vector<Rt>& e, Mat<Rt>& Z) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return true;
  e[static_cast<uword>(n - 1)] = 0;
  Rt f = 0, tst1 = 0;
  const Rt ulp = std::numeric_limits<Rt>::epsilon();
  for (int l = 0; l < n; l++) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n) {
      if (std::abs(e[m]) <= ulp * tst1) break;
      m++;
    }
    if (m == n) m = n - 1;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 60) return false;
        Rt g = d[l];
        Rt p = (d[l + 1] - g) / (2 * e[l]);
        Rt r = std::hypot(p, Rt(1));
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const Rt dl1 = d[l + 1];
        Rt hh = g - d[l];
        for (int i = l + 2; i < n; i++) d[i] -= hh;
        f = f + hh;
        p = d[m];
        Rt c = 1, c2 = 1, c3 = 1;
        const Rt el1 = e[l + 1];
        Rt s = 0, s2 = 0;
        for (int i = m - 1; i >= l; i--) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          hh = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = hh + s * (c * g + s * d[i]);
          for (int k = 0; k < n; k++) {
            Rt& zi1 = Z.at(static_cast<uword>(k), static_cast<uword>(i + 1));
            Rt& zi = Z.at(static_cast<uword>(k), static_cast<uword>(i));
            hh = zi1;
            zi1 = s * zi + c * hh;
            zi = c * zi - s * hh;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > ulp * tst1);
    }
    d[l] = d[l] + f;
    e[l] = 0;
  }
  for (int i = 0; i < n - 1; i++) {
    int k = i;
    Rt p = d[i];
    for (int j = i + 1; j < n; j++)
      if (d[j] < p) {
        k = j;
        p = d[j];
      }
    if (k != i) {
      d[k] = d[i];
      d[i] = p;
      for (int j = 0; j < n; j++)
        std::swap(Z.at(static_cast<uword>(j), static_cast<uword>(i)), Z.at(static_cast<uword>(j), static_cast<uword>(k)));
    }
  }
  return true;
}

/// Hermitian eigen decomposition: Householder tridiagonalisation, a diagonal
/// phase change to make the tridiagonal real, then tql2.
template <class T>
bool eig_hermitian(const Mat<T>& A0, std::vector<R<T>>& w, Mat<T>& V) {
  using Rt = R<T>;
  const uword n = A0.n_rows();
  Mat<T> A = A0;
  Mat<T> Q = Mat<T>::eye(n, n);
  for (uword k = 0; k + 2 < n; ++k) {
    auto h = make_reflector(&A.at(k + 1, k), n - k - 1);
    if (h.identity) continue;
    apply_left(h, A, k + 1, k, n);
    apply_right(h, A, k, n, k + 1);
    apply_right(h, Q, 0, n, k + 1);
  }
  std::vector<Rt> d(n), e(n, Rt(0));
  std::vector<T> ph(n, T(1));
  for (uword i = 0; i < n; ++i) d[i] = real_of(A.at(i, i));
  for (uword i = 0; i + 1 < n; ++i) {
    const T off = A.at(i + 1, i);
    e[i] = std::abs(off);
    ph[i + 1] = e[i] == 0 ? ph[i] : ph[i] * (off / e[i]);
  }
  Mat<Rt> Z = Mat<Rt>::eye(n, n);
  if (!tql2(d, e, Z)) return false;
  w = d;
  V.set_size(n, n);
  for (uword j = 0; j < n; ++j)
    for (uword i = 0; i < n; ++i) {
      T s(0);
      for (uword k = 0; k < n; ++k) s += Q.at(i, k) * ph[k] * Z.at(k, j);
      V.at(i, j) = s;
    }
  return true;
}

// ---- SVD ----------------------------------------------------------------------

/// Extends the first r orthonormal columns of U (m×k) to a full basis of
/// size m×cols, keeping those r columns unchanged.
template <class T>
Mat<T> complete_basis(const Mat<T>& U, uword r, uword cols) {
  const uword m = U.n_rows();
  Mat<T> Q, Rm;
  Mat<T> head(m, r);
  for (uword j = 0; j < r; ++j)
    for (uword i = 0; i < m; ++i) head.at(i, j) = U.at(i, j);
  qr_full(head, Q, Rm);
  Mat<T> out(m, cols);
  for (uword j = 0; j < cols; ++j)
    for (uword i = 0; i < m; ++i) out.at(i, j) = j < r ? U.at(i, j) : Q.at(i, j);
  return out;
}

/// One-sided Jacobi on an m×n matrix with m ≥ n: A = U·diag(s)·Vᴴ, U m×n,
/// V n×n, s descending. Columns of U belonging to negligible singular values
/// are not yet orthonormal; complete_basis fixes them.
template <class T>
bool jacobi_svd_tall(const Mat<T>& A, Mat<T>& U, std::vector<R<T>>& s, Mat<T>& V) {
  using Rt = R<T>;
  const uword m = A.n_rows(), n = A.n_cols();
  U = A;
  V = Mat<T>::eye(n, n);
  const Rt tol = eps<T>();
  bool converged = false;
  for (int sweep = 0; sweep < 80 && !converged; ++sweep) {
    converged = true;
    for (uword p = 0; p + 1 < n; ++p)
      for (uword q = p + 1; q < n; ++q) {
        Rt alpha = 0, beta = 0;
        T gamma(0);
        for (uword i = 0; i < m; ++i) {
          alpha += abs2(U.at(i, p));
          beta += abs2(U.at(i, q));
          gamma += conj_of(U.at(i, p)) * U.at(i, q);
        }
        const Rt g = std::abs(gamma);
        if (g == 0 || g <= tol * std::sqrt(alpha * beta)) continue;
        converged = false;
        const T phase = gamma / g;
        const Rt zeta = (beta - alpha) / (2 * g);
        const Rt t = (zeta >= 0 ? Rt(1) : Rt(-1)) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const Rt c = 1 / std::sqrt(1 + t * t), sn = c * t;
        const T ph_c = conj_of(phase);
        for (uword i = 0; i < m; ++i) {
          const T up = U.at(i, p), uq = U.at(i, q) * ph_c;
          U.at(i, p) = c * up - sn * uq;
          U.at(i, q) = sn * up + c * uq;
        }
        for (uword i = 0; i < n; ++i) {
          const T vp = V.at(i, p), vq = V.at(i, q) * ph_c;
          V.at(i, p) = c * vp - sn * vq;
          V.at(i, q) = sn * vp + c * vq;
        }
      }
  }
  if (!converged) return false;
  s.assign(n, Rt(0));
  for (uword j = 0; j < n; ++j) {
    Rt acc = 0;
    for (uword i = 0; i < m; ++i) acc += abs2(U.at(i, j));
    s[j] = std::sqrt(acc);
  }
  std::vector<uword> order(n);
  std::iota(order.begin(), order.end(), uword(0));
  std::stable_sort(order.begin(), order.end(), [&](uword a, uword b) { return s[a] > s[b]; });
  Mat<T> U2(m, n), V2(n, n);
  std::vector<Rt> s2(n);
  for (uword j = 0; j < n; ++j) {
    const uword o = order[j];
    s2[j] = s[o];
    for (uword i = 0; i < m; ++i) U2.at(i, j) = s[o] > 0 ? U.at(i, o) / s[o] : T(0);
    for (uword i = 0; i < n; ++i) V2.at(i, j) = V.at(i, o);
  }
  U = std::move(U2);
  V = std::move(V2);
  s = std::move(s2);
  return true;
}

/// Number of singular values above max(m,n)·eps·s0.
template <class Rt>
uword numerical_rank(const std::vector<Rt>& s, uword m, uword n) {
  if (s.empty()) return 0;
  const Rt tol = static_cast<Rt>(std::max(m, n)) * std::numeric_limits<Rt>::epsilon() * s[0];
  uword r = 0;
  for (Rt v : s)
    if (v > tol) ++r;
  return r;
}

/// SVD of any shape. full: U m×m, V n×n; otherwise U m×k, V n×k, k = min(m,n).
template <class T>
bool svd_native(const Mat<T>& A, Mat<T>& U, std::vector<R<T>>& s, Mat<T>& V, bool full) {
  const uword m = A.n_rows(), n = A.n_cols(), k = std::min(m, n);
  const bool wide = m < n;
  Mat<T> Ut, Vt;
  if (!jacobi_svd_tall(wide ? adjoint(A) : A, Ut, s, Vt)) return false;
  // Ut is (max×k) with possibly unusable trailing columns; Vt is k×k
  const uword big = std::max(m, n);
  const uword r = numerical_rank(s, m, n);
  Mat<T> left = complete_basis(Ut, r, full ? big : k);
  Mat<T> right = Vt;
  if (full && k < big) right = complete_basis(Vt, k, k);
  if (wide) {
    // A = (Ut S Vtᴴ)ᴴ = Vt S Utᴴ
    U = right;
    V = left;
  } else {
    U = left;
    V = right;
  }
  return true;
}

// ---- complex QZ ---------------------------------------------------------------

/// Generalised complex Schur form: A = Q·S·Zᴴ, B = Q·P·Zᴴ with S, P upper
/// triangular. On entry S = A, P = B; on exit Q, Z are unitary.
template <class C>
bool complex_qz(Mat<C>& S, Mat<C>& P, Mat<C>& Q, Mat<C>& Z) {
  using Rt = R<C>;
  const uword n = S.n_rows();
  Q = Mat<C>::eye(n, n);
  Z = Mat<C>::eye(n, n);
  if (n == 0) return true;

  // B upper triangular via Householder, applied to A from the left as well
  for (uword k = 0; k + 1 < n; ++k) {
    auto h = make_reflector(&P.at(k, k), n - k);
    if (h.identity) continue;
    apply_left(h, P, k, k, n);
    apply_left(h, S, k, 0, n);
    apply_right(h, Q, 0, n, k);
    for (uword i = k + 1; i < n; ++i) P.at(i, k) = C(0);
  }
  // Hessenberg-triangular reduction
  for (uword j = 0; j + 2 < n; ++j)
    for (uword i = n - 1; i > j + 1; --i) {
      auto G = make_givens(S.at(i - 1, j), S.at(i, j));
      rot_rows(G, S, i - 1, i, 0, n);
      rot_rows(G, P, i - 1, i, 0, n);
      rot_cols(G, Q, i - 1, i, 0, n);
      S.at(i, j) = C(0);
      // P picked up P(i, i-1); a right rotation on columns i-1, i removes it
      const C u = P.at(i, i - 1), v = P.at(i, i);
      auto g2 = make_givens(conj_of(v), conj_of(u));
      // [x, y] ← [c·x − s·y, s̄·x + c·y]
      auto rotate_right = [&](Mat<C>& M, uword rows) {
        for (uword rr = 0; rr < rows; ++rr) {
          const C x = M.at(rr, i - 1), y = M.at(rr, i);
          M.at(rr, i - 1) = g2.c * x - g2.s * y;
          M.at(rr, i) = conj_of(g2.s) * x + g2.c * y;
        }
      };
      rotate_right(P, std::min(i + 1, n));
      rotate_right(S, n);
      rotate_right(Z, n);
      P.at(i, i - 1) = C(0);
    }
  for (uword j = 0; j < n; ++j)
    for (uword i = j + 2; i < n; ++i) S.at(i, j) = C(0);

  const Rt ulp = eps<C>();
  const Rt tiny = std::numeric_limits<Rt>::min();
  const Rt anorm = std::max(norm_fro(S), tiny);
  const Rt bnorm = std::max(norm_fro(P), tiny);

  // right rotation on columns (a, b) zeroing the first entry of row `row` of M0
  auto right_zero = [&](Mat<C>& M0, uword row, uword a, uword b, uword row_limit) {
    const C u = M0.at(row, a), v = M0.at(row, b);
    auto g = make_givens(conj_of(v), conj_of(u));
    auto apply = [&](Mat<C>& M, uword rows) {
      for (uword rr = 0; rr < rows; ++rr) {
        const C x = M.at(rr, a), y = M.at(rr, b);
        M.at(rr, a) = g.c * x - g.s * y;
        M.at(rr, b) = conj_of(g.s) * x + g.c * y;
      }
    };
    apply(S, row_limit);
    apply(P, row_limit);
    apply(Z, n);
  };

  uword hi = n - 1;
  int iter = 0, total = 0;
  const int max_total = 200 * static_cast<int>(std::max<uword>(n, 10));
  while (true) {
    // deflate from the bottom
    bool progressed = true;
    while (progressed && hi > 0) {
      progressed = false;
      if (std::abs(S.at(hi, hi - 1)) <= ulp * anorm) {
        S.at(hi, hi - 1) = C(0);
        --hi;
        iter = 0;
        progressed = true;
      } else if (std::abs(P.at(hi, hi)) <= ulp * bnorm) {
        P.at(hi, hi) = C(0);
        right_zero(S, hi, hi - 1, hi, hi + 1);
        S.at(hi, hi - 1) = C(0);
        --hi;
        iter = 0;
        progressed = true;
      }
    }
    if (hi == 0) break;
    // active block [lo, hi]
    uword lo = hi;
    while (lo > 0 && std::abs(S.at(lo, lo - 1)) > ulp * anorm) --lo;
    if (lo > 0) S.at(lo, lo - 1) = C(0);
    // interior zero on the diagonal of P: chase it down to hi
    bool chased = false;
    for (uword j = lo; j < hi; ++j) {
      if (std::abs(P.at(j, j)) > ulp * bnorm) continue;
      P.at(j, j) = C(0);
      for (uword jj = j; jj < hi; ++jj) {
        auto G = make_givens(P.at(jj, jj + 1), P.at(jj + 1, jj + 1));
        rot_rows(G, P, jj, jj + 1, jj, n);
        rot_rows(G, S, jj, jj + 1, jj > 0 ? jj - 1 : 0, n);
        rot_cols(G, Q, jj, jj + 1, 0, n);
        P.at(jj + 1, jj + 1) = C(0);
        if (jj > lo) {
          right_zero(S, jj + 1, jj - 1, jj, n);
          S.at(jj + 1, jj - 1) = C(0);
          P.at(jj, jj - 1) = C(0);
        }
      }
      chased = true;
      break;
    }
    if (chased) continue;
    if (++total > max_total) return false;
    ++iter;

    // shift: eigenvalue of the trailing 2x2 of S·P⁻¹ closest to the bottom one
    C mu;
    {
      const C b11 = P.at(hi - 1, hi - 1), b12 = P.at(hi - 1, hi), b22 = P.at(hi, hi);
      const C a11 = S.at(hi - 1, hi - 1), a12 = S.at(hi - 1, hi), a21 = S.at(hi, hi - 1), a22 = S.at(hi, hi);
      const C i11 = C(1) / b11, i22 = C(1) / b22, i12 = -b12 / (b11 * b22);
      const C m11 = a11 * i11, m12 = a11 * i12 + a12 * i22, m21 = a21 * i11, m22 = a21 * i12 + a22 * i22;
      if (iter % 11 == 0) {
        mu = m22 + Rt(0.75) * std::abs(m21) * C(1, 1);
      } else {
        const C p = (m11 - m22) / Rt(2);
        const C disc = std::sqrt(p * p + m12 * m21);
        const C den1 = p + disc, den2 = p - disc;
        const C den = std::abs(den1) >= std::abs(den2) ? den1 : den2;
        mu = den == C(0) ? m22 : m22 - m12 * m21 / den;
      }
      if (!std::isfinite(std::abs(mu))) mu = a22 / b22;
    }
    C x = S.at(lo, lo) - mu * P.at(lo, lo), y = S.at(lo + 1, lo);
    for (uword k = lo; k < hi; ++k) {
      auto G = make_givens(x, y);
      rot_rows(G, S, k, k + 1, k > lo ? k - 1 : lo, n);
      rot_rows(G, P, k, k + 1, k, n);
      rot_cols(G, Q, k, k + 1, 0, n);
      if (k > lo) S.at(k + 1, k - 1) = C(0);
      // restore triangularity of P
      right_zero(P, k + 1, k, k + 1, std::min(k + 2, hi) + 1);
      P.at(k + 1, k) = C(0);
      if (k + 1 < hi) {
        x = S.at(k + 1, k);
        y = S.at(k + 2, k);
      }
    }
  }
  for (uword j = 0; j < n; ++j)
    for (uword i = j + 1; i < n; ++i) {
      S.at(i, j) = C(0);
      P.at(i, j) = C(0);
    }
  return true;
}

}  // namespace streamla::la
