#include "streamla/matfun.hpp"

#include <array>

#include "streamla/decomp.hpp"
#include "linalg_kernels.hpp"

namespace streamla {

namespace {

using la::R;

template <class T>
Mat<complex_t<T>> to_complex(const Mat<T>& X) {
  Mat<complex_t<T>> out(X.n_rows(), X.n_cols());
  for (uword i = 0; i < X.n_elem(); ++i) out.at(i) = complex_t<T>(X.at(i));
  return out;
}

template <class T>
Mat<T> identity_plus(const Mat<T>& X, const T& a) {
  Mat<T> out = X;
  for (uword i = 0; i < X.n_rows(); ++i) out.at(i, i) += a;
  return out;
}

template <class T>
Mat<T> axpy(const T& a, const Mat<T>& X, const Mat<T>& Y) {
  Mat<T> out = Y;
  for (uword i = 0; i < X.n_elem(); ++i) out.at(i) += a * X.at(i);
  return out;
}

// ---- Pade approximants for expmat --------------------------------------------------

constexpr std::array<double, 14> pade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr std::array<double, 4> pade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> pade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> pade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                         25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> pade9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                          2162160.0,     110880.0,     3960.0,       90.0,        1.0};
constexpr std::array<double, 5> theta = {1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                         2.097847961257068e0, 5.371920351148152e0};

template <class T>
Mat<T> solve_square(const Mat<T>& A, const Mat<T>& B) {
  Mat<T> LU = A;
  std::vector<uword> perm;
  int parity = 0;
  if (!la::lu_inplace(LU, perm, parity)) throw FactorisationError("expmat: Pade denominator is singular");
  return la::lu_solve(LU, perm, B);
}

/// (V - U)^-1 (V + U) for the low-degree approximants, b holding coefficients.
template <class T, std::size_t N>
Mat<T> pade_low(const Mat<T>& A, const std::array<double, N>& b) {
  const uword n = A.n_rows();
  const Mat<T> A2 = la::mul(A, A);
  Mat<T> Pk = Mat<T>::eye(n, n);
  Mat<T> U(n, n), V(n, n);
  for (std::size_t k = 0; k < N; k += 2) {
    if (k > 0) Pk = la::mul(Pk, A2);
    U = axpy(T(static_cast<R<T>>(b[k + 1])), Pk, U);
    V = axpy(T(static_cast<R<T>>(b[k])), Pk, V);
  }
  U = la::mul(A, U);
  return solve_square(V - U, V + U);
}

template <class T>
Mat<T> pade_13(const Mat<T>& A) {
  const uword n = A.n_rows();
  auto c = [](std::size_t i) { return T(static_cast<R<T>>(pade13[i])); };
  const Mat<T> I = Mat<T>::eye(n, n);
  const Mat<T> A2 = la::mul(A, A), A4 = la::mul(A2, A2), A6 = la::mul(A4, A2);
  Mat<T> inner = axpy(c(13), A6, axpy(c(11), A4, axpy(c(9), A2, Mat<T>(n, n))));
  Mat<T> U = la::mul(A6, inner);
  U = axpy(c(7), A6, axpy(c(5), A4, axpy(c(3), A2, axpy(c(1), I, U))));
  U = la::mul(A, U);
  Mat<T> inner2 = axpy(c(12), A6, axpy(c(10), A4, axpy(c(8), A2, Mat<T>(n, n))));
  Mat<T> V = la::mul(A6, inner2);
  V = axpy(c(6), A6, axpy(c(4), A4, axpy(c(2), A2, axpy(c(0), I, V))));
  return solve_square(V - U, V + U);
}

// ---- triangular matrix functions -----------------------------------------------------

/// Principal square root of an upper triangular matrix. False when a
/// diagonal pair sums to zero with a non-zero coupling term.
template <class C>
bool sqrt_triangular(const Mat<C>& T, Mat<C>& Rm) {
  const uword n = T.n_rows();
  Rm.set_size(n, n);
  Rm.zeros();
  for (uword j = 0; j < n; ++j) {
    Rm.at(j, j) = std::sqrt(T.at(j, j));
    for (uword i = j; i-- > 0;) {
      C s = T.at(i, j);
      for (uword k = i + 1; k < j; ++k) s -= Rm.at(i, k) * Rm.at(k, j);
      const C d = Rm.at(i, i) + Rm.at(j, j);
      if (d == C(0)) {
        if (s != C(0)) return false;
        Rm.at(i, j) = C(0);
      } else {
        Rm.at(i, j) = s / d;
      }
    }
  }
  return true;
}

/// Gauss-Legendre nodes and weights on [0, 1].
template <class Rt>
void gauss_legendre(int m, std::vector<Rt>& nodes, std::vector<Rt>& weights) {
  nodes.resize(m);
  weights.resize(m);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(pi * (i + 0.75) / (m + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = static_cast<Rt>((x + 1) / 2);
    weights[i] = static_cast<Rt>(1.0 / ((1 - x * x) * dp * dp));
  }
}

/// log(T) for upper triangular T with no zero on the diagonal: repeated
/// square roots until T is near I, then a Gauss-Legendre (Pade) evaluation of
/// log(I + X), scaled back.
template <class C>
bool log_triangular(Mat<C> T, Mat<C>& L) {
  using Rt = R<C>;
  const uword n = T.n_rows();
  int k = 0;
  for (;;) {
    const Rt d = la::norm_one(identity_plus(T, C(-1)));
    if (d <= Rt(0.25)) break;
    if (++k > 100) return false;
    Mat<C> S;
    if (!sqrt_triangular(T, S)) return false;
    T = std::move(S);
  }
  const Mat<C> X = identity_plus(T, C(-1));
  std::vector<Rt> nodes, weights;
  gauss_legendre<Rt>(10, nodes, weights);
  L.set_size(n, n);
  L.zeros();
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Mat<C> D = X * C(nodes[j]);
    D = identity_plus(D, C(1));
    L = axpy(C(weights[j]), la::solve_upper(D, X), L);
  }
  const C scale(std::ldexp(Rt(1), k));
  for (C& v : L) v *= scale;
  return true;
}

template <class T>
void require_square_finite(const Mat<T>& A, const char* what) {
  detail::require_square(A, what);
  if (!A.is_finite()) throw DomainError(std::string(what) + ": matrix contains NaN or Inf");
}

}  // namespace

namespace detail {

template <FloatElement T>
real_t<T> matrix_norm2(const Mat<T>& A) {
  const Mat<real_t<T>> s = svd_values(A);
  return s.is_empty() ? real_t<T>(0) : s.at(0);
}

}  // namespace detail

// ---- determinants ---------------------------------------------------------------------

template <FloatElement T>
T det(const Mat<T>& A) {
  detail::require_square(A, "det");
  Mat<T> LU = A;
  std::vector<uword> perm;
  int parity = 0;
  la::lu_inplace(LU, perm, parity);
  T d = T(static_cast<R<T>>(parity));
  for (uword i = 0; i < A.n_rows(); ++i) d *= LU.at(i, i);
  return d;
}

template <FloatElement T>
LogDet<T> log_det(const Mat<T>& A) {
  detail::require_square(A, "log_det");
  Mat<T> LU = A;
  std::vector<uword> perm;
  int parity = 0;
  la::lu_inplace(LU, perm, parity);
  LogDet<T> out{R<T>(0), T(static_cast<R<T>>(parity))};
  for (uword i = 0; i < A.n_rows(); ++i) {
    const T u = LU.at(i, i);
    const R<T> a = std::abs(u);
    if (a == R<T>(0)) return {-std::numeric_limits<R<T>>::infinity(), T(0)};
    out.value += std::log(a);
    out.sign *= u / a;
  }
  return out;
}

template <FloatElement T>
real_t<T> cond(const Mat<T>& A) {
  const Mat<R<T>> s = svd_values(A);
  if (s.is_empty()) return R<T>(0);
  const R<T> lo = s.at(s.n_elem() - 1);
  return lo == R<T>(0) ? std::numeric_limits<R<T>>::infinity() : s.at(0) / lo;
}

template <FloatElement T>
real_t<T> rcond(const Mat<T>& A) {
  require_square_finite(A, "rcond");
  const uword n = A.n_rows();
  if (n == 0) return std::numeric_limits<R<T>>::infinity();
  Mat<T> LU = A;
  std::vector<uword> perm;
  int parity = 0;
  if (!la::lu_inplace(LU, perm, parity)) return R<T>(0);
  const Mat<T> Ai = la::lu_solve(LU, perm, Mat<T>::eye(n, n));
  if (!Ai.is_finite()) return R<T>(0);
  const R<T> an = la::norm_one(A), ain = la::norm_one(Ai);
  if (an == R<T>(0) || ain == R<T>(0)) return R<T>(0);
  return R<T>(1) / (an * ain);
}

template <FloatElement T>
uword rank(const Mat<T>& A, real_t<T> tol) {
  const Mat<R<T>> s = svd_values(A);
  if (s.is_empty()) return 0;
  if (tol < 0) tol = static_cast<R<T>>(std::max(A.n_rows(), A.n_cols())) * la::eps<T>() * s.at(0);
  uword r = 0;
  for (const R<T> v : s)
    if (v > tol) ++r;
  return r;
}

// ---- matrix functions -------------------------------------------------------------------

template <FloatElement T>
Mat<T> expmat(const Mat<T>& A) {
  require_square_finite(A, "expmat");
  const uword n = A.n_rows();
  if (n == 0) return Mat<T>();
  const double nrm = static_cast<double>(la::norm_one(A));
  if (nrm <= theta[0]) return pade_low(A, pade3);
  if (nrm <= theta[1]) return pade_low(A, pade5);
  if (nrm <= theta[2]) return pade_low(A, pade7);
  if (nrm <= theta[3]) return pade_low(A, pade9);
  int s = 0;
  if (nrm > theta[4]) s = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / theta[4]))));
  Mat<T> As = A;
  const T scale(static_cast<R<T>>(std::ldexp(1.0, -s)));
  for (T& v : As) v *= scale;
  Mat<T> E = pade_13(As);
  for (int i = 0; i < s; ++i) E = la::mul(E, E);
  return E;
}

template <FloatElement T>
std::optional<Mat<complex_t<T>>> try_sqrtmat(const Mat<T>& A) {
  using C = complex_t<T>;
  require_square_finite(A, "sqrtmat");
  if (A.is_empty()) return Mat<C>();
  Mat<C> Tm, Z;
  if (!la::complex_schur(to_complex(A), Tm, Z)) return std::nullopt;
  Mat<C> Rm;
  if (!sqrt_triangular(Tm, Rm)) return std::nullopt;
  Mat<C> out = la::mul_bh(la::mul(Z, Rm), Z);
  if (!out.is_finite()) return std::nullopt;
  return out;
}

template <FloatElement T>
Mat<complex_t<T>> sqrtmat(const Mat<T>& A) {
  auto r = try_sqrtmat(A);
  if (!r) throw FactorisationError("sqrtmat: matrix has no principal square root");
  return std::move(*r);
}

template <FloatElement T>
std::optional<Mat<complex_t<T>>> try_logmat(const Mat<T>& A) {
  using C = complex_t<T>;
  require_square_finite(A, "logmat");
  if (A.is_empty()) return Mat<C>();
  Mat<C> Tm, Z;
  if (!la::complex_schur(to_complex(A), Tm, Z)) return std::nullopt;
  const R<T> tiny = la::eps<T>() * std::max(la::norm_fro(Tm), std::numeric_limits<R<T>>::min());
  for (uword i = 0; i < Tm.n_rows(); ++i)
    if (std::abs(Tm.at(i, i)) <= tiny) return std::nullopt;
  Mat<C> L;
  if (!log_triangular(Tm, L)) return std::nullopt;
  Mat<C> out = la::mul_bh(la::mul(Z, L), Z);
  if (!out.is_finite()) return std::nullopt;
  return out;
}

template <FloatElement T>
Mat<complex_t<T>> logmat(const Mat<T>& A) {
  auto r = try_logmat(A);
  if (!r) throw FactorisationError("logmat: matrix is singular");
  return std::move(*r);
}

#define STREAMLA_INSTANTIATE_MATFUN(T)                                        \
  template real_t<T> detail::matrix_norm2(const Mat<T>&);                     \
  template T det(const Mat<T>&);                                              \
  template LogDet<T> log_det(const Mat<T>&);                                  \
  template real_t<T> cond(const Mat<T>&);                                     \
  template real_t<T> rcond(const Mat<T>&);                                    \
  template uword rank(const Mat<T>&, real_t<T>);                              \
  template Mat<T> expmat(const Mat<T>&);                                      \
  template std::optional<Mat<complex_t<T>>> try_sqrtmat(const Mat<T>&);       \
  template Mat<complex_t<T>> sqrtmat(const Mat<T>&);                          \
  template std::optional<Mat<complex_t<T>>> try_logmat(const Mat<T>&);        \
  template Mat<complex_t<T>> logmat(const Mat<T>&);

STREAMLA_INSTANTIATE_MATFUN(float)
STREAMLA_INSTANTIATE_MATFUN(double)
STREAMLA_INSTANTIATE_MATFUN(cx_float)
STREAMLA_INSTANTIATE_MATFUN(cx_double)

}  // namespace streamla
