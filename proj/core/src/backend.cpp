#include "streamla/backend.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "lapack_wrap.hpp"

namespace streamla {

namespace {

constexpr std::uint32_t all_routines = static_cast<std::uint32_t>(Routine::gemm) |
                                       static_cast<std::uint32_t>(Routine::chol) |
                                       static_cast<std::uint32_t>(Routine::lu) |
                                       static_cast<std::uint32_t>(Routine::eig_sym) |
                                       static_cast<std::uint32_t>(Routine::svd) |
                                       static_cast<std::uint32_t>(Routine::solve);

bool dims_fit(uword m, uword k, uword n) {
  const auto lim = static_cast<uword>(INT_MAX);
  return m <= lim && k <= lim && n <= lim;
}

template <class T>
bool gemm_via_blas(const T* A, const T* B, T* C, uword m, uword k, uword n) {
  if (!lapack::linked() || !dims_fit(m, k, n) || k == 0) return false;
  const int im = static_cast<int>(m), ik = static_cast<int>(k), in = static_cast<int>(n);
  lapack::gemm('N', 'N', im, in, ik, A, im, B, ik, C, im);
  return true;
}

// ---- start-up verification of the system library ---------------------------------
//
// Each routine is run on small deterministic problems and its output checked
// against a residual bound. Sizes straddle typical blocking thresholds.

template <class T>
using Rt = real_t<T>;

template <class T>
struct Dense {
  int n_rows = 0, n_cols = 0;
  std::vector<T> v;
  Dense(int r, int c) : n_rows(r), n_cols(c), v(static_cast<std::size_t>(r) * c, T(0)) {}
  T& operator()(int i, int j) { return v[static_cast<std::size_t>(i + j * n_rows)]; }
  const T& operator()(int i, int j) const { return v[static_cast<std::size_t>(i + j * n_rows)]; }
};

template <class T>
Dense<T> probe_matrix(int r, int c, std::uint64_t seed) {
  Dense<T> d(r, c);
  std::uint64_t x = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  auto next = [&x]() {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(x >> 11) * 0x1.0p-53 - 0.5;
  };
  for (auto& e : d.v) {
    if constexpr (ComplexElement<T>) {
      const double re = next(), im = next();
      e = T(static_cast<Rt<T>>(re), static_cast<Rt<T>>(im));
    } else {
      e = static_cast<T>(next());
    }
  }
  return d;
}

template <class T>
Dense<T> naive_mul(const Dense<T>& A, const Dense<T>& B, bool adjoint_a = false) {
  const int m = adjoint_a ? A.n_cols : A.n_rows, k = adjoint_a ? A.n_rows : A.n_cols;
  Dense<T> C(m, B.n_cols);
  for (int j = 0; j < B.n_cols; ++j)
    for (int i = 0; i < m; ++i) {
      T s(0);
      for (int p = 0; p < k; ++p) s += (adjoint_a ? conj_of(A(p, i)) : A(i, p)) * B(p, j);
      C(i, j) = s;
    }
  return C;
}

template <class T>
double max_abs(const Dense<T>& A) {
  double m = 0;
  for (const auto& e : A.v) m = std::max(m, static_cast<double>(std::abs(e)));
  return m;
}

template <class T>
double diff(const Dense<T>& A, const Dense<T>& B) {
  double m = 0;
  for (std::size_t i = 0; i < A.v.size(); ++i) m = std::max(m, static_cast<double>(std::abs(A.v[i] - B.v[i])));
  return m;
}

template <class T>
bool close(double err, double scale, int n) {
  const double e = std::numeric_limits<Rt<T>>::epsilon();
  return std::isfinite(err) && err <= 1e3 * e * n * std::max(scale, 1.0);
}

const int probe_sizes[] = {5, 33};

template <class T>
bool probe_gemm() {
  for (int n : probe_sizes) {
    auto A = probe_matrix<T>(n, n + 3, 1), B = probe_matrix<T>(n + 3, n - 1, 2);
    Dense<T> C(n, n - 1);
    lapack::gemm('N', 'N', n, n - 1, n + 3, A.v.data(), n, B.v.data(), n + 3, C.v.data(), n);
    if (!close<T>(diff(C, naive_mul(A, B)), max_abs(A) * max_abs(B), n)) return false;
  }
  return true;
}

template <class T>
bool probe_chol() {
  for (int n : probe_sizes) {
    auto A = probe_matrix<T>(n, n, 3);
    auto M = naive_mul(A, A, true);
    for (int i = 0; i < n; ++i) M(i, i) += T(static_cast<Rt<T>>(n));
    auto R = M;
    if (lapack::potrf(n, R.v.data(), n) != 0) return false;
    for (int j = 0; j < n; ++j)
      for (int i = j + 1; i < n; ++i) R(i, j) = T(0);
    if (!close<T>(diff(naive_mul(R, R, true), M), max_abs(M), n)) return false;
  }
  return true;
}

template <class T>
bool probe_lu() {
  for (int n : probe_sizes) {
    auto A = probe_matrix<T>(n, n, 4);
    auto F = A;
    std::vector<int> ipiv(static_cast<std::size_t>(n));
    if (lapack::getrf(n, n, F.v.data(), n, ipiv.data()) != 0) return false;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = 0; i < n; ++i) {
      if (ipiv[i] < 1 || ipiv[i] > n) return false;
      std::swap(perm[i], perm[ipiv[i] - 1]);
    }
    Dense<T> L(n, n), U(n, n), PA(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (i > j) L(i, j) = F(i, j);
        else U(i, j) = F(i, j);
        if (i == j) L(i, j) = T(1);
        PA(i, j) = A(perm[i], j);
      }
    if (!close<T>(diff(naive_mul(L, U), PA), max_abs(A), n)) return false;
  }
  return true;
}

template <class T>
bool probe_eig_sym() {
  for (int n : probe_sizes) {
    auto B = probe_matrix<T>(n, n, 5);
    Dense<T> A(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) A(i, j) = (B(i, j) + conj_of(B(j, i))) / Rt<T>(2);
    auto V = A;
    std::vector<Rt<T>> w(static_cast<std::size_t>(n));
    if (lapack::syev(n, V.v.data(), n, w.data()) != 0) return false;
    auto AV = naive_mul(A, V);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) AV(i, j) -= V(i, j) * w[static_cast<std::size_t>(j)];
    if (!close<T>(max_abs(AV), max_abs(A), n)) return false;
    if (!std::is_sorted(w.begin(), w.end())) return false;
  }
  return true;
}

template <class T>
bool probe_svd() {
  for (int n : probe_sizes) {
    const int m = n + 2;
    auto A = probe_matrix<T>(m, n, 6);
    auto F = A;
    Dense<T> U(m, m), VT(n, n);
    std::vector<Rt<T>> s(static_cast<std::size_t>(n));
    if (lapack::gesvd(m, n, F.v.data(), m, s.data(), U.v.data(), m, VT.v.data(), n) != 0) return false;
    Dense<T> US(m, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m; ++i) US(i, j) = U(i, j) * s[static_cast<std::size_t>(j)];
    if (!close<T>(diff(naive_mul(US, VT), A), max_abs(A), m)) return false;
  }
  return true;
}

template <class T>
bool probe_solve() {
  for (int n : probe_sizes) {
    auto A = probe_matrix<T>(n, n, 7);
    for (int i = 0; i < n; ++i) A(i, i) += T(static_cast<Rt<T>>(n));
    auto B = probe_matrix<T>(n, 2, 8);
    auto F = A, X = B;
    std::vector<int> ipiv(static_cast<std::size_t>(n));
    if (lapack::gesv(n, 2, F.v.data(), n, ipiv.data(), X.v.data(), n) != 0) return false;
    if (!close<T>(diff(naive_mul(A, X), B), max_abs(A) * max_abs(X), n)) return false;
  }
  return true;
}

#define STREAMLA_PROBE_ALL(fn) (fn<float>() && fn<double>() && fn<cx_float>() && fn<cx_double>())

std::uint32_t verified_routines() {
  if (!lapack::linked()) return 0;
  std::uint32_t caps = 0;
  auto add = [&caps](Routine r, bool ok) {
    if (ok) caps |= static_cast<std::uint32_t>(r);
  };
  add(Routine::gemm, STREAMLA_PROBE_ALL(probe_gemm));
  add(Routine::chol, STREAMLA_PROBE_ALL(probe_chol));
  add(Routine::lu, STREAMLA_PROBE_ALL(probe_lu));
  add(Routine::eig_sym, STREAMLA_PROBE_ALL(probe_eig_sym));
  add(Routine::svd, STREAMLA_PROBE_ALL(probe_svd));
  add(Routine::solve, STREAMLA_PROBE_ALL(probe_solve));
  return caps;
}

#undef STREAMLA_PROBE_ALL

}  // namespace

const Backend& native_backend() {
  static const Backend b{Provider::native, all_routines};
  return b;
}

const Backend& system_backend() {
  static const Backend b{Provider::system, verified_routines()};
  return b;
}

bool system_backend_available() { return system_backend().capabilities != 0; }

const Backend& backend_by_name(std::string_view name) {
  if (name == "native") return native_backend();
  if (name == "system") return system_backend();
  throw DomainError("unknown backend '" + std::string(name) + "' (expected native or system)");
}

const Backend& active_backend() {
  static const Backend& b = [&]() -> const Backend& {
    const char* env = std::getenv("STREAMLA_BACKEND");
    if (env == nullptr || *env == '\0') return native_backend();
    return backend_by_name(env);
  }();
  return b;
}

namespace kernels {

bool gemm_system(const float* A, const float* B, float* C, uword m, uword k, uword n) {
  return gemm_via_blas(A, B, C, m, k, n);
}
bool gemm_system(const double* A, const double* B, double* C, uword m, uword k, uword n) {
  return gemm_via_blas(A, B, C, m, k, n);
}
bool gemm_system(const cx_float* A, const cx_float* B, cx_float* C, uword m, uword k, uword n) {
  return gemm_via_blas(A, B, C, m, k, n);
}
bool gemm_system(const cx_double* A, const cx_double* B, cx_double* C, uword m, uword k, uword n) {
  return gemm_via_blas(A, B, C, m, k, n);
}

}  // namespace kernels

}  // namespace streamla
