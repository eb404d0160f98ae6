#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "streamla/mat.hpp"

namespace streamla {

enum class Provider { native, system };

/// Kernels a provider can take over. The native provider implements all of
/// them; the system provider reports what the installed BLAS/LAPACK offers.
enum class Routine : std::uint32_t {
  gemm = 1u << 0,
  chol = 1u << 1,
  lu = 1u << 2,
  eig_sym = 1u << 3,
  svd = 1u << 4,
  solve = 1u << 5,
};

struct Backend {
  Provider provider = Provider::native;
  std::uint32_t capabilities = 0;

  bool has(Routine r) const { return (capabilities & static_cast<std::uint32_t>(r)) != 0; }
  /// True when r should be handed to the system library.
  bool delegates(Routine r) const { return provider == Provider::system && has(r); }
  std::string_view name() const { return provider == Provider::native ? "native" : "system"; }
};

const Backend& native_backend();

/// BLAS/LAPACK-backed provider. Each routine is verified on first use with a
/// small known problem; routines that are missing or give wrong answers are
/// left out of the capability set and fall back to native code.
const Backend& system_backend();

/// True when the system provider has at least one routine.
bool system_backend_available();

/// Provider chosen by STREAMLA_BACKEND (native | system) on first use;
/// defaults to native. Read-only after initialisation.
const Backend& active_backend();

/// Parses "native" / "system"; throws DomainError otherwise.
const Backend& backend_by_name(std::string_view name);

namespace kernels {

/// C = A * B for column-major A (m x k), B (k x n), C (m x n).
/// Loop order is fixed so results are bitwise reproducible.
template <Scalar T>
void gemm_native(const T* A, const T* B, T* C, uword m, uword k, uword n) {
  std::fill(C, C + m * n, T(0));
  for (uword j = 0; j < n; ++j) {
    T* c = C + j * m;
    for (uword p = 0; p < k; ++p) {
      const T b = B[p + j * k];
      const T* a = A + p * m;
      for (uword i = 0; i < m; ++i) c[i] += a[i] * b;
    }
  }
}

/// BLAS ?gemm. Returns false when no system BLAS is linked.
bool gemm_system(const float* A, const float* B, float* C, uword m, uword k, uword n);
bool gemm_system(const double* A, const double* B, double* C, uword m, uword k, uword n);
bool gemm_system(const cx_float* A, const cx_float* B, cx_float* C, uword m, uword k, uword n);
bool gemm_system(const cx_double* A, const cx_double* B, cx_double* C, uword m, uword k, uword n);

}  // namespace kernels

/// Matrix product routed through the given backend.
template <Scalar T>
Mat<T> matmul(const Mat<T>& A, const Mat<T>& B, const Backend& be = active_backend()) {
  if (A.n_cols() != B.n_rows())
    detail::throw_shape("matrix multiplication: " + detail::dims(A.n_rows(), A.n_cols()) + " * " +
                        detail::dims(B.n_rows(), B.n_cols()));
  Mat<T> C(A.n_rows(), B.n_cols());
  if (C.is_empty()) return C;
  if constexpr (FloatElement<T>) {
    if (be.delegates(Routine::gemm) &&
        kernels::gemm_system(A.memptr(), B.memptr(), C.memptr(), A.n_rows(), A.n_cols(), B.n_cols()))
      return C;
  }
  kernels::gemm_native(A.memptr(), B.memptr(), C.memptr(), A.n_rows(), A.n_cols(), B.n_cols());
  return C;
}

}  // namespace streamla
