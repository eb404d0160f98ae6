#include "lapack_wrap.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef STREAMLA_HAVE_LAPACK

// Fortran symbols. Trailing size_t arguments are the hidden character
// lengths that gfortran-compiled libraries expect.
extern "C" {
void sgemm_(const char*, const char*, const int*, const int*, const int*, const float*, const float*,
            const int*, const float*, const int*, const float*, float*, const int*, std::size_t,
            std::size_t);
void dgemm_(const char*, const char*, const int*, const int*, const int*, const double*, const double*,
            const int*, const double*, const int*, const double*, double*, const int*, std::size_t,
            std::size_t);
void cgemm_(const char*, const char*, const int*, const int*, const int*, const void*, const void*,
            const int*, const void*, const int*, const void*, void*, const int*, std::size_t,
            std::size_t);
void zgemm_(const char*, const char*, const int*, const int*, const int*, const void*, const void*,
            const int*, const void*, const int*, const void*, void*, const int*, std::size_t,
            std::size_t);

void spotrf_(const char*, const int*, float*, const int*, int*, std::size_t);
void dpotrf_(const char*, const int*, double*, const int*, int*, std::size_t);
void cpotrf_(const char*, const int*, void*, const int*, int*, std::size_t);
void zpotrf_(const char*, const int*, void*, const int*, int*, std::size_t);

void sgetrf_(const int*, const int*, float*, const int*, int*, int*);
void dgetrf_(const int*, const int*, double*, const int*, int*, int*);
void cgetrf_(const int*, const int*, void*, const int*, int*, int*);
void zgetrf_(const int*, const int*, void*, const int*, int*, int*);

void ssyev_(const char*, const char*, const int*, float*, const int*, float*, float*, const int*, int*,
            std::size_t, std::size_t);
void dsyev_(const char*, const char*, const int*, double*, const int*, double*, double*, const int*,
            int*, std::size_t, std::size_t);
void cheev_(const char*, const char*, const int*, void*, const int*, float*, void*, const int*, float*,
            int*, std::size_t, std::size_t);
void zheev_(const char*, const char*, const int*, void*, const int*, double*, void*, const int*,
            double*, int*, std::size_t, std::size_t);

void sgesvd_(const char*, const char*, const int*, const int*, float*, const int*, float*, float*,
             const int*, float*, const int*, float*, const int*, int*, std::size_t, std::size_t);
void dgesvd_(const char*, const char*, const int*, const int*, double*, const int*, double*, double*,
             const int*, double*, const int*, double*, const int*, int*, std::size_t, std::size_t);
void cgesvd_(const char*, const char*, const int*, const int*, void*, const int*, float*, void*,
             const int*, void*, const int*, void*, const int*, float*, int*, std::size_t, std::size_t);
void zgesvd_(const char*, const char*, const int*, const int*, void*, const int*, double*, void*,
             const int*, void*, const int*, void*, const int*, double*, int*, std::size_t, std::size_t);

void sgesv_(const int*, const int*, float*, const int*, int*, float*, const int*, int*);
void dgesv_(const int*, const int*, double*, const int*, int*, double*, const int*, int*);
void cgesv_(const int*, const int*, void*, const int*, int*, void*, const int*, int*);
void zgesv_(const int*, const int*, void*, const int*, int*, void*, const int*, int*);
}

namespace streamla::lapack {

bool linked() { return true; }

void gemm(char ta, char tb, int m, int n, int k, const float* a, int lda, const float* b, int ldb,
          float* c, int ldc) {
  const float one = 1, zero = 0;
  sgemm_(&ta, &tb, &m, &n, &k, &one, a, &lda, b, &ldb, &zero, c, &ldc, 1, 1);
}
void gemm(char ta, char tb, int m, int n, int k, const double* a, int lda, const double* b, int ldb,
          double* c, int ldc) {
  const double one = 1, zero = 0;
  dgemm_(&ta, &tb, &m, &n, &k, &one, a, &lda, b, &ldb, &zero, c, &ldc, 1, 1);
}
void gemm(char ta, char tb, int m, int n, int k, const cx_float* a, int lda, const cx_float* b,
          int ldb, cx_float* c, int ldc) {
  const cx_float one = 1, zero = 0;
  cgemm_(&ta, &tb, &m, &n, &k, &one, a, &lda, b, &ldb, &zero, c, &ldc, 1, 1);
}
void gemm(char ta, char tb, int m, int n, int k, const cx_double* a, int lda, const cx_double* b,
          int ldb, cx_double* c, int ldc) {
  const cx_double one = 1, zero = 0;
  zgemm_(&ta, &tb, &m, &n, &k, &one, a, &lda, b, &ldb, &zero, c, &ldc, 1, 1);
}

int potrf(int n, float* a, int lda) { int info = 0; spotrf_("U", &n, a, &lda, &info, 1); return info; }
int potrf(int n, double* a, int lda) { int info = 0; dpotrf_("U", &n, a, &lda, &info, 1); return info; }
int potrf(int n, cx_float* a, int lda) { int info = 0; cpotrf_("U", &n, a, &lda, &info, 1); return info; }
int potrf(int n, cx_double* a, int lda) { int info = 0; zpotrf_("U", &n, a, &lda, &info, 1); return info; }

int getrf(int m, int n, float* a, int lda, int* ipiv) { int info = 0; sgetrf_(&m, &n, a, &lda, ipiv, &info); return info; }
int getrf(int m, int n, double* a, int lda, int* ipiv) { int info = 0; dgetrf_(&m, &n, a, &lda, ipiv, &info); return info; }
int getrf(int m, int n, cx_float* a, int lda, int* ipiv) { int info = 0; cgetrf_(&m, &n, a, &lda, ipiv, &info); return info; }
int getrf(int m, int n, cx_double* a, int lda, int* ipiv) { int info = 0; zgetrf_(&m, &n, a, &lda, ipiv, &info); return info; }

namespace {

// Workspace-query-then-run for the real symmetric drivers.
template <class T, class Fn>
int run_syev(Fn fn, int n, T* a, int lda, T* w) {
  int info = 0, lwork = -1;
  T query = 0;
  fn("V", "U", &n, a, &lda, w, &query, &lwork, &info, 1, 1);
  lwork = std::max(1, static_cast<int>(query));
  std::vector<T> work(lwork);
  fn("V", "U", &n, a, &lda, w, work.data(), &lwork, &info, 1, 1);
  return info;
}

template <class C, class R, class Fn>
int run_heev(Fn fn, int n, C* a, int lda, R* w) {
  int info = 0, lwork = -1;
  C query = 0;
  std::vector<R> rwork(std::max(1, 3 * n - 2));
  fn("V", "U", &n, a, &lda, w, &query, &lwork, rwork.data(), &info, 1, 1);
  lwork = std::max(1, static_cast<int>(query.real()));
  std::vector<C> work(lwork);
  fn("V", "U", &n, a, &lda, w, work.data(), &lwork, rwork.data(), &info, 1, 1);
  return info;
}

template <class T, class Fn>
int run_gesvd(Fn fn, int m, int n, T* a, int lda, T* s, T* u, int ldu, T* vt, int ldvt) {
  int info = 0, lwork = -1;
  T query = 0;
  fn("A", "A", &m, &n, a, &lda, s, u, &ldu, vt, &ldvt, &query, &lwork, &info, 1, 1);
  lwork = std::max(1, static_cast<int>(query));
  std::vector<T> work(lwork);
  fn("A", "A", &m, &n, a, &lda, s, u, &ldu, vt, &ldvt, work.data(), &lwork, &info, 1, 1);
  return info;
}

template <class C, class R, class Fn>
int run_cgesvd(Fn fn, int m, int n, C* a, int lda, R* s, C* u, int ldu, C* vt, int ldvt) {
  int info = 0, lwork = -1;
  C query = 0;
  std::vector<R> rwork(std::max(1, 5 * std::min(m, n)));
  fn("A", "A", &m, &n, a, &lda, s, u, &ldu, vt, &ldvt, &query, &lwork, rwork.data(), &info, 1, 1);
  lwork = std::max(1, static_cast<int>(query.real()));
  std::vector<C> work(lwork);
  fn("A", "A", &m, &n, a, &lda, s, u, &ldu, vt, &ldvt, work.data(), &lwork, rwork.data(), &info, 1, 1);
  return info;
}

}  // namespace

int syev(int n, float* a, int lda, float* w) { return run_syev(ssyev_, n, a, lda, w); }
int syev(int n, double* a, int lda, double* w) { return run_syev(dsyev_, n, a, lda, w); }
int syev(int n, cx_float* a, int lda, float* w) {
  return run_heev<cx_float, float>(
      [](auto... args) { cheev_(args...); }, n, a, lda, w);
}
int syev(int n, cx_double* a, int lda, double* w) {
  return run_heev<cx_double, double>(
      [](auto... args) { zheev_(args...); }, n, a, lda, w);
}

int gesvd(int m, int n, float* a, int lda, float* s, float* u, int ldu, float* vt, int ldvt) {
  return run_gesvd(sgesvd_, m, n, a, lda, s, u, ldu, vt, ldvt);
}
int gesvd(int m, int n, double* a, int lda, double* s, double* u, int ldu, double* vt, int ldvt) {
  return run_gesvd(dgesvd_, m, n, a, lda, s, u, ldu, vt, ldvt);
}
int gesvd(int m, int n, cx_float* a, int lda, float* s, cx_float* u, int ldu, cx_float* vt, int ldvt) {
  return run_cgesvd<cx_float, float>([](auto... args) { cgesvd_(args...); }, m, n, a, lda, s, u, ldu,
                                     vt, ldvt);
}
int gesvd(int m, int n, cx_double* a, int lda, double* s, cx_double* u, int ldu, cx_double* vt,
          int ldvt) {
  return run_cgesvd<cx_double, double>([](auto... args) { zgesvd_(args...); }, m, n, a, lda, s, u,
                                       ldu, vt, ldvt);
}

int gesv(int n, int nrhs, float* a, int lda, int* ipiv, float* b, int ldb) { int info = 0; sgesv_(&n, &nrhs, a, &lda, ipiv, b, &ldb, &info); return info; }
int gesv(int n, int nrhs, double* a, int lda, int* ipiv, double* b, int ldb) { int info = 0; dgesv_(&n, &nrhs, a, &lda, ipiv, b, &ldb, &info); return info; }
int gesv(int n, int nrhs, cx_float* a, int lda, int* ipiv, cx_float* b, int ldb) { int info = 0; cgesv_(&n, &nrhs, a, &lda, ipiv, b, &ldb, &info); return info; }
int gesv(int n, int nrhs, cx_double* a, int lda, int* ipiv, cx_double* b, int ldb) { int info = 0; zgesv_(&n, &nrhs, a, &lda, ipiv, b, &ldb, &info); return info; }

}  // namespace streamla::lapack

#else

namespace streamla::lapack {

bool linked() { return false; }

// Unreachable without LAPACK: the system backend advertises no capabilities.
void gemm(char, char, int, int, int, const float*, int, const float*, int, float*, int) {}
void gemm(char, char, int, int, int, const double*, int, const double*, int, double*, int) {}
void gemm(char, char, int, int, int, const cx_float*, int, const cx_float*, int, cx_float*, int) {}
void gemm(char, char, int, int, int, const cx_double*, int, const cx_double*, int, cx_double*, int) {}
int potrf(int, float*, int) { return -1; }
int potrf(int, double*, int) { return -1; }
int potrf(int, cx_float*, int) { return -1; }
int potrf(int, cx_double*, int) { return -1; }
int getrf(int, int, float*, int, int*) { return -1; }
int getrf(int, int, double*, int, int*) { return -1; }
int getrf(int, int, cx_float*, int, int*) { return -1; }
int getrf(int, int, cx_double*, int, int*) { return -1; }
int syev(int, float*, int, float*) { return -1; }
int syev(int, double*, int, double*) { return -1; }
int syev(int, cx_float*, int, float*) { return -1; }
int syev(int, cx_double*, int, double*) { return -1; }
int gesvd(int, int, float*, int, float*, float*, int, float*, int) { return -1; }
int gesvd(int, int, double*, int, double*, double*, int, double*, int) { return -1; }
int gesvd(int, int, cx_float*, int, float*, cx_float*, int, cx_float*, int) { return -1; }
int gesvd(int, int, cx_double*, int, double*, cx_double*, int, cx_double*, int) { return -1; }
int gesv(int, int, float*, int, int*, float*, int) { return -1; }
int gesv(int, int, double*, int, int*, double*, int) { return -1; }
int gesv(int, int, cx_float*, int, int*, cx_float*, int) { return -1; }
int gesv(int, int, cx_double*, int, int*, cx_double*, int) { return -1; }

}  // namespace streamla::lapack

#endif
