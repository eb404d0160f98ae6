#pragma once

// Thin typed wrappers over the Fortran BLAS/LAPACK entry points. Only
// compiled in when STREAMLA_HAVE_LAPACK is defined; otherwise linked() is
// false and callers must not reach the other functions.

#include "streamla/types.hpp"

namespace streamla::lapack {

bool linked();

void gemm(char ta, char tb, int m, int n, int k, const float* a, int lda, const float* b, int ldb,
          float* c, int ldc);
void gemm(char ta, char tb, int m, int n, int k, const double* a, int lda, const double* b, int ldb,
          double* c, int ldc);
void gemm(char ta, char tb, int m, int n, int k, const cx_float* a, int lda, const cx_float* b,
          int ldb, cx_float* c, int ldc);
void gemm(char ta, char tb, int m, int n, int k, const cx_double* a, int lda, const cx_double* b,
          int ldb, cx_double* c, int ldc);

/// Cholesky, upper factor in place. Returns LAPACK info.
int potrf(int n, float* a, int lda);
int potrf(int n, double* a, int lda);
int potrf(int n, cx_float* a, int lda);
int potrf(int n, cx_double* a, int lda);

/// LU with partial pivoting; ipiv is 1-based as in LAPACK.
int getrf(int m, int n, float* a, int lda, int* ipiv);
int getrf(int m, int n, double* a, int lda, int* ipiv);
int getrf(int m, int n, cx_float* a, int lda, int* ipiv);
int getrf(int m, int n, cx_double* a, int lda, int* ipiv);

/// Symmetric / Hermitian eigen decomposition, vectors overwrite a.
int syev(int n, float* a, int lda, float* w);
int syev(int n, double* a, int lda, double* w);
int syev(int n, cx_float* a, int lda, float* w);
int syev(int n, cx_double* a, int lda, double* w);

/// Full SVD: u is m x m, vt is n x n.
int gesvd(int m, int n, float* a, int lda, float* s, float* u, int ldu, float* vt, int ldvt);
int gesvd(int m, int n, double* a, int lda, double* s, double* u, int ldu, double* vt, int ldvt);
int gesvd(int m, int n, cx_float* a, int lda, float* s, cx_float* u, int ldu, cx_float* vt, int ldvt);
int gesvd(int m, int n, cx_double* a, int lda, double* s, cx_double* u, int ldu, cx_double* vt,
          int ldvt);

/// Square solve; a and b overwritten (b holds X on success).
int gesv(int n, int nrhs, float* a, int lda, int* ipiv, float* b, int ldb);
int gesv(int n, int nrhs, double* a, int lda, int* ipiv, double* b, int ldb);
int gesv(int n, int nrhs, cx_float* a, int lda, int* ipiv, cx_float* b, int ldb);
int gesv(int n, int nrhs, cx_double* a, int lda, int* ipiv, cx_double* b, int ldb);

}  // namespace streamla::lapack
