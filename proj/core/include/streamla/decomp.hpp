#pragma once

// Decompositions, inverses and solvers for the four floating-point kinds.
//
// Every routine has a try_ form that returns std::nullopt when the
// factorisation does not exist or fails to converge, and a throwing form
// that raises FactorisationError (or DomainError / ShapeError for bad
// arguments, which the try_ forms also raise).

#include <optional>

#include "streamla/backend.hpp"
#include "streamla/mat.hpp"

namespace streamla {

template <FloatElement T>
struct LuResult {
  Mat<T> L;  ///< unit lower triangular (m x min(m,n))
  Mat<T> U;  ///< upper triangular (min(m,n) x n)
  Mat<T> P;  ///< permutation, P * X == L * U
};

template <FloatElement T>
struct QrResult {
  Mat<T> Q;
  Mat<T> R;
};

template <FloatElement T>
struct SvdResult {
  Mat<T> U;
  Mat<real_t<T>> s;  ///< column vector, descending
  Mat<T> V;          ///< X == U * diagmat(s) * V.t()
};

template <FloatElement T>
struct EigSymResult {
  Mat<real_t<T>> eigval;  ///< column vector, ascending
  Mat<T> eigvec;
};

template <FloatElement T>
struct EigGenResult {
  Mat<complex_t<T>> eigval;
  Mat<complex_t<T>> eigvec;  ///< unit 2-norm columns
};

/// Real inputs give a real quasi-triangular S (2x2 blocks for complex
/// pairs); complex inputs give a triangular S. X == Z * S * Z.t().
template <FloatElement T>
struct SchurResult {
  Mat<T> S;
  Mat<T> Z;
};

/// Complex generalised Schur form: A == Q * AA * Z.t(), B == Q * BB * Z.t(),
/// AA and BB upper triangular.
template <FloatElement T>
struct QzResult {
  Mat<complex_t<T>> AA;
  Mat<complex_t<T>> BB;
  Mat<complex_t<T>> Q;
  Mat<complex_t<T>> Z;
};

// ---- factorisations ------------------------------------------------------------

template <FloatElement T>
std::optional<Mat<T>> try_chol(const Mat<T>& X, const Backend& be = active_backend());
template <FloatElement T>
Mat<T> chol(const Mat<T>& X, const Backend& be = active_backend());

template <FloatElement T>
LuResult<T> lu(const Mat<T>& X, const Backend& be = active_backend());

template <FloatElement T>
QrResult<T> qr(const Mat<T>& X);
template <FloatElement T>
QrResult<T> qr_econ(const Mat<T>& X);

template <FloatElement T>
std::optional<SvdResult<T>> try_svd(const Mat<T>& X, const Backend& be = active_backend());
template <FloatElement T>
SvdResult<T> svd(const Mat<T>& X, const Backend& be = active_backend());
/// U is m x k, V is n x k, k = min(m, n).
template <FloatElement T>
std::optional<SvdResult<T>> try_svd_econ(const Mat<T>& X, const Backend& be = active_backend());
template <FloatElement T>
SvdResult<T> svd_econ(const Mat<T>& X, const Backend& be = active_backend());
/// Singular values only.
template <FloatElement T>
Mat<real_t<T>> svd_values(const Mat<T>& X, const Backend& be = active_backend());

// ---- eigen ---------------------------------------------------------------------

template <FloatElement T>
std::optional<EigSymResult<T>> try_eig_sym(const Mat<T>& X, const Backend& be = active_backend());
template <FloatElement T>
EigSymResult<T> eig_sym(const Mat<T>& X, const Backend& be = active_backend());

template <FloatElement T>
std::optional<EigGenResult<T>> try_eig_gen(const Mat<T>& X);
template <FloatElement T>
EigGenResult<T> eig_gen(const Mat<T>& X);

/// Generalised eigenpairs: A * v == lambda * B * v. Infinite eigenvalues
/// (singular B) come back as complex infinity.
template <FloatElement T>
std::optional<EigGenResult<T>> try_eig_pair(const Mat<T>& A, const Mat<T>& B);
template <FloatElement T>
EigGenResult<T> eig_pair(const Mat<T>& A, const Mat<T>& B);

template <FloatElement T>
std::optional<SchurResult<T>> try_schur(const Mat<T>& X);
template <FloatElement T>
SchurResult<T> schur(const Mat<T>& X);

template <FloatElement T>
std::optional<QzResult<T>> try_qz(const Mat<T>& A, const Mat<T>& B);
template <FloatElement T>
QzResult<T> qz(const Mat<T>& A, const Mat<T>& B);

// ---- inverses and solvers --------------------------------------------------------

/// Fails when X is singular or its reciprocal condition number is below eps.
template <FloatElement T>
std::optional<Mat<T>> try_inv(const Mat<T>& X, const Backend& be = active_backend());
template <FloatElement T>
Mat<T> inv(const Mat<T>& X, const Backend& be = active_backend());

template <FloatElement T>
std::optional<Mat<T>> try_inv_sympd(const Mat<T>& X, const Backend& be = active_backend());
template <FloatElement T>
Mat<T> inv_sympd(const Mat<T>& X, const Backend& be = active_backend());

/// Moore-Penrose pseudo-inverse. tol < 0 selects max(m,n) * eps * s0.
template <FloatElement T>
Mat<T> pinv(const Mat<T>& X, real_t<T> tol = -1, const Backend& be = active_backend());

/// Square A: LU solve, fails when A is singular. Non-square A: minimum-norm
/// least-squares solution via the SVD (never fails).
template <FloatElement T>
std::optional<Mat<T>> try_solve(const Mat<T>& A, const Mat<T>& B, const Backend& be = active_backend());
template <FloatElement T>
Mat<T> solve(const Mat<T>& A, const Mat<T>& B, const Backend& be = active_backend());

/// Least-squares solution for any A (square included), via the SVD.
template <FloatElement T>
Mat<T> solve_lstsq(const Mat<T>& A, const Mat<T>& B, const Backend& be = active_backend());

template <FloatElement T>
Mat<T> null(const Mat<T>& X, real_t<T> tol = -1);
template <FloatElement T>
Mat<T> orth(const Mat<T>& X, real_t<T> tol = -1);

/// Solves A * X + X * B + C == 0.
template <FloatElement T>
std::optional<Mat<T>> try_syl(const Mat<T>& A, const Mat<T>& B, const Mat<T>& C);
template <FloatElement T>
Mat<T> syl(const Mat<T>& A, const Mat<T>& B, const Mat<T>& C);

}  // namespace streamla
