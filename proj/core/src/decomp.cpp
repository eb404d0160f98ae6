#include "streamla/decomp.hpp"

#include <climits>

#include "lapack_wrap.hpp"
#include "linalg_kernels.hpp"

namespace streamla {

namespace {

using la::R;

template <class T>
void require_square(const Mat<T>& X, const char* what) {
  if (!X.is_square())
    detail::throw_shape(std::string(what) + ": matrix must be square, got " + detail::dims(X.n_rows(), X.n_cols()));
}

template <class T>
void require_finite(const Mat<T>& X, const char* what) {
  if (!X.is_finite()) throw DomainError(std::string(what) + ": matrix contains NaN or Inf");
}

template <class T>
Mat<T> require_hermitian(const Mat<T>& X, const char* what) {
  require_square(X, what);
  if (!la::is_hermitian_within(X))
    throw DomainError(std::string(what) + ": matrix is not symmetric/hermitian within tolerance");
  return la::hermitian_part(X);
}

bool fits_int(uword a, uword b = 0) {
  return a <= static_cast<uword>(INT_MAX) && b <= static_cast<uword>(INT_MAX);
}

template <class T>
Mat<complex_t<T>> to_complex(const Mat<T>& X) {
  Mat<complex_t<T>> out(X.n_rows(), X.n_cols());
  for (uword i = 0; i < X.n_elem(); ++i) out.at(i) = complex_t<T>(X.at(i));
  return out;
}

template <class T>
Mat<T> from_complex(const Mat<complex_t<T>>& X) {
  if constexpr (ComplexElement<T>) {
    return X;
  } else {
    Mat<T> out(X.n_rows(), X.n_cols());
    for (uword i = 0; i < X.n_elem(); ++i) out.at(i) = X.at(i).real();
    return out;
  }
}

template <class Rt>
Mat<Rt> to_colvec(const std::vector<Rt>& v) {
  return Mat<Rt>::from_column_major(v.size(), 1, std::vector<Rt>(v));
}

template <class T>
Mat<T> take_cols(const Mat<T>& X, uword c0, uword c1) {
  Mat<T> out(X.n_rows(), c1 - c0);
  for (uword j = c0; j < c1; ++j)
    for (uword i = 0; i < X.n_rows(); ++i) out.at(i, j - c0) = X.at(i, j);
  return out;
}

// ---- SVD core ------------------------------------------------------------------

template <class T>
std::optional<SvdResult<T>> svd_impl(const Mat<T>& X, bool full, const Backend& be) {
  require_finite(X, "svd");
  const uword m = X.n_rows(), n = X.n_cols(), k = std::min(m, n);
  SvdResult<T> out;
  if (X.is_empty()) {
    out.U = full ? Mat<T>::eye(m, m) : Mat<T>(m, 0);
    out.V = full ? Mat<T>::eye(n, n) : Mat<T>(n, 0);
    out.s.set_size(0, 1);
    return out;
  }
  if (be.delegates(Routine::svd) && fits_int(m, n)) {
    Mat<T> A = X, U(m, m), VT(n, n);
    std::vector<R<T>> s(k);
    const int im = static_cast<int>(m), in = static_cast<int>(n);
    if (lapack::gesvd(im, in, A.memptr(), im, s.data(), U.memptr(), im, VT.memptr(), in) != 0)
      return std::nullopt;
    out.U = full ? U : take_cols(U, 0, k);
    Mat<T> V = la::adjoint(VT);
    out.V = full ? V : take_cols(V, 0, k);
    out.s = to_colvec(s);
    return out;
  }
  std::vector<R<T>> s;
  if (!la::svd_native(X, out.U, s, out.V, full)) return std::nullopt;
  out.s = to_colvec(s);
  return out;
}

// ---- eigen helpers ---------------------------------------------------------------

template <class C>
EigGenResult<C> eig_from_schur(const Mat<C>& T, const Mat<C>& Z) {
  EigGenResult<C> out;
  const uword n = T.n_rows();
  out.eigval.set_size(n, 1);
  for (uword i = 0; i < n; ++i) out.eigval.at(i) = T.at(i, i);
  out.eigvec = la::mul(Z, la::triangular_eigvecs(T, Mat<C>()));
  la::normalise_columns(out.eigvec);
  return out;
}

}  // namespace

// ---- chol ----------------------------------------------------------------------

template <FloatElement T>
std::optional<Mat<T>> try_chol(const Mat<T>& X, const Backend& be) {
  const Mat<T> A = require_hermitian(X, "chol");
  require_finite(A, "chol");
  const uword n = A.n_rows();
  if (be.delegates(Routine::chol) && fits_int(n) && n > 0) {
    Mat<T> Rm = A;
    if (lapack::potrf(static_cast<int>(n), Rm.memptr(), static_cast<int>(n)) != 0) return std::nullopt;
    for (uword j = 0; j < n; ++j)
      for (uword i = j + 1; i < n; ++i) Rm.at(i, j) = T(0);
    return Rm;
  }
  Mat<T> Rm;
  if (!la::chol_upper(A, Rm)) return std::nullopt;
  return Rm;
}

template <FloatElement T>
Mat<T> chol(const Mat<T>& X, const Backend& be) {
  auto r = try_chol(X, be);
  if (!r) throw FactorisationError("chol: matrix is not positive definite");
  return std::move(*r);
}

// ---- lu ------------------------------------------------------------------------

template <FloatElement T>
LuResult<T> lu(const Mat<T>& X, const Backend& be) {
  require_finite(X, "lu");
  const uword m = X.n_rows(), n = X.n_cols(), k = std::min(m, n);
  Mat<T> A = X;
  std::vector<uword> perm(m);
  std::iota(perm.begin(), perm.end(), uword(0));
  if (be.delegates(Routine::lu) && fits_int(m, n) && k > 0) {
    std::vector<int> ipiv(k);
    const int info = lapack::getrf(static_cast<int>(m), static_cast<int>(n), A.memptr(),
                                   static_cast<int>(m), ipiv.data());
    if (info < 0) throw FactorisationError("lu: invalid argument to LAPACK getrf");
    for (uword i = 0; i < k; ++i) std::swap(perm[i], perm[static_cast<uword>(ipiv[i] - 1)]);
  } else {
    int parity = 0;
    la::lu_inplace(A, perm, parity);
  }
  LuResult<T> out;
  out.L.set_size(m, k);
  out.U.set_size(k, n);
  out.P.set_size(m, m);
  for (uword j = 0; j < k; ++j)
    for (uword i = 0; i < m; ++i) out.L.at(i, j) = i == j ? T(1) : (i > j ? A.at(i, j) : T(0));
  for (uword j = 0; j < n; ++j)
    for (uword i = 0; i < k && i <= j; ++i) out.U.at(i, j) = A.at(i, j);
  for (uword i = 0; i < m; ++i) out.P.at(i, perm[i]) = T(1);
  return out;
}

// ---- qr ------------------------------------------------------------------------

template <FloatElement T>
QrResult<T> qr(const Mat<T>& X) {
  require_finite(X, "qr");
  QrResult<T> out;
  la::qr_full(X, out.Q, out.R);
  return out;
}

template <FloatElement T>
QrResult<T> qr_econ(const Mat<T>& X) {
  QrResult<T> full = qr(X);
  const uword m = X.n_rows(), n = X.n_cols(), k = std::min(m, n);
  if (k == m) return full;
  QrResult<T> out;
  out.Q = take_cols(full.Q, 0, k);
  out.R.set_size(k, n);
  for (uword j = 0; j < n; ++j)
    for (uword i = 0; i < k; ++i) out.R.at(i, j) = full.R.at(i, j);
  return out;
}

// ---- svd -----------------------------------------------------------------------

template <FloatElement T>
std::optional<SvdResult<T>> try_svd(const Mat<T>& X, const Backend& be) {
  return svd_impl(X, true, be);
}

template <FloatElement T>
SvdResult<T> svd(const Mat<T>& X, const Backend& be) {
  auto r = try_svd(X, be);
  if (!r) throw FactorisationError("svd: failed to converge");
  return std::move(*r);
}

template <FloatElement T>
std::optional<SvdResult<T>> try_svd_econ(const Mat<T>& X, const Backend& be) {
  return svd_impl(X, false, be);
}

template <FloatElement T>
SvdResult<T> svd_econ(const Mat<T>& X, const Backend& be) {
  auto r = try_svd_econ(X, be);
  if (!r) throw FactorisationError("svd_econ: failed to converge");
  return std::move(*r);
}

template <FloatElement T>
Mat<real_t<T>> svd_values(const Mat<T>& X, const Backend& be) {
  return svd_econ(X, be).s;
}

// ---- eigen ---------------------------------------------------------------------

template <FloatElement T>
std::optional<EigSymResult<T>> try_eig_sym(const Mat<T>& X, const Backend& be) {
  const Mat<T> A = require_hermitian(X, "eig_sym");
  require_finite(A, "eig_sym");
  const uword n = A.n_rows();
  EigSymResult<T> out;
  if (be.delegates(Routine::eig_sym) && fits_int(n) && n > 0) {
    Mat<T> V = A;
    std::vector<R<T>> w(n);
    if (lapack::syev(static_cast<int>(n), V.memptr(), static_cast<int>(n), w.data()) != 0)
      return std::nullopt;
    out.eigval = to_colvec(w);
    out.eigvec = std::move(V);
    return out;
  }
  std::vector<R<T>> w;
  if (!la::eig_hermitian(A, w, out.eigvec)) return std::nullopt;
  out.eigval = to_colvec(w);
  return out;
}

template <FloatElement T>
EigSymResult<T> eig_sym(const Mat<T>& X, const Backend& be) {
  auto r = try_eig_sym(X, be);
  if (!r) throw FactorisationError("eig_sym: failed to converge");
  return std::move(*r);
}

template <FloatElement T>
std::optional<EigGenResult<T>> try_eig_gen(const Mat<T>& X) {
  require_square(X, "eig_gen");
  require_finite(X, "eig_gen");
  using C = complex_t<T>;
  Mat<C> Tm, Z;
  if (!la::complex_schur(to_complex(X), Tm, Z)) return std::nullopt;
  auto r = eig_from_schur(Tm, Z);
  return EigGenResult<T>{std::move(r.eigval), std::move(r.eigvec)};
}

template <FloatElement T>
EigGenResult<T> eig_gen(const Mat<T>& X) {
  auto r = try_eig_gen(X);
  if (!r) throw FactorisationError("eig_gen: failed to converge");
  return std::move(*r);
}

template <FloatElement T>
std::optional<QzResult<T>> try_qz(const Mat<T>& A, const Mat<T>& B) {
  require_square(A, "qz");
  if (B.n_rows() != A.n_rows() || B.n_cols() != A.n_cols())
    detail::throw_shape("qz: A and B must have the same shape");
  require_finite(A, "qz");
  require_finite(B, "qz");
  QzResult<T> out;
  out.AA = to_complex(A);
  out.BB = to_complex(B);
  if (!la::complex_qz(out.AA, out.BB, out.Q, out.Z)) return std::nullopt;
  return out;
}

template <FloatElement T>
QzResult<T> qz(const Mat<T>& A, const Mat<T>& B) {
  auto r = try_qz(A, B);
  if (!r) throw FactorisationError("qz: failed to converge");
  return std::move(*r);
}

template <FloatElement T>
std::optional<EigGenResult<T>> try_eig_pair(const Mat<T>& A, const Mat<T>& B) {
  using C = complex_t<T>;
  auto q = try_qz(A, B);
  if (!q) return std::nullopt;
  const uword n = A.n_rows();
  EigGenResult<T> out;
  out.eigval.set_size(n, 1);
  for (uword i = 0; i < n; ++i) {
    const C a = q->AA.at(i, i), b = q->BB.at(i, i);
    out.eigval.at(i) = b == C(0) ? C(std::numeric_limits<R<T>>::infinity(), 0) : a / b;
  }
  out.eigvec = la::mul(q->Z, la::triangular_eigvecs(q->AA, q->BB));
  la::normalise_columns(out.eigvec);
  return out;
}

template <FloatElement T>
EigGenResult<T> eig_pair(const Mat<T>& A, const Mat<T>& B) {
  auto r = try_eig_pair(A, B);
  if (!r) throw FactorisationError("eig_pair: failed to converge");
  return std::move(*r);
}

template <FloatElement T>
std::optional<SchurResult<T>> try_schur(const Mat<T>& X) {
  require_square(X, "schur");
  require_finite(X, "schur");
  SchurResult<T> out;
  bool ok;
  if constexpr (ComplexElement<T>) ok = la::complex_schur(X, out.S, out.Z);
  else ok = la::real_schur(X, out.S, out.Z);
  if (!ok) return std::nullopt;
  return out;
}

template <FloatElement T>
SchurResult<T> schur(const Mat<T>& X) {
  auto r = try_schur(X);
  if (!r) throw FactorisationError("schur: failed to converge");
  return std::move(*r);
}

// ---- inverses ------------------------------------------------------------------

template <FloatElement T>
std::optional<Mat<T>> try_inv(const Mat<T>& X, const Backend& be) {
  require_square(X, "inv");
  require_finite(X, "inv");
  const uword n = X.n_rows();
  if (n == 0) return Mat<T>();
  Mat<T> Xi;
  if (be.delegates(Routine::solve) && fits_int(n)) {
    Mat<T> A = X;
    Xi = Mat<T>::eye(n, n);
    std::vector<int> ipiv(n);
    const int in = static_cast<int>(n);
    if (lapack::gesv(in, in, A.memptr(), in, ipiv.data(), Xi.memptr(), in) != 0) return std::nullopt;
  } else {
    Mat<T> A = X;
    std::vector<uword> perm;
    int parity = 0;
    if (!la::lu_inplace(A, perm, parity)) return std::nullopt;
    Xi = la::lu_solve(A, perm, Mat<T>::eye(n, n));
  }
  if (!Xi.is_finite()) return std::nullopt;
  const R<T> rc = R<T>(1) / (la::norm_one(X) * la::norm_one(Xi));
  if (!(rc >= la::eps<T>())) return std::nullopt;
  return Xi;
}

template <FloatElement T>
Mat<T> inv(const Mat<T>& X, const Backend& be) {
  auto r = try_inv(X, be);
  if (!r) throw FactorisationError("inv: matrix is singular");
  return std::move(*r);
}

template <FloatElement T>
std::optional<Mat<T>> try_inv_sympd(const Mat<T>& X, const Backend& be) {
  auto Rm = try_chol(X, be);
  if (!Rm) return std::nullopt;
  const uword n = X.n_rows();
  // X⁻¹ = R⁻¹ R⁻ᴴ
  Mat<T> Ri = la::solve_upper(*Rm, Mat<T>::eye(n, n));
  Mat<T> out = la::mul_bh(Ri, Ri);
  return la::hermitian_part(out);
}

template <FloatElement T>
Mat<T> inv_sympd(const Mat<T>& X, const Backend& be) {
  auto r = try_inv_sympd(X, be);
  if (!r) throw FactorisationError("inv_sympd: matrix is not positive definite");
  return std::move(*r);
}

template <FloatElement T>
Mat<T> pinv(const Mat<T>& X, real_t<T> tol, const Backend& be) {
  const uword m = X.n_rows(), n = X.n_cols();
  if (X.is_empty()) return Mat<T>(n, m);
  auto s = svd_econ(X, be);
  const uword k = s.s.n_elem();
  const R<T> cut = tol >= 0 ? tol
                            : static_cast<R<T>>(std::max(m, n)) * la::eps<T>() * (k > 0 ? s.s.at(0) : R<T>(0));
  Mat<T> out(n, m);
  for (uword p = 0; p < k; ++p) {
    const R<T> sv = s.s.at(p);
    if (!(sv > cut)) continue;
    for (uword j = 0; j < m; ++j) {
      const T u = conj_of(s.U.at(j, p)) / sv;
      for (uword i = 0; i < n; ++i) out.at(i, j) += s.V.at(i, p) * u;
    }
  }
  return out;
}

// ---- solvers -------------------------------------------------------------------

template <FloatElement T>
Mat<T> solve_lstsq(const Mat<T>& A, const Mat<T>& B, const Backend& be) {
  if (A.n_rows() != B.n_rows())
    detail::throw_shape("solve: A has " + std::to_string(A.n_rows()) + " rows but B has " +
                        std::to_string(B.n_rows()));
  return la::mul(pinv(A, R<T>(-1), be), B);
}

template <FloatElement T>
std::optional<Mat<T>> try_solve(const Mat<T>& A, const Mat<T>& B, const Backend& be) {
  if (A.n_rows() != B.n_rows())
    detail::throw_shape("solve: A has " + std::to_string(A.n_rows()) + " rows but B has " +
                        std::to_string(B.n_rows()));
  require_finite(A, "solve");
  if (!A.is_square()) return solve_lstsq(A, B, be);
  const uword n = A.n_rows();
  if (n == 0) return Mat<T>(0, B.n_cols());
  if (be.delegates(Routine::solve) && fits_int(n, B.n_cols())) {
    Mat<T> LU = A, X = B;
    std::vector<int> ipiv(n);
    const int in = static_cast<int>(n);
    if (lapack::gesv(in, static_cast<int>(B.n_cols()), LU.memptr(), in, ipiv.data(), X.memptr(), in) != 0)
      return std::nullopt;
    return X;
  }
  Mat<T> LU = A;
  std::vector<uword> perm;
  int parity = 0;
  if (!la::lu_inplace(LU, perm, parity)) return std::nullopt;
  return la::lu_solve(LU, perm, B);
}

template <FloatElement T>
Mat<T> solve(const Mat<T>& A, const Mat<T>& B, const Backend& be) {
  auto r = try_solve(A, B, be);
  if (!r) throw FactorisationError("solve: matrix is singular");
  return std::move(*r);
}

template <FloatElement T>
Mat<T> null(const Mat<T>& X, real_t<T> tol) {
  const uword m = X.n_rows(), n = X.n_cols();
  auto s = svd(X, native_backend());
  uword r = 0;
  if (tol < 0) r = la::numerical_rank(std::vector<R<T>>(s.s.begin(), s.s.end()), m, n);
  else
    for (const auto v : s.s) r += v > tol ? 1 : 0;
  return take_cols(s.V, r, n);
}

template <FloatElement T>
Mat<T> orth(const Mat<T>& X, real_t<T> tol) {
  const uword m = X.n_rows(), n = X.n_cols();
  auto s = svd_econ(X, native_backend());
  uword r = 0;
  if (tol < 0) r = la::numerical_rank(std::vector<R<T>>(s.s.begin(), s.s.end()), m, n);
  else
    for (const auto v : s.s) r += v > tol ? 1 : 0;
  return take_cols(s.U, 0, r);
}

template <FloatElement T>
std::optional<Mat<T>> try_syl(const Mat<T>& A, const Mat<T>& B, const Mat<T>& C) {
  require_square(A, "syl");
  require_square(B, "syl");
  if (C.n_rows() != A.n_rows() || C.n_cols() != B.n_rows())
    detail::throw_shape("syl: C must be " + detail::dims(A.n_rows(), B.n_rows()));
  require_finite(A, "syl");
  require_finite(B, "syl");
  require_finite(C, "syl");
  using Cx = complex_t<T>;
  const uword m = A.n_rows(), n = B.n_rows();
  Mat<Cx> Ta, Ua, Tb, Ub;
  if (!la::complex_schur(to_complex(A), Ta, Ua)) return std::nullopt;
  if (!la::complex_schur(to_complex(B), Tb, Ub)) return std::nullopt;
  // Ta Y + Y Tb = −F with F = Uaᴴ C Ub, X = Ua Y Ubᴴ
  const Mat<Cx> F = la::mul(la::mul_ah(Ua, to_complex(C)), Ub);
  const R<T> small = la::eps<T>() * std::max(la::norm_fro(A) + la::norm_fro(B), std::numeric_limits<R<T>>::min());
  Mat<Cx> Y(m, n);
  for (uword j = 0; j < n; ++j) {
    std::vector<Cx> rhs(m);
    for (uword i = 0; i < m; ++i) {
      Cx s = -F.at(i, j);
      for (uword k = 0; k < j; ++k) s -= Tb.at(k, j) * Y.at(i, k);
      rhs[i] = s;
    }
    const Cx shift = Tb.at(j, j);
    for (uword ii = m; ii-- > 0;) {
      Cx s = rhs[ii];
      for (uword k = ii + 1; k < m; ++k) s -= Ta.at(ii, k) * Y.at(k, j);
      const Cx d = Ta.at(ii, ii) + shift;
      if (std::abs(d) <= small) return std::nullopt;
      Y.at(ii, j) = s / d;
    }
  }
  return from_complex<T>(la::mul_bh(la::mul(Ua, Y), Ub));
}

template <FloatElement T>
Mat<T> syl(const Mat<T>& A, const Mat<T>& B, const Mat<T>& C) {
  auto r = try_syl(A, B, C);
  if (!r) throw FactorisationError("syl: A and -B have a common eigenvalue");
  return std::move(*r);
}

#define STREAMLA_INSTANTIATE_DECOMP(T)                                                        \
  template std::optional<Mat<T>> try_chol(const Mat<T>&, const Backend&);                    \
  template Mat<T> chol(const Mat<T>&, const Backend&);                                       \
  template LuResult<T> lu(const Mat<T>&, const Backend&);                                    \
  template QrResult<T> qr(const Mat<T>&);                                                    \
  template QrResult<T> qr_econ(const Mat<T>&);                                               \
  template std::optional<SvdResult<T>> try_svd(const Mat<T>&, const Backend&);               \
  template SvdResult<T> svd(const Mat<T>&, const Backend&);                                  \
  template std::optional<SvdResult<T>> try_svd_econ(const Mat<T>&, const Backend&);          \
  template SvdResult<T> svd_econ(const Mat<T>&, const Backend&);                             \
  template Mat<real_t<T>> svd_values(const Mat<T>&, const Backend&);                         \
  template std::optional<EigSymResult<T>> try_eig_sym(const Mat<T>&, const Backend&);        \
  template EigSymResult<T> eig_sym(const Mat<T>&, const Backend&);                           \
  template std::optional<EigGenResult<T>> try_eig_gen(const Mat<T>&);                        \
  template EigGenResult<T> eig_gen(const Mat<T>&);                                           \
  template std::optional<EigGenResult<T>> try_eig_pair(const Mat<T>&, const Mat<T>&);        \
  template EigGenResult<T> eig_pair(const Mat<T>&, const Mat<T>&);                           \
  template std::optional<SchurResult<T>> try_schur(const Mat<T>&);                           \
  template SchurResult<T> schur(const Mat<T>&);                                              \
  template std::optional<QzResult<T>> try_qz(const Mat<T>&, const Mat<T>&);                  \
  template QzResult<T> qz(const Mat<T>&, const Mat<T>&);                                     \
  template std::optional<Mat<T>> try_inv(const Mat<T>&, const Backend&);                     \
  template Mat<T> inv(const Mat<T>&, const Backend&);                                        \
  template std::optional<Mat<T>> try_inv_sympd(const Mat<T>&, const Backend&);               \
  template Mat<T> inv_sympd(const Mat<T>&, const Backend&);                                  \
  template Mat<T> pinv(const Mat<T>&, real_t<T>, const Backend&);                            \
  template std::optional<Mat<T>> try_solve(const Mat<T>&, const Mat<T>&, const Backend&);    \
  template Mat<T> solve(const Mat<T>&, const Mat<T>&, const Backend&);                       \
  template Mat<T> solve_lstsq(const Mat<T>&, const Mat<T>&, const Backend&);                 \
  template Mat<T> null(const Mat<T>&, real_t<T>);                                            \
  template Mat<T> orth(const Mat<T>&, real_t<T>);                                            \
  template std::optional<Mat<T>> try_syl(const Mat<T>&, const Mat<T>&, const Mat<T>&);       \
  template Mat<T> syl(const Mat<T>&, const Mat<T>&, const Mat<T>&);

STREAMLA_INSTANTIATE_DECOMP(float)
STREAMLA_INSTANTIATE_DECOMP(double)
STREAMLA_INSTANTIATE_DECOMP(cx_float)
STREAMLA_INSTANTIATE_DECOMP(cx_double)

}  // namespace streamla
