#pragma once

// Reconstruction residuals for every decomposition, computed with the
// reference arithmetic in support.hpp. Shared by the property tests and the
// acceptance runner.

#include <array>
#include <string_view>

#include "streamla/decomp.hpp"
#include "support.hpp"

namespace testutil {

using streamla::Backend;
using streamla::complex_t;

struct Residual {
  double residual = 0;  ///< ||reconstruction - input||_F / ||input||_F
  double orth = 0;      ///< worst ||Q^H Q - I||_F over orthogonal factors
};

inline constexpr std::array<std::string_view, 11> kRoutines = {
    "chol", "lu", "qr", "qr_econ", "svd", "svd_econ", "eig_sym", "eig_gen", "schur", "qz", "syl"};

template <class T>
Mat<complex_t<T>> to_cx(const Mat<T>& A) {
  Mat<complex_t<T>> out(A.n_rows(), A.n_cols());
  for (uword i = 0; i < A.n_elem(); ++i) out.at(i) = complex_t<T>(A.at(i));
  return out;
}

template <class T, class D>
Mat<T> scale_cols(const Mat<T>& V, const Mat<D>& d) {
  Mat<T> out = V;
  for (uword j = 0; j < V.n_cols(); ++j)
    for (uword i = 0; i < V.n_rows(); ++i) out.at(i, j) = V.at(i, j) * T(d.at(j));
  return out;
}

template <class T>
double rel(const Mat<T>& diff, const Mat<T>& ref) {
  const double r = fro(ref);
  return r == 0 ? fro(diff) : fro(diff) / r;
}

/// Shifted so A and -B have well separated spectra.
template <class T>
Mat<T> shifted(Gen& g, uword n, double by) {
  Mat<T> A = g.matrix<T>(n, n);
  for (uword i = 0; i < n; ++i) A.at(i, i) += T(static_cast<real_t<T>>(by));
  return A;
}

/// Draws a random instance of size n for the named routine and measures it.
template <class T>
Residual measure(std::string_view routine, Gen& g, uword n, const Backend& be) {
  using namespace streamla;
  Residual out;
  if (routine == "chol") {
    Mat<T> X = g.spd<T>(n);
    Mat<T> R = chol(X, be);
    out.residual = rel(ref_sub(ref_mul(ref_adj(R), R), X), X);
  } else if (routine == "lu") {
    Mat<T> X = g.matrix<T>(n, g.size(2, 16));
    auto f = lu(X, be);
    out.residual = rel(ref_sub(ref_mul(f.P, X), ref_mul(f.L, f.U)), X);
  } else if (routine == "qr" || routine == "qr_econ") {
    Mat<T> X = g.matrix<T>(n, g.size(2, 16));
    auto f = routine == "qr" ? qr(X) : qr_econ(X);
    out.residual = rel(ref_sub(ref_mul(f.Q, f.R), X), X);
    out.orth = orth_defect(f.Q);
  } else if (routine == "svd" || routine == "svd_econ") {
    Mat<T> X = g.matrix<T>(n, g.size(2, 16));
    auto f = routine == "svd" ? svd(X, be) : svd_econ(X, be);
    Mat<T> S(f.U.n_cols(), f.V.n_cols());
    for (uword i = 0; i < f.s.n_elem(); ++i) S.at(i, i) = T(f.s.at(i));
    out.residual = rel(ref_sub(ref_mul(ref_mul(f.U, S), ref_adj(f.V)), X), X);
    out.orth = std::max(orth_defect(f.U), orth_defect(f.V));
  } else if (routine == "eig_sym") {
    Mat<T> X = g.hermitian<T>(n);
    auto f = eig_sym(X, be);
    out.residual = rel(ref_sub(ref_mul(X, f.eigvec), scale_cols(f.eigvec, f.eigval)), X);
    out.orth = orth_defect(f.eigvec);
  } else if (routine == "eig_gen") {
    Mat<T> X = g.matrix<T>(n, n);
    auto f = eig_gen(X);
    auto Xc = to_cx(X);
    out.residual = rel(ref_sub(ref_mul(Xc, f.eigvec), scale_cols(f.eigvec, f.eigval)), Xc);
  } else if (routine == "schur") {
    Mat<T> X = g.matrix<T>(n, n);
    auto f = schur(X);
    out.residual = rel(ref_sub(ref_mul(ref_mul(f.Z, f.S), ref_adj(f.Z)), X), X);
    out.orth = orth_defect(f.Z);
  } else if (routine == "qz") {
    Mat<T> A = g.matrix<T>(n, n), B = g.matrix<T>(n, n);
    auto f = qz(A, B);
    auto Ac = to_cx(A), Bc = to_cx(B);
    out.residual = std::max(rel(ref_sub(ref_mul(ref_mul(f.Q, f.AA), ref_adj(f.Z)), Ac), Ac),
                            rel(ref_sub(ref_mul(ref_mul(f.Q, f.BB), ref_adj(f.Z)), Bc), Bc));
    out.orth = std::max(orth_defect(f.Q), orth_defect(f.Z));
  } else if (routine == "syl") {
    const uword m = g.size(2, 16);
    Mat<T> A = shifted<T>(g, n, 2.0 * n), B = shifted<T>(g, m, 2.0 * m), C = g.matrix<T>(n, m);
    Mat<T> X = syl(A, B, C);
    Mat<T> lhs = ref_mul(A, X);
    Mat<T> XB = ref_mul(X, B);
    for (uword i = 0; i < lhs.n_elem(); ++i) lhs.at(i) += XB.at(i) + C.at(i);
    out.residual = fro(lhs) / fro(C);
  }
  return out;
}

}  // namespace testutil
