#pragma once

// Free functions producing column vectors and filled matrices.

#include <cmath>
#include <numeric>

#include "streamla/mat.hpp"

namespace streamla {

/// n points from start to end inclusive. The last element is exactly end;
/// n == 1 yields [end]; n == 0 yields an empty vector.
template <RealFloat T = double>
Mat<T> linspace(T start, T end, uword n) {
  Mat<T> out(n, 1);
  if (n == 0) return out;
  if (n == 1) {
    out.at(0) = end;
    return out;
  }
  const T step = (end - start) / static_cast<T>(n - 1);
  for (uword i = 0; i + 1 < n; ++i) out.at(i) = start + static_cast<T>(i) * step;
  out.at(n - 1) = end;
  return out;
}

/// 10 raised to each element of linspace(a, b, n).
template <RealFloat T = double>
Mat<T> logspace(T a, T b, uword n) {
  Mat<T> out = linspace<T>(a, b, n);
  for (T& v : out) v = std::pow(T(10), v);
  return out;
}

/// start, start + delta, ... while not past end in the direction of delta.
template <RealElement T = double>
Mat<T> regspace(T start, T delta, T end) {
  if (delta == T(0)) throw DomainError("regspace: delta must be non-zero");
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(start) || !std::isfinite(delta) || !std::isfinite(end))
      throw DomainError("regspace: arguments must be finite");
  }
  const bool up = delta > T(0);
  if (up ? start > end : start < end) return Mat<T>(0, 1);
  uword count;
  if constexpr (std::is_floating_point_v<T>) {
    count = static_cast<uword>(std::floor((end - start) / delta)) + 1;
    // guard against rounding pushing the last element past end
    while (count > 0) {
      const T last = start + static_cast<T>(count - 1) * delta;
      if (up ? last <= end : last >= end) break;
      --count;
    }
  } else {
    count = static_cast<uword>((end - start) / delta) + 1;
  }
  Mat<T> out(count, 1);
  for (uword i = 0; i < count; ++i) out.at(i) = start + static_cast<T>(i) * delta;
  return out;
}

/// m distinct values drawn uniformly without replacement from 0 .. n-1.
inline Mat<std::int64_t> randperm(uword n, uword m, RngState& rng) {
  if (m > n) throw DomainError("randperm: m must not exceed n");
  // partial Fisher-Yates over the full index set
  std::vector<std::int64_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::int64_t(0));
  for (uword i = 0; i < m; ++i) {
    const uword j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  return Mat<std::int64_t>::from_column_major(m, 1, std::move(pool));
}

inline Mat<std::int64_t> randperm(uword n, uword m) {
  return rng::GlobalRng::instance().with([&](RngState& s) { return randperm(n, m, s); });
}

inline Mat<std::int64_t> randperm(uword n) { return randperm(n, n); }

/// Uniform on [0, 1).
template <FloatElement T = double>
Mat<T> randu(uword n_rows, uword n_cols, RngState& rng) {
  return Mat<T>(n_rows, n_cols, FillTag::randu, rng);
}
template <FloatElement T = double>
Mat<T> randu(uword n_rows, uword n_cols) {
  return Mat<T>(n_rows, n_cols, FillTag::randu);
}

/// Standard normal.
template <FloatElement T = double>
Mat<T> randn(uword n_rows, uword n_cols, RngState& rng) {
  return Mat<T>(n_rows, n_cols, FillTag::randn, rng);
}
template <FloatElement T = double>
Mat<T> randn(uword n_rows, uword n_cols) {
  return Mat<T>(n_rows, n_cols, FillTag::randn);
}

template <Scalar T = double>
Mat<T> zeros(uword n_rows, uword n_cols) {
  return Mat<T>(n_rows, n_cols, FillTag::zeros);
}

template <Scalar T = double>
Mat<T> ones(uword n_rows, uword n_cols) {
  return Mat<T>(n_rows, n_cols, FillTag::ones);
}

template <Scalar T = double>
Mat<T> eye(uword n_rows, uword n_cols) {
  return Mat<T>::eye(n_rows, n_cols);
}

}  // namespace streamla
