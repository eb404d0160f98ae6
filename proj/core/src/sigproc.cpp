#include "streamla/sigproc.hpp"

#include <numbers>

namespace streamla::detail {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void radix2(std::vector<cx_double>& x, bool inverse) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  const double sgn = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<cx_double> w(half);
    for (std::size_t k = 0; k < half; ++k)
      w[k] = std::polar(1.0, sgn * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len));
    for (std::size_t s = 0; s < n; s += len)
      for (std::size_t k = 0; k < half; ++k) {
        const cx_double u = x[s + k], v = x[s + k + half] * w[k];
        x[s + k] = u + v;
        x[s + k + half] = u - v;
      }
  }
}

void bluestein(std::vector<cx_double>& x, bool inverse) {
  const std::size_t n = x.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  const double sgn = inverse ? 1.0 : -1.0;
  std::vector<cx_double> chirp(n);
  for (std::size_t k = 0, k2 = 0; k < n; ++k) {
    chirp[k] = std::polar(1.0, sgn * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n));
    k2 = (k2 + 2 * k + 1) % (2 * n);
  }
  std::vector<cx_double> a(m, cx_double(0, 0)), b(m, cx_double(0, 0));
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
  radix2(a, false);
  radix2(b, false);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  radix2(a, true);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * inv_m * chirp[k];
}

}  // namespace

void dft_inplace(std::vector<cx_double>& x, bool inverse) {
  const std::size_t n = x.size();
  if (n <= 1) return;
  if (is_pow2(n)) radix2(x, inverse);
  else bluestein(x, inverse);
  if (inverse) {
    const double s = 1.0 / static_cast<double>(n);
    for (auto& v : x) v *= s;
  }
}

}  // namespace streamla::detail
