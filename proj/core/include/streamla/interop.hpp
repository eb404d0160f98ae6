#pragma once

// Conversion to and from dense host arrays (e.g. numpy buffers).

#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "streamla/error.hpp"
#include "streamla/io.hpp"
#include "streamla/mat.hpp"

namespace streamla {

enum class Layout { row_major, column_major };

template <Scalar T>
struct HostArray {
  std::vector<uword> shape;  ///< always rank 2 on export
  std::vector<T> data;
  Layout layout = Layout::row_major;
};

/// Rank 1 becomes an n x 1 column; rank 2 is (rows, cols). Other ranks throw ShapeError.
template <Scalar T>
Mat<T> from_host_array(std::span<const T> data, std::span<const uword> shape,
                       Layout layout = Layout::row_major) {
  if (shape.empty() || shape.size() > 2)
    detail::throw_shape("from_host_array: rank " + std::to_string(shape.size()) +
                        " array cannot become a matrix");
  const uword r = shape[0];
  const uword c = shape.size() == 2 ? shape[1] : 1;
  if (data.size() != r * c)
    detail::throw_shape("from_host_array: buffer length does not match " + detail::dims(r, c));
  if (layout == Layout::column_major || shape.size() == 1)
    return Mat<T>::from_column_major(r, c, std::vector<T>(data.begin(), data.end()));
  Mat<T> m(r, c);
  for (uword i = 0; i < r; ++i)
    for (uword j = 0; j < c; ++j) m.at(i, j) = data[i * c + j];
  return m;
}

template <Scalar T>
HostArray<T> to_host_array(const Mat<T>& m, Layout layout = Layout::row_major) {
  HostArray<T> out{{m.n_rows(), m.n_cols()}, {}, layout};
  if (layout == Layout::column_major) {
    out.data.assign(m.begin(), m.end());
    return out;
  }
  out.data.resize(m.n_elem());
  for (uword i = 0; i < m.n_rows(); ++i)
    for (uword j = 0; j < m.n_cols(); ++j) out.data[i * m.n_cols() + j] = m.at(i, j);
  return out;
}

/// Type-erased import for callers that only know the element kind at run time.
/// `bytes` must hold the elements of `kind` in native byte order.
inline AnyMat from_host_array(ElementKind kind, std::span<const std::byte> bytes,
                              std::span<const uword> shape, Layout layout = Layout::row_major) {
  auto build = [&]<class T>() -> AnyMat {
    if (bytes.size() % sizeof(T) != 0)
      detail::throw_shape("from_host_array: byte length is not a multiple of the element size");
    std::vector<T> tmp(bytes.size() / sizeof(T));
    if (!tmp.empty()) std::memcpy(tmp.data(), bytes.data(), bytes.size());
    return from_host_array<T>(std::span<const T>(tmp), shape, layout);
  };
  switch (kind) {
    case ElementKind::Int: return build.template operator()<std::int64_t>();
    case ElementKind::F32: return build.template operator()<float>();
    case ElementKind::F64: return build.template operator()<double>();
    case ElementKind::C64: return build.template operator()<cx_float>();
    case ElementKind::C128: return build.template operator()<cx_double>();
  }
  throw KindError("from_host_array: unsupported element kind " +
                  std::to_string(static_cast<int>(kind)));
}

}  // namespace streamla
