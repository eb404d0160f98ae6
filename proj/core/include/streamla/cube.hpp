#pragma once

#include "streamla/mat.hpp"

namespace streamla {

template <class T>
class SubCube;

/// Dense 3-D container: an ordered set of equally sized column-major slices.
/// Slice k occupies elements [k * n_rows * n_cols, (k + 1) * n_rows * n_cols).
template <Scalar T>
class Cube {
 public:
  using elem_type = T;

  Cube() = default;

  Cube(uword n_rows, uword n_cols, uword n_slices, FillTag tag = FillTag::none)
      : n_rows_(n_rows), n_cols_(n_cols), n_slices_(n_slices) {
    // a column of n_elem elements has exactly the cube's layout and fill rules
    Mat<T> tmp(n_rows * n_cols * n_slices, 1, tag);
    data_.assign(tmp.begin(), tmp.end());
  }

  Cube(uword n_rows, uword n_cols, uword n_slices, FillTag tag, RngState& rng)
      : n_rows_(n_rows), n_cols_(n_cols), n_slices_(n_slices) {
    Mat<T> tmp(n_rows * n_cols * n_slices, 1, tag, rng);
    data_.assign(tmp.begin(), tmp.end());
  }

  explicit Cube(const SizeSpec& s, FillTag tag = FillTag::none)
      : Cube(s.n_rows, s.n_cols, s.n_slices.value_or(1), tag) {}

  Cube(const SubCube<T>& v);
  Cube(const SubCube<const T>& v);

  uword n_rows() const { return n_rows_; }
  uword n_cols() const { return n_cols_; }
  uword n_slices() const { return n_slices_; }
  uword n_elem() const { return data_.size(); }
  uword n_elem_slice() const { return n_rows_ * n_cols_; }
  bool is_empty() const { return data_.empty(); }

  T* memptr() { return data_.data(); }
  const T* memptr() const { return data_.data(); }

  T& at(uword i) { return data_[i]; }
  const T& at(uword i) const { return data_[i]; }
  T& at(uword r, uword c, uword s) { return data_[r + c * n_rows_ + s * n_elem_slice()]; }
  const T& at(uword r, uword c, uword s) const { return data_[r + c * n_rows_ + s * n_elem_slice()]; }

  T& operator()(uword i) { return data_[check(i)]; }
  const T& operator()(uword i) const { return data_[check(i)]; }
  T& operator[](uword i) { return data_[check(i)]; }
  const T& operator[](uword i) const { return data_[check(i)]; }
  T& operator()(uword r, uword c, uword s) { return data_[check(r, c, s)]; }
  const T& operator()(uword r, uword c, uword s) const { return data_[check(r, c, s)]; }

  bool in_range(uword i) const { return i < n_elem(); }
  bool in_range(uword r, uword c, uword s) const { return r < n_rows_ && c < n_cols_ && s < n_slices_; }

  /// Read/write matrix view over slice k.
  SubView<T> slice(uword k) {
    check_slice(k);
    return SubView<T>(memptr() + k * n_elem_slice(), n_rows_, n_rows_, n_cols_);
  }
  SubView<const T> slice(uword k) const {
    check_slice(k);
    return SubView<const T>(memptr() + k * n_elem_slice(), n_rows_, n_rows_, n_cols_);
  }

  SubCube<T> subcube(const span& rs, const span& cs, const span& ss);
  SubCube<const T> subcube(const span& rs, const span& cs, const span& ss) const;
  SubCube<T> operator()(const span& rs, const span& cs, const span& ss) { return subcube(rs, cs, ss); }
  SubCube<const T> operator()(const span& rs, const span& cs, const span& ss) const {
    return subcube(rs, cs, ss);
  }

  void set_size(uword r, uword c, uword s) {
    if (r == n_rows_ && c == n_cols_ && s == n_slices_) return;
    n_rows_ = r;
    n_cols_ = c;
    n_slices_ = s;
    data_.assign(r * c * s, T(0));
  }
  void reset() { set_size(0, 0, 0); }

  Cube& fill(const T& k) {
    std::fill(data_.begin(), data_.end(), k);
    return *this;
  }
  Cube& zeros() { return fill(T(0)); }
  Cube& ones() { return fill(T(1)); }
  Cube& randu(RngState& rng) {
    for (T& v : data_) v = detail::random_value<T>(rng, FillTag::randu);
    return *this;
  }
  Cube& randn(RngState& rng) {
    for (T& v : data_) v = detail::random_value<T>(rng, FillTag::randn);
    return *this;
  }
  Cube& randu() { return rng::GlobalRng::instance().with([&](RngState& s) -> Cube& { return randu(s); }); }
  Cube& randn() { return rng::GlobalRng::instance().with([&](RngState& s) -> Cube& { return randn(s); }); }

  T* begin() { return data_.data(); }
  T* end() { return data_.data() + data_.size(); }
  const T* begin() const { return data_.data(); }
  const T* end() const { return data_.data() + data_.size(); }

 private:
  uword check(uword i) const {
    if (i >= data_.size()) detail::throw_bounds("cube index " + std::to_string(i) + " out of bounds");
    return i;
  }
  uword check(uword r, uword c, uword s) const {
    if (!in_range(r, c, s))
      detail::throw_bounds("cube (" + std::to_string(r) + ", " + std::to_string(c) + ", " +
                           std::to_string(s) + ") out of bounds");
    return r + c * n_rows_ + s * n_elem_slice();
  }
  void check_slice(uword k) const {
    if (k >= n_slices_)
      detail::throw_bounds("slice " + std::to_string(k) + " out of bounds for " +
                           std::to_string(n_slices_) + " slices");
  }

  uword n_rows_ = 0;
  uword n_cols_ = 0;
  uword n_slices_ = 0;
  std::vector<T> data_;
};

/// Read/write box inside a cube, inclusive spans on all three axes.
template <class T>
class SubCube {
 public:
  using elem_type = std::remove_const_t<T>;

  SubCube(T* base, uword ld_row, uword ld_slice, uword n_rows, uword n_cols, uword n_slices)
      : base_(base), ld_row_(ld_row), ld_slice_(ld_slice), n_rows_(n_rows), n_cols_(n_cols),
        n_slices_(n_slices) {}
  SubCube(const SubCube&) = default;

  uword n_rows() const { return n_rows_; }
  uword n_cols() const { return n_cols_; }
  uword n_slices() const { return n_slices_; }
  uword n_elem() const { return n_rows_ * n_cols_ * n_slices_; }

  T& at(uword r, uword c, uword s) const { return base_[r + c * ld_row_ + s * ld_slice_]; }
  T& operator()(uword r, uword c, uword s) const {
    if (r >= n_rows_ || c >= n_cols_ || s >= n_slices_) detail::throw_bounds("subcube access out of bounds");
    return at(r, c, s);
  }

  SubView<T> slice(uword k) const {
    if (k >= n_slices_) detail::throw_bounds("subcube slice out of bounds");
    return SubView<T>(base_ + k * ld_slice_, ld_row_, n_rows_, n_cols_);
  }

  Cube<elem_type> eval() const {
    Cube<elem_type> out(n_rows_, n_cols_, n_slices_);
    for (uword s = 0; s < n_slices_; ++s)
      for (uword c = 0; c < n_cols_; ++c)
        for (uword r = 0; r < n_rows_; ++r) out.at(r, c, s) = at(r, c, s);
    return out;
  }

  SubCube& operator=(const Cube<elem_type>& x) {
    static_assert(!std::is_const_v<T>, "cannot write through a read-only view");
    if (x.n_rows() != n_rows_ || x.n_cols() != n_cols_ || x.n_slices() != n_slices_)
      detail::throw_shape("subcube assignment: shape mismatch");
    for (uword s = 0; s < n_slices_; ++s)
      for (uword c = 0; c < n_cols_; ++c)
        for (uword r = 0; r < n_rows_; ++r) at(r, c, s) = x.at(r, c, s);
    return *this;
  }
  SubCube& operator=(const SubCube& x) { return *this = x.eval(); }

  SubCube& fill(const elem_type& k) {
    static_assert(!std::is_const_v<T>, "cannot write through a read-only view");
    for (uword s = 0; s < n_slices_; ++s)
      for (uword c = 0; c < n_cols_; ++c)
        for (uword r = 0; r < n_rows_; ++r) at(r, c, s) = k;
    return *this;
  }

 private:
  T* base_;
  uword ld_row_;
  uword ld_slice_;
  uword n_rows_;
  uword n_cols_;
  uword n_slices_;
};

namespace detail {
template <class C, class E>
SubCube<E> make_subcube(C& q, E* base, const span& rs, const span& cs, const span& ss) {
  if ((!rs.whole && rs.last >= q.n_rows()) || (!cs.whole && cs.last >= q.n_cols()) ||
      (!ss.whole && ss.last >= q.n_slices()))
    throw_bounds("subcube: span out of bounds");
  const uword lds = q.n_rows() * q.n_cols();
  return SubCube<E>(base + rs.start() + cs.start() * q.n_rows() + ss.start() * lds, q.n_rows(), lds,
                    rs.count(q.n_rows()), cs.count(q.n_cols()), ss.count(q.n_slices()));
}
}  // namespace detail

template <Scalar T>
SubCube<T> Cube<T>::subcube(const span& rs, const span& cs, const span& ss) {
  return detail::make_subcube(*this, memptr(), rs, cs, ss);
}
template <Scalar T>
SubCube<const T> Cube<T>::subcube(const span& rs, const span& cs, const span& ss) const {
  return detail::make_subcube(*this, memptr(), rs, cs, ss);
}
template <Scalar T>
Cube<T>::Cube(const SubCube<T>& v) : Cube(v.eval()) {}
template <Scalar T>
Cube<T>::Cube(const SubCube<const T>& v) : Cube(v.eval()) {}

template <Scalar T>
SizeSpec size(const Cube<T>& q) {
  return {q.n_rows(), q.n_cols(), q.n_slices()};
}

using cube = Cube<double>;
using fcube = Cube<float>;
using cx_cube = Cube<cx_double>;
using icube = Cube<std::int64_t>;

}  // namespace streamla
