#pragma once

// Read/write windows into a Mat (or a cube slice). A view stores a raw
// pointer into its parent's buffer: it must not outlive the parent, and the
// parent must not be resized while the view is alive. Copying a view copies
// the window, while assigning to a view writes the elements into the parent.

#include "streamla/mat.hpp"

namespace streamla {

/// Contiguous rectangular window: rows, columns, spans, size-anchored blocks
/// and cube slices.
template <class T>
class SubView {
 public:
  using elem_type = std::remove_const_t<T>;
  static constexpr bool writable = !std::is_const_v<T>;

  SubView(T* base, uword ld, uword n_rows, uword n_cols)
      : base_(base), ld_(ld), n_rows_(n_rows), n_cols_(n_cols) {}
  SubView(const SubView&) = default;

  uword n_rows() const { return n_rows_; }
  uword n_cols() const { return n_cols_; }
  uword n_elem() const { return n_rows_ * n_cols_; }
  bool is_empty() const { return n_elem() == 0; }

  T& at(uword r, uword c) const { return base_[r + c * ld_]; }
  T& operator()(uword r, uword c) const {
    if (r >= n_rows_ || c >= n_cols_)
      detail::throw_bounds("view (" + std::to_string(r) + ", " + std::to_string(c) +
                           ") out of bounds for " + detail::dims(n_rows_, n_cols_));
    return at(r, c);
  }
  T& operator()(uword i) const {
    if (i >= n_elem()) detail::throw_bounds("view index " + std::to_string(i) + " out of bounds");
    return at(i % n_rows_, i / n_rows_);
  }

  Mat<elem_type> eval() const {
    Mat<elem_type> out(n_rows_, n_cols_);
    for (uword c = 0; c < n_cols_; ++c)
      for (uword r = 0; r < n_rows_; ++r) out.at(r, c) = at(r, c);
    return out;
  }

  SubView& operator=(const SubView& x) {
    static_assert(writable, "cannot assign through a read-only view");
    return assign(x.eval());
  }
  template <class U>
    requires std::same_as<std::remove_const_t<U>, elem_type>
  SubView& operator=(const SubView<U>& x) {
    return assign(x.eval());
  }
  SubView& operator=(const Mat<elem_type>& x) { return assign(x); }

  SubView& fill(const elem_type& k) {
    apply([&](T& v, uword, uword) { v = k; });
    return *this;
  }
  SubView& zeros() { return fill(elem_type(0)); }
  SubView& ones() { return fill(elem_type(1)); }

  SubView& operator+=(const elem_type& k) { apply([&](T& v, uword, uword) { v += k; }); return *this; }
  SubView& operator-=(const elem_type& k) { apply([&](T& v, uword, uword) { v -= k; }); return *this; }
  SubView& operator*=(const elem_type& k) { apply([&](T& v, uword, uword) { v *= k; }); return *this; }
  SubView& operator/=(const elem_type& k) { apply([&](T& v, uword, uword) { v /= k; }); return *this; }

  SubView& operator+=(const Mat<elem_type>& x) { return update(x, [](T& v, const elem_type& b) { v += b; }); }
  SubView& operator-=(const Mat<elem_type>& x) { return update(x, [](T& v, const elem_type& b) { v -= b; }); }
  SubView& operator%=(const Mat<elem_type>& x) { return update(x, [](T& v, const elem_type& b) { v *= b; }); }
  SubView& operator/=(const Mat<elem_type>& x) { return update(x, [](T& v, const elem_type& b) { v /= b; }); }

  // composition: indices are relative to this view
  SubView submat(const span& rs, const span& cs) const {
    const uword r0 = rs.start(), c0 = cs.start();
    const uword nr = rs.count(n_rows_), nc = cs.count(n_cols_);
    if ((!rs.whole && rs.last >= n_rows_) || (!cs.whole && cs.last >= n_cols_))
      detail::throw_bounds("submat: span out of bounds for " + detail::dims(n_rows_, n_cols_) + " view");
    return SubView(base_ + r0 + c0 * ld_, ld_, nr, nc);
  }
  SubView row(uword i) const { return submat(span(i), span::all); }
  SubView col(uword j) const { return submat(span::all, span(j)); }

  T* base() const { return base_; }
  uword ld() const { return ld_; }

 private:
  template <class Fn>
  void apply(Fn&& fn) const {
    static_assert(writable, "cannot write through a read-only view");
    for (uword c = 0; c < n_cols_; ++c)
      for (uword r = 0; r < n_rows_; ++r) fn(at(r, c), r, c);
  }

  void require_shape(uword r, uword c, const char* what) const {
    if (r != n_rows_ || c != n_cols_)
      detail::throw_shape(std::string(what) + ": " + detail::dims(r, c) + " into " +
                          detail::dims(n_rows_, n_cols_) + " view");
  }

  SubView& assign(const Mat<elem_type>& x) {
    require_shape(x.n_rows(), x.n_cols(), "view assignment");
    apply([&](T& v, uword r, uword c) { v = x.at(r, c); });
    return *this;
  }

  template <class Op>
  SubView& update(const Mat<elem_type>& x, Op op) {
    require_shape(x.n_rows(), x.n_cols(), "view update");
    apply([&](T& v, uword r, uword c) { op(v, x.at(r, c)); });
    return *this;
  }

  T* base_;
  uword ld_;
  uword n_rows_;
  uword n_cols_;
};

/// The k-th diagonal, presented as a column vector.
template <class T>
class DiagView {
 public:
  using elem_type = std::remove_const_t<T>;
  static constexpr bool writable = !std::is_const_v<T>;

  DiagView(T* start, uword stride, uword length) : start_(start), stride_(stride), len_(length) {}
  DiagView(const DiagView&) = default;

  uword n_rows() const { return len_; }
  uword n_cols() const { return 1; }
  uword n_elem() const { return len_; }

  T& at(uword i) const { return start_[i * stride_]; }
  T& operator()(uword i) const {
    if (i >= len_) detail::throw_bounds("diagonal index " + std::to_string(i) + " out of bounds");
    return at(i);
  }

  Mat<elem_type> eval() const {
    Mat<elem_type> out(len_, 1);
    for (uword i = 0; i < len_; ++i) out.at(i) = at(i);
    return out;
  }

  DiagView& operator=(const DiagView& x) { return assign(x.eval()); }
  DiagView& operator=(const Mat<elem_type>& x) { return assign(x); }

  DiagView& fill(const elem_type& k) {
    static_assert(writable, "cannot write through a read-only view");
    for (uword i = 0; i < len_; ++i) at(i) = k;
    return *this;
  }
  DiagView& zeros() { return fill(elem_type(0)); }
  DiagView& ones() { return fill(elem_type(1)); }
  DiagView& operator+=(const elem_type& k) {
    static_assert(writable, "cannot write through a read-only view");
    for (uword i = 0; i < len_; ++i) at(i) += k;
    return *this;
  }
  DiagView& operator*=(const elem_type& k) {
    static_assert(writable, "cannot write through a read-only view");
    for (uword i = 0; i < len_; ++i) at(i) *= k;
    return *this;
  }

 private:
  DiagView& assign(const Mat<elem_type>& x) {
    static_assert(writable, "cannot write through a read-only view");
    if (x.n_elem() != len_ || (len_ > 0 && !x.is_vec()))
      detail::throw_shape("diagonal assignment: need a vector of length " + std::to_string(len_));
    for (uword i = 0; i < len_; ++i) at(i) = x.at(i);
    return *this;
  }

  T* start_;
  uword stride_;
  uword len_;
};

/// Gather/scatter view selected by an index vector: whole rows, whole
/// columns, or individual elements (column-major linear indices). Reads copy;
/// writes scatter back to the parent in index order, so with duplicate
/// indices the last write wins.
template <class T>
class IndexView {
 public:
  using elem_type = T;
  enum class Mode { rows, cols, elems };

  IndexView(Mat<T>& parent, Mode mode, const Mat<uword>& indices)
      : parent_(&parent), mode_(mode), idx_(indices.begin(), indices.end()) {
    const uword limit = mode == Mode::rows   ? parent.n_rows()
                        : mode == Mode::cols ? parent.n_cols()
                                             : parent.n_elem();
    for (uword i : idx_)
      if (i >= limit)
        detail::throw_bounds("index " + std::to_string(i) + " out of bounds (limit " +
                             std::to_string(limit) + ")");
  }

  uword n_rows() const {
    switch (mode_) {
      case Mode::rows: return idx_.size();
      case Mode::cols: return parent_->n_rows();
      case Mode::elems: return idx_.size();
    }
    return 0;
  }
  uword n_cols() const {
    switch (mode_) {
      case Mode::rows: return parent_->n_cols();
      case Mode::cols: return idx_.size();
      case Mode::elems: return 1;
    }
    return 0;
  }
  uword n_elem() const { return n_rows() * n_cols(); }

  T& operator()(uword r, uword c) const {
    if (r >= n_rows() || c >= n_cols()) detail::throw_bounds("index view access out of bounds");
    return ref(r, c);
  }

  Mat<T> eval() const {
    Mat<T> out(n_rows(), n_cols());
    for (uword c = 0; c < out.n_cols(); ++c)
      for (uword r = 0; r < out.n_rows(); ++r) out.at(r, c) = ref(r, c);
    return out;
  }

  IndexView& operator=(const Mat<T>& x) {
    const bool ok = mode_ == Mode::elems ? (x.n_elem() == n_elem() && (x.is_vec() || x.is_empty()))
                                         : (x.n_rows() == n_rows() && x.n_cols() == n_cols());
    if (!ok)
      detail::throw_shape("index view assignment: " + detail::dims(x.n_rows(), x.n_cols()) +
                          " into " + detail::dims(n_rows(), n_cols()));
    if (mode_ == Mode::elems) {
      for (uword i = 0; i < idx_.size(); ++i) parent_->at(idx_[i]) = x.at(i);
    } else {
      for (uword c = 0; c < n_cols(); ++c)
        for (uword r = 0; r < n_rows(); ++r) ref(r, c) = x.at(r, c);
    }
    return *this;
  }
  IndexView& operator=(const IndexView& x) { return *this = x.eval(); }

  IndexView& fill(const T& k) {
    for (uword c = 0; c < n_cols(); ++c)
      for (uword r = 0; r < n_rows(); ++r) ref(r, c) = k;
    return *this;
  }
  IndexView& zeros() { return fill(T(0)); }
  IndexView& ones() { return fill(T(1)); }
  IndexView& operator+=(const T& k) {
    Mat<T> v = eval();
    for (T& e : v) e += k;
    return *this = v;
  }
  IndexView& operator*=(const T& k) {
    Mat<T> v = eval();
    for (T& e : v) e *= k;
    return *this = v;
  }

 private:
  T& ref(uword r, uword c) const {
    switch (mode_) {
      case Mode::rows: return parent_->at(idx_[r], c);
      case Mode::cols: return parent_->at(r, idx_[c]);
      case Mode::elems: return parent_->at(idx_[r]);
    }
    return parent_->at(0);
  }

  Mat<T>* parent_;
  Mode mode_;
  std::vector<uword> idx_;
};

// ---- Mat members that produce or consume views --------------------------------

template <Scalar T>
Mat<T>::Mat(const SubView<T>& v) : Mat(v.eval()) {}
template <Scalar T>
Mat<T>::Mat(const SubView<const T>& v) : Mat(v.eval()) {}
template <Scalar T>
Mat<T>::Mat(const DiagView<T>& v) : Mat(v.eval()) {}
template <Scalar T>
Mat<T>::Mat(const DiagView<const T>& v) : Mat(v.eval()) {}
template <Scalar T>
Mat<T>::Mat(const IndexView<T>& v) : Mat(v.eval()) {}

namespace detail {

template <class P, class E>
SubView<E> make_submat(P& m, E* base, const span& rs, const span& cs) {
  if ((!rs.whole && rs.last >= m.n_rows()) || (!cs.whole && cs.last >= m.n_cols()))
    throw_bounds("submat: span out of bounds for " + dims(m.n_rows(), m.n_cols()) + " matrix");
  const uword r0 = rs.start(), c0 = cs.start();
  return SubView<E>(base + r0 + c0 * m.n_rows(), m.n_rows(), rs.count(m.n_rows()), cs.count(m.n_cols()));
}

template <class P, class E>
SubView<E> make_anchored(P& m, E* base, uword p, uword q, const SizeSpec& s) {
  if (p + s.n_rows > m.n_rows() || q + s.n_cols > m.n_cols())
    throw_bounds("submat: block at (" + std::to_string(p) + ", " + std::to_string(q) + ") of size " +
                 dims(s.n_rows, s.n_cols) + " exceeds " + dims(m.n_rows(), m.n_cols()));
  return SubView<E>(base + p + q * m.n_rows(), m.n_rows(), s.n_rows, s.n_cols);
}

template <class P, class E>
DiagView<E> make_diag(P& m, E* base, sword k) {
  const uword nr = m.n_rows(), nc = m.n_cols();
  if (k == 0) return DiagView<E>(base, nr + 1, std::min(nr, nc));
  if (k > 0) {
    const uword uk = static_cast<uword>(k);
    if (uk >= nc) throw_bounds("diag: offset " + std::to_string(k) + " outside matrix");
    return DiagView<E>(base + uk * nr, nr + 1, std::min(nr, nc - uk));
  }
  const uword uk = static_cast<uword>(-k);
  if (uk >= nr) throw_bounds("diag: offset " + std::to_string(k) + " outside matrix");
  return DiagView<E>(base + uk, nr + 1, std::min(nr - uk, nc));
}

}  // namespace detail

template <Scalar T>
SubView<T> Mat<T>::submat(const span& rs, const span& cs) {
  return detail::make_submat(*this, memptr(), rs, cs);
}
template <Scalar T>
SubView<const T> Mat<T>::submat(const span& rs, const span& cs) const {
  return detail::make_submat(*this, memptr(), rs, cs);
}
template <Scalar T>
SubView<T> Mat<T>::submat(uword p, uword q, const SizeSpec& s) {
  return detail::make_anchored(*this, memptr(), p, q, s);
}
template <Scalar T>
SubView<const T> Mat<T>::submat(uword p, uword q, const SizeSpec& s) const {
  return detail::make_anchored(*this, memptr(), p, q, s);
}
template <Scalar T>
SubView<T> Mat<T>::row(uword i) { return submat(span(i), span::all); }
template <Scalar T>
SubView<const T> Mat<T>::row(uword i) const { return submat(span(i), span::all); }
template <Scalar T>
SubView<T> Mat<T>::col(uword j) { return submat(span::all, span(j)); }
template <Scalar T>
SubView<const T> Mat<T>::col(uword j) const { return submat(span::all, span(j)); }
template <Scalar T>
SubView<T> Mat<T>::rows(uword a, uword b) { return submat(span(a, b), span::all); }
template <Scalar T>
SubView<const T> Mat<T>::rows(uword a, uword b) const { return submat(span(a, b), span::all); }
template <Scalar T>
SubView<T> Mat<T>::cols(uword a, uword b) { return submat(span::all, span(a, b)); }
template <Scalar T>
SubView<const T> Mat<T>::cols(uword a, uword b) const { return submat(span::all, span(a, b)); }
template <Scalar T>
DiagView<T> Mat<T>::diag(sword k) { return detail::make_diag(*this, memptr(), k); }
template <Scalar T>
DiagView<const T> Mat<T>::diag(sword k) const { return detail::make_diag(*this, memptr(), k); }
template <Scalar T>
IndexView<T> Mat<T>::rows(const Mat<uword>& idx) { return IndexView<T>(*this, IndexView<T>::Mode::rows, idx); }
template <Scalar T>
IndexView<T> Mat<T>::cols(const Mat<uword>& idx) { return IndexView<T>(*this, IndexView<T>::Mode::cols, idx); }
template <Scalar T>
IndexView<T> Mat<T>::elem(const Mat<uword>& idx) { return IndexView<T>(*this, IndexView<T>::Mode::elems, idx); }

// ---- uniform access to matrices and views -------------------------------------

template <class X>
struct mat_traits {};
template <Scalar T>
struct mat_traits<Mat<T>> {
  using elem_type = T;
};
template <class T>
struct mat_traits<SubView<T>> {
  using elem_type = std::remove_const_t<T>;
};
template <class T>
struct mat_traits<DiagView<T>> {
  using elem_type = std::remove_const_t<T>;
};
template <class T>
struct mat_traits<IndexView<T>> {
  using elem_type = T;
};

/// A Mat or any view over one.
template <class X>
concept MatLike = requires { typename mat_traits<std::remove_cvref_t<X>>::elem_type; };

template <MatLike X>
using elem_of = typename mat_traits<std::remove_cvref_t<X>>::elem_type;

/// A reference to the matrix itself, or a materialised copy of a view.
template <MatLike X>
decltype(auto) as_mat(const X& x) {
  if constexpr (std::is_same_v<std::remove_cvref_t<X>, Mat<elem_of<X>>>) return (x);
  else return x.eval();
}

}  // namespace streamla
