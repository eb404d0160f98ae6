#pragma once

#include <algorithm>
#include <cmath>
#include <cstring>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <new>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "streamla/error.hpp"
#include "streamla/rng.hpp"
#include "streamla/types.hpp"

namespace streamla {

template <Scalar T>
class Mat;
template <class T>
class SubView;
template <class T>
class DiagView;
template <class T>
class IndexView;

enum class FillTag { none, zeros, ones, randu, randn };

namespace fill {
inline constexpr FillTag none = FillTag::none;
inline constexpr FillTag zeros = FillTag::zeros;
inline constexpr FillTag ones = FillTag::ones;
inline constexpr FillTag randu = FillTag::randu;
inline constexpr FillTag randn = FillTag::randn;
}  // namespace fill

enum class FileFormat { auto_detect, raw_ascii, csv_ascii, tagged_binary };

/// Shape of a matrix (n_slices unset) or cube.
struct SizeSpec {
  uword n_rows = 0;
  uword n_cols = 0;
  std::optional<uword> n_slices;

  friend bool operator==(const SizeSpec&, const SizeSpec&) = default;
};

inline SizeSpec size(uword n_rows, uword n_cols) { return {n_rows, n_cols, std::nullopt}; }
inline SizeSpec size(uword n_rows, uword n_cols, uword n_slices) {
  return {n_rows, n_cols, n_slices};
}

/// Inclusive index range [first, last], or the whole dimension.
struct span {
  uword first = 0;
  uword last = 0;
  bool whole = false;

  span(uword a, uword b) : first(a), last(b) {
    if (b < a) detail::throw_bounds("span: first " + std::to_string(a) + " > last " + std::to_string(b));
  }
  explicit span(uword a) : span(a, a) {}
  static span all_of() {
    span s(0, 0);
    s.whole = true;
    return s;
  }
  static const span all;

  uword count(uword dim) const { return whole ? dim : last - first + 1; }
  uword start() const { return whole ? 0 : first; }
};
inline const span span::all = span::all_of();

namespace detail {

template <Scalar T>
inline bool is_nan(const T& v) {
  if constexpr (is_complex_v<T>) return std::isnan(v.real()) || std::isnan(v.imag());
  else if constexpr (std::is_floating_point_v<T>) return std::isnan(v);
  else return false;
}

template <Scalar T>
inline bool is_inf(const T& v) {
  if constexpr (is_complex_v<T>) return std::isinf(v.real()) || std::isinf(v.imag());
  else if constexpr (std::is_floating_point_v<T>) return std::isinf(v);
  else return false;
}

template <Scalar T>
inline T random_value(RngState& rng, FillTag tag) {
  if constexpr (is_complex_v<T>) {
    using R = real_t<T>;
    if (tag == FillTag::randu) {
      const R re = static_cast<R>(rng.uniform());
      return T(re, static_cast<R>(rng.uniform()));
    }
    const R re = static_cast<R>(rng.normal());
    return T(re, static_cast<R>(rng.normal()));
  } else if constexpr (std::is_floating_point_v<T>) {
    if (tag == FillTag::randu) {
      // float rounding of a value just below 1 can land on 1; keep [0,1)
      const T v = static_cast<T>(rng.uniform());
      return v < T(1) ? v : std::nextafter(T(1), T(0));
    }
    return static_cast<T>(rng.normal());
  } else {
    throw KindError("random fill requires a floating point element type");
  }
}

}  // namespace detail

/// Dense column-major matrix.
///
/// Element (r, c) lives at linear offset r + c * n_rows. The call operators
/// and operator[] are bounds checked and throw BoundsError; at() is the
/// unchecked accessor.
template <Scalar T>
class Mat {
 public:
  using elem_type = T;
  using value_type = T;
  using pod_type = real_t<T>;
  using iterator = T*;
  using const_iterator = const T*;

  Mat() = default;

  Mat(uword n_rows, uword n_cols, FillTag tag = FillTag::none) { init(n_rows, n_cols, tag); }

  Mat(uword n_rows, uword n_cols, FillTag tag, RngState& rng) {
    init(n_rows, n_cols, FillTag::zeros);
    fill_tag(tag, rng);
  }

  explicit Mat(const SizeSpec& s, FillTag tag = FillTag::none) { init(s.n_rows, s.n_cols, tag); }

  /// Row-wise literal: Mat<double>{{1, 2}, {3, 4}}.
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    std::vector<std::vector<T>> tmp;
    tmp.reserve(rows.size());
    for (const auto& r : rows) tmp.emplace_back(r);
    *this = from_rows(tmp);
  }

  /// Complex matrix from real and imaginary parts of equal shape.
  Mat(const Mat<real_t<T>>& re, const Mat<real_t<T>>& im)
    requires ComplexElement<T>
  {
    if (re.n_rows() != im.n_rows() || re.n_cols() != im.n_cols())
      detail::throw_shape("complex parts differ in shape: " + detail::dims(re.n_rows(), re.n_cols()) + " vs " +
                          detail::dims(im.n_rows(), im.n_cols()));
    init(re.n_rows(), re.n_cols(), FillTag::none);
    for (uword i = 0; i < re.n_elem(); ++i) data_[i] = T(re.at(i), im.at(i));
  }

  Mat(const SubView<T>& v);
  Mat(const SubView<const T>& v);
  Mat(const DiagView<T>& v);
  Mat(const DiagView<const T>& v);
  Mat(const IndexView<T>& v);

  static Mat from_rows(const std::vector<std::vector<T>>& rows) {
    const uword nr = rows.size();
    const uword nc = nr == 0 ? 0 : rows.front().size();
    for (uword r = 0; r < nr; ++r) {
      if (rows[r].size() != nc) {
        detail::throw_shape("matrix literal: row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " elements, expected " +
                            std::to_string(nc));
      }
    }
    Mat m(nr, nc);
    for (uword r = 0; r < nr; ++r)
      for (uword c = 0; c < nc; ++c) m.at(r, c) = rows[r][c];
    return m;
  }

  /// Adopts a buffer that is already in column-major order.
  static Mat from_column_major(uword n_rows, uword n_cols, std::vector<T> data) {
    if (data.size() != n_rows * n_cols)
      detail::throw_shape("from_column_major: buffer length does not match " +
                          detail::dims(n_rows, n_cols));
    Mat m;
    m.n_rows_ = n_rows;
    m.n_cols_ = n_cols;
    m.data_ = std::move(data);
    return m;
  }

  static Mat eye(uword n_rows, uword n_cols) {
    Mat m(n_rows, n_cols);
    for (uword i = 0; i < std::min(n_rows, n_cols); ++i) m.at(i, i) = T(1);
    return m;
  }
  static Mat eye(uword n) { return eye(n, n); }

  uword n_rows() const { return n_rows_; }
  uword n_cols() const { return n_cols_; }
  uword n_elem() const { return data_.size(); }

  T* memptr() { return data_.data(); }
  const T* memptr() const { return data_.data(); }
  std::span<T> as_span() { return data_; }
  std::span<const T> as_span() const { return data_; }

  // ---- element access ----------------------------------------------------

  T& at(uword i) { return data_[i]; }
  const T& at(uword i) const { return data_[i]; }
  T& at(uword r, uword c) { return data_[r + c * n_rows_]; }
  const T& at(uword r, uword c) const { return data_[r + c * n_rows_]; }

  T& operator()(uword i) { return data_[check_index(i)]; }
  const T& operator()(uword i) const { return data_[check_index(i)]; }
  T& operator[](uword i) { return data_[check_index(i)]; }
  const T& operator[](uword i) const { return data_[check_index(i)]; }
  T& operator()(uword r, uword c) { return data_[check_index(r, c)]; }
  const T& operator()(uword r, uword c) const { return data_[check_index(r, c)]; }

  bool in_range(uword i) const { return i < n_elem(); }
  bool in_range(uword r, uword c) const { return r < n_rows_ && c < n_cols_; }

  // ---- views (defined in view.hpp) ---------------------------------------

  SubView<T> row(uword i);
  SubView<const T> row(uword i) const;
  SubView<T> col(uword j);
  SubView<const T> col(uword j) const;
  SubView<T> rows(uword first, uword last);
  SubView<const T> rows(uword first, uword last) const;
  SubView<T> cols(uword first, uword last);
  SubView<const T> cols(uword first, uword last) const;
  SubView<T> submat(const span& rs, const span& cs);
  SubView<const T> submat(const span& rs, const span& cs) const;
  SubView<T> submat(uword p, uword q, const SizeSpec& s);
  SubView<const T> submat(uword p, uword q, const SizeSpec& s) const;
  SubView<T> operator()(const span& rs, const span& cs) { return submat(rs, cs); }
  SubView<const T> operator()(const span& rs, const span& cs) const { return submat(rs, cs); }
  SubView<T> operator()(uword p, uword q, const SizeSpec& s) { return submat(p, q, s); }
  SubView<const T> operator()(uword p, uword q, const SizeSpec& s) const { return submat(p, q, s); }
  DiagView<T> diag(sword k = 0);
  DiagView<const T> diag(sword k = 0) const;
  IndexView<T> rows(const Mat<uword>& indices);
  IndexView<T> cols(const Mat<uword>& indices);
  IndexView<T> elem(const Mat<uword>& indices);

  // ---- shape management --------------------------------------------------

  /// New shape without preserving data. Same shape keeps the contents;
  /// otherwise the elements are zeroed.
  void set_size(uword n_rows, uword n_cols) {
    if (n_rows == n_rows_ && n_cols == n_cols_) return;
    init(n_rows, n_cols, FillTag::zeros);
  }
  void set_size(const SizeSpec& s) { set_size(s.n_rows, s.n_cols); }

  /// New shape, elements copied in column-major order; surplus dropped,
  /// shortfall zero-filled.
  void reshape(uword n_rows, uword n_cols) {
    std::vector<T> next = alloc(n_rows * n_cols);
    std::copy_n(data_.begin(), std::min<uword>(next.size(), data_.size()), next.begin());
    data_ = std::move(next);
    n_rows_ = n_rows;
    n_cols_ = n_cols;
  }

  /// New shape preserving each element's (r, c) position; new cells zero.
  void resize(uword n_rows, uword n_cols) {
    std::vector<T> next = alloc(n_rows * n_cols);
    const uword rr = std::min(n_rows, n_rows_);
    const uword cc = std::min(n_cols, n_cols_);
    for (uword c = 0; c < cc; ++c)
      std::copy_n(data_.begin() + c * n_rows_, rr, next.begin() + c * n_rows);
    data_ = std::move(next);
    n_rows_ = n_rows;
    n_cols_ = n_cols;
  }

  void reset() {
    data_.clear();
    data_.shrink_to_fit();
    n_rows_ = n_cols_ = 0;
  }

  template <Scalar U>
  void copy_size(const Mat<U>& other) {
    set_size(other.n_rows(), other.n_cols());
  }

  // ---- fills ---------------------------------------------------------------

  Mat& fill(const T& k) {
    std::fill(data_.begin(), data_.end(), k);
    return *this;
  }
  Mat& zeros() { return fill(T(0)); }
  Mat& ones() { return fill(T(1)); }
  Mat& zeros(uword r, uword c) { set_size(r, c); return zeros(); }
  Mat& ones(uword r, uword c) { set_size(r, c); return ones(); }

  Mat& randu() { return rng::GlobalRng::instance().with([&](RngState& s) -> Mat& { return randu(s); }); }
  Mat& randn() { return rng::GlobalRng::instance().with([&](RngState& s) -> Mat& { return randn(s); }); }
  Mat& randu(RngState& rng) { return fill_tag(FillTag::randu, rng); }
  Mat& randn(RngState& rng) { return fill_tag(FillTag::randn, rng); }
  Mat& randu(uword r, uword c) { set_size(r, c); return randu(); }
  Mat& randn(uword r, uword c) { set_size(r, c); return randn(); }

  Mat& eye() {
    zeros();
    for (uword i = 0; i < std::min(n_rows_, n_cols_); ++i) at(i, i) = T(1);
    return *this;
  }

  /// Visits every element in column-major order. The callable may take the
  /// element by reference and modify it, or return the replacement value.
  template <class Fn>
  Mat& for_each(Fn&& fn) {
    for (T& v : data_) {
      if constexpr (std::is_invocable_v<Fn&, T&> && std::is_void_v<std::invoke_result_t<Fn&, T&>>) {
        fn(v);
      } else {
        v = static_cast<T>(fn(static_cast<const T&>(v)));
      }
    }
    return *this;
  }

  template <class Fn>
  const Mat& for_each(Fn&& fn) const {
    for (const T& v : data_) fn(v);
    return *this;
  }

  // ---- predicates ----------------------------------------------------------

  bool is_empty() const { return data_.empty(); }
  bool is_square() const { return n_rows_ == n_cols_; }
  bool is_vec() const { return n_rows_ == 1 || n_cols_ == 1; }
  bool is_colvec() const { return n_cols_ == 1; }
  bool is_rowvec() const { return n_rows_ == 1; }
  bool is_finite() const {
    return std::none_of(data_.begin(), data_.end(),
                        [](const T& v) { return detail::is_nan(v) || detail::is_inf(v); });
  }
  bool has_inf() const {
    return std::any_of(data_.begin(), data_.end(), [](const T& v) { return detail::is_inf(v); });
  }
  bool has_nan() const {
    return std::any_of(data_.begin(), data_.end(), [](const T& v) { return detail::is_nan(v); });
  }

  /// Vectors: the element sequence. Matrices: every column on its own.
  /// direction is one of "ascend", "descend", "strictascend", "strictdescend".
  bool is_sorted(std::string_view direction = "ascend") const
    requires RealElement<T>
  {
    bool (*ok)(const T&, const T&);
    if (direction == "ascend") ok = [](const T& a, const T& b) { return !(a > b); };
    else if (direction == "descend") ok = [](const T& a, const T& b) { return !(a < b); };
    else if (direction == "strictascend") ok = [](const T& a, const T& b) { return a < b; };
    else if (direction == "strictdescend") ok = [](const T& a, const T& b) { return a > b; };
    else detail::throw_domain("is_sorted: unknown direction '" + std::string(direction) + "'");

    if (is_vec()) {
      for (uword i = 1; i < n_elem(); ++i)
        if (!ok(data_[i - 1], data_[i])) return false;
      return true;
    }
    for (uword c = 0; c < n_cols_; ++c)
      for (uword r = 1; r < n_rows_; ++r)
        if (!ok(at(r - 1, c), at(r, c))) return false;
    return true;
  }

  // ---- extremum ------------------------------------------------------------
  // Complex elements are ranked by magnitude. NaN elements are skipped unless
  // every element is NaN, in which case the result is element 0. Ties go to
  // the lowest linear index.

  uword index_min() const { return extremum_index(false); }
  uword index_max() const { return extremum_index(true); }
  T min() const { return data_[index_min()]; }
  T max() const { return data_[index_max()]; }

  // ---- row / column editing ------------------------------------------------

  void swap_rows(uword p, uword q) {
    if (p >= n_rows_ || q >= n_rows_) detail::throw_bounds("swap_rows: index out of bounds");
    for (uword c = 0; c < n_cols_; ++c) std::swap(at(p, c), at(q, c));
  }

  void swap_cols(uword p, uword q) {
    if (p >= n_cols_ || q >= n_cols_) detail::throw_bounds("swap_cols: index out of bounds");
    std::swap_ranges(data_.begin() + p * n_rows_, data_.begin() + (p + 1) * n_rows_,
                     data_.begin() + q * n_rows_);
  }

  void insert_rows(uword row, const Mat& X) {
    if (row > n_rows_) detail::throw_bounds("insert_rows: position out of bounds");
    if (X.n_cols_ != n_cols_ && !(is_empty() && n_cols_ == 0) && X.n_elem() > 0)
      detail::throw_shape("insert_rows: column count mismatch (" + std::to_string(X.n_cols_) +
                          " vs " + std::to_string(n_cols_) + ")");
    if (X.is_empty()) return;
    const uword nc = X.n_cols_;
    Mat out(n_rows_ + X.n_rows_, nc);
    for (uword c = 0; c < nc; ++c) {
      for (uword r = 0; r < row; ++r) out.at(r, c) = at(r, c);
      for (uword r = 0; r < X.n_rows_; ++r) out.at(row + r, c) = X.at(r, c);
      for (uword r = row; r < n_rows_; ++r) out.at(r + X.n_rows_, c) = at(r, c);
    }
    *this = std::move(out);
  }

  void insert_rows(uword row, uword count) { insert_rows(row, Mat(count, n_cols_)); }

  void insert_cols(uword col, const Mat& X) {
    if (col > n_cols_) detail::throw_bounds("insert_cols: position out of bounds");
    if (X.n_rows_ != n_rows_ && !(is_empty() && n_rows_ == 0) && X.n_elem() > 0)
      detail::throw_shape("insert_cols: row count mismatch (" + std::to_string(X.n_rows_) +
                          " vs " + std::to_string(n_rows_) + ")");
    if (X.is_empty()) return;
    const uword nr = X.n_rows_;
    std::vector<T> next;
    next.reserve((n_cols_ + X.n_cols_) * nr);
    next.insert(next.end(), data_.begin(), data_.begin() + col * nr);
    next.insert(next.end(), X.data_.begin(), X.data_.end());
    next.insert(next.end(), data_.begin() + col * nr, data_.end());
    data_ = std::move(next);
    n_rows_ = nr;
    n_cols_ += X.n_cols_;
  }

  void insert_cols(uword col, uword count) { insert_cols(col, Mat(n_rows_, count)); }

  void shed_rows(uword first, uword last) {
    if (first > last || last >= n_rows_) detail::throw_bounds("shed_rows: range out of bounds");
    const uword k = last - first + 1;
    Mat out(n_rows_ - k, n_cols_);
    for (uword c = 0; c < n_cols_; ++c) {
      for (uword r = 0; r < first; ++r) out.at(r, c) = at(r, c);
      for (uword r = last + 1; r < n_rows_; ++r) out.at(r - k, c) = at(r, c);
    }
    *this = std::move(out);
  }
  void shed_row(uword r) { shed_rows(r, r); }

  void shed_cols(uword first, uword last) {
    if (first > last || last >= n_cols_) detail::throw_bounds("shed_cols: range out of bounds");
    data_.erase(data_.begin() + first * n_rows_, data_.begin() + (last + 1) * n_rows_);
    n_cols_ -= last - first + 1;
  }
  void shed_col(uword c) { shed_cols(c, c); }

  // ---- transposes ----------------------------------------------------------

  /// Transpose; complex elements are conjugated.
  Mat t() const {
    Mat out(n_cols_, n_rows_);
    for (uword c = 0; c < n_cols_; ++c)
      for (uword r = 0; r < n_rows_; ++r) out.at(c, r) = conj_of(at(r, c));
    return out;
  }
  /// Transpose without conjugation.
  Mat st() const {
    Mat out(n_cols_, n_rows_);
    for (uword c = 0; c < n_cols_; ++c)
      for (uword r = 0; r < n_rows_; ++r) out.at(c, r) = at(r, c);
    return out;
  }

  // ---- iteration (column-major) --------------------------------------------

  iterator begin() { return data_.data(); }
  iterator end() { return data_.data() + data_.size(); }
  const_iterator begin() const { return data_.data(); }
  const_iterator end() const { return data_.data() + data_.size(); }

  // ---- printing and persistence (io module) --------------------------------

  void print(std::string_view header = {}) const;
  void print(std::ostream& os, std::string_view header = {}) const;
  void save(const std::string& path, FileFormat format = FileFormat::raw_ascii) const;
  void load(const std::string& path, FileFormat format = FileFormat::auto_detect);

 private:
  static std::vector<T> alloc(uword n) {
    try {
      return std::vector<T>(n, T(0));
    } catch (const std::bad_alloc&) {
      throw ResourceError("allocation of " + std::to_string(n) + " elements failed");
    } catch (const std::length_error&) {
      throw ResourceError("allocation of " + std::to_string(n) + " elements failed");
    }
  }

  void init(uword n_rows, uword n_cols, FillTag tag) {
    if (n_cols != 0 && n_rows > std::numeric_limits<uword>::max() / n_cols)
      throw ResourceError("matrix dimensions overflow: " + detail::dims(n_rows, n_cols));
    data_ = alloc(n_rows * n_cols);
    n_rows_ = n_rows;
    n_cols_ = n_cols;
    switch (tag) {
      case FillTag::none:
      case FillTag::zeros: break;
      case FillTag::ones: ones(); break;
      case FillTag::randu: randu(); break;
      case FillTag::randn: randn(); break;
    }
  }

  Mat& fill_tag(FillTag tag, RngState& rng) {
    switch (tag) {
      case FillTag::none:
      case FillTag::zeros: return zeros();
      case FillTag::ones: return ones();
      case FillTag::randu:
      case FillTag::randn:
        for (T& v : data_) v = detail::random_value<T>(rng, tag);
        return *this;
    }
    return *this;
  }

  uword check_index(uword i) const {
    if (i >= data_.size())
      detail::throw_bounds("index " + std::to_string(i) + " out of bounds for " +
                           std::to_string(data_.size()) + " elements");
    return i;
  }

  uword check_index(uword r, uword c) const {
    if (r >= n_rows_ || c >= n_cols_)
      detail::throw_bounds("(" + std::to_string(r) + ", " + std::to_string(c) +
                           ") out of bounds for " + detail::dims(n_rows_, n_cols_) + " matrix");
    return r + c * n_rows_;
  }

  uword extremum_index(bool want_max) const {
    if (data_.empty()) detail::throw_domain(want_max ? "max(): empty matrix" : "min(): empty matrix");
    std::optional<uword> best;
    for (uword i = 0; i < data_.size(); ++i) {
      if (detail::is_nan(data_[i])) continue;
      if (!best) {
        best = i;
        continue;
      }
      const auto a = key(data_[i]);
      const auto b = key(data_[*best]);
      if (want_max ? (a > b) : (a < b)) best = i;
    }
    return best.value_or(0);
  }

  static auto key(const T& v) {
    if constexpr (is_complex_v<T>) return std::abs(v);
    else return v;
  }

  uword n_rows_ = 0;
  uword n_cols_ = 0;
  std::vector<T> data_;
};

template <Scalar T>
SizeSpec size(const Mat<T>& m) {
  return {m.n_rows(), m.n_cols(), std::nullopt};
}

/// Element-wise cast between element types.
template <Scalar To, Scalar From>
Mat<To> conv_to(const Mat<From>& m) {
  Mat<To> out(m.n_rows(), m.n_cols());
  for (uword i = 0; i < m.n_elem(); ++i) {
    if constexpr (is_complex_v<To> || !is_complex_v<From>) out.at(i) = static_cast<To>(m.at(i));
    else out.at(i) = static_cast<To>(m.at(i).real());
  }
  return out;
}

template <Scalar T>
Mat<T> colvec(std::initializer_list<T> values) {
  return Mat<T>::from_column_major(values.size(), 1, std::vector<T>(values));
}

template <Scalar T>
Mat<T> rowvec(std::initializer_list<T> values) {
  return Mat<T>::from_column_major(1, values.size(), std::vector<T>(values));
}

/// Exact element-wise equality of shape and contents (NaN never equal).
template <Scalar T>
bool identical(const Mat<T>& a, const Mat<T>& b) {
  return a.n_rows() == b.n_rows() && a.n_cols() == b.n_cols() &&
         std::equal(a.begin(), a.end(), b.begin());
}

// ---- iterators over ranges ---------------------------------------------------

/// Elements i..j (inclusive) in column-major order.
template <Scalar T>
std::span<T> elem_iter(Mat<T>& m, uword i, uword j) {
  if (i > j || j >= m.n_elem()) detail::throw_bounds("elem_iter: range out of bounds");
  return std::span<T>(m.memptr() + i, j - i + 1);
}

/// Columns i..j (inclusive), each column top to bottom.
template <Scalar T>
std::span<T> col_iter(Mat<T>& m, uword i, uword j) {
  if (i > j || j >= m.n_cols()) detail::throw_bounds("col_iter: range out of bounds");
  return std::span<T>(m.memptr() + i * m.n_rows(), (j - i + 1) * m.n_rows());
}

/// Rows i..j (inclusive), each row left to right.
template <Scalar T>
auto row_iter(Mat<T>& m, uword i, uword j) {
  if (i > j || j >= m.n_rows()) detail::throw_bounds("row_iter: range out of bounds");
  const uword nr = m.n_rows();
  const uword nc = m.n_cols();
  T* base = m.memptr();
  return std::views::iota(uword{0}, (j - i + 1) * nc) |
         std::views::transform([=](uword t) -> T& { return base[(i + t / nc) + (t % nc) * nr]; });
}

using mat = Mat<double>;
using fmat = Mat<float>;
using cx_mat = Mat<cx_double>;
using cx_fmat = Mat<cx_float>;
using imat = Mat<std::int64_t>;
using umat = Mat<uword>;
using LogicalMat = Mat<std::uint8_t>;

}  // namespace streamla

#include "streamla/view.hpp"
