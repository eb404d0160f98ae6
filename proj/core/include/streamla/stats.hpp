#pragma once

// Statistics.
//
// Orientation: mean, median, var, stddev, hist and histc take a dim argument
// (0 = per column, 1 = per row). cov, cor and princomp treat rows as
// observations and columns as variables; a row vector is read as a single
// variable. kmeans treats each column as one sample.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "streamla/decomp.hpp"
#include "streamla/matfun.hpp"

namespace streamla {

namespace detail {

inline void check_norm_type(uword norm_type, const char* what) {
  if (norm_type > 1) throw_domain(std::string(what) + ": norm_type must be 0 or 1");
}

/// Two-pass variance with the compensating correction term.
template <class T>
real_t<T> lane_var(const T* p, uword st, uword n, uword norm_type) {
  using R = real_t<T>;
  T mu(0);
  for (uword i = 0; i < n; ++i) mu += p[i * st];
  mu /= static_cast<R>(n);
  R ss = 0;
  T comp(0);
  for (uword i = 0; i < n; ++i) {
    const T d = p[i * st] - mu;
    ss += std::norm(complex_t<T>(d));
    comp += d;
  }
  ss -= std::norm(complex_t<T>(comp)) / static_cast<R>(n);
  return std::max(R(0), ss) / static_cast<R>(norm_type == 0 ? n - 1 : n);
}

template <class T>
Mat<T> as_variables(const Mat<T>& A) {
  return A.is_rowvec() ? A.st() : A;
}

}  // namespace detail

// ---- moments -------------------------------------------------------------------------

template <FloatElement T>
Mat<T> mean(const Mat<T>& A, uword dim = 0) {
  detail::check_dim(dim, "mean");
  if ((dim == 0 ? A.n_rows() : A.n_cols()) == 0) detail::throw_domain("mean: empty dimension");
  Mat<T> out = sum(A, dim);
  const real_t<T> n = static_cast<real_t<T>>(dim == 0 ? A.n_rows() : A.n_cols());
  for (T& v : out) v /= n;
  return out;
}

/// Middle order statistic; even counts average the two central values.
/// NaN elements are rejected.
template <RealFloat T>
Mat<T> median(const Mat<T>& A, uword dim = 0) {
  detail::check_dim(dim, "median");
  if ((dim == 0 ? A.n_rows() : A.n_cols()) == 0) detail::throw_domain("median: empty dimension");
  if (A.has_nan()) detail::throw_domain("median: matrix contains NaN");
  Mat<T> out = detail::lane_result<T>(dim, A.n_rows(), A.n_cols());
  std::vector<T> lane;
  detail::for_each_lane(A, dim, [&](const T* p, uword st, uword n, uword k) {
    lane.resize(n);
    for (uword i = 0; i < n; ++i) lane[i] = p[i * st];
    const uword h = n / 2;
    std::nth_element(lane.begin(), lane.begin() + h, lane.end());
    const T hi = lane[h];
    if (n % 2 == 1) {
      out.at(k) = hi;
    } else {
      const T lo = *std::max_element(lane.begin(), lane.begin() + h);
      out.at(k) = lo + (hi - lo) / T(2);
    }
  });
  return out;
}

/// norm_type 0 divides by N - 1 (needs N >= 2), norm_type 1 by N.
template <FloatElement T>
Mat<real_t<T>> var(const Mat<T>& A, uword norm_type = 0, uword dim = 0) {
  detail::check_dim(dim, "var");
  detail::check_norm_type(norm_type, "var");
  const uword len = dim == 0 ? A.n_rows() : A.n_cols();
  if (len == 0) detail::throw_domain("var: empty dimension");
  if (norm_type == 0 && len < 2) detail::throw_domain("var: norm_type 0 needs at least two elements");
  Mat<real_t<T>> out = detail::lane_result<real_t<T>>(dim, A.n_rows(), A.n_cols());
  detail::for_each_lane(A, dim, [&](const T* p, uword st, uword n, uword k) {
    out.at(k) = detail::lane_var(p, st, n, norm_type);
  });
  return out;
}

template <FloatElement T>
Mat<real_t<T>> stddev(const Mat<T>& A, uword norm_type = 0, uword dim = 0) {
  Mat<real_t<T>> out = var(A, norm_type, dim);
  for (auto& v : out) v = std::sqrt(v);
  return out;
}

// ---- covariance and correlation ------------------------------------------------------

/// Covariance between the columns of A and the columns of B (N - 1
/// normalisation). Both need the same number of rows, at least two.
template <FloatElement T>
Mat<T> cov(const Mat<T>& A0, const Mat<T>& B0) {
  const Mat<T> A = detail::as_variables(A0), B = detail::as_variables(B0);
  if (A.n_rows() != B.n_rows())
    detail::throw_shape("cov: observation counts differ (" + std::to_string(A.n_rows()) + " vs " +
                        std::to_string(B.n_rows()) + ")");
  const uword n = A.n_rows();
  if (n < 2) detail::throw_domain("cov: need at least two observations");
  const Mat<T> ma = mean(A, 0), mb = mean(B, 0);
  Mat<T> out(A.n_cols(), B.n_cols());
  for (uword i = 0; i < A.n_cols(); ++i)
    for (uword j = 0; j < B.n_cols(); ++j) {
      T s(0);
      for (uword r = 0; r < n; ++r) s += conj_of(A.at(r, i) - ma.at(i)) * (B.at(r, j) - mb.at(j));
      out.at(i, j) = s / static_cast<real_t<T>>(n - 1);
    }
  return out;
}

template <FloatElement T>
Mat<T> cov(const Mat<T>& A) {
  Mat<T> C = cov(A, A);
  for (uword i = 0; i < C.n_rows(); ++i) {
    C.at(i, i) = T(real_of(C.at(i, i)));
    for (uword j = i + 1; j < C.n_cols(); ++j) C.at(j, i) = conj_of(C.at(i, j));
  }
  return C;
}

/// Correlation coefficients cov(i, j) / (sd_i * sd_j). A variable with zero
/// variance gives NaN entries.
template <FloatElement T>
Mat<T> cor(const Mat<T>& A0, const Mat<T>& B0) {
  const Mat<T> A = detail::as_variables(A0), B = detail::as_variables(B0);
  Mat<T> C = cov(A, B);
  const Mat<real_t<T>> sa = stddev(A, 0, 0), sb = stddev(B, 0, 0);
  for (uword i = 0; i < C.n_rows(); ++i)
    for (uword j = 0; j < C.n_cols(); ++j) C.at(i, j) /= sa.at(i) * sb.at(j);
  return C;
}

template <FloatElement T>
Mat<T> cor(const Mat<T>& A) {
  Mat<T> C = cor(A, A);
  for (uword i = 0; i < C.n_rows(); ++i) {
    if (!detail::is_nan(C.at(i, i))) C.at(i, i) = T(1);
    for (uword j = i + 1; j < C.n_cols(); ++j) C.at(j, i) = conj_of(C.at(i, j));
  }
  return C;
}

// ---- histograms ----------------------------------------------------------------------

namespace detail {

template <class T>
void require_ascending(const Mat<T>& v, const char* what) {
  if (v.is_empty() || !v.is_vec()) throw_domain(std::string(what) + ": need a non-empty vector");
  for (uword i = 1; i < v.n_elem(); ++i)
    if (!(v.at(i - 1) < v.at(i))) throw_domain(std::string(what) + ": values must be strictly ascending");
}

template <class T, class Bin>
Mat<uword> histogram(const Mat<T>& A, uword n_bins, uword dim, Bin bin) {
  check_dim(dim, "hist");
  Mat<uword> out = dim == 0 ? Mat<uword>(n_bins, A.n_cols()) : Mat<uword>(A.n_rows(), n_bins);
  for_each_lane(A, dim, [&](const T* p, uword st, uword n, uword k) {
    for (uword i = 0; i < n; ++i) {
      const std::optional<uword> b = bin(p[i * st]);
      if (!b) continue;
      if (dim == 0) ++out.at(*b, k);
      else ++out.at(k, *b);
    }
  });
  return out;
}

}  // namespace detail

/// Counts per bin centre for each column (dim 0, n_centers x n_cols) or row
/// (dim 1, n_rows x n_centers). Each value goes to the nearest centre; a value
/// exactly between two centres goes to the lower one. NaN is not counted.
template <RealElement T>
Mat<uword> hist(const Mat<T>& A, const Mat<T>& centers, uword dim = 0) {
  detail::require_ascending(centers, "hist");
  const uword nc = centers.n_elem();
  return detail::histogram(A, nc, dim, [&](const T& x) -> std::optional<uword> {
    if (detail::is_nan(x)) return std::nullopt;
    const T* c = centers.memptr();
    const uword hi = static_cast<uword>(std::lower_bound(c, c + nc, x) - c);
    if (hi == 0) return uword{0};
    if (hi == nc) return nc - 1;
    const auto dl = static_cast<double>(x) - static_cast<double>(c[hi - 1]);
    const auto dh = static_cast<double>(c[hi]) - static_cast<double>(x);
    return dh < dl ? hi : hi - 1;
  });
}

/// Counts with edges[i] <= x < edges[i+1]; the last bin also counts
/// x == edges.back(). Values outside [edges.front(), edges.back()] are not
/// counted. Gives n_edges - 1 bins.
template <RealElement T>
Mat<uword> histc(const Mat<T>& A, const Mat<T>& edges, uword dim = 0) {
  detail::require_ascending(edges, "histc");
  const uword ne = edges.n_elem();
  if (ne < 2) detail::throw_domain("histc: need at least two edges");
  return detail::histogram(A, ne - 1, dim, [&](const T& x) -> std::optional<uword> {
    const T* e = edges.memptr();
    if (detail::is_nan(x) || x < e[0] || x > e[ne - 1]) return std::nullopt;
    if (x == e[ne - 1]) return ne - 2;
    return static_cast<uword>(std::upper_bound(e, e + ne, x) - e) - 1;
  });
}

// ---- k-means -------------------------------------------------------------------------

/// static_subset: the first k samples; random_subset: k distinct samples
/// chosen at random; static_spread / random_spread: first sample (or a random
/// one), then repeatedly the sample farthest from the centres chosen so far.
enum class KMeansSeed { static_subset, random_subset, static_spread, random_spread };

template <RealFloat T>
struct KMeansResult {
  Mat<T> means;               ///< d x k, one centre per column
  bool ok = false;            ///< false when a cluster stayed empty after all retries
  uword iterations = 0;       ///< Lloyd iterations of the final attempt
  std::vector<double> wcss;   ///< within-cluster sum of squares after each assignment step
};

namespace detail {

template <class T>
double sq_dist(const Mat<T>& A, uword a, const Mat<T>& M, uword m) {
  double s = 0;
  for (uword r = 0; r < A.n_rows(); ++r) {
    const double d = static_cast<double>(A.at(r, a)) - static_cast<double>(M.at(r, m));
    s += d * d;
  }
  return s;
}

template <class T>
Mat<T> kmeans_seed(const Mat<T>& A, uword k, KMeansSeed mode, RngState& rng) {
  const uword d = A.n_rows(), n = A.n_cols();
  std::vector<uword> chosen;
  if (mode == KMeansSeed::static_subset) {
    for (uword i = 0; i < k; ++i) chosen.push_back(i);
  } else if (mode == KMeansSeed::random_subset) {
    std::vector<uword> pool(n);
    std::iota(pool.begin(), pool.end(), uword{0});
    for (uword i = 0; i < k; ++i) {
      std::swap(pool[i], pool[i + rng.below(n - i)]);
      chosen.push_back(pool[i]);
    }
  } else {
    chosen.push_back(mode == KMeansSeed::static_spread ? 0 : rng.below(n));
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (chosen.size() < k) {
      uword best = 0;
      double best_d = -1;
      for (uword j = 0; j < n; ++j) {
        double s = 0;
        for (uword r = 0; r < d; ++r) {
          const double t = static_cast<double>(A.at(r, j)) - static_cast<double>(A.at(r, chosen.back()));
          s += t * t;
        }
        nearest[j] = std::min(nearest[j], s);
        if (nearest[j] > best_d) {
          best_d = nearest[j];
          best = j;
        }
      }
      chosen.push_back(best);
    }
  }
  Mat<T> M(d, k);
  for (uword c = 0; c < k; ++c)
    for (uword r = 0; r < d; ++r) M.at(r, c) = A.at(r, chosen[c]);
  return M;
}

}  // namespace detail

/// Lloyd's algorithm on the columns of A (d x n). Iterates until the
/// assignment stops changing or n_iter iterations have run. If a cluster
/// becomes empty the run is restarted from a random_subset seeding, up to
/// three times; ok reports whether the final run kept every cluster
/// populated. Assignment ties go to the lowest-numbered centre.
template <RealFloat T>
KMeansResult<T> kmeans(const Mat<T>& A, uword k, uword n_iter, KMeansSeed seed_mode, RngState& rng) {
  const uword d = A.n_rows(), n = A.n_cols();
  if (k == 0) detail::throw_domain("kmeans: k must be at least 1");
  if (k > n) detail::throw_domain("kmeans: k exceeds the number of samples");
  if (!A.is_finite()) detail::throw_domain("kmeans: data contains NaN or Inf");

  KMeansResult<T> res;
  KMeansSeed mode = seed_mode;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Mat<T> M = detail::kmeans_seed(A, k, mode, rng);
    std::vector<uword> label(n, k);
    res.wcss.clear();
    res.iterations = 0;
    bool empty = false;
    for (uword it = 0; it < std::max<uword>(n_iter, 1); ++it) {
      bool changed = false;
      double total = 0;
      for (uword j = 0; j < n; ++j) {
        uword best = 0;
        double best_d = detail::sq_dist(A, j, M, 0);
        for (uword c = 1; c < k; ++c) {
          const double dc = detail::sq_dist(A, j, M, c);
          if (dc < best_d) {
            best_d = dc;
            best = c;
          }
        }
        total += best_d;
        if (label[j] != best) {
          label[j] = best;
          changed = true;
        }
      }
      res.wcss.push_back(total);
      ++res.iterations;
      if (!changed) break;

      std::vector<double> acc(d * k, 0.0);
      std::vector<uword> count(k, 0);
      for (uword j = 0; j < n; ++j) {
        ++count[label[j]];
        for (uword r = 0; r < d; ++r) acc[r + label[j] * d] += static_cast<double>(A.at(r, j));
      }
      empty = std::find(count.begin(), count.end(), uword{0}) != count.end();
      if (empty) break;
      for (uword c = 0; c < k; ++c)
        for (uword r = 0; r < d; ++r) M.at(r, c) = static_cast<T>(acc[r + c * d] / static_cast<double>(count[c]));
    }
    res.means = std::move(M);
    res.ok = !empty;
    if (res.ok) break;
    mode = KMeansSeed::random_subset;
  }
  return res;
}

template <RealFloat T>
KMeansResult<T> kmeans(const Mat<T>& A, uword k, uword n_iter = 100,
                       KMeansSeed seed_mode = KMeansSeed::random_spread) {
  return rng::GlobalRng::instance().with([&](RngState& s) { return kmeans(A, k, n_iter, seed_mode, s); });
}

/// Armadillo-style form: writes the centres into means and returns the status.
template <RealFloat T>
bool kmeans(Mat<T>& means, const Mat<T>& A, uword k, KMeansSeed seed_mode, uword n_iter) {
  KMeansResult<T> r = kmeans(A, k, n_iter, seed_mode);
  means = std::move(r.means);
  return r.ok;
}

// ---- principal components ------------------------------------------------------------

template <FloatElement T>
struct PrincompResult {
  Mat<T> coeff;           ///< n_vars x n_vars, orthonormal columns
  Mat<T> score;           ///< centred data times coeff
  Mat<real_t<T>> latent;  ///< variances along each component, descending
};

/// Rows of A are observations. latent has one entry per variable; entries
/// beyond the rank of the centred data are zero.
template <FloatElement T>
PrincompResult<T> princomp(const Mat<T>& A) {
  if (A.n_rows() < 2) detail::throw_domain("princomp: need at least two observations");
  const Mat<T> mu = mean(A, 0);
  Mat<T> Xc = A;
  for (uword c = 0; c < A.n_cols(); ++c)
    for (uword r = 0; r < A.n_rows(); ++r) Xc.at(r, c) -= mu.at(c);
  SvdResult<T> s = svd(Xc);
  PrincompResult<T> out;
  out.coeff = std::move(s.V);
  out.score = Xc * out.coeff;
  out.latent.set_size(A.n_cols(), 1);
  const real_t<T> denom = static_cast<real_t<T>>(A.n_rows() - 1);
  for (uword i = 0; i < s.s.n_elem(); ++i) out.latent.at(i) = s.s.at(i) * s.s.at(i) / denom;
  return out;
}

// ---- running statistics ----------------------------------------------------------------

/// Streaming mean, variance and extremes of a scalar signal (Welford).
template <RealFloat T>
class RunningStat {
 public:
  /// Non-finite samples are rejected with DomainError and leave the state
  /// unchanged.
  void operator()(T sample) { update(sample); }
  void update(T sample) {
    if (!std::isfinite(sample)) throw DomainError("RunningStat: non-finite sample");
    ++n_;
    if (n_ == 1) {
      mean_ = sample;
      m2_ = 0;
      min_ = max_ = sample;
      return;
    }
    const T delta = sample - mean_;
    mean_ += delta / static_cast<T>(n_);
    m2_ += delta * (sample - mean_);
    min_ = std::min(min_, sample);
    max_ = std::max(max_, sample);
  }

  void reset() { *this = RunningStat(); }

  uword count() const { return n_; }
  T mean() const { return mean_; }
  /// 0 when fewer than two samples have been seen.
  T var(uword norm_type = 0) const {
    detail::check_norm_type(norm_type, "RunningStat::var");
    if (n_ < 2) return T(0);
    return m2_ / static_cast<T>(norm_type == 0 ? n_ - 1 : n_);
  }
  T stddev(uword norm_type = 0) const { return std::sqrt(var(norm_type)); }
  T min() const { return min_; }
  T max() const { return max_; }

 private:
  uword n_ = 0;
  T mean_ = 0;
  T m2_ = 0;
  T min_ = 0;
  T max_ = 0;
};

/// Streaming statistics of a vector signal. The dimension is fixed by the
/// first sample; optional covariance tracking.
template <RealFloat T>
class RunningStatVec {
 public:
  explicit RunningStatVec(bool calc_cov = false) : calc_cov_(calc_cov) {}

  void operator()(const Mat<T>& sample) { update(sample); }
  void update(const Mat<T>& sample) {
    if (!sample.is_vec() && !sample.is_empty()) throw ShapeError("RunningStatVec: sample must be a vector");
    if (!sample.is_finite()) throw DomainError("RunningStatVec: non-finite sample");
    const uword d = sample.n_elem();
    if (n_ == 0) {
      mean_.zeros(d, 1);
      m2_.zeros(d, 1);
      min_ = Mat<T>::from_column_major(d, 1, std::vector<T>(sample.begin(), sample.end()));
      max_ = min_;
      if (calc_cov_) c2_.zeros(d, d);
    } else if (d != mean_.n_elem()) {
      throw ShapeError("RunningStatVec: sample has " + std::to_string(d) + " elements, expected " +
                       std::to_string(mean_.n_elem()));
    }
    ++n_;
    std::vector<T> delta(d);
    for (uword i = 0; i < d; ++i) {
      const T x = sample.at(i);
      delta[i] = x - mean_.at(i);
      mean_.at(i) += delta[i] / static_cast<T>(n_);
      m2_.at(i) += delta[i] * (x - mean_.at(i));
      min_.at(i) = std::min(min_.at(i), x);
      max_.at(i) = std::max(max_.at(i), x);
    }
    if (calc_cov_)
      for (uword j = 0; j < d; ++j)
        for (uword i = 0; i < d; ++i) c2_.at(i, j) += delta[i] * (sample.at(j) - mean_.at(j));
  }

  void reset() { *this = RunningStatVec(calc_cov_); }

  uword count() const { return n_; }
  const Mat<T>& mean() const { return mean_; }
  Mat<T> var(uword norm_type = 0) const { return scaled(m2_, norm_type); }
  Mat<T> stddev(uword norm_type = 0) const {
    Mat<T> v = var(norm_type);
    for (T& x : v) x = std::sqrt(x);
    return v;
  }
  const Mat<T>& min() const { return min_; }
  const Mat<T>& max() const { return max_; }
  /// Requires construction with calc_cov = true.
  Mat<T> cov(uword norm_type = 0) const {
    if (!calc_cov_) throw DomainError("RunningStatVec: covariance tracking not enabled");
    return scaled(c2_, norm_type);
  }

 private:
  Mat<T> scaled(const Mat<T>& acc, uword norm_type) const {
    detail::check_norm_type(norm_type, "RunningStatVec");
    Mat<T> out(acc.n_rows(), acc.n_cols());
    if (n_ < 2) return out;
    const T div = static_cast<T>(norm_type == 0 ? n_ - 1 : n_);
    for (uword i = 0; i < acc.n_elem(); ++i) out.at(i) = acc.at(i) / div;
    return out;
  }

  bool calc_cov_;
  uword n_ = 0;
  Mat<T> mean_, m2_, min_, max_, c2_;
};

}  // namespace streamla
