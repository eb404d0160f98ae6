#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "residuals.hpp"
#include "streamla/streamla.hpp"
#include "support.hpp"

using namespace streamla;
using testutil::fro;
using testutil::Gen;

namespace {

constexpr int kTrials = 1000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class T>
std::int64_t ordered_bits(T x) {
  if constexpr (std::is_same_v<T, float>) {
    const std::int32_t i = std::bit_cast<std::int32_t>(x);
    return i < 0 ? std::numeric_limits<std::int32_t>::min() - std::int64_t(i) : i;
  } else {
    const std::int64_t i = std::bit_cast<std::int64_t>(x);
    return i < 0 ? std::numeric_limits<std::int64_t>::min() - i : i;
  }
}

template <class T>
std::int64_t ulp_distance(T a, T b) {
  if (a == b) return 0;
  const std::int64_t d = ordered_bits(a) - ordered_bits(b);
  return d < 0 ? -d : d;
}

template <class T>
T rounded(long double v) {
  return static_cast<T>(v);
}

std::vector<const Backend*> backends() {
  std::vector<const Backend*> out{&native_backend()};
  if (system_backend_available()) out.push_back(&system_backend());
  return out;
}

span random_span(Gen& g, uword n) {
  const uword a = g.size(0, n - 1);
  return span(a, g.size(a, n - 1));
}

}  // namespace

// ---- core ----------------------------------------------------------------------

TEST(CoreProps, ColumnMajorLaw) {
  Gen g(101);
  for (int t = 0; t < kTrials; ++t) {
    mat M = g.matrix<double>(g.size(1, 12), g.size(1, 12));
    for (uword c = 0; c < M.n_cols(); ++c)
      for (uword r = 0; r < M.n_rows(); ++r) ASSERT_EQ(M(r + c * M.n_rows()), M(r, c));
  }
}

TEST(CoreProps, ReshapeRoundTrip) {
  Gen g(102);
  for (int t = 0; t < kTrials; ++t) {
    const uword r = g.size(1, 12), c = g.size(1, 12), n = r * c;
    std::vector<uword> divisors;
    for (uword d = 1; d <= n; ++d)
      if (n % d == 0) divisors.push_back(d);
    const uword a = divisors[g.size(0, divisors.size() - 1)];
    imat M = g.matrix<std::int64_t>(r, c);
    imat W = M;
    W.reshape(a, n / a);
    ASSERT_EQ(W.n_rows(), a);
    W.reshape(r, c);
    ASSERT_TRUE(identical(W, M));
  }
}

TEST(CoreProps, ResizeGrowThenShrink) {
  Gen g(103);
  for (int t = 0; t < kTrials; ++t) {
    const uword r = g.size(0, 10), c = g.size(0, 10);
    cx_mat M = g.matrix<cx_double>(r, c);
    cx_mat W = M;
    W.resize(r + g.size(0, 5), c + g.size(0, 5));
    W.resize(r, c);
    ASSERT_TRUE(identical(W, M));
  }
}

TEST(CoreProps, InsertThenShedRows) {
  Gen g(104);
  for (int t = 0; t < kTrials; ++t) {
    const uword r = g.size(0, 10), c = g.size(1, 10), k = g.size(1, 4);
    mat M = g.matrix<double>(r, c);
    mat W = M;
    const uword at = g.size(0, r);
    W.insert_rows(at, g.matrix<double>(k, c));
    ASSERT_EQ(W.n_rows(), r + k);
    W.shed_rows(at, at + k - 1);
    ASSERT_TRUE(identical(W, M));
  }
}

TEST(CoreProps, SeededDeterminism) {
  Gen g(105);
  for (int t = 0; t < kTrials; ++t) {
    const std::uint64_t seed = g.engine()();
    const uword r = g.size(0, 8), c = g.size(0, 8);
    RngState a(seed), b(seed);
    ASSERT_TRUE(identical(mat(r, c, FillTag::randu, a), mat(r, c, FillTag::randu, b)));
    ASSERT_TRUE(identical(cx_fmat(r, c, FillTag::randn, a), cx_fmat(r, c, FillTag::randn, b)));
    ASSERT_TRUE(identical(randperm(20, 7, a), randperm(20, 7, b)));
    mat S = g.matrix<double>(5, 5);
    ASSERT_TRUE(identical(shuffle(S, 0, a), shuffle(S, 0, b)));
  }
}

TEST(CoreProps, PredicateConsistency) {
  Gen g(106);
  for (int t = 0; t < kTrials; ++t) {
    mat M = g.matrix<double>(g.size(0, 6), g.size(0, 6));
    if (!M.is_empty() && g.coin()) M(g.size(0, M.n_elem() - 1)) = std::numeric_limits<double>::quiet_NaN();
    if (!M.is_empty() && g.coin()) M(g.size(0, M.n_elem() - 1)) = -std::numeric_limits<double>::infinity();
    if (M.has_nan()) ASSERT_FALSE(M.is_finite());
    if (M.has_inf()) ASSERT_FALSE(M.is_finite());
    if (M.is_empty()) {
      ASSERT_TRUE(M.is_sorted());
      ASSERT_TRUE(M.is_sorted("descend"));
    }
  }
}

// ---- indexing ------------------------------------------------------------------

TEST(IndexingProps, WriteThrough) {
  Gen g(201);
  for (int t = 0; t < kTrials; ++t) {
    mat M = g.matrix<double>(g.size(1, 10), g.size(1, 10));
    const double x = g.normal();
    const span rs = random_span(g, M.n_rows()), cs = random_span(g, M.n_cols());
    auto V = M(rs, cs);
    const uword vr = g.size(0, V.n_rows() - 1), vc = g.size(0, V.n_cols() - 1);
    V(vr, vc) = x;
    ASSERT_EQ(M(rs.first + vr, cs.first + vc), x);

    umat idx(g.size(1, 4), 1);
    for (auto& i : idx) i = g.size(0, M.n_elem() - 1);
    const double y = g.normal();
    M.elem(idx) = mat(idx.n_elem(), 1).fill(y);
    for (uword i : idx) ASSERT_EQ(M(i), y);

    const uword k = std::min(M.n_rows(), M.n_cols());
    const uword d = g.size(0, k - 1);
    M.diag()(d) = x + 1;
    ASSERT_EQ(M(d, d), x + 1);
  }
}

TEST(IndexingProps, SpanComposition) {
  Gen g(202);
  for (int t = 0; t < kTrials; ++t) {
    mat M = g.matrix<double>(g.size(1, 12), g.size(1, 12));
    const span r1 = random_span(g, M.n_rows()), c1 = random_span(g, M.n_cols());
    auto V = M(r1, c1);
    const span r2 = random_span(g, V.n_rows()), c2 = random_span(g, V.n_cols());
    mat nested = V.submat(r2, c2).eval();
    mat direct = M(span(r1.first + r2.first, r1.first + r2.last), span(c1.first + c2.first, c1.first + c2.last)).eval();
    ASSERT_TRUE(identical(nested, direct));
  }
}

TEST(IndexingProps, InclusiveCardinality) {
  Gen g(203);
  for (int t = 0; t < kTrials; ++t) {
    mat M(g.size(1, 30), g.size(1, 30));
    const uword a = g.size(0, M.n_rows() - 1), b = g.size(a, M.n_rows() - 1);
    ASSERT_EQ(M.rows(a, b).n_rows(), b - a + 1);
    const uword p = g.size(0, M.n_cols() - 1), q = g.size(p, M.n_cols() - 1);
    ASSERT_EQ(M.cols(p, q).n_cols(), q - p + 1);
    ASSERT_EQ(M(span(a, b), span(p, q)).n_elem(), (b - a + 1) * (q - p + 1));
  }
}

TEST(IndexingProps, IdentityFancyViewMatchesSubmatrix) {
  Gen g(204);
  for (int t = 0; t < kTrials; ++t) {
    cx_mat M = g.matrix<cx_double>(g.size(1, 10), g.size(1, 10));
    const uword a = g.size(0, M.n_rows() - 1), b = g.size(a, M.n_rows() - 1);
    umat ri(b - a + 1, 1);
    for (uword i = 0; i < ri.n_elem(); ++i) ri(i) = a + i;
    ASSERT_TRUE(identical(M.rows(ri).eval(), M.rows(a, b).eval()));
    const uword p = g.size(0, M.n_cols() - 1), q = g.size(p, M.n_cols() - 1);
    umat ci(q - p + 1, 1);
    for (uword i = 0; i < ci.n_elem(); ++i) ci(i) = p + i;
    ASSERT_TRUE(identical(M.cols(ci).eval(), M.cols(p, q).eval()));
  }
}

// ---- arith ---------------------------------------------------------------------

TEST(ArithProps, BackendEquivalence) {
  if (!system_backend().has(Routine::gemm)) GTEST_SKIP() << "no system gemm";
  Gen g(301);
  for (int t = 0; t < kTrials; ++t) {
    const uword m = g.size(1, 64), k = g.size(1, 64), n = g.size(1, 64);
    mat A = g.matrix<double>(m, k), B = g.matrix<double>(k, n);
    mat N = matmul(A, B, native_backend());
    mat S = matmul(A, B, system_backend());
    ASSERT_LE(fro(testutil::ref_sub(S, N)), 1e-12 * fro(N)) << m << "x" << k << "x" << n;
  }
}

TEST(ArithProps, AddThenSubtract) {
  Gen g(302);
  for (int t = 0; t < kTrials; ++t) {
    const uword r = g.size(0, 8), c = g.size(0, 8);
    imat IA = g.matrix<std::int64_t>(r, c), IB = g.matrix<std::int64_t>(r, c);
    ASSERT_TRUE(identical(imat((IA + IB) - IB), IA));
    mat A = g.matrix<double>(r, c), B = g.matrix<double>(r, c);
    B *= std::pow(10.0, g.uniform(-3, 3));
    mat D = (A + B) - B;
    for (uword i = 0; i < A.n_elem(); ++i)
      ASSERT_LE(std::abs(D(i) - A(i)), 2 * kEps * std::max(std::abs(A(i)), std::abs(B(i))));
  }
}

TEST(ArithProps, RelationalIsLogical) {
  Gen g(303);
  for (int t = 0; t < kTrials; ++t) {
    const uword r = g.size(0, 8), c = g.size(0, 8);
    mat A(r, c), B(r, c);
    for (uword i = 0; i < A.n_elem(); ++i) {
      A(i) = static_cast<double>(g.integer(-3, 3));
      B(i) = static_cast<double>(g.integer(-3, 3));
    }
    for (const LogicalMat& L : {LogicalMat(A < B), LogicalMat(A >= B), LogicalMat(A == B), LogicalMat(A != B),
                                LogicalMat(A <= B), LogicalMat(A > B)})
      for (auto v : L) ASSERT_TRUE(v == 0 || v == 1);
    LogicalMat both = (A < B) % (A >= B);
    for (auto v : both) ASSERT_EQ(v, 0);
  }
}

TEST(ArithProps, ScalarDistributivity) {
  Gen g(304);
  for (int t = 0; t < kTrials; ++t) {
    const uword r = g.size(1, 8), c = g.size(1, 8);
    mat A = g.matrix<double>(r, c), B = g.matrix<double>(r, c);
    const double k = g.normal();
    mat L = k * (A + B), R = k * A + k * B;
    for (uword i = 0; i < L.n_elem(); ++i)
      ASSERT_LE(std::abs(L(i) - R(i)), 4 * kEps * std::abs(k) * (std::abs(A(i)) + std::abs(B(i))));
    imat IA = g.matrix<std::int64_t>(r, c), IB = g.matrix<std::int64_t>(r, c);
    const std::int64_t ik = g.integer(-9, 9);
    ASSERT_TRUE(identical(imat(ik * (IA + IB)), imat(ik * IA + ik * IB)));
  }
}

// ---- generators ----------------------------------------------------------------

TEST(GeneratorProps, LinspaceReversal) {
  Gen g(401);
  for (int t = 0; t < kTrials; ++t) {
    const double a = g.uniform(-1e3, 1e3), b = g.uniform(-1e3, 1e3);
    const uword n = g.size(2, 200);
    mat f = linspace(a, b, n), r = linspace(b, a, n);
    ASSERT_EQ(f.n_rows(), n);
    ASSERT_EQ(f.n_cols(), 1u);
    for (uword i = 0; i < n; ++i)
      ASSERT_LE(std::abs(f(i) - r(n - 1 - i)), 4 * kEps * (std::abs(a) + std::abs(b))) << a << " " << b << " " << n;
  }
}

TEST(GeneratorProps, RegspaceMatchesLoop) {
  Gen g(402);
  for (int t = 0; t < kTrials; ++t) {
    const double start = g.uniform(-50, 50);
    double delta = g.uniform(0.01, 5) * (g.coin() ? 1 : -1);
    const double end = g.uniform(-50, 50);
    std::vector<double> expect;
    for (uword k = 0;; ++k) {
      const double v = start + static_cast<double>(k) * delta;
      if (delta > 0 ? v > end : v < end) break;
      expect.push_back(v);
    }
    mat got = regspace(start, delta, end);
    ASSERT_EQ(got.n_elem(), expect.size());
    for (uword i = 0; i < got.n_elem(); ++i) {
      ASSERT_EQ(got(i), expect[i]);
      ASSERT_TRUE(delta > 0 ? got(i) <= end : got(i) >= end);
    }
    const std::int64_t is = g.integer(-30, 30), ie = g.integer(-30, 30);
    std::int64_t id = g.integer(1, 7) * (g.coin() ? 1 : -1);
    std::vector<std::int64_t> iexpect;
    for (std::int64_t v = is; id > 0 ? v <= ie : v >= ie; v += id) iexpect.push_back(v);
    imat igot = regspace<std::int64_t>(is, id, ie);
    ASSERT_EQ(igot.n_elem(), iexpect.size());
    for (uword i = 0; i < igot.n_elem(); ++i) ASSERT_EQ(igot(i), iexpect[i]);
  }
}

TEST(GeneratorProps, RandpermHasNoDuplicates) {
  Gen g(403);
  for (int t = 0; t < kTrials; ++t) {
    RngState rng(g.engine()());
    const uword n = g.size(0, 100), m = g.size(0, n);
    imat p = randperm(n, m, rng);
    ASSERT_EQ(p.n_elem(), m);
    std::set<std::int64_t> seen(p.begin(), p.end());
    ASSERT_EQ(seen.size(), m);
    for (auto v : p) ASSERT_TRUE(v >= 0 && v < static_cast<std::int64_t>(n));
  }
}

// ---- decompositions ------------------------------------------------------------

class DecompProps : public ::testing::TestWithParam<std::string_view> {};

TEST_P(DecompProps, ResidualAndOrthogonality) {
  const std::string_view routine = GetParam();
  Gen g(500 + std::hash<std::string_view>{}(routine) % 1000);
  for (int t = 0; t < kTrials; ++t) {
    const uword n = g.size(2, 16);
    auto r = t % 2 == 0 ? testutil::measure<double>(routine, g, n, active_backend())
                        : testutil::measure<cx_double>(routine, g, n, active_backend());
    ASSERT_LE(r.residual, 1e-9) << routine << " trial " << t << " n=" << n;
    ASSERT_LE(r.orth, 1e-10) << routine << " trial " << t << " n=" << n;
  }
}

INSTANTIATE_TEST_SUITE_P(AllRoutines, DecompProps, ::testing::ValuesIn(testutil::kRoutines),
                         [](const auto& info) { return std::string(info.param); });

TEST(DecompSolveProps, RoundTrip) {
  Gen g(550);
  for (int t = 0; t < kTrials; ++t) {
    const uword n = g.size(2, 16), k = g.size(1, 4);
    mat A = g.matrix<double>(n, n), X0 = g.matrix<double>(n, k);
    mat B = testutil::ref_mul(A, X0);
    mat X = solve(A, B);
    const double c = cond(A);
    ASSERT_LE(fro(testutil::ref_sub(X, X0)), 64 * kEps * c * fro(X0)) << "cond " << c;
  }
}

TEST(DecompBackendProps, Parity) {
  if (!system_backend_available()) GTEST_SKIP() << "no system backend";
  Gen g(560);
  const char* routines[] = {"chol", "lu", "svd", "svd_econ", "eig_sym"};
  for (int t = 0; t < kTrials; ++t) {
    const std::string_view routine = routines[t % 5];
    const uword n = g.size(2, 16);
    const std::uint64_t seed = g.engine()();
    for (auto* be : backends()) {
      Gen local(seed);
      auto r = testutil::measure<double>(routine, local, n, *be);
      ASSERT_LE(r.residual, 1e-9) << routine << " " << be->name();
      ASSERT_LE(r.orth, 1e-10) << routine << " " << be->name();
    }
    mat X = g.matrix<double>(n, g.size(2, 16));
    mat sn = svd_values(X, native_backend()), ss = svd_values(X, system_backend());
    ASSERT_LE(fro(testutil::ref_sub(sn, ss)), 1e-12 * fro(X));
    mat H = g.hermitian<double>(n);
    mat en = eig_sym(H, native_backend()).eigval, es = eig_sym(H, system_backend()).eigval;
    ASSERT_LE(fro(testutil::ref_sub(en, es)), 1e-12 * fro(H));
    mat B = g.matrix<double>(n, 2), A = g.matrix<double>(n, n);
    mat xn = solve(A, B, native_backend()), xs = solve(A, B, system_backend());
    ASSERT_LE(fro(testutil::ref_sub(testutil::ref_mul(A, xs), B)), 1e-10 * cond(A) * fro(B));
    ASSERT_LE(fro(testutil::ref_sub(testutil::ref_mul(A, xn), B)), 1e-10 * cond(A) * fro(B));
  }
}

// ---- matfun --------------------------------------------------------------------

TEST(MatfunProps, DimDuality) {
  Gen g(601);
  for (int t = 0; t < kTrials; ++t) {
    mat A = g.matrix<double>(g.size(1, 8), g.size(1, 8));
    mat At = A.t();
    ASSERT_TRUE(identical(sum(At, 1), mat(sum(A, 0).t())));
    ASSERT_TRUE(identical(prod(At, 1), mat(prod(A, 0).t())));
    ASSERT_TRUE(identical(min(At, 1), mat(min(A, 0).t())));
    ASSERT_TRUE(identical(max(At, 1), mat(max(A, 0).t())));
    ASSERT_TRUE(identical(sum(At, 0), mat(sum(A, 1).t())));
  }
}

TEST(MatfunProps, DeterminantIsMultiplicative) {
  Gen g(602);
  for (int t = 0; t < kTrials; ++t) {
    mat A = g.matrix<double>(4, 4), B = g.matrix<double>(4, 4);
    const double lhs = det(testutil::ref_mul(A, B)), rhs = det(A) * det(B);
    ASSERT_LE(std::abs(lhs - rhs), 1e-9 * std::max(std::abs(rhs), 1e-300)) << lhs << " vs " << rhs;
  }
}

TEST(MatfunProps, SortThenIsSorted) {
  Gen g(603);
  for (int t = 0; t < kTrials; ++t) {
    mat A = g.matrix<double>(g.size(0, 8), g.size(0, 8));
    for (auto& v : A)
      if (g.size(0, 3) == 0) v = std::round(v);
    for (const char* dir : {"ascend", "descend"}) {
      mat C = sort(A, dir, 0);
      for (uword c = 0; c < C.n_cols(); ++c) ASSERT_TRUE(mat(C.col(c)).is_sorted(dir));
      mat S = sort(A, dir, 1);
      for (uword r = 0; r < S.n_rows(); ++r) ASSERT_TRUE(mat(S.row(r)).is_sorted(dir));
      for (uword c = 0; c < A.n_cols(); ++c) ASSERT_TRUE(mat(sort(mat(A.col(c)), dir)).is_sorted(dir));
    }
  }
}

TEST(MatfunProps, FindMatchesRelational) {
  Gen g(604);
  for (int t = 0; t < kTrials; ++t) {
    imat A = g.matrix<std::int64_t>(g.size(0, 8), g.size(0, 8));
    for (auto& v : A) v /= 8;
    LogicalMat nz = A != std::int64_t(0);
    umat f = find(A), fl = find(nz);
    ASSERT_TRUE(identical(f, fl));
    std::vector<uword> expect;
    for (uword i = 0; i < nz.n_elem(); ++i)
      if (nz(i) == 1) expect.push_back(i);
    ASSERT_EQ(f.n_elem(), expect.size());
    for (uword i = 0; i < f.n_elem(); ++i) ASSERT_EQ(f(i), expect[i]);
  }
}

TEST(MatfunProps, KronShape) {
  Gen g(605);
  for (int t = 0; t < kTrials; ++t) {
    const uword m = g.size(0, 5), n = g.size(0, 5), p = g.size(0, 5), q = g.size(0, 5);
    imat K = kron(g.matrix<std::int64_t>(m, n), g.matrix<std::int64_t>(p, q));
    ASSERT_EQ(K.n_rows(), m * p);
    ASSERT_EQ(K.n_cols(), n * q);
  }
}

TEST(MatfunProps, Ind2SubInverse) {
  Gen g(606);
  for (int t = 0; t < kTrials; ++t) {
    const SizeSpec s = size(g.size(1, 12), g.size(1, 12));
    for (uword i = 0; i < s.n_rows * s.n_cols; ++i) {
      umat rc = ind2sub(s, i);
      ASSERT_EQ(rc(0), i % s.n_rows);
      ASSERT_EQ(rc(1), i / s.n_rows);
      ASSERT_EQ(sub2ind(s, rc(0), rc(1)), i);
    }
  }
}

// ---- elemwise ------------------------------------------------------------------

namespace {

template <class T, class Lib, class Ref>
void pointwise(const char* name, Gen& g, double lo, double hi, bool log_scale, Lib lib, Ref ref) {
  std::int64_t worst = 0;
  for (int t = 0; t < kTrials; ++t) {
    const uword r = g.size(1, 4);
    Mat<T> A(r, 10 / r + 1);
    for (auto& v : A) v = static_cast<T>(log_scale ? std::exp(g.uniform(lo, hi)) : g.uniform(lo, hi));
    Mat<T> B = lib(A);
    ASSERT_EQ(B.n_rows(), A.n_rows()) << name;
    ASSERT_EQ(B.n_cols(), A.n_cols()) << name;
    for (uword i = 0; i < A.n_elem(); ++i) {
      const T expect = rounded<T>(ref(static_cast<long double>(A(i))));
      const std::int64_t d = ulp_distance(B(i), expect);
      worst = std::max(worst, d);
      ASSERT_LE(d, 2) << name << "(" << A(i) << ") = " << B(i) << " expected " << expect;
    }
  }
  ::testing::Test::RecordProperty(name, static_cast<int>(worst));
}

}  // namespace

#define STREAMLA_POINTWISE(fn, lo, hi, logscale, ref)                                                     \
  pointwise<double>(#fn, g, lo, hi, logscale, [](const mat& A) { return fn(A); },                         \
                    [](long double x) { return ref; });                                                    \
  pointwise<float>(#fn "_f32", g, lo, hi, logscale, [](const fmat& A) { return fn(A); },                  \
                   [](long double x) { return ref; })

TEST(ElemwiseProps, PointwiseAgreement) {
  Gen g(701);
  STREAMLA_POINTWISE(exp, -80, 80, false, std::exp(x));
  STREAMLA_POINTWISE(exp2, -120, 120, false, std::exp2(x));
  STREAMLA_POINTWISE(exp10, -30, 30, false, std::pow(10.0L, x));
  STREAMLA_POINTWISE(log, -80, 80, true, std::log(x));
  STREAMLA_POINTWISE(log2, -80, 80, true, std::log2(x));
  STREAMLA_POINTWISE(log10, -80, 80, true, std::log10(x));
  STREAMLA_POINTWISE(sqrt, -80, 80, true, std::sqrt(x));
  STREAMLA_POINTWISE(square, -1e3, 1e3, false, x * x);
  STREAMLA_POINTWISE(sin, -10, 10, false, std::sin(x));
  STREAMLA_POINTWISE(cos, -10, 10, false, std::cos(x));
  STREAMLA_POINTWISE(tan, -1.5, 1.5, false, std::tan(x));
  STREAMLA_POINTWISE(asin, -0.99, 0.99, false, std::asin(x));
  STREAMLA_POINTWISE(acos, -0.99, 0.99, false, std::acos(x));
  STREAMLA_POINTWISE(atan, -100, 100, false, std::atan(x));
  STREAMLA_POINTWISE(sinh, -20, 20, false, std::sinh(x));
  STREAMLA_POINTWISE(cosh, -20, 20, false, std::cosh(x));
  STREAMLA_POINTWISE(tanh, -5, 5, false, std::tanh(x));
  STREAMLA_POINTWISE(asinh, -100, 100, false, std::asinh(x));
  STREAMLA_POINTWISE(acosh, 1.01, 100, false, std::acosh(x));
  STREAMLA_POINTWISE(atanh, -0.99, 0.99, false, std::atanh(x));
  STREAMLA_POINTWISE(erf, -3, 3, false, std::erf(x));
  STREAMLA_POINTWISE(erfc, -3, 9, false, std::erfc(x));
  STREAMLA_POINTWISE(lgamma, 3, 150, false, std::lgamma(x));
  STREAMLA_POINTWISE(floor, -1e6, 1e6, false, std::floor(x));
  STREAMLA_POINTWISE(ceil, -1e6, 1e6, false, std::ceil(x));
  STREAMLA_POINTWISE(trunc, -1e6, 1e6, false, std::trunc(x));
  STREAMLA_POINTWISE(round, -1e6, 1e6, false, std::round(x));
  STREAMLA_POINTWISE(abs, -1e6, 1e6, false, std::fabs(x));
}

TEST(ElemwiseProps, ExpOfLogIdentity) {
  Gen g(702);
  std::int64_t worst = 0;
  for (int t = 0; t < kTrials; ++t) {
    mat A(10, 1);
    for (auto& v : A) v = std::exp2(g.uniform(-4, 4));
    mat B = exp(log(A));
    for (uword i = 0; i < A.n_elem(); ++i) {
      worst = std::max(worst, ulp_distance(B(i), A(i)));
      ASSERT_LE(ulp_distance(B(i), A(i)), 4) << A(i);
    }
  }
  RecordProperty("worst_ulp", static_cast<int>(worst));
}

TEST(ElemwiseProps, SquareEqualsPowTwo) {
  Gen g(703);
  for (int t = 0; t < kTrials; ++t) {
    const uword r = g.size(0, 6), c = g.size(0, 6);
    mat A = g.matrix<double>(r, c);
    ASSERT_TRUE(identical(square(A), pow(A, 2.0)));
    fmat F = g.matrix<float>(r, c);
    ASSERT_TRUE(identical(square(F), pow(F, 2.0f)));
    cx_mat Z = g.matrix<cx_double>(r, c);
    ASSERT_TRUE(identical(square(Z), pow(Z, cx_double(2, 0))));
    cx_fmat ZF = g.matrix<cx_float>(r, c);
    ASSERT_TRUE(identical(square(ZF), pow(ZF, cx_float(2, 0))));
  }
}

TEST(ElemwiseProps, TruncatedNeverInfinite) {
  Gen g(704);
  const double extremes[] = {0.0, -0.0, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::max(), -std::numeric_limits<double>::max(),
                             std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::min()};
  for (int t = 0; t < kTrials; ++t) {
    mat A(8, 1);
    for (auto& v : A) v = g.coin() ? extremes[g.size(0, 7)] : std::ldexp(g.uniform(-1, 1), static_cast<int>(g.integer(-1074, 1023)));
    mat E = trunc_exp(A), L = trunc_log(A);
    for (uword i = 0; i < A.n_elem(); ++i) {
      ASSERT_FALSE(std::isinf(E(i))) << A(i);
      ASSERT_FALSE(std::isinf(L(i))) << A(i);
    }
    fmat Ef = trunc_exp(fmat(conv_to<float>(A))), Lf = trunc_log(fmat(conv_to<float>(A)));
    for (uword i = 0; i < A.n_elem(); ++i) {
      ASSERT_FALSE(std::isinf(Ef(i)));
      ASSERT_FALSE(std::isinf(Lf(i)));
    }
  }
}

// ---- stats ---------------------------------------------------------------------

TEST(StatsProps, StreamingMatchesBatch) {
  Gen g(801);
  for (int t = 0; t < kTrials; ++t) {
    const double mu = g.uniform(1, 100) * (g.coin() ? 1 : -1);
    const double sigma = g.uniform(0.01, 0.25) * std::abs(mu);
    const uword n = g.size(2, 300);
    mat v(n, 1);
    RunningStat<double> rs;
    for (auto& x : v) {
      x = mu + sigma * g.normal();
      rs(x);
    }
    ASSERT_EQ(rs.count(), n);
    const double bm = mean(v)(0), bv = var(v)(0);
    ASSERT_LE(std::abs(rs.mean() - bm), 1e-12 * std::abs(bm));
    ASSERT_LE(std::abs(rs.var() - bv), 1e-12 * bv);
    ASSERT_EQ(rs.min(), v.min());
    ASSERT_EQ(rs.max(), v.max());
  }
}

TEST(StatsProps, KMeansWcssMonotone) {
  Gen g(802);
  for (int t = 0; t < kTrials; ++t) {
    const uword d = g.size(1, 3), n = g.size(4, 60), k = g.size(1, 4);
    mat A = g.matrix<double>(d, n);
    RngState rng(g.engine()());
    const auto mode = static_cast<KMeansSeed>(g.size(0, 3));
    auto r = kmeans(A, k, 30, mode, rng);
    for (std::size_t i = 1; i < r.wcss.size(); ++i)
      ASSERT_LE(r.wcss[i], r.wcss[i - 1] * (1 + 1e-12)) << "iteration " << i;
  }
}

TEST(StatsProps, CovarianceIsPsd) {
  Gen g(803);
  for (int t = 0; t < kTrials; ++t) {
    mat A = g.matrix<double>(g.size(2, 30), g.size(1, 8));
    mat C = cov(A);
    ASSERT_TRUE(identical(C, mat(C.t())));
    ASSERT_GE(eig_sym(C).eigval.min(), -1e-10);
    cx_mat Z = g.matrix<cx_double>(g.size(2, 20), g.size(1, 5));
    cx_mat CZ = cov(Z);
    ASSERT_GE(eig_sym(CZ).eigval.min(), -1e-10);
  }
}

TEST(StatsProps, CorrelationBounded) {
  Gen g(804);
  for (int t = 0; t < kTrials; ++t) {
    mat A = g.matrix<double>(g.size(2, 30), g.size(1, 8));
    if (A.n_cols() > 1 && g.coin()) A.col(1) = A.col(0).eval() * g.uniform(-3, 3);
    mat R = cor(A);
    for (auto v : R) {
      ASSERT_GE(v, -1 - 1e-12);
      ASSERT_LE(v, 1 + 1e-12);
    }
  }
}

TEST(StatsProps, PrincompLatentSum) {
  Gen g(805);
  for (int t = 0; t < kTrials; ++t) {
    mat X = g.matrix<double>(g.size(2, 30), g.size(1, 8));
    auto p = princomp(X);
    const double total = accu(var(X));
    ASSERT_LE(std::abs(accu(p.latent) - total), 1e-9 * total);
  }
}

// ---- sigproc -------------------------------------------------------------------

TEST(SigprocProps, Parseval) {
  Gen g(901);
  for (int t = 0; t < kTrials; ++t) {
    const uword n = g.size(1, 256);
    cx_mat x = g.matrix<cx_double>(n, 1);
    cx_mat X = fft(x);
    const double ex = fro(x) * fro(x), eX = fro(X) * fro(X) / static_cast<double>(n);
    ASSERT_LE(std::abs(ex - eX), 1e-9 * ex) << "n=" << n;
  }
}

TEST(SigprocProps, ConvolutionTheorem) {
  Gen g(902);
  for (int t = 0; t < kTrials; ++t) {
    const uword na = g.size(1, 64), nb = g.size(1, 64), n = na + nb - 1;
    mat a = g.matrix<double>(na, 1), b = g.matrix<double>(nb, 1);
    cx_mat lhs = fft(conv(a, b));
    cx_mat fa = fft(a, n), fb = fft(b, n);
    double worst = 0;
    for (uword i = 0; i < n; ++i) worst = std::max(worst, std::abs(lhs(i) - fa(i) * fb(i)));
    ASSERT_LE(worst, 1e-8) << na << " " << nb;
  }
}

TEST(SigprocProps, ConvCommutes) {
  Gen g(903);
  for (int t = 0; t < kTrials; ++t) {
    const uword na = g.size(1, 40), nb = g.size(1, 40);
    imat ia = g.matrix<std::int64_t>(na, 1), ib = g.matrix<std::int64_t>(nb, 1);
    ASSERT_TRUE(identical(conv(ia, ib), conv(ib, ia)));
    mat a = g.matrix<double>(na, 1), b = g.matrix<double>(nb, 1);
    mat ab = conv(a, b), ba = conv(b, a);
    ASSERT_EQ(ab.n_elem(), ba.n_elem());
    for (uword i = 0; i < ab.n_elem(); ++i) ASSERT_LE(std::abs(ab(i) - ba(i)), 1e-12 * (1 + std::abs(ab(i))));
  }
}

TEST(SigprocProps, InterpolationIsLinear) {
  Gen g(904);
  for (int t = 0; t < kTrials; ++t) {
    const uword n = g.size(2, 20);
    mat X = sort(g.matrix<double>(n, 1));
    bool distinct = true;
    for (uword i = 1; i < n; ++i) distinct = distinct && X(i) > X(i - 1);
    if (!distinct) continue;
    mat Y1 = g.matrix<double>(n, 1), Y2 = g.matrix<double>(n, 1);
    mat XI = g.matrix<double>(g.size(1, 10), 1) * 1.5;
    const double al = g.normal(), be = g.normal();
    mat lhs = interp1(X, mat(al * Y1 + be * Y2), XI);
    mat rhs = al * interp1(X, Y1, XI) + be * interp1(X, Y2, XI);
    for (uword i = 0; i < XI.n_elem(); ++i) {
      ASSERT_EQ(std::isnan(lhs(i)), std::isnan(rhs(i)));
      if (!std::isnan(lhs(i))) ASSERT_LE(std::abs(lhs(i) - rhs(i)), 1e-12 * (std::abs(al) + std::abs(be)) * 10);
    }
    const uword nx = g.size(2, 6), ny = g.size(2, 6);
    mat gx = linspace(0.0, 1.0, nx), gy = linspace(0.0, 2.0, ny);
    mat Z1 = g.matrix<double>(ny, nx), Z2 = g.matrix<double>(ny, nx);
    mat qx(5, 1), qy(5, 1);
    for (uword i = 0; i < 5; ++i) {
      qx(i) = g.uniform(-0.1, 1.1);
      qy(i) = g.uniform(-0.1, 2.1);
    }
    mat l2 = interp2(gx, gy, mat(al * Z1 + be * Z2), qx, qy);
    mat r2 = al * interp2(gx, gy, Z1, qx, qy) + be * interp2(gx, gy, Z2, qx, qy);
    for (uword i = 0; i < 5; ++i) {
      ASSERT_EQ(std::isnan(l2(i)), std::isnan(r2(i)));
      if (!std::isnan(l2(i))) ASSERT_LE(std::abs(l2(i) - r2(i)), 1e-12 * (std::abs(al) + std::abs(be)) * 10);
    }
  }
}

// ---- io ------------------------------------------------------------------------

namespace {

std::filesystem::path scratch() {
  auto p = std::filesystem::temp_directory_path() / "streamla_props";
  std::filesystem::create_directories(p);
  return p;
}

template <class T>
bool bit_identical(const Mat<T>& a, const Mat<T>& b) {
  return a.n_rows() == b.n_rows() && a.n_cols() == b.n_cols() &&
         std::memcmp(a.memptr(), b.memptr(), a.n_elem() * sizeof(T)) == 0;
}

template <class T>
void round_trip(Gen& g, const std::string& path) {
  const uword shape = g.size(0, 4);
  const uword n = g.size(1, 9);
  const uword r = shape == 0 ? 0 : shape == 1 ? 1 : shape == 2 ? 1 : shape == 3 ? n : g.size(1, 9);
  const uword c = shape == 0 ? 0 : shape == 1 ? 1 : shape == 2 ? n : shape == 3 ? 1 : g.size(1, 9);
  Mat<T> M = g.matrix<T>(r, c);
  if constexpr (std::is_floating_point_v<real_t<T>>)
    for (auto& v : M) v *= static_cast<real_t<T>>(std::exp2(g.integer(-60, 60)));
  const FileFormat f = std::array{FileFormat::raw_ascii, FileFormat::csv_ascii, FileFormat::tagged_binary}[g.size(0, 2)];
  M.save(path, f);
  Mat<T> back;
  back.load(path, f);
  ASSERT_TRUE(bit_identical(M, back)) << format_name(f) << " " << r << "x" << c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

}  // namespace

TEST(IoProps, RoundTripEveryKind) {
  Gen g(1001);
  const std::string path = (scratch() / "rt").string();
  for (int t = 0; t < kTrials; ++t) {
    switch (t % 5) {
      case 0: round_trip<std::int64_t>(g, path); break;
      case 1: round_trip<float>(g, path); break;
      case 2: round_trip<double>(g, path); break;
      case 3: round_trip<cx_float>(g, path); break;
      case 4: round_trip<cx_double>(g, path); break;
    }
    if (HasFatalFailure()) return;
  }
}

TEST(IoProps, BinaryIsLittleEndian) {
  Gen g(1002);
  const std::string path = (scratch() / "le.bin").string();
  for (int t = 0; t < kTrials; ++t) {
    const uword r = g.size(0, 5), c = g.size(0, 5);
    std::string expect = "STLA1";
    if (g.coin()) {
      mat M = g.matrix<double>(r, c);
      M.save(path, FileFormat::tagged_binary);
      expect.push_back(3);
      put_le(expect, r);
      put_le(expect, c);
      for (double v : M) {
        std::uint64_t u;
        std::memcpy(&u, &v, 8);
        put_le(expect, u);
      }
    } else {
      imat M = g.matrix<std::int64_t>(r, c);
      M.save(path, FileFormat::tagged_binary);
      expect.push_back(1);
      put_le(expect, r);
      put_le(expect, c);
      for (std::int64_t v : M) put_le(expect, static_cast<std::uint64_t>(v));
    }
    ASSERT_EQ(slurp(path), expect);
  }
}
