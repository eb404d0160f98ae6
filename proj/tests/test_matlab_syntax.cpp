#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "streamla/streamla.hpp"
#include "support.hpp"

// One test per Matlab/Octave construct and its streamla counterpart.

using namespace streamla;
using testutil::fixture;
namespace fs = std::filesystem;

namespace {

mat counting(uword r, uword c) {
  mat A(r, c);
  for (uword i = 0; i < A.n_elem(); ++i) A(i) = static_cast<double>(i + 1);
  return A;
}

cube counting_cube(uword r, uword c, uword s) {
  cube Q(r, c, s);
  for (uword i = 0; i < Q.n_elem(); ++i) Q(i) = static_cast<double>(i + 1);
  return Q;
}

}  // namespace

TEST(MatlabSyntax, FirstElementIsZeroZero) {
  mat A{{7, 8}, {9, 10}};
  EXPECT_EQ(A(0, 0), 7);
  EXPECT_THROW(A(2, 0), BoundsError);
}

TEST(MatlabSyntax, DiagonalElementKMinusOne) {
  mat A = counting(4, 4);
  for (uword k = 1; k <= 4; ++k) EXPECT_EQ(A(k - 1, k - 1), static_cast<double>((k - 1) * 4 + k));
}

TEST(MatlabSyntax, SizeDimOneIsNRows) {
  mat A(3, 5);
  EXPECT_EQ(A.n_rows(), 3u);
}

TEST(MatlabSyntax, SizeDimTwoIsNCols) {
  mat A(3, 5);
  EXPECT_EQ(A.n_cols(), 5u);
}

TEST(MatlabSyntax, SizeDimThreeIsNSlices) {
  cube Q(2, 3, 4);
  EXPECT_EQ(Q.n_slices(), 4u);
}

TEST(MatlabSyntax, NumelIsNElem) {
  EXPECT_EQ(mat(3, 5).n_elem(), 15u);
  EXPECT_EQ(cube(2, 3, 4).n_elem(), 24u);
}

TEST(MatlabSyntax, ColumnAccessReadWrite) {
  mat A = counting(3, 3);
  EXPECT_TRUE(identical(mat(A.col(1)), mat{{4}, {5}, {6}}));
  A.col(1) = mat{{0}, {0}, {0}};
  EXPECT_TRUE(identical(A, mat{{1, 0, 7}, {2, 0, 8}, {3, 0, 9}}));
}

TEST(MatlabSyntax, RowAccessReadWrite) {
  mat A = counting(3, 3);
  EXPECT_TRUE(identical(mat(A.row(2)), mat{{3, 6, 9}}));
  A.row(2).fill(-1);
  EXPECT_TRUE(identical(A, mat{{1, 4, 7}, {2, 5, 8}, {-1, -1, -1}}));
}

TEST(MatlabSyntax, ColumnRangeIsInclusive) {
  mat A = counting(2, 5);
  mat S = A.cols(1, 3);
  EXPECT_TRUE(identical(S, mat{{3, 5, 7}, {4, 6, 8}}));
  A.cols(1, 3).zeros();
  EXPECT_TRUE(identical(A, mat{{1, 0, 0, 0, 9}, {2, 0, 0, 0, 10}}));
}

TEST(MatlabSyntax, RowRangeIsInclusive) {
  mat A = counting(5, 2);
  EXPECT_TRUE(identical(mat(A.rows(1, 2)), mat{{2, 7}, {3, 8}}));
  A.rows(1, 2) += 100.0;
  EXPECT_EQ(A(1, 0), 102);
  EXPECT_EQ(A(3, 0), 4);
}

TEST(MatlabSyntax, SubmatrixBothRanges) {
  mat A = counting(4, 4);
  EXPECT_TRUE(identical(mat(A(span(1, 2), span(2, 3))), mat{{10, 14}, {11, 15}}));
  A(span(1, 2), span(2, 3)) = mat{{0, 0}, {0, 0}};
  EXPECT_EQ(A(1, 2), 0);
  EXPECT_EQ(A(0, 2), 9);
}

TEST(MatlabSyntax, SubcubeThreeRanges) {
  cube Q = counting_cube(3, 3, 3);
  cube S = Q(span(0, 1), span(1, 2), span(1, 2));
  EXPECT_EQ(S.n_rows(), 2u);
  EXPECT_EQ(S.n_slices(), 2u);
  EXPECT_EQ(S(0, 0, 0), Q(0, 1, 1));
  EXPECT_EQ(S(1, 1, 1), Q(1, 2, 2));
  Q(span(0, 1), span(1, 2), span(1, 2)).fill(0);
  EXPECT_EQ(Q(1, 2, 2), 0);
  EXPECT_EQ(Q(2, 2, 2), 27);
}

TEST(MatlabSyntax, CubeSliceAsView) {
  cube Q = counting_cube(2, 2, 3);
  cube S = Q(span::all, span::all, span(1));
  EXPECT_EQ(S.n_slices(), 1u);
  EXPECT_EQ(S(0, 0, 0), 5);
  Q(span::all, span::all, span(1)).fill(-1);
  EXPECT_EQ(Q(1, 1, 1), -1);
  EXPECT_EQ(Q(1, 1, 2), 12);
}

TEST(MatlabSyntax, CubeSliceAsMatrix) {
  cube Q = counting_cube(2, 2, 3);
  mat M = Q.slice(2);
  EXPECT_TRUE(identical(M, mat{{9, 11}, {10, 12}}));
  Q.slice(2) = mat{{0, 0}, {0, 1}};
  EXPECT_EQ(Q(1, 1, 2), 1);
  EXPECT_EQ(Q(0, 0, 2), 0);
}

TEST(MatlabSyntax, QuoteIsConjugateTranspose) {
  cx_mat A{{cx_double(1, 2), cx_double(3, -4)}};
  cx_mat expect{{cx_double(1, -2)}, {cx_double(3, 4)}};
  EXPECT_TRUE(identical(A.t(), expect));
  EXPECT_TRUE(identical(trans(A), expect));
  EXPECT_TRUE(identical(mat{{1, 2}}.t(), mat{{1}, {2}}));
}

TEST(MatlabSyntax, DotQuoteIsPlainTranspose) {
  cx_mat A{{cx_double(1, 2), cx_double(3, -4)}};
  cx_mat expect{{cx_double(1, 2)}, {cx_double(3, -4)}};
  EXPECT_TRUE(identical(A.st(), expect));
  EXPECT_TRUE(identical(strans(A), expect));
}

TEST(MatlabSyntax, ZerosOfSizeA) {
  mat A = counting(2, 3);
  A.zeros();
  EXPECT_TRUE(identical(A, mat(2, 3, FillTag::zeros)));
}

TEST(MatlabSyntax, OnesOfSizeA) {
  mat A = counting(2, 3);
  A.ones();
  EXPECT_TRUE(identical(A, mat{{1, 1, 1}, {1, 1, 1}}));
}

TEST(MatlabSyntax, ZerosK) {
  mat A = zeros<double>(3, 3);
  EXPECT_TRUE(identical(A, mat{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
}

TEST(MatlabSyntax, OnesK) {
  mat A = ones<double>(2, 2);
  EXPECT_TRUE(identical(A, mat{{1, 1}, {1, 1}}));
}

TEST(MatlabSyntax, ComplexFromTwoReals) {
  mat A{{1, 2}}, B{{3, -4}};
  cx_mat C(A, B);
  EXPECT_TRUE(identical(C, cx_mat{{cx_double(1, 3), cx_double(2, -4)}}));
  EXPECT_THROW(cx_mat(A, mat{{1}}), ShapeError);
}

TEST(MatlabSyntax, StarIsMatrixProduct) {
  mat A{{1, 2}, {3, 4}}, B{{5, 6}, {7, 8}};
  EXPECT_TRUE(identical(mat(A * B), mat{{19, 22}, {43, 50}}));
  EXPECT_THROW(mat(A * mat(3, 1)), ShapeError);
}

TEST(MatlabSyntax, DotStarIsElementwiseProduct) {
  mat A{{1, 2}, {3, 4}}, B{{5, 6}, {7, 8}};
  EXPECT_TRUE(identical(mat(A % B), mat{{5, 12}, {21, 32}}));
}

TEST(MatlabSyntax, DotSlashIsElementwiseDivision) {
  mat A{{10, 6}, {3, 4}}, B{{5, 3}, {2, 8}};
  EXPECT_TRUE(identical(mat(A / B), mat{{2, 2}, {1.5, 0.5}}));
}

TEST(MatlabSyntax, BackslashIsSolve) {
  mat A{{2, 1}, {1, 3}}, B{{3}, {5}};
  mat X = solve(A, B);
  EXPECT_NEAR(X(0), 0.8, 1e-15);
  EXPECT_NEAR(X(1), 1.4, 1e-15);
}

TEST(MatlabSyntax, PlusEqualsOne) {
  mat A{{1, 2}, {3, 4}};
  A += 1.0;
  EXPECT_TRUE(identical(A, mat{{2, 3}, {4, 5}}));
}

TEST(MatlabSyntax, MinusEqualsOne) {
  mat A{{1, 2}, {3, 4}};
  A -= 1.0;
  EXPECT_TRUE(identical(A, mat{{0, 1}, {2, 3}}));
}

TEST(MatlabSyntax, LiteralIsRowMajorNested) {
  mat A{{1, 2}, {3, 4}};
  EXPECT_EQ(A(0, 1), 2);
  EXPECT_EQ(A(1, 0), 3);
  EXPECT_EQ(A(1), 3);
}

TEST(MatlabSyntax, HorizontalConcatenation) {
  mat A{{1}, {2}}, B{{3, 4}, {5, 6}};
  EXPECT_TRUE(identical(join_rows(A, B), mat{{1, 3, 4}, {2, 5, 6}}));
  EXPECT_THROW(join_rows(A, mat(3, 1)), ShapeError);
}

TEST(MatlabSyntax, VerticalConcatenation) {
  mat A{{1, 2}}, B{{3, 4}, {5, 6}};
  EXPECT_TRUE(identical(join_cols(A, B), mat{{1, 2}, {3, 4}, {5, 6}}));
  EXPECT_THROW(join_cols(A, mat(1, 3)), ShapeError);
}

TEST(MatlabSyntax, PrintWithHeader) {
  std::ostringstream os;
  mat{{1, 2}, {3, 4}}.print(os, "A:");
  EXPECT_EQ(os.str(), "A:\n1.0000 2.0000\n3.0000 4.0000\n");
}

TEST(MatlabSyntax, SaveAsciiIsPlainText) {
  const auto path = fs::temp_directory_path() / "streamla_save_ascii.txt";
  mat{{1, -2.5}, {3e-5, 4}}.save(path.string(), FileFormat::raw_ascii);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "1 -2.5\n3e-05 4\n");
  fs::remove(path);
}

TEST(MatlabSyntax, LoadAsciiReadsMatlabFile) {
  mat A;
  A.load(fixture("matlab_2x3.txt"), FileFormat::raw_ascii);
  EXPECT_TRUE(identical(A, mat{{1, 2, 3}, {4, -5.5, 0.006}}));
}

TEST(MatlabSyntax, RandIsRanduUnitInterval) {
  mat A = randu<double>(2, 3);
  EXPECT_EQ(A.n_rows(), 2u);
  EXPECT_EQ(A.n_cols(), 3u);
  for (double v : A) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(MatlabSyntax, Randn) {
  mat B = randn<double>(4, 5);
  EXPECT_EQ(B.n_rows(), 4u);
  EXPECT_EQ(B.n_cols(), 5u);
  EXPECT_TRUE(B.is_finite());
}
