#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "streamla/arith.hpp"
#include "streamla/cube.hpp"
#include "streamla/generators.hpp"
#include "support.hpp"

using namespace streamla;

TEST(MatConstruct, ShapeAndZeroFill) {
  mat A(3, 4);
  EXPECT_EQ(A.n_rows(), 3u);
  EXPECT_EQ(A.n_cols(), 4u);
  EXPECT_EQ(A.n_elem(), 12u);
  for (double v : A) EXPECT_EQ(v, 0.0);
}

TEST(MatConstruct, FillTags) {
  mat O(4, 5, FillTag::ones);
  for (double v : O) EXPECT_EQ(v, 1.0);
  mat Z(2, 2, FillTag::zeros);
  for (double v : Z) EXPECT_EQ(v, 0.0);
  RngState rng(7);
  mat U(50, 20, FillTag::randu, rng);
  for (double v : U) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  mat N(50, 20, FillTag::randn, rng);
  EXPECT_TRUE(N.is_finite());
}

TEST(MatConstruct, RowLiteral) {
  mat A{{1, 2}, {3, 4}};
  EXPECT_EQ(A(0, 0), 1);
  EXPECT_EQ(A(0, 1), 2);
  EXPECT_EQ(A(1, 0), 3);
  EXPECT_EQ(A(1, 1), 4);
  EXPECT_THROW((mat{{1, 2}, {3}}), ShapeError);
}

TEST(MatConstruct, ComplexFromParts) {
  mat re{{1, 2}}, im{{3, 4}};
  cx_mat C(re, im);
  EXPECT_EQ(C(0, 1), cx_double(2, 4));
  EXPECT_THROW(cx_mat(re, mat(2, 1)), ShapeError);
}

TEST(MatLayout, ColumnMajorOffsets) {
  mat A{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(A(0), 1);
  EXPECT_EQ(A(1), 4);
  EXPECT_EQ(A(2), 2);
  EXPECT_EQ(A(5), 6);
  EXPECT_EQ(A.memptr()[3], 5);
}

TEST(MatAccess, BoundsChecked) {
  mat A(2, 3);
  EXPECT_THROW(A(2, 0), BoundsError);
  EXPECT_THROW(A(0, 3), BoundsError);
  EXPECT_THROW(A(6), BoundsError);
  EXPECT_THROW(A[6], BoundsError);
  EXPECT_NO_THROW(A(1, 2));
  EXPECT_TRUE(A.in_range(5));
  EXPECT_FALSE(A.in_range(2, 0));
}

TEST(MatShape, ReshapeKeepsColumnMajorOrder) {
  mat A{{1, 3, 5}, {2, 4, 6}};
  A.reshape(3, 2);
  EXPECT_EQ(A(0, 0), 1);
  EXPECT_EQ(A(2, 0), 3);
  EXPECT_EQ(A(0, 1), 4);
  A.reshape(4, 2);
  EXPECT_EQ(A(3, 0), 4);
  EXPECT_EQ(A(2, 1), 0);
  EXPECT_EQ(A(3, 1), 0);
}

TEST(MatShape, ResizePreservesOverlap) {
  mat A{{1, 2}, {3, 4}};
  A.resize(3, 3);
  EXPECT_EQ(A(1, 1), 4);
  EXPECT_EQ(A(2, 2), 0);
  A.resize(1, 1);
  EXPECT_EQ(A.n_elem(), 1u);
  EXPECT_EQ(A(0, 0), 1);
}

TEST(MatShape, SetSizeAndReset) {
  mat A{{1, 2}};
  A.set_size(1, 2);
  EXPECT_EQ(A(0, 1), 2);
  A.set_size(3, 1);
  EXPECT_EQ(A.n_rows(), 3u);
  A.reset();
  EXPECT_TRUE(A.is_empty());
  mat B;
  B.copy_size(mat(4, 2));
  EXPECT_EQ(B.n_rows(), 4u);
  EXPECT_EQ(B.n_cols(), 2u);
}

TEST(MatPredicates, Basics) {
  mat A(2, 2);
  EXPECT_TRUE(A.is_square());
  EXPECT_FALSE(A.is_vec());
  EXPECT_TRUE(mat(1, 5).is_rowvec());
  EXPECT_TRUE(mat(5, 1).is_colvec());
  EXPECT_TRUE(mat().is_empty());
  A(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_TRUE(A.has_nan());
  EXPECT_FALSE(A.is_finite());
  A(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_TRUE(A.has_inf());
  EXPECT_TRUE(mat().is_sorted());
}

TEST(MatPredicates, IsSorted) {
  mat v{{1, 2, 2, 5}};
  EXPECT_TRUE(v.is_sorted());
  EXPECT_FALSE(v.is_sorted("descend"));
  mat w{{3, 1}};
  EXPECT_TRUE(w.is_sorted("descend"));
  EXPECT_THROW(w.is_sorted("sideways"), DomainError);
}

TEST(MatExtrema, IndexAndValue) {
  mat A{{3, -1}, {7, 2}};
  EXPECT_EQ(A.index_min(), 2u);
  EXPECT_EQ(A.index_max(), 1u);
  EXPECT_EQ(A.min(), -1);
  EXPECT_EQ(A.max(), 7);
  EXPECT_THROW(mat().min(), DomainError);
}

TEST(MatEdit, SwapInsertShed) {
  mat A{{1, 2}, {3, 4}};
  A.swap_rows(0, 1);
  EXPECT_EQ(A(0, 0), 3);
  A.swap_cols(0, 1);
  EXPECT_EQ(A(0, 0), 4);
  A.insert_rows(1, mat{{9, 9}});
  EXPECT_EQ(A.n_rows(), 3u);
  EXPECT_EQ(A(1, 1), 9);
  A.shed_row(1);
  EXPECT_TRUE(identical(A, mat{{4, 3}, {2, 1}}));
  A.insert_cols(2, 2);
  EXPECT_EQ(A.n_cols(), 4u);
  A.shed_cols(2, 3);
  EXPECT_EQ(A.n_cols(), 2u);
  EXPECT_THROW(A.shed_rows(1, 5), BoundsError);
  EXPECT_THROW(A.insert_rows(0, mat(1, 3)), ShapeError);
}

TEST(MatTranspose, ConjugateAndSimple) {
  cx_mat C{{cx_double(1, 2), cx_double(3, -1)}};
  cx_mat H = C.t();
  cx_mat S = C.st();
  EXPECT_EQ(H.n_rows(), 2u);
  EXPECT_EQ(H(0, 0), cx_double(1, -2));
  EXPECT_EQ(S(0, 0), cx_double(1, 2));
}

TEST(MatIteration, ForEachVisitsColumnMajor) {
  mat A{{1, 2}, {3, 4}};
  std::vector<double> seen;
  A.for_each([&](double& v) { seen.push_back(v); });
  EXPECT_EQ(seen, (std::vector<double>{1, 3, 2, 4}));
}

TEST(Cube, LayoutAndSlices) {
  cube Q(2, 3, 4);
  EXPECT_EQ(Q.n_elem(), 24u);
  Q(1, 2, 3) = 5;
  EXPECT_EQ(Q.at(1 + 2 * 2 + 3 * 6), 5);
  mat S = Q.slice(3);
  EXPECT_EQ(S(1, 2), 5);
  Q.slice(0).fill(1);
  EXPECT_EQ(Q(0, 0, 0), 1);
  EXPECT_THROW(Q(2, 0, 0), BoundsError);
  EXPECT_THROW(Q.slice(4), BoundsError);
}

TEST(Rng, SeedDeterminism) {
  RngState a(42), b(42), c(43);
  mat A(5, 5, FillTag::randn, a), B(5, 5, FillTag::randn, b), C(5, 5, FillTag::randn, c);
  EXPECT_TRUE(identical(A, B));
  EXPECT_FALSE(identical(A, C));
  rng::set_seed(99);
  mat G1 = randu(3, 3);
  rng::set_seed(99);
  mat G2 = randu(3, 3);
  EXPECT_TRUE(identical(G1, G2));
}

TEST(Kinds, ConvToAndKindNames) {
  mat A{{1.7, -2.2}};
  imat I = conv_to<std::int64_t>(A);
  EXPECT_EQ(I(0, 0), 1);
  EXPECT_EQ(I(0, 1), -2);
  EXPECT_EQ(kind_of<std::int64_t>(), ElementKind::Int);
  EXPECT_EQ(kind_name(ElementKind::C128), "c128");
}
