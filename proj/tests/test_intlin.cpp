#include <gtest/gtest.h>

#include <limits>

#include "support.hpp"

using namespace torilat;

namespace {

bool is_row_hnf(const IntMatrix& h) {
  std::size_t prev_pivot = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (p == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (i > 0 && p <= prev_pivot) return false;
    if (h(i, p) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
    prev_pivot = p;
  }
  return true;
}

bool is_snf(const IntMatrix& s) {
  const std::size_t d = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  for (std::size_t i = 0; i < d; ++i) {
    if (s(i, i) < 0) return false;
    if (i + 1 < d && s(i, i) == 0 && s(i + 1, i + 1) != 0) return false;
    if (i + 1 < d && s(i, i) != 0 && s(i + 1, i + 1) % s(i, i) != 0) return false;
  }
  return true;
}

}  // namespace

TEST(Hnf, IdentityIsFixed) {
  auto r = hnf(IntMatrix::identity(3));
  EXPECT_EQ(r.H, IntMatrix::identity(3));
  EXPECT_EQ(r.U, IntMatrix::identity(3));
}

TEST(Hnf, ZeroMatrix) {
  auto r = hnf(IntMatrix(2, 2));
  EXPECT_TRUE(r.H.is_zero());
  EXPECT_EQ(r.U, IntMatrix::identity(2));
}

TEST(Hnf, SmallExampleSatisfiesDefinition) {
  IntMatrix m{{2, 4}, {6, 8}};
  auto r = hnf(m);
  EXPECT_EQ(r.U * m, r.H);
  EXPECT_EQ(std::abs(determinant(r.U)), 1);
  EXPECT_TRUE(is_row_hnf(r.H));
  EXPECT_EQ(r.H, (IntMatrix{{2, 0}, {0, 4}}));
}

TEST(Hnf, RandomMatricesSatisfyDefinition) {
  for (int t = 0; t < 200; ++t) {
    auto rows = static_cast<std::size_t>(oracle::uniform(1, 5));
    auto cols = static_cast<std::size_t>(oracle::uniform(1, 5));
    IntMatrix m = oracle::random_matrix(rows, cols, -9, 9);
    auto r = hnf(m);
    ASSERT_EQ(r.U * m, r.H);
    ASSERT_EQ(std::abs(determinant(r.U)), 1);
    ASSERT_TRUE(is_row_hnf(r.H)) << r.H;
  }
}

TEST(Snf, AlreadyDiagonal) {
  auto r = snf(IntMatrix{{2, 0}, {0, 4}});
  EXPECT_EQ(r.S, (IntMatrix{{2, 0}, {0, 4}}));
  EXPECT_EQ(snf(IntMatrix::identity(3)).S, IntMatrix::identity(3));
}

TEST(Snf, RandomThreeByThreeAgainstMinorGcds) {
  for (int t = 0; t < 100; ++t) {
    IntMatrix m = oracle::random_matrix(3, 3, -9, 9);
    auto r = snf(m);
    ASSERT_EQ(r.U * m * r.V, r.S);
    ASSERT_EQ(std::abs(determinant(r.U)), 1);
    ASSERT_EQ(std::abs(determinant(r.V)), 1);
    ASSERT_TRUE(is_snf(r.S)) << r.S;
    Int prod = 1;
    for (std::size_t k = 1; k <= 3; ++k) {
      prod *= r.S(k - 1, k - 1);
      ASSERT_EQ(prod, oracle::minor_gcd(m, k)) << m;
    }
  }
}

TEST(Snf, RectangularShapes) {
  for (int t = 0; t < 100; ++t) {
    auto rows = static_cast<std::size_t>(oracle::uniform(1, 4));
    auto cols = static_cast<std::size_t>(oracle::uniform(1, 4));
    IntMatrix m = oracle::random_matrix(rows, cols, -6, 6);
    auto r = snf(m);
    ASSERT_EQ(r.U * m * r.V, r.S);
    ASSERT_TRUE(is_snf(r.S));
    ASSERT_EQ(r.S(0, 0), oracle::minor_gcd(m, 1));
  }
}

TEST(IntegerKernel, WeightedProjectiveDegreeRow) {
  IntMatrix k = integer_kernel(IntMatrix{{1, 1, 1, 3}});
  IntMatrix expected = IntMatrix::from_columns({{1, -1, 0, 0}, {-1, 0, 1, 0}, {0, 3, 0, -1}});
  EXPECT_EQ(k.cols(), 3u);
  EXPECT_TRUE(lattice_equal(k, expected));
}

TEST(IntegerKernel, IdentityHasTrivialKernel) { EXPECT_EQ(integer_kernel(IntMatrix::identity(3)).cols(), 0u); }

TEST(IntegerKernel, HirzebruchDegreeMatrix) {
  IntMatrix k = integer_kernel(IntMatrix{{1, -2, 1, 0}, {0, 1, 0, 1}});
  EXPECT_TRUE(lattice_equal(k, IntMatrix::from_columns({{1, 0, -1, 0}, {0, 1, 2, -1}})));
}

TEST(IntegerKernel, CompleteAgainstBoxSearch) {
  for (int t = 0; t < 60; ++t) {
    const std::size_t cols = t % 2 == 0 ? 3 : 4;
    IntMatrix m = oracle::random_matrix(2, cols, -3, 3);
    IntMatrix k = integer_kernel(m);
    ASSERT_EQ(k.cols(), cols - rank(m));
    for (const auto& c : k.column_list()) ASSERT_TRUE((m * c) == IntVector(2, 0));
    LatticeReducer red(k);
    for (const auto& x : oracle::kernel_box(m, cols == 3 ? 6 : 3)) ASSERT_TRUE(red.contains(x)) << m;
  }
}

TEST(LatticeEqual, UnimodularMixing) {
  IntMatrix b = IntMatrix::from_columns({{1, 2, 3}, {0, 1, 4}});
  IntMatrix v{{2, 1}, {1, 1}};
  EXPECT_TRUE(lattice_equal(b, b * v));
  EXPECT_FALSE(lattice_equal(IntMatrix::from_columns({{2, 0}}), IntMatrix::from_columns({{1, 0}})));
}

TEST(LatticeEqual, PaperDegenerateBasis) {
  auto s = oracle::hirzebruch(2, 11);
  auto dl = degenerate_lattice({2, 5, 4, 5}, 10, s);
  EXPECT_TRUE(lattice_equal(dl.lattice, IntMatrix::from_columns({{-5, 0, 5, 0}, {20, 10, 0, -10}})));
}

TEST(LatticeEqual, EquivalenceUnderPermutationAndMixing) {
  for (int t = 0; t < 100; ++t) {
    IntMatrix b = oracle::random_matrix(4, 2, -5, 5);
    if (rank(b) < 2) continue;
    IntMatrix perm = select_columns(b, {1, 0});
    IntMatrix mix = b * IntMatrix{{1, oracle::uniform(-3, 3)}, {0, 1}};
    IntMatrix neg = b * IntMatrix{{-1, 0}, {0, 1}};
    EXPECT_TRUE(lattice_equal(b, b));
    EXPECT_TRUE(lattice_equal(b, perm));
    EXPECT_TRUE(lattice_equal(perm, b));
    EXPECT_TRUE(lattice_equal(b, mix));
    EXPECT_TRUE(lattice_equal(mix, neg));
    EXPECT_FALSE(lattice_equal(b, scaled(b, 2)));
  }
}

TEST(LatticeEqual, RowMismatchIsAnError) {
  EXPECT_THROW(lattice_equal(IntMatrix(2, 1), IntMatrix(3, 1)), ValidationError);
}

TEST(Cokernel, HirzebruchAndWeighted) {
  auto h2 = cokernel_structure(IntMatrix{{1, 0}, {0, 1}, {-1, 2}, {0, -1}});
  EXPECT_EQ(h2.free_rank, 2u);
  EXPECT_TRUE(h2.invariant_factors.empty());
  auto w = cokernel_structure(IntMatrix{{1, -1, 0}, {-1, 0, 3}, {0, 1, 0}, {0, 0, -1}});
  EXPECT_EQ(w.free_rank, 1u);
  EXPECT_TRUE(w.invariant_factors.empty());
  auto two = cokernel_structure(IntMatrix{{2}});
  EXPECT_EQ(two.free_rank, 0u);
  EXPECT_EQ(two.invariant_factors, IntVector{2});
}

TEST(Checked, OverflowIsReported) {
  const Int big = std::numeric_limits<Int>::max();
  EXPECT_THROW(checked::add(big, 1), OverflowError);
  EXPECT_THROW(checked::mul(big, 2), OverflowError);
  EXPECT_THROW(checked::neg(std::numeric_limits<Int>::min()), OverflowError);
  EXPECT_THROW(IntMatrix({{big, big}}) * IntMatrix({{2}, {2}}), OverflowError);
}

TEST(TrailingHermite, PivotsAreLastNonzeroEntries) {
  for (int t = 0; t < 100; ++t) {
    IntMatrix in = oracle::random_matrix(4, 2, -6, 6);
    if (rank(in) < 2) continue;
    IntMatrix b = trailing_hermite_basis(in);
    ASSERT_TRUE(lattice_equal(b, in));
    std::size_t prev = 0;
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::size_t last = b.rows();
      while (last > 0 && b(last - 1, j) == 0) --last;
      ASSERT_GT(last, prev);
      ASSERT_GT(b(last - 1, j), 0);
      for (std::size_t k = j + 1; k < b.cols(); ++k) {
        ASSERT_GE(b(last - 1, k), 0);
        ASSERT_LT(b(last - 1, k), b(last - 1, j));
      }
      prev = last;
    }
    ASSERT_EQ(trailing_hermite_basis(b), b);
  }
}
