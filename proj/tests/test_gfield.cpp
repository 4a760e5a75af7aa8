#include <gtest/gtest.h>

#include "support.hpp"

using namespace torilat;

TEST(PrimitiveRoot, SmallPrimes) {
  EXPECT_EQ(primitive_root(2), 1);
  EXPECT_EQ(primitive_root(7), 3);
  EXPECT_EQ(primitive_root(11), 2);
}

TEST(PrimitiveRoot, SmallestElementOfFullOrder) {
  for (Int q : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 97, 101}) {
    Int g = primitive_root(q);
    EXPECT_EQ(oracle::naive_order(g, q), q - 1) << q;
    for (Int c = 2; c < g; ++c) EXPECT_LT(oracle::naive_order(c, q), q - 1) << q << " " << c;
  }
}

TEST(PrimitiveRoot, RejectsComposite) {
  EXPECT_THROW(primitive_root(9), ValidationError);
  EXPECT_THROW(PrimeField(4), ValidationError);
  EXPECT_THROW(PrimeField(1), ValidationError);
}

TEST(DiscreteLog, Examples) {
  PrimeField f(11);
  EXPECT_EQ(f.discrete_log(1), 0);
  EXPECT_EQ(f.discrete_log(2), 1);
  EXPECT_EQ(f.discrete_log(10), 5);
  EXPECT_THROW(f.discrete_log(0), ValidationError);
  EXPECT_THROW(f.discrete_log(22), ValidationError);
}

TEST(DiscreteLog, HomomorphismExhaustive) {
  for (Int q = 2; q <= 31; ++q) {
    if (!is_prime(q)) continue;
    PrimeField f(q);
    for (Int x = 1; x < q; ++x) {
      ASSERT_EQ(oracle::field_pow(f.generator(), f.discrete_log(x), q), x);
      for (Int y = 1; y < q; ++y)
        ASSERT_EQ(f.discrete_log(x * y % q), (f.discrete_log(x) + f.discrete_log(y)) % (q - 1)) << q;
    }
  }
}

TEST(PrimeFieldArithmetic, InversesAndPowers) {
  PrimeField f(13);
  for (Int a = 1; a < 13; ++a) {
    EXPECT_EQ(f.mul(a, f.inv(a)), 1);
    EXPECT_EQ(f.pow(a, -1), f.inv(a));
    EXPECT_EQ(f.pow(a, 12), 1);
    EXPECT_EQ(f.add(a, f.neg(a)), 0);
  }
  EXPECT_EQ(f.power_of_generator(-1), f.inv(f.generator()));
  EXPECT_THROW(f.inv(0), ValidationError);
}
