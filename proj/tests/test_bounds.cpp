#include <gtest/gtest.h>

#include "rigidlab/bounds.hpp"

using namespace rigidlab;

TEST(CmDegree, Examples) {
  for (int d = 1; d <= 5; ++d) EXPECT_EQ(cm_degree(d, d + 1), 1);
  EXPECT_EQ(cm_degree(2, 4), 3);
  EXPECT_EQ(cm_degree(2, 4), binomial(4, 2) / 2);
  EXPECT_EQ(cm_degree(3, 6), 20);
  EXPECT_THROW(cm_degree(3, 3), std::invalid_argument);
}

TEST(PlanarBound, Examples) {
  EXPECT_EQ(planar_bound(3), 2);
  EXPECT_EQ(planar_bound(6), 70);
  EXPECT_EQ(planar_bound(12), 184756);
  EXPECT_THROW(planar_bound(2), std::invalid_argument);
}

TEST(SpatialBound, Examples) {
  EXPECT_EQ(spatial_bound(5), 8);
  EXPECT_EQ(spatial_bound(6), 40);
  EXPECT_EQ(spatial_bound(7), 224);
  EXPECT_EQ(spatial_closed_form(7), 224);
  EXPECT_THROW(spatial_bound(3), std::invalid_argument);
}

TEST(OpmtBound, Examples) {
  EXPECT_EQ(opmt_bound(2, 3), 486);
  EXPECT_EQ(opmt_bound(2, 4), 4374);
  EXPECT_EQ(opmt_bound(1, 1), 2);
  EXPECT_THROW(opmt_bound(0, 3), std::invalid_argument);
}

TEST(Bounds, PlanarIdentity) {
  for (int n = 3; n <= 20; ++n) EXPECT_EQ(2 * cm_degree(2, n), binomial(2 * n - 4, n - 2)) << n;
}

TEST(Bounds, SpatialIdentity) {
  for (int n = 4; n <= 20; ++n) {
    BigInt pow2 = 1;
    pow2 <<= n - 3;
    const BigInt numer = pow2 * binomial(2 * n - 6, n - 3);
    EXPECT_EQ(numer % (n - 2), 0) << n;
    EXPECT_EQ(2 * cm_degree(3, n), numer / (n - 2)) << n;
  }
}

TEST(Bounds, DominatesOpmt) {
  for (int d = 2; d <= 3; ++d) {
    for (int n = 4; n <= 20; ++n) EXPECT_LT(2 * cm_degree(d, n), opmt_bound(d, n)) << d << " " << n;
  }
}

TEST(Bounds, Monotone) {
  for (int d = 2; d <= 4; ++d) {
    for (int n = d + 2; n <= 20; ++n) EXPECT_GT(cm_degree(d, n + 1), cm_degree(d, n));
  }
}

TEST(Bounds, Report) {
  const auto r = bound_report(2, 6);
  EXPECT_EQ(r.cm_degree, 35);
  EXPECT_EQ(r.embedding_bound, 70);
  EXPECT_EQ(r.opmt, 354294);
  const auto big = bound_report(3, 20);
  EXPECT_EQ(big.embedding_bound, 2 * big.cm_degree);
  EXPECT_GT(big.cm_degree, 0);
}
