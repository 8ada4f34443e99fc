#include <gtest/gtest.h>

#include <specprop/errors.hpp>
#include <specprop/frames.hpp>

#include "random.hpp"

using namespace specprop;

namespace {

RMatrix m2(double a, double b, double c, double d) {
  RMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(GramMatrix, Blocks) {
  auto h = InnerProduct::from(m2(4, 0, 0, 9));
  auto g1 = gram_matrix(h, 1);
  ASSERT_EQ(g1.rows(), 1);
  EXPECT_EQ(g1(0, 0), 4.0);
  EXPECT_EQ(gram_matrix(h, 0).rows(), 0);
  auto h2 = InnerProduct::from(m2(2, 1, 1, 2));
  EXPECT_NEAR(gram_matrix(h2, 2).determinant(), 3.0, 1e-14);
  EXPECT_THROW(gram_matrix(h2, 3), ValidationError);
}

TEST(GramDetFrame, Diagonal) {
  auto f = gram_det_frame(InnerProduct::from(m2(4, 0, 0, 9)));
  EXPECT_NEAR(f.coefficient(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(f.coefficient(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(f.coefficient(1, 1), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(f.coefficient(0, 1), 0.0, 1e-12);
}

TEST(GramDetFrame, Identity) {
  auto f = gram_det_frame(InnerProduct::identity(4));
  EXPECT_LE((f.E - RMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GramDetFrame, Skew) {
  auto f = gram_det_frame(InnerProduct::from(m2(2, 1, 1, 2)));
  EXPECT_NEAR(f.E(0, 0), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(f.E(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(f.E(0, 1), -1 / std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(f.E(1, 1), 2 / std::sqrt(6.0), 1e-12);
}

TEST(GsIterative, MatchesDeterminantFormula) {
  std::mt19937 rng(17);
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + t % 5;
    auto h = InnerProduct::from(testing_util::random_spd(rng, d));
    auto a = gram_det_frame(h), b = gs_iterative(h);
    EXPECT_LE((a.E - b.E).colwise().norm().maxCoeff(), 1e-10);
    const RMatrix ortho = a.E.transpose() * h.matrix() * a.E - RMatrix::Identity(d, d);
    EXPECT_LE(ortho.cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_EQ(a.provenance, FrameProvenance::gram_determinant);
    EXPECT_EQ(b.provenance, FrameProvenance::iterative);
  }
  auto diag = InnerProduct::from(m2(4, 0, 0, 9));
  EXPECT_LE((gs_iterative(diag).E - gram_det_frame(diag).E).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(InnerProduct, RejectsIndefinite) {
  EXPECT_THROW(InnerProduct::from(m2(1, 2, 2, 1)), ValidationError);
  EXPECT_THROW(InnerProduct::from(m2(1, 0.5, 0, 1)), ValidationError);
}

TEST(TransferMap, Examples) {
  auto b = transfer_map(InnerProduct::identity(2), InnerProduct::from(m2(4, 0, 0, 9)));
  EXPECT_LE((b - m2(2, 0, 0, 3)).cwiseAbs().maxCoeff(), 1e-12);
  auto h = InnerProduct::from(m2(2, 1, 1, 2));
  EXPECT_LE((transfer_map(h, h) - RMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TransferMap, PullsBackInnerProduct) {
  std::mt19937 rng(4);
  for (int t = 0; t < 20; ++t) {
    auto g = InnerProduct::from(testing_util::random_spd(rng, 3));
    auto h = InnerProduct::from(testing_util::random_spd(rng, 3));
    const RMatrix b = transfer_map(g, h);
    EXPECT_LE((b.transpose() * g.matrix() * b - h.matrix()).cwiseAbs().maxCoeff(), 1e-9);
    // self-adjoint for g
    EXPECT_LE((g.matrix() * b - (g.matrix() * b).transpose()).cwiseAbs().maxCoeff(), 1e-9);
    // inverse is the map in the other direction
    EXPECT_LE((b * transfer_map(h, g) - RMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(FrameDeviation, Examples) {
  EXPECT_NEAR(frame_deviation(InnerProduct::identity(3)), 0.0, 1e-15);
  EXPECT_NEAR(frame_deviation(InnerProduct::from(m2(4, 0, 0, 9))), 7.0 / 6.0, 1e-12);
}

TEST(FrameDeviation, DecaysTowardIdentity) {
  std::mt19937 rng(8);
  const RMatrix delta = testing_util::random_symmetric(rng, 3, 0.5);
  double prev = std::numeric_limits<double>::infinity();
  for (double t = 0.5; t > 1e-4; t /= 2) {
    const double v = frame_deviation(InnerProduct::from(RMatrix::Identity(3, 3) + t * delta));
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(Frames, SampledLipschitzEstimate) {
  std::mt19937 rng(9);
  const RMatrix base = testing_util::random_spd(rng, 3, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const RMatrix d1 = testing_util::random_symmetric(rng, 3, 0.1);
    const RMatrix d2 = testing_util::random_symmetric(rng, 3, 0.1);
    const RMatrix f1 = gram_det_frame(InnerProduct::from(base + d1)).E;
    const RMatrix f2 = gram_det_frame(InnerProduct::from(base + d2)).E;
    worst = std::max(worst, (f1 - f2).norm() / (d1 - d2).norm());
  }
  RecordProperty("lipschitz_estimate", std::to_string(worst));
  EXPECT_TRUE(std::isfinite(worst));
}
