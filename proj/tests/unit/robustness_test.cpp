// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "srab/bicubic.hpp"
#include "srab/error.hpp"
#include "srab/robustness.hpp"
#include "srab/rng.hpp"
#include "test_util.hpp"

namespace srab {
namespace {

TEST(RobustnessIndex, ZeroModelGivesZero) {
  const SRModel m = build_zero_micro_edsr(MicroEdsrConfig::micro());
  const RobustnessReport r =
      robustness_index(m, testing::random_image(3, 4, 4, 1), 0.1, 8, 0);
  EXPECT_EQ(r.index, 0.0);
  EXPECT_EQ(r.sample_norms.size(), 8u);
}

TEST(RobustnessIndex, ZeroBudgetGivesZero) {
  const SRModel m = build_micro_edsr(testing::tiny_config(), 1);
  EXPECT_EQ(
      robustness_index(m, testing::random_image(3, 4, 4, 2), 0.0, 4, 0).index,
      0.0);
}

TEST(RobustnessIndex, BicubicMatchesAnalyticGradient) {
  const SRModel m = build_bicubic_model(4);
  const ImageTensor x0 = testing::random_image(3, 5, 6, 3);
  const double alpha = 4.0 / 255.0;
  const RobustnessReport r = robustness_index(m, x0, alpha, 6, 11);

  Rng rng(11);
  double expected = 0.0;
  for (int i = 0; i < 6; ++i) {
    ImageTensor delta = ImageTensor::zeros_like(x0);
    for (double &v : delta.data())
      v = rng.uniform(-alpha, alpha);
    const ImageTensor y = bicubic_resize(delta, 20, 24);
    const double b = l1_norm(bicubic_resize_grad((1.0 / l2_norm(y)) * y, 5, 6));
    EXPECT_NEAR(r.sample_norms[i], b, 1e-10);
    expected = std::max(expected, b);
  }
  EXPECT_NEAR(r.index, expected, 1e-10);
}

TEST(RobustnessIndex, DeterministicPerSeed) {
  const SRModel m = build_micro_edsr(testing::tiny_config(), 2);
  const ImageTensor x0 = testing::random_image(3, 5, 5, 4);
  const RobustnessReport a = robustness_index(m, x0, 0.02, 5, 7);
  const RobustnessReport b = robustness_index(m, x0, 0.02, 5, 7);
  EXPECT_EQ(a.sample_norms, b.sample_norms);
  EXPECT_NE(a.sample_norms, robustness_index(m, x0, 0.02, 5, 8).sample_norms);
}

TEST(RobustnessIndex, MonotoneInSampleCount) {
  // Samples share one stream, so a longer run extends the shorter one.
  const SRModel m = build_micro_edsr(testing::tiny_config(), 3);
  const ImageTensor x0 = testing::random_image(3, 5, 5, 5);
  const RobustnessReport small = robustness_index(m, x0, 0.02, 3, 1);
  const RobustnessReport large = robustness_index(m, x0, 0.02, 9, 1);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_EQ(small.sample_norms[i], large.sample_norms[i]);
  EXPECT_GE(large.index, small.index);
}

TEST(RobustnessIndex, SaturatedPixelsAreNotReclipped) {
  // At x0 = 1 half of each draw leaves [0, 1]; the bicubic gradient norm is
  // unaffected by where the probe sits, so the values stay positive.
  const SRModel m = build_bicubic_model(4);
  const RobustnessReport r =
      robustness_index(m, ImageTensor(3, 4, 4, 1.0), 0.05, 3, 0);
  for (double b : r.sample_norms)
    EXPECT_GT(b, 0.0);
}

TEST(RobustnessIndex, Errors) {
  const SRModel m = build_bicubic_model(4);
  const ImageTensor x0 = testing::random_image(3, 4, 4, 6);
  EXPECT_THROW(robustness_index(m, x0, 0.1, 0, 0), Error);
  EXPECT_THROW(robustness_index(m, x0, -0.1, 4, 0), Error);
  EXPECT_THROW(robustness_index(m, x0 + ImageTensor(3, 4, 4, 2.0), 0.1, 4, 0),
               Error);
}

} // namespace
} // namespace srab
