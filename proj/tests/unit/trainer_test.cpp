// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "srab/bicubic.hpp"
#include "srab/error.hpp"
#include "srab/trainer.hpp"
#include "test_util.hpp"

namespace srab {
namespace {

// Smooth synthetic "photos": sums of low-frequency sinusoids.
std::vector<ImageTensor> smooth_images(int count, int side) {
  std::vector<ImageTensor> out;
  for (int n = 0; n < count; ++n) {
    ImageTensor t(3, side, side);
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
          t.at(c, y, x) = 0.5 + 0.2 * std::sin(0.21 * (n + 1) * x + c) +
                          0.2 * std::cos(0.17 * (n + 2) * y - c);
    out.push_back(std::move(t));
  }
  return out;
}

TrainOptions quick_options() {
  TrainOptions o;
  o.steps = 150;
  o.patch_size = 16;
  o.batch_size = 4;
  o.learning_rate = 3e-3;
  o.seed = 5;
  return o;
}

TEST(Trainer, ZeroStepsReturnsInitialization) {
  const auto images = smooth_images(2, 32);
  TrainOptions o = quick_options();
  o.steps = 0;
  const TrainResult r = train_micro_model(testing::tiny_config(), images, o);
  const SRModel init = build_micro_edsr(testing::tiny_config(), o.seed);
  const auto a = r.model.kernels(), b = init.kernels();
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(*a[i], *b[i]);
  EXPECT_TRUE(r.losses.empty());
}

TEST(Trainer, LossHalvesAndBeatsZeroModel) {
  const auto images = smooth_images(4, 32);
  const TrainResult r =
      train_micro_model(testing::tiny_config(), images, quick_options());
  ASSERT_EQ(r.losses.size(), 150u);
  const auto windows = window_means(r.losses, 50);
  ASSERT_EQ(windows.size(), 3u);
  EXPECT_LT(windows.back(), 0.5 * windows.front());

  const ImageTensor hr = smooth_images(5, 32).back();
  const ImageTensor lr = bicubic_downscale(hr, 4);
  const double trained = l2_norm(model_forward(r.model, lr) - hr);
  const SRModel zero = build_zero_micro_edsr(testing::tiny_config());
  EXPECT_LT(trained, l2_norm(model_forward(zero, lr) - hr));
}

TEST(Trainer, DeterministicForSeed) {
  const auto images = smooth_images(2, 32);
  TrainOptions o = quick_options();
  o.steps = 10;
  const TrainResult a = train_micro_model(testing::tiny_config(), images, o);
  const TrainResult b = train_micro_model(testing::tiny_config(), images, o);
  EXPECT_EQ(a.losses, b.losses);
  const auto ka = a.model.kernels(), kb = b.model.kernels();
  for (std::size_t i = 0; i < ka.size(); ++i)
    EXPECT_EQ(*ka[i], *kb[i]);
}

TEST(Trainer, WeightsStayFloatPrecision) {
  TrainOptions o = quick_options();
  o.steps = 3;
  const TrainResult r =
      train_micro_model(testing::tiny_config(), smooth_images(1, 32), o);
  for (const ConvKernel *k : r.model.kernels())
    for (double w : k->weights)
      EXPECT_EQ(w, static_cast<double>(static_cast<float>(w)));
}

TEST(Trainer, ProgressCallback) {
  TrainOptions o = quick_options();
  o.steps = 4;
  int calls = 0;
  o.on_step = [&](int step, double loss) {
    EXPECT_EQ(step, calls);
    EXPECT_GE(loss, 0.0);
    ++calls;
  };
  train_micro_model(testing::tiny_config(), smooth_images(1, 32), o);
  EXPECT_EQ(calls, 4);
}

TEST(Trainer, Errors) {
  const TrainOptions o = quick_options();
  EXPECT_THROW(train_micro_model(testing::tiny_config(), {}, o), Error);
  TrainOptions big = o;
  big.patch_size = 64;
  EXPECT_THROW(
      train_micro_model(testing::tiny_config(), smooth_images(1, 32), big),
      Error);
  TrainOptions odd = o;
  odd.patch_size = 18;
  try {
    train_micro_model(testing::tiny_config(), smooth_images(1, 32), odd);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Configuration);
  }
}

TEST(WindowMeans, Averages) {
  const std::vector<double> v{1, 2, 3, 4, 5};
  EXPECT_EQ(window_means(v, 2), (std::vector<double>{1.5, 3.5, 5.0}));
  EXPECT_THROW(window_means(v, 0), Error);
}

} // namespace
} // namespace srab
