// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "srab/error.hpp"
#include "srab/gradcheck.hpp"
#include "srab/ops.hpp"
#include "test_util.hpp"

namespace srab {
namespace {

// Direct summation of the zero-padded "same" correlation.
ImageTensor conv_reference(const ImageTensor &in, const ConvKernel &k) {
  ImageTensor out(k.out_channels, in.height(), in.width());
  const int py = k.kernel_height / 2, px = k.kernel_width / 2;
  for (int o = 0; o < k.out_channels; ++o)
    for (int y = 0; y < in.height(); ++y)
      for (int x = 0; x < in.width(); ++x) {
        double acc = k.bias[o];
        for (int i = 0; i < k.in_channels; ++i)
          for (int dy = 0; dy < k.kernel_height; ++dy)
            for (int dx = 0; dx < k.kernel_width; ++dx) {
              const int sy = y + dy - py, sx = x + dx - px;
              if (sy < 0 || sx < 0 || sy >= in.height() || sx >= in.width())
                continue;
              acc += k.weight(o, i, dy, dx) * in.at(i, sy, sx);
            }
        out.at(o, y, x) = acc;
      }
  return out;
}

TEST(Conv2d, IdentityKernel) {
  ConvKernel k(1, 1, 1, 1);
  k.weights[0] = 1.0;
  const ImageTensor in = testing::random_image(1, 5, 4, 1);
  EXPECT_EQ(conv2d_forward(in, k), in);
}

TEST(Conv2d, ZeroInputGivesBias) {
  ConvKernel k = testing::random_kernel(3, 2, 3, 4);
  const ImageTensor out = conv2d_forward(ImageTensor(2, 4, 5), k);
  for (int o = 0; o < 3; ++o)
    for (double v : out.plane(o))
      EXPECT_DOUBLE_EQ(v, k.bias[o]);
}

TEST(Conv2d, AllOnesKernelOnTwoByTwo) {
  ConvKernel k(1, 1, 3, 3);
  std::fill(k.weights.begin(), k.weights.end(), 1.0);
  const ImageTensor in(1, 2, 2, std::vector<double>{1, 2, 3, 4});
  const ImageTensor out = conv2d_forward(in, k);
  // Every 3x3 window around a pixel of a 2x2 image covers all four pixels.
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x)
      EXPECT_DOUBLE_EQ(out.at(0, y, x), 1.0 + 2.0 + 3.0 + 4.0);
  EXPECT_EQ(out, conv_reference(in, k));
}

TEST(Conv2d, MatchesDirectSummation) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ConvKernel k = testing::random_kernel(4, 3, 3, seed);
    const ImageTensor in = testing::random_image(3, 7, 9, seed + 100);
    EXPECT_LT(max_abs_diff(conv2d_forward(in, k), conv_reference(in, k)),
              1e-12);
  }
  ConvKernel wide(2, 2, 5, 3);
  wide.weights = testing::random_kernel(2, 2, 5, 9).weights;
  wide.weights.resize(2 * 2 * 5 * 3, 0.25);
  const ImageTensor in = testing::random_image(2, 6, 4, 7);
  EXPECT_LT(max_abs_diff(conv2d_forward(in, wide), conv_reference(in, wide)),
            1e-12);
}

TEST(Conv2d, ConstantImageInterior) {
  ConvKernel k = testing::random_kernel(1, 1, 3, 2);
  k.bias[0] = 0.0;
  double ksum = 0.0;
  for (double w : k.weights)
    ksum += w;
  const ImageTensor out = conv2d_forward(ImageTensor(1, 6, 6, 0.7), k);
  for (int y = 1; y < 5; ++y)
    for (int x = 1; x < 5; ++x)
      EXPECT_NEAR(out.at(0, y, x), 0.7 * ksum, 1e-12);
}

TEST(Conv2d, ChannelMismatchIsConfigurationError) {
  const ConvKernel k = testing::random_kernel(2, 3, 3, 1);
  try {
    conv2d_forward(ImageTensor(2, 4, 4), k);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Configuration);
  }
  EXPECT_THROW(conv2d_input_grad(ImageTensor(3, 4, 4), k), Error);
}

TEST(Conv2d, EvenKernelRejected) {
  EXPECT_THROW(ConvKernel(1, 1, 2, 2), Error);
  ConvKernel k(1, 1, 3, 3);
  k.kernel_width = 2;
  EXPECT_THROW(k.validate(), Error);
}

TEST(Conv2dInputGrad, IdentityAndZero) {
  ConvKernel id(1, 1, 1, 1);
  id.weights[0] = 1.0;
  const ImageTensor up = testing::random_image(1, 4, 4, 5, -1, 1);
  EXPECT_EQ(conv2d_input_grad(up, id), up);
  const ConvKernel k = testing::random_kernel(2, 3, 3, 6);
  const ImageTensor g = conv2d_input_grad(ImageTensor(2, 5, 5), k);
  EXPECT_EQ(linf_norm(g), 0.0);
  EXPECT_EQ(g.channels(), 3);
}

TEST(Conv2dInputGrad, MatchesFiniteDifferences) {
  const ConvKernel k = testing::random_kernel(3, 2, 3, 11);
  const ImageTensor x = testing::random_image(2, 8, 8, 12);
  const ImageTensor up = testing::random_image(3, 8, 8, 13, -1, 1);
  const ImageTensor analytic = conv2d_input_grad(up, k);
  const ImageTensor numeric = finite_diff_gradient(
      [&](const ImageTensor &v) { return dot(up, conv2d_forward(v, k)); }, x,
      1e-4);
  EXPECT_LT(relative_error(analytic, numeric), 1e-4);
}

TEST(Conv2dWeightGrad, MatchesFiniteDifferences) {
  const ConvKernel k = testing::random_kernel(2, 2, 3, 21);
  const ImageTensor x = testing::random_image(2, 6, 5, 22);
  const ImageTensor up = testing::random_image(2, 6, 5, 23, -1, 1);
  ConvKernelGrad grad{std::vector<double>(k.weights.size()),
                      std::vector<double>(k.bias.size())};
  conv2d_weight_grad(x, up, k, grad);
  const double h = 1e-5;
  for (std::size_t i = 0; i < k.weights.size(); ++i) {
    ConvKernel plus = k, minus = k;
    plus.weights[i] += h;
    minus.weights[i] -= h;
    const double numeric = (dot(up, conv2d_forward(x, plus)) -
                            dot(up, conv2d_forward(x, minus))) /
                           (2 * h);
    EXPECT_NEAR(grad.weights[i], numeric, 1e-7);
  }
  for (int o = 0; o < 2; ++o) {
    double s = 0.0;
    for (double v : up.plane(o))
      s += v;
    EXPECT_NEAR(grad.bias[o], s, 1e-12);
  }
}

TEST(Relu, ForwardAndGradient) {
  const ImageTensor x(1, 1, 3, std::vector<double>{-1, 0, 2});
  EXPECT_EQ(relu_forward(x), ImageTensor(1, 1, 3, std::vector<double>{0, 0, 2}));
  const ImageTensor up(1, 1, 3, 5.0);
  EXPECT_EQ(relu_input_grad(up, x),
            ImageTensor(1, 1, 3, std::vector<double>{0, 0, 5}));
}

TEST(Relu, MatchesFiniteDifferencesAwayFromZero) {
  ImageTensor x = testing::random_image(2, 5, 5, 31, -1, 1);
  for (double &v : x.data())
    if (std::abs(v) < 0.01)
      v = 0.5;
  const ImageTensor up = testing::random_image(2, 5, 5, 32, -1, 1);
  const ImageTensor numeric = finite_diff_gradient(
      [&](const ImageTensor &v) { return dot(up, relu_forward(v)); }, x, 1e-4);
  EXPECT_LT(relative_error(relu_input_grad(up, x), numeric), 1e-4);
}

TEST(PixelShuffle, FourChannelsToTwoByTwo) {
  const ImageTensor in(4, 1, 1, std::vector<double>{1, 2, 3, 4});
  const ImageTensor out = pixel_shuffle(in, 2);
  EXPECT_EQ(out, ImageTensor(1, 2, 2, std::vector<double>{1, 2, 3, 4}));
}

TEST(PixelShuffle, FactorOneIsIdentity) {
  const ImageTensor in = testing::random_image(3, 4, 5, 41);
  EXPECT_EQ(pixel_shuffle(in, 1), in);
}

TEST(PixelShuffle, IndexLaw) {
  const int r = 3;
  const ImageTensor in = testing::random_image(2 * r * r, 2, 3, 42);
  const ImageTensor out = pixel_shuffle(in, r);
  ASSERT_EQ(out.channels(), 2);
  ASSERT_EQ(out.height(), 6);
  ASSERT_EQ(out.width(), 9);
  for (int c = 0; c < 2; ++c)
    for (int y = 0; y < 2; ++y)
      for (int x = 0; x < 3; ++x)
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b)
            EXPECT_EQ(out.at(c, r * y + a, r * x + b),
                      in.at(c * r * r + a * r + b, y, x));
}

TEST(PixelShuffle, GradientInvertsPermutation) {
  const ImageTensor in = testing::random_image(8, 3, 4, 43);
  EXPECT_EQ(pixel_shuffle_grad(pixel_shuffle(in, 2), 2), in);
  const ImageTensor up = testing::random_image(2, 6, 8, 44);
  EXPECT_EQ(pixel_shuffle(pixel_shuffle_grad(up, 2), 2), up);
}

TEST(PixelShuffle, IndivisibleChannelsRejected) {
  try {
    pixel_shuffle(ImageTensor(3, 2, 2), 2);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Configuration);
  }
}

} // namespace
} // namespace srab
