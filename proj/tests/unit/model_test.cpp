// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "srab/bicubic.hpp"
#include "srab/error.hpp"
#include "srab/gradcheck.hpp"
#include "srab/model.hpp"
#include "test_util.hpp"

namespace srab {
namespace {

double probe(const SRModel &m, const ImageTensor &up, const ImageTensor &x) {
  return dot(up, model_forward(m, x));
}

void expect_gradient_matches(const SRModel &m, std::uint64_t seed) {
  const ImageTensor x = testing::random_image(3, 8, 8, seed);
  const ImageTensor up = testing::random_image(
      3, 8 * m.scale(), 8 * m.scale(), seed + 1, -1, 1);
  const ImageTensor analytic = model_input_gradient(m, x, up);
  const ImageTensor numeric = finite_diff_gradient(
      [&](const ImageTensor &v) { return probe(m, up, v); }, x, 1e-4);
  EXPECT_LT(relative_error(analytic, numeric), 1e-3) << m.name();
}

TEST(BicubicModel, ConstantInConstantOut) {
  const SRModel m = build_bicubic_model(4);
  const ImageTensor out = model_forward(m, ImageTensor(3, 5, 6, 0.25));
  EXPECT_EQ(out.height(), 20);
  EXPECT_EQ(out.width(), 24);
  for (double v : out.data())
    EXPECT_NEAR(v, 0.25, 1e-14);
}

TEST(BicubicModel, ScaleOneIsIdentity) {
  const ImageTensor x = testing::random_image(3, 6, 6, 1);
  EXPECT_LT(max_abs_diff(model_forward(build_bicubic_model(1), x), x), 1e-15);
}

TEST(BicubicModel, LinearDifferences) {
  const SRModel m = build_bicubic_model(4);
  const ImageTensor x = testing::random_image(3, 6, 6, 2);
  const ImageTensor x0 = testing::random_image(3, 6, 6, 3);
  const ImageTensor lhs = model_forward(m, x) - model_forward(m, x0);
  EXPECT_LT(max_abs_diff(lhs, bicubic_resize(x - x0, 24, 24)), 1e-12);
}

TEST(BicubicModel, GradientIsTranspose) {
  const SRModel m = build_bicubic_model(4);
  const ImageTensor up = testing::random_image(3, 24, 24, 4, -1, 1);
  EXPECT_LT(max_abs_diff(model_input_gradient(m, ImageTensor(3, 6, 6), up),
                         bicubic_resize_grad(up, 6, 6)),
            1e-15);
  EXPECT_EQ(linf_norm(model_input_gradient(m, ImageTensor(3, 6, 6),
                                           ImageTensor(3, 24, 24))),
            0.0);
}

TEST(MicroEdsr, OutputShape) {
  for (const MicroEdsrConfig &cfg :
       {MicroEdsrConfig::micro(), MicroEdsrConfig::micro_large(),
        MicroEdsrConfig{8, 0, 0.1, 4}, MicroEdsrConfig{8, 1, 0.1, 2}}) {
    const SRModel m = build_micro_edsr(cfg, 1);
    const ImageTensor out = model_forward(m, testing::random_image(3, 5, 7, 2));
    EXPECT_EQ(out.channels(), 3);
    EXPECT_EQ(out.height(), 5 * cfg.scale);
    EXPECT_EQ(out.width(), 7 * cfg.scale);
  }
}

TEST(MicroEdsr, ZeroWeightsGiveZeroOutput) {
  const SRModel m = build_zero_micro_edsr(MicroEdsrConfig::micro());
  EXPECT_EQ(linf_norm(model_forward(m, testing::random_image(3, 4, 4, 3))),
            0.0);
}

TEST(MicroEdsr, PresetNames) {
  EXPECT_EQ(build_micro_edsr(MicroEdsrConfig::micro(), 0).name(), "micro");
  EXPECT_EQ(build_micro_edsr(MicroEdsrConfig::micro_large(), 0).name(),
            "micro-large");
  EXPECT_EQ(preset_name({8, 2, 0.1, 2}), "micro-edsr-c8-b2-x2");
}

TEST(MicroEdsr, ParameterCount) {
  const MicroEdsrConfig cfg = MicroEdsrConfig::micro();
  const std::size_t c = cfg.channels;
  const std::size_t conv_cc = c * c * 9 + c;
  const std::size_t expected = (c * 3 * 9 + c) + 2 * cfg.blocks * conv_cc +
                               conv_cc + 2 * (4 * c * c * 9 + 4 * c) +
                               (3 * c * 9 + 3);
  EXPECT_EQ(build_micro_edsr(cfg, 0).parameter_count(), expected);
}

TEST(MicroEdsr, InitializationIsSeededAndBounded) {
  const SRModel a = build_micro_edsr(MicroEdsrConfig::micro(), 7);
  const SRModel b = build_micro_edsr(MicroEdsrConfig::micro(), 7);
  const SRModel c = build_micro_edsr(MicroEdsrConfig::micro(), 8);
  const auto ka = a.kernels(), kb = b.kernels(), kc = c.kernels();
  bool differs = false;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    EXPECT_EQ(*ka[i], *kb[i]);
    differs = differs || !(*ka[i] == *kc[i]);
    const double bound = 1.0 / std::sqrt(static_cast<double>(ka[i]->fan_in()));
    for (double w : ka[i]->weights) {
      EXPECT_LE(std::abs(w), bound);
      EXPECT_EQ(w, static_cast<double>(static_cast<float>(w)));
    }
  }
  EXPECT_TRUE(differs);
}

TEST(MicroEdsr, InvalidConfigRejected) {
  EXPECT_THROW(build_micro_edsr({0, 4, 0.1, 4}, 0), Error);
  EXPECT_THROW(build_micro_edsr({16, -1, 0.1, 4}, 0), Error);
  EXPECT_THROW(build_micro_edsr({16, 4, 0.1, 3}, 0), Error);
}

TEST(SRModel, UpsamplingMustMatchScale) {
  MicroEdsrConfig cfg;
  cfg.scale = 4;
  EXPECT_THROW(SRModel("bad", ModelKind::Bicubic, cfg, {BicubicLayer{2}}),
               Error);
}

TEST(SRModel, RejectsWrongChannelCount) {
  try {
    model_forward(build_bicubic_model(4), ImageTensor(1, 4, 4));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

TEST(ModelGradient, BicubicMatchesFiniteDifferences) {
  expect_gradient_matches(build_bicubic_model(4), 10);
}

TEST(ModelGradient, MicroMatchesFiniteDifferences) {
  expect_gradient_matches(build_micro_edsr(MicroEdsrConfig::micro(), 3), 20);
}

TEST(ModelGradient, MicroLargeMatchesFiniteDifferences) {
  expect_gradient_matches(build_micro_edsr(MicroEdsrConfig::micro_large(), 4),
                          30);
}

TEST(ModelGradient, UpstreamShapeChecked) {
  const SRModel m = build_bicubic_model(4);
  EXPECT_THROW(model_input_gradient(m, ImageTensor(3, 4, 4),
                                    ImageTensor(3, 8, 8)),
               Error);
}

TEST(ModelGradient, KernelGradientsMatchFiniteDifferences) {
  SRModel m = build_micro_edsr(testing::tiny_config(), 5);
  const ImageTensor x = testing::random_image(3, 4, 4, 6);
  const ImageTensor up = testing::random_image(3, 16, 16, 7, -1, 1);
  std::vector<ConvKernelGrad> grads;
  for (const ConvKernel *k : std::as_const(m).kernels())
    grads.push_back({std::vector<double>(k->weights.size()),
                     std::vector<double>(k->bias.size())});
  model_backward(m, model_forward_traced(m, x), up, &grads);

  const auto kernels = m.kernels();
  const double h = 1e-5;
  for (std::size_t k = 0; k < kernels.size(); ++k) {
    // Spot-check a few weights and the first bias of every kernel.
    for (std::size_t i : {std::size_t{0}, kernels[k]->weights.size() / 2,
                          kernels[k]->weights.size() - 1}) {
      double &w = kernels[k]->weights[i];
      const double saved = w;
      w = saved + h;
      const double fp = probe(m, up, x);
      w = saved - h;
      const double fm = probe(m, up, x);
      w = saved;
      EXPECT_NEAR(grads[k].weights[i], (fp - fm) / (2 * h),
                  1e-6 * std::max(1.0, std::abs(grads[k].weights[i])))
          << "kernel " << k << " weight " << i;
    }
    double &b = kernels[k]->bias[0];
    const double saved = b;
    b = saved + h;
    const double fp = probe(m, up, x);
    b = saved - h;
    const double fm = probe(m, up, x);
    b = saved;
    EXPECT_NEAR(grads[k].bias[0], (fp - fm) / (2 * h),
                1e-6 * std::max(1.0, std::abs(grads[k].bias[0])));
  }
}

} // namespace
} // namespace srab
