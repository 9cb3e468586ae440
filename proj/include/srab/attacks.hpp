// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "srab/model.hpp"
#include "srab/tensor.hpp"

namespace srab {

struct AttackConfig {
  /// l-infinity budget on the [0, 1] pixel scale, usually k/255.
  double alpha = 8.0 / 255.0;
  int iterations = 50;
  std::uint64_t seed = 0;

  double step_size() const { return alpha / iterations; }
  void validate() const;
};

/// Binary LR mask and its nearest-neighbour HR counterpart.
struct Mask {
  ImageTensor lr_mask; // (1, H, W)
  ImageTensor hr_mask; // (1, scale*H, scale*W)
  int scale = 4;
};

/// Validates that `lr_mask` is single-channel and binary, then derives the HR
/// mask by nearest-neighbour upscaling.
Mask make_mask(ImageTensor lr_mask, int scale);

/// Ones on rows [floor(h/4), floor(3h/4)) x cols [floor(w/4), floor(3w/4)).
Mask center_mask(int height, int width, int scale = 4);

struct AdversarialResult {
  ImageTensor adversarial;
  ImageTensor perturbation; // adversarial - original
  /// Attack objective after each of the T iterations.
  std::vector<double> loss_trace;
  AttackConfig config;
};

/// ||f(x) - f(x_ref)||_2 over every SR element.
double attack_loss(const SRModel &model, const ImageTensor &x,
                   const ImageTensor &x_ref);

/// Gradient of attack_loss with respect to x; zero when the residual is zero.
ImageTensor attack_loss_gradient(const SRModel &model, const ImageTensor &x,
                                 const ImageTensor &x_ref);

/// Loss and gradient against a precomputed reference output. When
/// `hr_keep` is given, the residual is multiplied by it (single channel,
/// broadcast) before taking the norm.
struct LossAndGradient {
  double loss = 0.0;
  ImageTensor gradient;
};
LossAndGradient residual_loss_and_gradient(const SRModel &model,
                                           const ImageTensor &x,
                                           const ImageTensor &ref_output,
                                           const ImageTensor *hr_keep);

/// One projected sign step: x0 + clip_{-a,a}(clip_{0,1}(x + step *
/// direction) - x0). `direction` is typically a sign tensor.
ImageTensor projected_step(const ImageTensor &x, const ImageTensor &direction,
                           const ImageTensor &x0, double step, double alpha);

/// Untargeted I-FGSM. Iteration 0 starts from a seeded uniform offset in
/// [-alpha/T, alpha/T] (the loss gradient vanishes at x0); the remaining
/// T-1 iterations follow the signed loss gradient.
AdversarialResult ifgsm_basic(const SRModel &model, const ImageTensor &x0,
                              const AttackConfig &config);

/// I-FGSM restricted to mask.lr_mask, with the loss measured only outside
/// mask.hr_mask.
AdversarialResult partial_attack(const SRModel &model, const ImageTensor &x0,
                                 const Mask &mask, const AttackConfig &config);

/// Descends ||f(x) - f(x_target)||_2 under the budget around x0. Returns the
/// last iterate when it improves on x0, otherwise the best iterate seen.
AdversarialResult targeted_attack(const SRModel &model, const ImageTensor &x0,
                                  const ImageTensor &x_target,
                                  const AttackConfig &config);

/// Crop of size (h, w) anchored at ((H-h)/2, (W-w)/2), floored.
ImageTensor center_crop(const ImageTensor &image, int height, int width);

struct UniversalResult {
  ImageTensor delta; // (3, crop_h, crop_w)
  /// Mean attack loss over the images after each iteration.
  std::vector<double> loss_trace;
  AttackConfig config;
};

/// Gradient of the mean loss over the center crops with respect to a
/// shared perturbation delta, each crop perturbed as clip_{0,1}(x + delta).
ImageTensor universal_gradient(const SRModel &model,
                               std::span<const ImageTensor> crops,
                               const ImageTensor &delta,
                               std::span<const ImageTensor> clean_outputs,
                               double *mean_loss = nullptr);

UniversalResult universal_attack(const SRModel &model,
                                 std::span<const ImageTensor> images,
                                 int crop_height, int crop_width,
                                 const AttackConfig &config);

/// clip_{0,1}(image + delta) on the centered window; the rest is untouched.
ImageTensor apply_universal(const ImageTensor &image, const ImageTensor &delta);

} // namespace srab
