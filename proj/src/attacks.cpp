// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/attacks.hpp"

#include <algorithm>
#include <cmath>

#include "srab/error.hpp"
#include "srab/rng.hpp"

namespace srab {

namespace {

void require_image_range(const ImageTensor &x, const char *what) {
  for (double v : x.data())
    if (!(v >= 0.0 && v <= 1.0))
      raise(ErrorKind::Data, std::string(what) + " has values outside [0, 1]");
}

// Uniform offsets in [-step, step], drawn in element order.
ImageTensor seed_offsets(const ImageTensor &like, double step,
                         std::uint64_t seed) {
  Rng rng(seed);
  ImageTensor u = ImageTensor::zeros_like(like);
  for (double &v : u.data())
    v = rng.uniform(-step, step);
  return u;
}

struct LoopSpec {
  const ImageTensor *ref_output = nullptr;
  const ImageTensor *hr_keep = nullptr;
  const ImageTensor *lr_mask = nullptr;
  double direction = 1.0; // +1 ascend, -1 descend
  bool seeded_start = true;
  bool keep_best = false;
};

AdversarialResult run_ifgsm(const SRModel &model, const ImageTensor &x0,
                            const AttackConfig &config, const LoopSpec &spec) {
  AdversarialResult result{x0, ImageTensor::zeros_like(x0), {}, config};
  result.loss_trace.reserve(config.iterations);
  const double step = config.step_size();
  const double alpha = config.alpha;

  ImageTensor x = x0;
  ImageTensor best = x0;
  double best_loss = 0.0;
  double initial_loss = 0.0;

  for (int n = 0; n < config.iterations; ++n) {
    if (n == 0 && spec.seeded_start) {
      ImageTensor u = seed_offsets(x0, step, config.seed);
      if (spec.lr_mask)
        u = apply_mask(u, *spec.lr_mask);
      x = projected_step(x, u, x0, 1.0, alpha);
      continue;
    }
    const LossAndGradient lg =
        residual_loss_and_gradient(model, x, *spec.ref_output, spec.hr_keep);
    if (n == 0) {
      initial_loss = best_loss = lg.loss;
    } else {
      result.loss_trace.push_back(lg.loss);
      if (spec.keep_best && lg.loss < best_loss) {
        best_loss = lg.loss;
        best = x;
      }
    }
    ImageTensor dir = spec.direction * sign(lg.gradient);
    if (spec.lr_mask)
      dir = apply_mask(dir, *spec.lr_mask);
    x = projected_step(x, dir, x0, step, alpha);
  }
  const double final_loss =
      residual_loss_and_gradient(model, x, *spec.ref_output, spec.hr_keep)
          .loss;
  result.loss_trace.push_back(final_loss);

  if (spec.keep_best && final_loss > initial_loss && best_loss < final_loss)
    x = best;
  result.perturbation = x - x0;
  result.adversarial = std::move(x);
  return result;
}

} // namespace

void AttackConfig::validate() const {
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0,
          ErrorKind::Configuration, "alpha must lie in [0, 1]");
  require(iterations >= 1, ErrorKind::Configuration,
          "iteration count must be >= 1");
}

Mask make_mask(ImageTensor lr_mask, int scale) {
  require(scale >= 1, ErrorKind::Configuration, "mask scale must be >= 1");
  require(lr_mask.channels() == 1, ErrorKind::Configuration,
          "mask must have a single channel");
  for (double v : lr_mask.data())
    require(v == 0.0 || v == 1.0, ErrorKind::Configuration,
            "mask values must be 0 or 1");
  ImageTensor hr(1, lr_mask.height() * scale, lr_mask.width() * scale);
  for (int y = 0; y < hr.height(); ++y)
    for (int x = 0; x < hr.width(); ++x)
      hr.at(0, y, x) = lr_mask.at(0, y / scale, x / scale);
  return Mask{std::move(lr_mask), std::move(hr), scale};
}

Mask center_mask(int height, int width, int scale) {
  require(height >= 4 && width >= 4, ErrorKind::Configuration,
          "center mask needs height and width >= 4");
  ImageTensor m(1, height, width);
  for (int y = height / 4; y < 3 * height / 4; ++y)
    for (int x = width / 4; x < 3 * width / 4; ++x)
      m.at(0, y, x) = 1.0;
  return make_mask(std::move(m), scale);
}

LossAndGradient residual_loss_and_gradient(const SRModel &model,
                                           const ImageTensor &x,
                                           const ImageTensor &ref_output,
                                           const ImageTensor *hr_keep) {
  const ForwardTrace trace = model_forward_traced(model, x);
  ImageTensor residual = trace.output - ref_output;
  if (hr_keep)
    residual = apply_mask(residual, *hr_keep);
  const double norm = l2_norm(residual);
  if (norm == 0.0)
    return {0.0, ImageTensor::zeros_like(x)};
  return {norm,
          model_backward(model, trace, (1.0 / norm) * residual, nullptr)};
}

double attack_loss(const SRModel &model, const ImageTensor &x,
                   const ImageTensor &x_ref) {
  require_same_shape(x, x_ref, "attack loss");
  return l2_norm(model_forward(model, x) - model_forward(model, x_ref));
}

ImageTensor attack_loss_gradient(const SRModel &model, const ImageTensor &x,
                                 const ImageTensor &x_ref) {
  require_same_shape(x, x_ref, "attack loss gradient");
  return residual_loss_and_gradient(model, x, model_forward(model, x_ref),
                                    nullptr)
      .gradient;
}

ImageTensor projected_step(const ImageTensor &x, const ImageTensor &direction,
                           const ImageTensor &x0, double step, double alpha) {
  require_same_shape(x, direction, "projected step");
  require_same_shape(x, x0, "projected step");
  ImageTensor out = x;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double moved = std::clamp(x[i] + step * direction[i], 0.0, 1.0);
    double v = std::clamp(x0[i] + std::clamp(moved - x0[i], -alpha, alpha),
                          0.0, 1.0);
    // Rounding in x0 + d can land one ulp outside the budget as measured by
    // |v - x0|; step back toward x0 until it holds exactly.
    while (std::abs(v - x0[i]) > alpha)
      v = std::nextafter(v, x0[i]);
    out[i] = v;
  }
  return out;
}

AdversarialResult ifgsm_basic(const SRModel &model, const ImageTensor &x0,
                              const AttackConfig &config) {
  config.validate();
  require_image_range(x0, "attack input");
  const ImageTensor ref = model_forward(model, x0);
  LoopSpec spec;
  spec.ref_output = &ref;
  return run_ifgsm(model, x0, config, spec);
}

AdversarialResult partial_attack(const SRModel &model, const ImageTensor &x0,
                                 const Mask &mask, const AttackConfig &config) {
  config.validate();
  require_image_range(x0, "attack input");
  require(mask.lr_mask.height() == x0.height() &&
              mask.lr_mask.width() == x0.width(),
          ErrorKind::ShapeMismatch,
          "mask " + mask.lr_mask.shape_string() + " does not match image " +
              x0.shape_string());
  require(mask.scale == model.scale(), ErrorKind::ShapeMismatch,
          "mask scale does not match the model scale");
  const ImageTensor ref = model_forward(model, x0);
  ImageTensor keep = mask.hr_mask;
  for (double &v : keep.data())
    v = 1.0 - v;
  LoopSpec spec;
  spec.ref_output = &ref;
  spec.hr_keep = &keep;
  spec.lr_mask = &mask.lr_mask;
  return run_ifgsm(model, x0, config, spec);
}

AdversarialResult targeted_attack(const SRModel &model, const ImageTensor &x0,
                                  const ImageTensor &x_target,
                                  const AttackConfig &config) {
  config.validate();
  require_image_range(x0, "attack input");
  require_same_shape(x0, x_target, "targeted attack target");
  const ImageTensor ref = model_forward(model, x_target);
  LoopSpec spec;
  spec.ref_output = &ref;
  spec.direction = -1.0;
  spec.seeded_start = false;
  spec.keep_best = true;
  return run_ifgsm(model, x0, config, spec);
}

ImageTensor center_crop(const ImageTensor &image, int height, int width) {
  require(height >= 1 && width >= 1 && height <= image.height() &&
              width <= image.width(),
          ErrorKind::ShapeMismatch,
          "crop " + std::to_string(height) + "x" + std::to_string(width) +
              " does not fit image " + image.shape_string());
  return crop(image, (image.height() - height) / 2,
              (image.width() - width) / 2, height, width);
}

ImageTensor universal_gradient(const SRModel &model,
                               std::span<const ImageTensor> crops,
                               const ImageTensor &delta,
                               std::span<const ImageTensor> clean_outputs,
                               double *mean_loss) {
  require(!crops.empty() && crops.size() == clean_outputs.size(),
          ErrorKind::Configuration, "universal gradient operand counts");
  ImageTensor total = ImageTensor::zeros_like(delta);
  double loss = 0.0;
  for (std::size_t k = 0; k < crops.size(); ++k) {
    const ImageTensor shifted = crops[k] + delta;
    const LossAndGradient lg = residual_loss_and_gradient(
        model, clip(shifted, 0.0, 1.0), clean_outputs[k], nullptr);
    loss += lg.loss;
    for (std::size_t i = 0; i < total.size(); ++i)
      if (shifted[i] >= 0.0 && shifted[i] <= 1.0)
        total[i] += lg.gradient[i];
  }
  const double inv = 1.0 / static_cast<double>(crops.size());
  if (mean_loss)
    *mean_loss = loss * inv;
  return inv * total;
}

UniversalResult universal_attack(const SRModel &model,
                                 std::span<const ImageTensor> images,
                                 int crop_height, int crop_width,
                                 const AttackConfig &config) {
  config.validate();
  require(!images.empty(), ErrorKind::Configuration,
          "universal attack needs at least one image");
  std::vector<ImageTensor> crops;
  std::vector<ImageTensor> clean;
  for (const ImageTensor &img : images) {
    require_image_range(img, "attack input");
    crops.push_back(center_crop(img, crop_height, crop_width));
    clean.push_back(model_forward(model, crops.back()));
  }
  UniversalResult result{ImageTensor(crops.front().channels(), crop_height,
                                     crop_width),
                         {},
                         config};
  ImageTensor &delta = result.delta;
  const double step = config.step_size();
  for (int n = 0; n < config.iterations; ++n) {
    if (n == 0) {
      delta = clip(seed_offsets(delta, step, config.seed), -config.alpha,
                   config.alpha);
      continue;
    }
    double loss = 0.0;
    const ImageTensor grad =
        universal_gradient(model, crops, delta, clean, &loss);
    result.loss_trace.push_back(loss);
    delta = clip(delta + step * sign(grad), -config.alpha, config.alpha);
  }
  double final_loss = 0.0;
  for (std::size_t k = 0; k < crops.size(); ++k)
    final_loss += l2_norm(
        model_forward(model, clip(crops[k] + delta, 0.0, 1.0)) - clean[k]);
  result.loss_trace.push_back(final_loss / static_cast<double>(crops.size()));
  return result;
}

ImageTensor apply_universal(const ImageTensor &image,
                            const ImageTensor &delta) {
  require(delta.channels() == image.channels() &&
              delta.height() <= image.height() &&
              delta.width() <= image.width(),
          ErrorKind::ShapeMismatch,
          "perturbation " + delta.shape_string() + " does not fit image " +
              image.shape_string());
  const int y0 = (image.height() - delta.height()) / 2;
  const int x0 = (image.width() - delta.width()) / 2;
  ImageTensor window = crop(image, y0, x0, delta.height(), delta.width());
  window = clip(window + delta, 0.0, 1.0);
  ImageTensor out = image;
  paste(out, window, y0, x0);
  return out;
}

} // namespace srab
