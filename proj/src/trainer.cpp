// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/trainer.hpp"

#include <algorithm>
#include <cmath>

#include "srab/bicubic.hpp"
#include "srab/error.hpp"
#include "srab/geometry.hpp"
#include "srab/rng.hpp"
#include "srab/weights.hpp"

namespace srab {

namespace {

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
};

void adam_update(std::vector<double> &param, const std::vector<double> &grad,
                 AdamState &state, const TrainOptions &opt, int t) {
  if (state.m.empty()) {
    state.m.assign(param.size(), 0.0);
    state.v.assign(param.size(), 0.0);
  }
  const double c1 = 1.0 - std::pow(opt.beta1, t);
  const double c2 = 1.0 - std::pow(opt.beta2, t);
  for (std::size_t i = 0; i < param.size(); ++i) {
    state.m[i] = opt.beta1 * state.m[i] + (1.0 - opt.beta1) * grad[i];
    state.v[i] = opt.beta2 * state.v[i] + (1.0 - opt.beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    param[i] -= opt.learning_rate * m_hat / (std::sqrt(v_hat) + opt.epsilon);
  }
}

} // namespace

TrainResult train_micro_model(const MicroEdsrConfig &config,
                              std::span<const ImageTensor> hr_images,
                              const TrainOptions &options) {
  config.validate();
  require(!hr_images.empty(), ErrorKind::Data, "training dataset is empty");
  require(options.steps >= 0 && options.batch_size >= 1,
          ErrorKind::Configuration, "steps must be >= 0 and batch >= 1");
  require(options.patch_size >= config.scale &&
              options.patch_size % config.scale == 0,
          ErrorKind::Configuration,
          "patch size must be a positive multiple of the scale");
  for (const ImageTensor &img : hr_images) {
    require(img.channels() == 3, ErrorKind::Data,
            "training images must have 3 channels");
    require(img.height() >= options.patch_size &&
                img.width() >= options.patch_size,
            ErrorKind::Data,
            "patch size " + std::to_string(options.patch_size) +
                " exceeds training image " + img.shape_string());
  }

  TrainResult result{build_micro_edsr(config, options.seed), {}};
  SRModel &model = result.model;
  result.losses.reserve(options.steps);

  Rng sampler(options.seed ^ 0x9E3779B97F4A7C15ull);
  const auto kernels = model.kernels();
  std::vector<AdamState> weight_state(kernels.size());
  std::vector<AdamState> bias_state(kernels.size());
  const int p = options.patch_size;

  for (int step = 0; step < options.steps; ++step) {
    std::vector<ConvKernelGrad> grads(kernels.size());
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      grads[k].weights.assign(kernels[k]->weights.size(), 0.0);
      grads[k].bias.assign(kernels[k]->bias.size(), 0.0);
    }
    double batch_loss = 0.0;
    for (int b = 0; b < options.batch_size; ++b) {
      const ImageTensor &img = hr_images[sampler.below(hr_images.size())];
      const int y0 = static_cast<int>(sampler.below(img.height() - p + 1));
      const int x0 = static_cast<int>(sampler.below(img.width() - p + 1));
      ImageTensor hr = crop(img, y0, x0, p, p);
      if (options.augment)
        hr = dihedral_transform(hr, static_cast<int>(sampler.below(8)));
      const ImageTensor lr = bicubic_downscale(hr, config.scale);

      const ForwardTrace trace = model_forward_traced(model, lr);
      ImageTensor residual = trace.output - hr;
      const double n = static_cast<double>(residual.size());
      batch_loss += dot(residual, residual) / n;
      const ImageTensor upstream =
          (2.0 / (n * options.batch_size)) * residual;
      model_backward(model, trace, upstream, &grads);
    }
    batch_loss /= options.batch_size;
    result.losses.push_back(batch_loss);

    for (std::size_t k = 0; k < kernels.size(); ++k) {
      adam_update(kernels[k]->weights, grads[k].weights, weight_state[k],
                  options, step + 1);
      adam_update(kernels[k]->bias, grads[k].bias, bias_state[k], options,
                  step + 1);
    }
    if (options.on_step)
      options.on_step(step, batch_loss);
  }
  if (options.steps > 0)
    round_weights_to_f32(model);
  return result;
}

std::vector<double> window_means(std::span<const double> values,
                                 std::size_t window) {
  require(window >= 1, ErrorKind::Configuration, "window must be >= 1");
  std::vector<double> out;
  for (std::size_t start = 0; start < values.size(); start += window) {
    const std::size_t end = std::min(values.size(), start + window);
    double s = 0.0;
    for (std::size_t i = start; i < end; ++i)
      s += values[i];
    out.push_back(s / static_cast<double>(end - start));
  }
  return out;
}

} // namespace srab
