// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "srab/model.hpp"

namespace srab {

struct TrainOptions {
  int steps = 2000;
  /// HR patch side; the LR side is patch_size / scale.
  int patch_size = 96;
  int batch_size = 8;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  /// Random dihedral transform per sampled patch.
  bool augment = true;
  /// Called after every step with (step index, batch loss).
  std::function<void(int, double)> on_step;
};

struct TrainResult {
  SRModel model;
  /// Mean squared error of each step's batch, before the update.
  std::vector<double> losses;
};

/// Fits a micro EDSR to (bicubic-downscaled patch, HR patch) pairs with Adam
/// on mean squared error. Weights are initialized from options.seed and the
/// returned weights are rounded to 32-bit precision.
TrainResult train_micro_model(const MicroEdsrConfig &config,
                              std::span<const ImageTensor> hr_images,
                              const TrainOptions &options);

/// Means of consecutive non-overlapping windows; a trailing partial window
/// is averaged over its own length.
std::vector<double> window_means(std::span<const double> values,
                                 std::size_t window);

} // namespace srab
