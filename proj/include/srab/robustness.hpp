// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "srab/model.hpp"

namespace srab {

struct RobustnessReport {
  /// max_i b_i; larger means more vulnerable.
  double index = 0.0;
  int samples = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  /// b_i = ||grad L(x0 + delta_i, x0)||_1 in draw order.
  std::vector<double> sample_norms;
};

/// Draws `samples` perturbations uniformly in [-alpha, alpha]^n from one
/// generator (element order within a sample, samples in index order) and
/// returns the largest l1 norm of the attack-loss gradient at x0 + delta.
/// x0 + delta is deliberately not clipped to [0, 1].
RobustnessReport robustness_index(const SRModel &model, const ImageTensor &x0,
                                  double alpha, int samples,
                                  std::uint64_t seed);

} // namespace srab
