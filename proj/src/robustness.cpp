// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#include "srab/robustness.hpp"

#include <algorithm>
#include <cmath>

#include "srab/attacks.hpp"
#include "srab/error.hpp"
#include "srab/rng.hpp"

namespace srab {

RobustnessReport robustness_index(const SRModel &model, const ImageTensor &x0,
                                  double alpha, int samples,
                                  std::uint64_t seed) {
  require(samples >= 1, ErrorKind::Configuration, "need at least one sample");
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0,
          ErrorKind::Configuration, "alpha must lie in [0, 1]");
  for (double v : x0.data())
    require(v >= 0.0 && v <= 1.0, ErrorKind::Data,
            "robustness input has values outside [0, 1]");

  RobustnessReport report;
  report.samples = samples;
  report.alpha = alpha;
  report.seed = seed;
  report.sample_norms.reserve(samples);

  const ImageTensor ref = model_forward(model, x0);
  Rng rng(seed);
  ImageTensor probe = x0;
  for (int i = 0; i < samples; ++i) {
    for (std::size_t k = 0; k < probe.size(); ++k)
      probe[k] = x0[k] + rng.uniform(-alpha, alpha);
    const double b =
        l1_norm(residual_loss_and_gradient(model, probe, ref, nullptr).gradient);
    report.sample_norms.push_back(b);
    report.index = std::max(report.index, b);
  }
  return report;
}

} // namespace srab
