// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "srab/tensor.hpp"

namespace srab {

/// Weights of a stride-1 "same" convolution, laid out (out, in, kh, kw).
struct ConvKernel {
  int out_channels = 0;
  int in_channels = 0;
  int kernel_height = 0;
  int kernel_width = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  ConvKernel() = default;
  ConvKernel(int out, int in, int kh, int kw);

  std::size_t weight_count() const noexcept { return weights.size(); }
  int fan_in() const noexcept {
    return in_channels * kernel_height * kernel_width;
  }
  double &weight(int o, int i, int dy, int dx) {
    return weights[((static_cast<std::size_t>(o) * in_channels + i) *
                        kernel_height +
                    dy) *
                       kernel_width +
                   dx];
  }
  double weight(int o, int i, int dy, int dx) const {
    return weights[((static_cast<std::size_t>(o) * in_channels + i) *
                        kernel_height +
                    dy) *
                       kernel_width +
                   dx];
  }

  /// Checks the length and odd-size invariants; throws Configuration.
  void validate() const;

  friend bool operator==(const ConvKernel &, const ConvKernel &) = default;
};

/// Parameter gradient of one convolution.
struct ConvKernelGrad {
  std::vector<double> weights;
  std::vector<double> bias;
};

ImageTensor conv2d_forward(const ImageTensor &input, const ConvKernel &kernel);

/// Vector-Jacobian product of conv2d_forward with respect to its input.
ImageTensor conv2d_input_grad(const ImageTensor &upstream,
                              const ConvKernel &kernel);

/// Accumulates d<upstream, conv(input)>/d(weights, bias) into `grad`.
void conv2d_weight_grad(const ImageTensor &input, const ImageTensor &upstream,
                        const ConvKernel &kernel, ConvKernelGrad &grad);

ImageTensor relu_forward(const ImageTensor &input);
/// Subgradient at exactly zero is taken as zero.
ImageTensor relu_input_grad(const ImageTensor &upstream,
                            const ImageTensor &saved_input);

/// (C*r*r, H, W) -> (C, r*H, r*W) sub-pixel rearrangement.
ImageTensor pixel_shuffle(const ImageTensor &input, int r);
/// Inverse permutation of pixel_shuffle, i.e. its gradient.
ImageTensor pixel_shuffle_grad(const ImageTensor &upstream, int r);

} // namespace srab
