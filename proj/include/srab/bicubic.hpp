// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "srab/tensor.hpp"

namespace srab {

/// Keys cubic convolution kernel, a = -0.5 by default.
double keys_cubic(double t, double a = -0.5);

/// Separable Keys bicubic resampling with half-pixel centers and
/// edge-clamped sampling. The output is not clipped, so the map is linear.
ImageTensor bicubic_resize(const ImageTensor &input, int out_height,
                           int out_width);

/// Transpose of bicubic_resize from (in_height, in_width) to the spatial size
/// of `upstream`.
ImageTensor bicubic_resize_grad(const ImageTensor &upstream, int in_height,
                                int in_width);

/// Downscale by an integer factor with the kernel stretched by that factor
/// (antialiased, weights renormalized). Used to derive LR images from HR ones.
ImageTensor bicubic_downscale(const ImageTensor &input, int factor);

} // namespace srab
