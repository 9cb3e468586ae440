// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <optional>
#include <span>

#include "srab/attacks.hpp"
#include "srab/tensor.hpp"

namespace srab {

inline constexpr double kIdenticalPsnr = std::numeric_limits<double>::infinity();

/// 10 log10(1 / MSE) over every channel and pixel, peak 1. Identical inputs
/// give +infinity.
double psnr(const ImageTensor &a, const ImageTensor &b);

/// PSNR restricted to pixels where mask.hr_mask is 0. Throws EmptyRegion
/// when the mask covers the whole image.
double outer_region_psnr(const ImageTensor &a, const ImageTensor &b,
                         const Mask &mask);

/// Spearman rank correlation with average ranks for ties. Empty when fewer
/// than two points or either ranking is constant.
std::optional<double> spearman_correlation(std::span<const double> xs,
                                           std::span<const double> ys);

/// Arithmetic mean; +infinity if any value is +infinity.
double mean(std::span<const double> values);

} // namespace srab
