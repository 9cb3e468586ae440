// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "srab/tensor.hpp"

namespace srab {

/// 8-bit quantization q(x) = round(255 x) / 255 after clamping to [0, 1].
double quantize_8bit(double x);
ImageTensor quantize_8bit(const ImageTensor &image);

/// Reads an 8-bit PNG as a 3-channel image in [0, 1]. Palette and grayscale
/// inputs are expanded to RGB and alpha is dropped. 16-bit files raise
/// UnsupportedBitDepth.
ImageTensor load_png(const std::filesystem::path &path);

/// Writes an 8-bit PNG (RGB for 3 channels, grayscale for 1) of the
/// quantized image. Output bytes depend only on the pixel values.
void save_png(const ImageTensor &image, const std::filesystem::path &path);

} // namespace srab
