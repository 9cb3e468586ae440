// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "srab/tensor.hpp"

namespace srab {

struct DatasetImage {
  std::string id;
  ImageTensor hr; // center-cropped to multiples of the scale
  ImageTensor lr; // bicubic downscale of hr, quantized to 8 bits
};

struct Dataset {
  std::string name;
  int scale = 4;
  std::vector<DatasetImage> images;

  std::vector<ImageTensor> hr_images() const;
  std::vector<ImageTensor> lr_images() const;
};

inline constexpr int kMinHrSide = 32;

/// Builds a dataset entry: crops `hr` to multiples of `scale` around its
/// center, requires both sides >= kMinHrSide and derives the LR image.
DatasetImage make_dataset_image(std::string id, const ImageTensor &hr,
                                int scale);

/// Loads every *.png in `dir` (sorted by file name; the stem is the image
/// id).
Dataset load_image_dir(const std::filesystem::path &dir, int scale = 4);

} // namespace srab
